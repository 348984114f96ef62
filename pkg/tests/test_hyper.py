from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle
from mzv_identities.errors import DivergenceError, PoleError, PreconditionError, SlowConvergence
from mzv_identities.hyper import (
    P3F2Params,
    d3f2_dz_at0,
    eq4_rhs,
    eq5_rhs,
    eq8_rhs,
    f32_unit,
    lgra_rhs,
    pochhammer,
    summation_lhs_params,
)
from mzv_identities.numerics import PrecisionContext
from mzv_identities.special import gamma

F = Fraction


def params(ctx, *values):
    return P3F2Params.of(ctx, *(F(v) for v in values))


def mp_hyp3f2(*values, bits=280):
    # mpmath's own unit-argument 3F2 is slow at 400 bits; 280 is plenty for a 2**-192 check
    with mpmath.workprec(bits):
        return +mpmath.hyp3f2(*(mpmath.mpf(F(v).numerator) / F(v).denominator for v in values), 1)


def gauss(ctx, a1, a2, b1):
    return gamma(b1, ctx) * gamma(b1 - a1 - a2, ctx) / (gamma(b1 - a1, ctx) * gamma(b1 - a2, ctx))


def test_pochhammer():
    assert pochhammer(F(7, 3), 0) == 1
    assert pochhammer(1, 4) == 24
    assert pochhammer(-3, 5) == 0
    assert pochhammer(F(1, 2), 3) == F(15, 8)
    assert isinstance(pochhammer(2, 3), Fraction)
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=50), st.integers(0, 12), st.integers(0, 12))
def test_pochhammer_splits(alpha, m, n):
    assert pochhammer(alpha, m + n) == pochhammer(alpha, m) * pochhammer(alpha + m, n)


def test_trivial_values(ctx):
    assert f32_unit(params(ctx, "0.3", "0.7", 0, "1.1", "2.9"), ctx) == 1
    a2, a3, b1, b2 = F("0.3"), F("1.7"), F("2.5"), F("0.9")
    two_term = 1 - a2 * a3 / (b1 * b2)
    assert abs(oracle(f32_unit(params(ctx, -1, a2, a3, b1, b2), ctx)) - mpmath.mpf(two_term.numerator) / two_term.denominator) <= ctx.eps


@pytest.mark.parametrize("values", [
    ("0.3", "0.4", "1.4", "1.2", "1.9"),
    ("0.25", "0.5", "0.3", "1.1", "1.7"),
    (1, "0.5", "0.25", "1.5", "2.25"),
    ("-1.3", "2.2", "0.7", "0.15", "3.9"),
    ("0.5", "0.5", "0.5", "1", "1.5"),
    (1, 1, 1, 2, "1.25"),
])
def test_f32_matches_mpmath(ctx, values):
    ours = f32_unit(params(ctx, *values), ctx)
    assert abs(oracle(ours) - mp_hyp3f2(*values)) <= ctx.eps * max(1, abs(oracle(ours)))


def test_frozen_value(ctx):
    # 3F2(1,1,1;2,3/2;1) = pi^2/4
    assert abs(oracle(f32_unit(params(ctx, 1, 1, 1, 2, "1.5"), ctx)) - mpmath.pi ** 2 / 4) <= ctx.eps
    assert ctx.decimal(f32_unit(params(ctx, "0.3", "0.4", "1.4", "1.2", "1.9"), ctx), 30) == \
        "1.14931874523887436629896240984"


def test_parameter_swaps_are_exact(ctx):
    p = params(ctx, "0.3", "0.4", "1.4", "1.2", "1.9")
    q = params(ctx, "1.4", "0.3", "0.4", "1.9", "1.2")
    assert f32_unit(p, ctx) == f32_unit(q, ctx)


def test_gauss_reduction_seeded(ctx):
    rng = np.random.Generator(np.random.PCG64(17))
    done = 0
    while done < 100:
        a1, a2 = (F(f"{rng.uniform(-1.5, 2.5):.4f}") for _ in range(2))
        b1, b2 = (F(f"{rng.uniform(0.1, 4):.4f}") for _ in range(2))
        if b1 - a1 - a2 < 1 or min(abs(v - round(v)) for v in (b1 - a1, b1 - a2)) < F(1, 20):
            continue
        value = f32_unit(params(ctx, a1, a2, b2, b1, b2), ctx)
        assert abs(value - gauss(ctx, ctx.real(a1), ctx.real(a2), ctx.real(b1))) <= 1e-30
        done += 1


@pytest.mark.parametrize("m", range(0, 9))
def test_terminating_series_exact(ctx, m):
    a = [F(-m), F(3, 7), F(-5, 4)]
    b = [F(9, 5), F(2, 3)]
    exact = sum(pochhammer(a[0], n) * pochhammer(a[1], n) * pochhammer(a[2], n)
                / (pochhammer(1, n) * pochhammer(b[0], n) * pochhammer(b[1], n)) for n in range(m + 1))
    ours = f32_unit(params(ctx, *a, *b), ctx)
    assert abs(ours - ctx.real(exact)) <= ctx.mp.ldexp(1, -ctx.target_bits + 6)


def test_f32_errors(ctx):
    with pytest.raises(PoleError):
        f32_unit(params(ctx, "0.5", "0.5", "0.5", -2, 5), ctx)
    with pytest.raises(DivergenceError):
        f32_unit(params(ctx, 1, 1, 1, 1, 2), ctx)
    with pytest.raises(SlowConvergence):
        f32_unit(params(ctx, 1, 1, 1, "1.1", 2), ctx)
    # terminating series ignore the convergence margin
    assert f32_unit(params(ctx, -2, 5, 5, 1, 1), ctx) == 1 - 50 + 225


def test_derivative_series(ctx):
    assert d3f2_dz_at0(0, "0.5", 2, 3, ctx) == 0
    assert abs(oracle(d3f2_dz_at0(1, 1, 2, 2, ctx)) - (2 - mpmath.pi ** 2 / 6)) <= ctx.eps
    a1, a2, b1, b2 = (mpmath.mpf(v) for v in ("0.2", "-0.2", "1.3", "0.7"))
    ref = mpmath.nsum(lambda n: mpmath.rf(a1, n) * mpmath.rf(a2, n) / (n * mpmath.rf(b1, n) * mpmath.rf(b2, n)),
                      [1, mpmath.inf])
    ours = d3f2_dz_at0(F("0.2"), F("-0.2"), F("1.3"), F("0.7"), ctx)
    assert abs(oracle(ours) - ref) <= 1e-40


@settings(max_examples=30, deadline=None)
@given(st.integers(-15, 25), st.integers(-15, 25), st.integers(1, 40), st.integers(1, 40))
def test_derivative_symmetry(a1, a2, b1, b2):
    ctx = PrecisionContext(128)
    a1, a2, b1, b2 = (F(v, 10) for v in (a1, a2, b1, b2))
    if b1 + b2 - a1 - a2 < F(1, 2):
        return
    assert d3f2_dz_at0(a1, a2, b1, b2, ctx) == d3f2_dz_at0(a2, a1, b1, b2, ctx)


def test_eq4_examples(ctx):
    p = params(ctx, "0.3", "0.4", "1.4", "1.2", "1.9")
    assert abs(eq4_rhs(p, ctx) - f32_unit(p, ctx)) <= 1e-30
    # a3 = b2: the second term vanishes and the Gauss value remains
    p = params(ctx, "0.2", "0.3", "1.6", "1.9", "1.6")
    assert abs(eq4_rhs(p, ctx) - gauss(ctx, p.a1, p.a2, p.b1)) <= 1e-30
    with pytest.raises(PreconditionError):
        eq4_rhs(params(ctx, "0.5", "0.7", "1.5", "1.2", "2.9"), ctx)
    with pytest.raises(PreconditionError):
        eq4_rhs(params(ctx, "0.3", "0.4", "0.1", "2.2", "1.9"), ctx)


def test_eq5_examples(ctx):
    p = params(ctx, "0.25", "0.5", "0.3", "1.1", "1.7")
    assert abs(eq5_rhs(p, ctx) - f32_unit(p, ctx)) <= 1e-30
    assert abs(eq5_rhs(params(ctx, "0.25", "0.5", 0, "1.1", "1.7"), ctx) - 1) <= ctx.eps
    swapped = params(ctx, "0.5", "0.25", "0.3", "1.1", "1.7")
    assert abs(eq5_rhs(p, ctx) - eq5_rhs(swapped, ctx)) <= ctx.eps
    with pytest.raises(PreconditionError):
        eq5_rhs(params(ctx, "0.25", "0.5", "1.8", "1.1", "1.7"), ctx)


def test_summation_examples(ctx):
    alpha = ctx.real(F(7, 10))
    assert abs(eq8_rhs(alpha, 0, ctx) - 1) <= ctx.eps
    assert abs(lgra_rhs(alpha, 0, ctx) - 1) <= ctx.eps
    exact = 1 - alpha / ((1 + alpha) * (3 + alpha))
    assert abs(eq8_rhs(alpha, -1, ctx) - exact) <= ctx.eps
    half, quarter = F(1, 2), F(1, 4)
    lhs = f32_unit(summation_lhs_params(half, quarter, ctx), ctx)
    assert abs(eq8_rhs(half, quarter, ctx) - lhs) <= 1e-30
    assert abs(lgra_rhs(half, quarter, ctx) - eq8_rhs(half, quarter, ctx)) <= 1e-40
    p = params(ctx, 1, "0.8", "-0.3", "1.8", "3.1")
    assert abs(lgra_rhs(F("0.8"), F("-0.3"), ctx) - f32_unit(p, ctx)) <= 1e-30
    with pytest.raises(PreconditionError):
        eq8_rhs(F(1, 2), 1, ctx)
    with pytest.raises(PreconditionError):
        eq8_rhs(F(-1), F(1, 4), ctx)
    with pytest.raises(PreconditionError):
        eq8_rhs(F(1), F(2), ctx)


def test_error_estimate_improves_with_precision():
    p_lo, p_hi = PrecisionContext(96), PrecisionContext(256)
    lo = f32_unit(params(p_lo, "0.3", "0.4", "1.4", "1.2", "1.9"), p_lo)
    hi = f32_unit(params(p_hi, "0.3", "0.4", "1.4", "1.2", "1.9"), p_hi)
    assert abs(oracle(lo) - oracle(hi)) <= p_lo.eps
    assert abs(oracle(hi) - mp_hyp3f2("0.3", "0.4", "1.4", "1.2", "1.9", bits=300)) <= p_hi.eps
