"""The evaluation formula for zeta({2}^a, 3, {2}^b) and the 3F2 route to it.

H(a, b) is the multiple zeta value itself, Hhat(a, b) the combination of
single zeta values and two-blocks zeta({2}^n).  The generating functions
F and Fhat package them as power series in x and y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import PreconditionError, RangeError
from .hyper import P3F2Params, d3f2_dz_at0, f32_unit, gamma_ratio, pochhammer
from .mzv import HalfPolylogs, ZagierIndex, h_lhs, zeta_int, zeta_two_block
from .numerics import PrecisionContext, binomial, const_pi, sin_pi
from .report import CheckReport, make_report
from .special import digamma

GF_TRUNCATION = 24


def c_coeff(a: int, b: int, r: int) -> Fraction:
    """C(2r, 2a+2) - (1 - 2**-2r) C(2r, 2b+1), exactly."""
    if a < 0 or b < 0:
        raise RangeError(f"a and b must be non-negative, got ({a}, {b})")
    if not 1 <= r <= a + b + 1:
        raise RangeError(f"r must lie in 1..{a + b + 1}, got {r}")
    return binomial(2 * r, 2 * a + 2) - (1 - Fraction(1, 4 ** r)) * binomial(2 * r, 2 * b + 1)


def c_coeffs(a: int, b: int) -> list[Fraction]:
    return [c_coeff(a, b, r) for r in range(1, a + b + 2)]


def h_rhs(idx: ZagierIndex, ctx: PrecisionContext, evaluator: HalfPolylogs | None = None):
    """2 sum_r (-1)^r c_{a,b}^r zeta(2r+1) zeta({2}^(a+b+1-r))."""
    mp = ctx.mp
    n = idx.a + idx.b + 1
    if evaluator is None:
        evaluator = HalfPolylogs(ctx, 2 * n)
    total = mp.zero
    for r in range(1, n + 1):
        c = c_coeff(idx.a, idx.b, r)
        if c == 0:
            continue
        term = mp.mpf(c.numerator) / c.denominator * zeta_int(2 * r + 1, ctx)
        total += (-1) ** r * term * zeta_two_block(n - r, ctx, evaluator)
    return 2 * total


def check_zagier(idx: ZagierIndex, ctx: PrecisionContext, tol=1e-30, seed: int | None = None) -> CheckReport:
    ev = HalfPolylogs(ctx, idx.weight)
    lhs = h_lhs(idx, ctx, ev)
    rhs = h_rhs(idx, ctx, ev)
    return make_report("eq1", {"a": idx.a, "b": idx.b, "weight": idx.weight}, lhs, rhs, tol, ctx, seed)


# ---------------------------------------------------------------------------
# generating functions


@dataclass(frozen=True)
class GFPoint:
    """A point (x, y) safely inside the region where F and Fhat are compared.

    |x| <= 0.45, 0.05 <= |y| <= 0.45, |x + y| <= 0.9 and |x - y| <= 0.9.
    x = 0 is allowed (both generating functions vanish there); random
    samplers keep |x| >= 0.05 as well.
    """

    x: object
    y: object

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (abs(x) <= 0.45 and 0.05 <= abs(y) <= 0.45 and abs(x + y) <= 0.9 and abs(x - y) <= 0.9):
            raise PreconditionError(f"point ({x}, {y}) outside the generating-function domain")

    @classmethod
    def of(cls, ctx: PrecisionContext, x, y) -> "GFPoint":
        return cls(ctx.real(x), ctx.real(y))


class Truncated(NamedTuple):
    value: object
    error_bound: object


@lru_cache(maxsize=8)
def _h_tables(ctx: PrecisionContext, N: int):
    """H(a, b) and Hhat(a, b) for all a + b <= N, sharing one polylog table."""
    ev = HalfPolylogs(ctx, 2 * N + 3)
    lhs, rhs = {}, {}
    for n in range(N + 1):
        for a in range(n + 1):
            idx = ZagierIndex(a, n - a)
            lhs[a, n - a] = h_lhs(idx, ctx, ev)
            rhs[a, n - a] = h_rhs(idx, ctx, ev)
    return lhs, rhs


def _gf_sum(table, pt: GFPoint, N: int, ctx: PrecisionContext) -> Truncated:
    mp = ctx.mp
    x, y = ctx.real(pt.x), ctx.real(pt.y)
    x2, y2 = x * x, y * y
    total = mp.zero
    xpow = x2
    for a in range(N + 1):
        ypow = y
        for b in range(N + 1 - a):
            sign = -1 if (a + b) % 2 == 0 else 1
            total += sign * table[a, b] * xpow * ypow
            ypow *= y2
        xpow *= x2
    # |H(a,b)| <= zeta(3) zeta(2)^(a+b) after dropping the ordering constraint
    q = max(x2, y2) * mp.mpf(1.645) * mp.mpf(1.1)
    if q >= 1:
        bound = mp.inf
    else:
        tail = q ** (N + 1) * ((N + 2) / (1 - q) + q / (1 - q) ** 2)
        bound = mp.mpf(1.21) * x2 * abs(y) * tail
    return Truncated(total, bound)


def f_gen(pt: GFPoint, N: int, ctx: PrecisionContext) -> Truncated:
    """Truncated F(x, y) over a + b <= N, from the multiple zeta values."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    return _gf_sum(_h_tables(ctx, N)[0], pt, N, ctx)


def f_hat_gen(pt: GFPoint, N: int, ctx: PrecisionContext) -> Truncated:
    """Truncated Fhat(x, y) over a + b <= N, from the single-zeta side."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    return _gf_sum(_h_tables(ctx, N)[1], pt, N, ctx)


def eq2_rhs(pt: GFPoint, ctx: PrecisionContext):
    """d/dz at 0 of 3F2(x, -x, z; 1+y, 1-y; 1)."""
    x, y = pt.x, pt.y
    return d3f2_dz_at0(x, -x, 1 + y, 1 - y, ctx)


def eq3_rhs(pt: GFPoint, ctx: PrecisionContext):
    """Digamma/sine closed form equal to pi/sin(pi y) * Fhat(x, y)."""
    mp = ctx.mp
    x, y = ctx.real(pt.x), ctx.real(pt.y)
    psi = lambda z: digamma(z, ctx)  # noqa: E731
    s, d = x + y, x - y
    first = psi(1 + y) + psi(1 - y) - (psi(1 + s) + psi(1 - s) + psi(1 + d) + psi(1 - d)) / 2
    bracket = (psi(1 + s / 2) + psi(1 - s / 2) - psi(1 + d / 2) - psi(1 - d / 2)
               - psi(1 + s) - psi(1 - s) + psi(1 + d) + psi(1 - d))
    return first - sin_pi(x, ctx) / (2 * sin_pi(y, ctx)) * bracket


def eq9_rhs(x, y, ctx: PrecisionContext):
    """Closed form of d/dz at 0 of 3F2(x, 1-x, z; 1+y, 1-y; 1)."""
    mp = ctx.mp
    x, y = ctx.real(x), ctx.real(y)
    if sin_pi(y, ctx) == 0:
        raise PreconditionError("y must not be an integer")
    psi = lambda z: digamma(z, ctx)  # noqa: E731
    first = psi(1 + y) + psi(1 - y) - psi(1 - x + y) - psi(1 - x - y)
    bracket = psi(1 - x + y) - psi(1 - x - y) - psi(1 - (x - y) / 2) + psi(1 - (x + y) / 2)
    return first - sin_pi(x, ctx) / sin_pi(y, ctx) * bracket


def _pt_params(pt: GFPoint, N: int | None = None) -> dict:
    out = {"x": pt.x, "y": pt.y}
    if N is not None:
        out["N"] = N
    return out


def check_eq2(pt: GFPoint, ctx: PrecisionContext, N: int = GF_TRUNCATION, tol=1e-10,
              seed: int | None = None) -> CheckReport:
    F = f_gen(pt, N, ctx)
    lhs = const_pi(ctx) / sin_pi(pt.y, ctx) * F.value
    return make_report("eq2", _pt_params(pt, N), lhs, eq2_rhs(pt, ctx), tol, ctx, seed)


def check_eq3(pt: GFPoint, ctx: PrecisionContext, N: int = GF_TRUNCATION, tol=1e-10,
              seed: int | None = None) -> CheckReport:
    F = f_hat_gen(pt, N, ctx)
    lhs = const_pi(ctx) / sin_pi(pt.y, ctx) * F.value
    return make_report("eq3", _pt_params(pt, N), lhs, eq3_rhs(pt, ctx), tol, ctx, seed)


def check_eq9(x, y, ctx: PrecisionContext, tol=1e-20, seed: int | None = None) -> CheckReport:
    mp = ctx.mp
    x, y = ctx.real(x), ctx.real(y)
    lhs = d3f2_dz_at0(x, 1 - x, 1 + y, 1 - y, ctx)
    return make_report("eq9", {"x": x, "y": y}, lhs, eq9_rhs(x, y, ctx), tol, ctx, seed)


# ---------------------------------------------------------------------------
# splitting and the instantiated two-term transformation


def pochhammer_split_holds(x: Fraction, n: int) -> bool:
    """(x)_n (-x)_n == (x)_n (1-x)_n / 2 + (1+x)_n (-x)_n / 2, exactly."""
    lhs = pochhammer(x, n) * pochhammer(-x, n)
    rhs = (pochhammer(x, n) * pochhammer(1 - x, n) + pochhammer(1 + x, n) * pochhammer(-x, n)) / 2
    return lhs == rhs


def check_eq6(x, N: int, ctx: PrecisionContext | None = None, y=Fraction(3, 10), tol=1e-20,
              seed: int | None = None) -> CheckReport:
    """Exact Pochhammer splitting for n <= N, then the split of the derivative series."""
    ctx = ctx or PrecisionContext()
    x = Fraction(x)
    failures = [n for n in range(N + 1) if not pochhammer_split_holds(x, n)]
    xr = ctx.real(x)
    yr = ctx.real(y)
    b1, b2 = 1 + yr, 1 - yr
    lhs = d3f2_dz_at0(xr, -xr, b1, b2, ctx)
    rhs = (d3f2_dz_at0(xr, 1 - xr, b1, b2, ctx) + d3f2_dz_at0(1 + xr, -xr, b1, b2, ctx)) / 2
    params = {"x": x, "N": N, "y": y, "exact_failures": len(failures)}
    return make_report("eq6", params, lhs, rhs, tol, ctx, seed, extra_ok=not failures)


def _eq7_direct(x, y, z, ctx: PrecisionContext):
    first = gamma_ratio((1 + y, 1 - x + y - z), (1 - x + y, 1 + y - z), ctx)
    if first:
        first *= f32_unit(P3F2Params(x, x - y, z, x - y + z, 1 - y), ctx)
    second = gamma_ratio((1 + y, 1 - y, x - y + z - 1, 1 - z), (x, z, x - y, 2 - x - z), ctx)
    if second:
        second *= f32_unit(P3F2Params(1 - x + y, 1 + y - z, 1 - z, 2 - x + y - z, 2 - x - z), ctx)
    return first + second


def eq7_rhs(x, y, z, ctx: PrecisionContext):
    """Right side of the two-term transformation at a1=x, a2=z, a3=1-x, b1=1+y, b2=1-y.

    When x - y + z is an integer <= 1 both terms have cancelling poles; the
    value is then interpolated from four points around the pole in z.
    """
    mp = ctx.mp
    x, y, z = (ctx.real(v) for v in (x, y, z))
    if not 0 < z < 1:
        raise PreconditionError("need 0 < z < 1")
    if not x + y < 1:
        raise PreconditionError("need x + y < 1")
    w = x - y + z
    k = mp.nint(w)
    h = mp.ldexp(mp.one, -(ctx.working // 5))
    offset = w - k
    if k <= 1 and abs(offset) < h / 2:
        nodes = [-2 * h, -h, h, 2 * h]
        total = mp.zero
        for i, ti in enumerate(nodes):
            weight = mp.one
            for j, tj in enumerate(nodes):
                if j != i:
                    weight *= (offset - tj) / (ti - tj)
            total += weight * _eq7_direct(x, y, z - offset + ti, ctx)
        return total
    return _eq7_direct(x, y, z, ctx)


def check_eq7(x, y, z, ctx: PrecisionContext, tol=1e-20, seed: int | None = None) -> CheckReport:
    mp = ctx.mp
    x, y, z = (ctx.real(v) for v in (x, y, z))
    rhs = eq7_rhs(x, y, z, ctx)
    lhs = f32_unit(P3F2Params(x, 1 - x, z, 1 + y, 1 - y), ctx)
    return make_report("eq7", {"x": x, "y": y, "z": z}, lhs, rhs, tol, ctx, seed)
