"""3F2 at unit argument, its derivative in one upper parameter, and closed forms.

Non-terminating series are summed directly up to a cutoff N and the tail is
added as ``t_N * R(N)`` where ``R(N) = tail / t_N`` is expanded
asymptotically in 1/N.  The coefficients of that expansion follow from the
term ratio alone (``R(N) = 1 + r(N) R(N+1)``), which gives geometric-speed
accuracy for series whose terms decay only like ``n**(-1-s)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DivergenceError, PoleError, PreconditionError, SlowConvergence
from .numerics import PrecisionContext
from .special import check_pole, digamma, gamma, is_exact_pole, rgamma

S_MIN = 0.2
DEFAULT_CUTOFF = 64
MAX_RETRIES = 4


@dataclass(frozen=True)
class P3F2Params:
    """Upper parameters a1, a2, a3 and lower parameters b1, b2 of a 3F2(1)."""

    a1: object
    a2: object
    a3: object
    b1: object
    b2: object

    @classmethod
    def of(cls, ctx: PrecisionContext, a1, a2, a3, b1, b2) -> "P3F2Params":
        return cls(*(ctx.real(v) for v in (a1, a2, a3, b1, b2)))

    @property
    def upper(self):
        return (self.a1, self.a2, self.a3)

    @property
    def lower(self):
        return (self.b1, self.b2)

    @property
    def s(self):
        """Convergence margin b1 + b2 - a1 - a2 - a3."""
        return self.b1 + self.b2 - self.a1 - self.a2 - self.a3


def pochhammer(alpha, n: int):
    """Rising factorial (alpha)_n; exact for int/Fraction input."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    result = type(alpha)(1) if not isinstance(alpha, int) else Fraction(1)
    for i in range(n):
        result *= alpha + i
    return result


def _nonpositive_int(x, ctx: PrecisionContext) -> int | None:
    """-x when x is exactly a non-positive integer, else None."""
    if is_exact_pole(x, ctx):
        return int(-x)
    return None


def _neg_binom(k: int, j: int) -> int:
    # C(-k, j)
    if k == 0:
        return 1 if j == 0 else 0
    return (-1) ** j * math.comb(k + j - 1, j)


def _tail_ratio_coefficients(num: Sequence, den: Sequence, K: int, ctx: PrecisionContext):
    """Coefficients d_k with R(N) ~ sum_k d_k N**(1-k).

    The term ratio is r(n) = prod(n + p) / ((n + 1) prod(n + q)) with
    ``len(num) == len(den) + 1``.
    """
    mp = ctx.mp
    # g(u) = prod(1 + p u) / prod(1 + q u), truncated power series in u = 1/N
    g = [mp.one] + [mp.zero] * (K + 1)
    for p in num:
        g = [g[0]] + [g[i] + p * g[i - 1] for i in range(1, K + 2)]
    for q in den:
        out = [g[0]]
        for i in range(1, K + 2):
            out.append(g[i] - q * out[i - 1])
        g = out
    s = -g[1]
    # E[j]: coefficient of u**j in D(u/(1+u)), accumulated as d_k become known
    E = [mp.zero] * (K + 2)
    d = []
    for m in range(K):
        acc = E[m + 1] + (1 if m == 0 else 0)
        for i in range(1, m + 2):
            acc += g[i] * E[m + 1 - i]
        dm = acc / (m + s)
        d.append(dm)
        for j in range(m, K + 2):
            E[j] += dm * _neg_binom(m, j - m)
    return d


def _sum_terminating(first, start: int, stop: int, num, den):
    total = first * 0
    t = first
    for n in range(start, stop + 1):
        total += t
        t *= _ratio(n, num, den)
    return total


def _ratio(n, num, den):
    top = n + 1
    out = 1
    for p in num:
        out *= n + p
    for q in den:
        top *= n + q
    return out / top


def hypergeometric_tail_sum(first, start: int, num: Sequence, den: Sequence,
                            ctx: PrecisionContext, cutoff: int = DEFAULT_CUTOFF):
    """Sum t_start + t_{start+1} + ... for a convergent hypergeometric series.

    ``first`` is t_start; consecutive terms satisfy
    t_{n+1}/t_n = prod(n + p) / ((n + 1) prod(n + q)).
    Returns (value, error_estimate).
    """
    mp = ctx.mp
    num = sorted(num)
    den = sorted(den)
    s = sum(den) - sum(num)
    eps = ctx.eps
    scale = max([abs(v) for v in (*num, *den)] + [1])
    N = max(cutoff, start + 1, int(8 * scale) + 8)
    for _ in range(MAX_RETRIES + 1):
        total = mp.zero
        t = mp.mpf(first)
        for n in range(start, N):
            total += t
            t *= _ratio(n, num, den)
        if t == 0:
            return total, mp.zero
        K = max(8, int(1.5 * ctx.working / math.log2(N)) + 8)
        coeffs = _tail_ratio_coefficients(num, den, K, ctx)
        Nf = mp.mpf(N)
        terms = []
        power = Nf
        for dk in coeffs:
            terms.append(dk * power)
            power /= Nf
        R, err = _truncate_asymptotic(terms, mp.ldexp(mp.one, -ctx.working))
        estimate = abs(t) * err
        if estimate <= eps:
            return total + t * R, estimate
        N *= 2
    raise SlowConvergence(
        f"tail estimate {mp.nstr(estimate, 3)} above 2^-{ctx.target_bits} after {MAX_RETRIES} retries (s = {mp.nstr(s, 5)})")


def _truncate_asymptotic(terms, tol):
    """Sum an asymptotic series; return (sum, size of first omitted term).

    Stops once a term is negligible; otherwise truncates where the larger of
    two consecutive terms is smallest (isolated tiny coefficients are common).
    """
    total = 0
    for k, term in enumerate(terms):
        total += term
        if abs(term) <= tol * abs(total):
            return total, abs(term)
    sizes = [abs(t) for t in terms]
    pair = [max(sizes[k], sizes[k + 1]) for k in range(len(sizes) - 1)]
    k_best = min(range(len(pair)), key=pair.__getitem__)
    return sum(terms[: k_best + 1]), pair[k_best]


def _check_lower(den, ctx: PrecisionContext) -> None:
    for q in den:
        if is_exact_pole(q, ctx) or (q < 0.5 and abs(q - ctx.mp.nint(q)) < ctx.pole_radius):
            raise PoleError(f"lower parameter {ctx.mp.nstr(q, 15)} is a non-positive integer")


def _check_margin(s, ctx: PrecisionContext, what: str) -> None:
    if s <= 0:
        raise DivergenceError(f"{what} diverges at unit argument: margin {ctx.mp.nstr(s, 8)} <= 0")
    if s < S_MIN:
        raise SlowConvergence(f"{what} margin {ctx.mp.nstr(s, 8)} below {S_MIN}")


def f32_unit(p: P3F2Params, ctx: PrecisionContext, cutoff: int = DEFAULT_CUTOFF):
    """3F2(a1, a2, a3; b1, b2; 1) with absolute error <= 2**-target_bits."""
    mp = ctx.mp
    _check_lower(p.lower, ctx)
    stops = [m for m in (_nonpositive_int(a, ctx) for a in p.upper) if m is not None]
    if stops:
        return _sum_terminating(mp.one, 0, min(stops), p.upper, p.lower)
    _check_margin(p.s, ctx, "3F2")
    return hypergeometric_tail_sum(mp.one, 0, p.upper, p.lower, ctx, cutoff)[0]


def d3f2_dz_at0(a1, a2, b1, b2, ctx: PrecisionContext, cutoff: int = DEFAULT_CUTOFF):
    """d/dz at z=0 of 3F2(a1, a2, z; b1, b2; 1).

    Equals sum_{n>=1} (a1)_n (a2)_n / (n (b1)_n (b2)_n) because
    d/dz (z)_n at z = 0 is (n-1)!.
    """
    mp = ctx.mp
    a1, a2, b1, b2 = (ctx.real(v) for v in (a1, a2, b1, b2))
    _check_lower((b1, b2), ctx)
    first = a1 * a2 / (b1 * b2)
    num = (a1, a2, mp.zero)
    stops = [m for m in (_nonpositive_int(a, ctx) for a in (a1, a2)) if m is not None]
    if stops:
        m = min(stops)
        return _sum_terminating(first, 1, m, num, (b1, b2)) if m >= 1 else mp.zero
    _check_margin(b1 + b2 - a1 - a2, ctx, "derivative series")
    return hypergeometric_tail_sum(first, 1, num, (b1, b2), ctx, cutoff)[0]


def gamma_ratio(top: Sequence, bottom: Sequence, ctx: PrecisionContext):
    """prod Gamma(top) / prod Gamma(bottom).

    A numerator pole violates the formula's validity; an exact denominator
    pole makes the whole ratio vanish.
    """
    mp = ctx.mp
    for z in top:
        try:
            check_pole(z, ctx)
        except PoleError as exc:
            raise PreconditionError(f"gamma prefactor has a pole: {exc}") from None
    inv = mp.one
    for z in bottom:
        inv *= rgamma(z, ctx)
        if inv == 0:
            return mp.zero
    out = inv
    for z in top:
        out *= gamma(z, ctx)
    return out


def eq4_rhs(p: P3F2Params, ctx: PrecisionContext):
    """Two-term transformation of 3F2(1) (valid for s > 0, a3 - b1 + 1 > 0)."""
    a1, a2, a3, b1, b2 = p.a1, p.a2, p.a3, p.b1, p.b2
    s = p.s
    _check_margin(s, ctx, "3F2")
    if a3 - b1 + 1 <= 0:
        raise PreconditionError("two-term transformation needs a3 - b1 + 1 > 0")
    first = gamma_ratio((b1, b1 - a1 - a2), (b1 - a1, b1 - a2), ctx)
    if first:
        first *= f32_unit(P3F2Params(a1, a2, b2 - a3, a1 + a2 - b1 + 1, b2), ctx)
    second = gamma_ratio((b1, b2, a1 + a2 - b1, s), (a1, a2, b2 - a3, b1 + b2 - a1 - a2), ctx)
    if second:
        second *= f32_unit(P3F2Params(b1 - a1, b1 - a2, s, b1 - a1 - a2 + 1, b1 + b2 - a1 - a2), ctx)
    return first + second


def eq5_rhs(p: P3F2Params, ctx: PrecisionContext):
    """One-term transformation of 3F2(1) (valid for s > 0, b2 - a3 > 0)."""
    a1, a2, a3, b1, b2 = p.a1, p.a2, p.a3, p.b1, p.b2
    s = p.s
    _check_margin(s, ctx, "3F2")
    if b2 - a3 <= 0:
        raise PreconditionError("one-term transformation needs b2 - a3 > 0")
    pre = gamma_ratio((b2, s), (b2 - a3, b1 + b2 - a1 - a2), ctx)
    if not pre:
        return pre
    return pre * f32_unit(P3F2Params(b1 - a1, b1 - a2, a3, b1, b1 + b2 - a1 - a2), ctx)


def _check_summation_params(alpha, beta, ctx: PrecisionContext) -> None:
    if alpha - 2 * beta <= -2:
        raise PreconditionError("summation formula needs alpha - 2 beta > -2")
    if abs(beta - 1) < ctx.pole_radius:
        raise PreconditionError("summation formula needs beta != 1")
    if is_exact_pole(alpha, ctx):
        raise PreconditionError("alpha must not be a non-positive integer")


def eq8_rhs(alpha, beta, ctx: PrecisionContext):
    """Closed form of 3F2(1, alpha, beta; 1 + alpha, 2 + alpha - beta; 1)."""
    mp = ctx.mp
    alpha, beta = ctx.real(alpha), ctx.real(beta)
    _check_summation_params(alpha, beta, ctx)
    bracket = (digamma(alpha, ctx) - digamma(2 + alpha - 2 * beta, ctx)
               - digamma((alpha + 1) / 2, ctx) + digamma((alpha + 3) / 2 - beta, ctx))
    return alpha * (1 + alpha - beta) / (beta - 1) * bracket


def lgra_rhs(alpha, beta, ctx: PrecisionContext):
    """Half-argument digamma form of the same 3F2(1) summation."""
    mp = ctx.mp
    alpha, beta = ctx.real(alpha), ctx.real(beta)
    _check_summation_params(alpha, beta, ctx)
    bracket = (digamma((alpha + 1) / 2, ctx) - digamma(alpha / 2, ctx)
               + digamma(alpha / 2 - beta + 1, ctx) - digamma((alpha + 1) / 2 - beta + 1, ctx))
    return -alpha * (1 + alpha - beta) / (2 * (beta - 1)) * bracket


def summation_lhs_params(alpha, beta, ctx: PrecisionContext) -> P3F2Params:
    """Parameters (1, alpha, beta; 1 + alpha, 2 + alpha - beta)."""
    mp = ctx.mp
    alpha, beta = ctx.real(alpha), ctx.real(beta)
    return P3F2Params(mp.one, alpha, beta, 1 + alpha, 2 + alpha - beta)
