"""Exact rationals, the working-precision context and elementary constants.

High-precision reals are ``mpmath`` ``mpf`` values bound to a private
``MPContext`` per working precision, so evaluations in different contexts
never touch mpmath's global state.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath.ctx_mp import MPContext
from mpmath.libmp import mpf_pos, round_nearest

BigRational = Fraction

DEFAULT_BITS = 192
DEFAULT_GUARD = 32


@lru_cache(maxsize=None)
def _mp_context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Target precision ``target_bits`` plus ``guard_bits`` of headroom.

    Everything is evaluated at ``working`` bits; results are published
    (rounded) at ``target_bits``.
    """

    target_bits: int = DEFAULT_BITS
    guard_bits: int = DEFAULT_GUARD
    mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.target_bits < 53:
            raise ValueError(f"target precision must be at least 53 bits, got {self.target_bits}")
        if self.guard_bits < 0:
            raise ValueError("guard_bits must be non-negative")
        object.__setattr__(self, "mp", _mp_context(self.working))

    def __reduce__(self):
        return (PrecisionContext, (self.target_bits, self.guard_bits))

    @property
    def working(self) -> int:
        return self.target_bits + self.guard_bits

    @property
    def eps(self):
        """2**-target_bits, the absolute accuracy promised by the evaluators."""
        return self.mp.ldexp(self.mp.mpf(1), -self.target_bits)

    @property
    def pole_radius(self):
        return self.mp.ldexp(self.mp.mpf(1), -(self.target_bits // 2))

    def real(self, value: Union[int, float, str, Fraction]):
        """Convert ``value`` to an mpf at working precision (rationals exactly rounded)."""
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def publish(self, value):
        """Round ``value`` to the target precision."""
        return _round_bits(self.mp, self.mp.mpf(value), self.target_bits)

    def decimal(self, value, digits: int | None = None) -> str:
        """Decimal string that round-trips at the target precision."""
        if digits is None:
            digits = math.ceil(self.target_bits * math.log10(2)) + 1
        return self.mp.nstr(self.publish(value), digits, strip_zeros=False)


def _round_bits(mp: MPContext, value, bits: int):
    # low-level rounding leaves the shared context's precision untouched
    return mp.make_mpf(mpf_pos(value._mpf_, bits, round_nearest))


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * 3.33) + 16


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) as an exact rational; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """m-th Bernoulli number with B_1 = -1/2."""
    if m < 0:
        raise ValueError(f"bernoulli needs m >= 0, got {m}")
    if m < len(_bernoulli_cache):
        return _bernoulli_cache[m]
    with _bernoulli_lock:
        table = _bernoulli_cache
        for j in range(len(table), m + 1):
            # sum_{i=0}^{j} C(j+1, i) B_i = 0
            acc = sum(math.comb(j + 1, i) * table[i] for i in range(j))
            table.append(-acc / (j + 1))
        return table[m]


@lru_cache(maxsize=None)
def _constants(bits: int):
    mp = _mp_context(bits)
    return +mp.pi, +mp.ln2, +mp.euler


def const_pi(ctx: PrecisionContext):
    return _constants(ctx.working)[0]


def const_log2(ctx: PrecisionContext):
    return _constants(ctx.working)[1]


def const_euler_gamma(ctx: PrecisionContext):
    return _constants(ctx.working)[2]


def sin_pi(x, ctx: PrecisionContext):
    """sin(pi*x), exact at integers and half-integers."""
    mp = ctx.mp
    x = ctx.real(x)
    # x - 2*round(x/2) is exact: it only keeps bits already present in x
    r = x - 2 * mp.nint(x / 2)
    if r > 0.5:
        r = 1 - r
    elif r < -0.5:
        r = -1 - r
    if r == 0:
        return mp.zero
    if r == 0.5:
        return mp.one
    if r == -0.5:
        return -mp.one
    return mp.sin(const_pi(ctx) * r)


def distance_to_nonpositive_integer(z) -> float:
    """Distance from z to the set {0, -1, -2, ...}."""
    z = float(z)
    if z >= 0:
        return z
    return abs(z - round(z))
