"""Gamma, log-gamma and digamma for real arguments."""
from __future__ import annotations

import math

from .errors import PoleError
from .numerics import (
    PrecisionContext,
    bernoulli,
    const_log2,
    const_pi,
    sin_pi,
)
from .report import CheckReport, make_report

_EXACT_FACTORIAL_LIMIT = 64


def _nearest_pole(z, ctx: PrecisionContext):
    """Return (is_exact_pole, distance) for the nearest non-positive integer."""
    mp = ctx.mp
    if z > 0.5:
        return False, z
    n = mp.nint(z)
    if n > 0:
        n = mp.zero
    d = abs(z - n)
    return d == 0, d


def check_pole(z, ctx: PrecisionContext, what: str = "argument") -> None:
    exact, d = _nearest_pole(z, ctx)
    if exact or d < ctx.pole_radius:
        raise PoleError(f"{what} {ctx.mp.nstr(z, 15)} is at a pole of gamma")


def is_exact_pole(z, ctx: PrecisionContext) -> bool:
    return _nearest_pole(ctx.real(z), ctx)[0]


def _threshold(ctx: PrecisionContext) -> int:
    return max(10, int(0.4 * ctx.working))


def digamma(z, ctx: PrecisionContext):
    """psi(z) by upward recurrence followed by the Bernoulli asymptotic series."""
    mp = ctx.mp
    z = ctx.real(z)
    check_pole(z, ctx)
    shift = mp.zero
    T = _threshold(ctx)
    while z < T:
        shift -= 1 / z
        z += 1
    eps = mp.ldexp(mp.one, -ctx.working)
    z2 = z * z
    zpow = z2
    total = mp.log(z) - 1 / (2 * z)
    k = 1
    while True:
        b = bernoulli(2 * k)
        term = mp.mpf(b.numerator) / (b.denominator * 2 * k) / zpow
        total -= term
        if abs(term) < eps:
            break
        zpow *= z2
        k += 1
    return total + shift


def loggamma(z, ctx: PrecisionContext):
    """log Gamma(z) for z > 0 (Stirling series after an upward shift)."""
    mp = ctx.mp
    z = ctx.real(z)
    if z <= 0:
        raise PoleError("loggamma is only defined here for z > 0")
    T = _threshold(ctx)
    prod = mp.one
    while z < T:
        prod *= z
        z += 1
    eps = mp.ldexp(mp.one, -ctx.working)
    total = (z - 0.5) * mp.log(z) - z + mp.log(2 * const_pi(ctx)) / 2
    z2 = z * z
    zpow = z
    k = 1
    while True:
        b = bernoulli(2 * k)
        term = mp.mpf(b.numerator) / (b.denominator * (2 * k) * (2 * k - 1)) / zpow
        total += term
        if abs(term) < eps:
            break
        zpow *= z2
        k += 1
    return total - mp.log(prod)


def gamma(z, ctx: PrecisionContext):
    """Gamma(z); negative non-integers go through the reflection formula."""
    mp = ctx.mp
    z = ctx.real(z)
    check_pole(z, ctx)
    if z > 0:
        if z == mp.nint(z) and z <= _EXACT_FACTORIAL_LIMIT:
            return mp.mpf(math.factorial(int(z) - 1))
        return mp.exp(loggamma(z, ctx))
    return const_pi(ctx) / (sin_pi(z, ctx) * gamma(1 - z, ctx))


def rgamma(z, ctx: PrecisionContext):
    """1/Gamma(z), exactly zero when z is exactly a non-positive integer."""
    mp = ctx.mp
    z = ctx.real(z)
    if is_exact_pole(z, ctx):
        return mp.zero
    return 1 / gamma(z, ctx)


def check_reflection(z, ctx: PrecisionContext, tol=1e-38, seed: int | None = None) -> CheckReport:
    """Gamma(z) Gamma(1-z) against pi / sin(pi z)."""
    z = ctx.real(z)
    lhs = gamma(z, ctx) * gamma(1 - z, ctx)
    rhs = const_pi(ctx) / sin_pi(z, ctx)
    return make_report("reflection", {"z": z}, lhs, rhs, tol, ctx, seed)


def check_duplication(z, ctx: PrecisionContext, tol=1e-38, seed: int | None = None) -> CheckReport:
    """psi(2z) against psi(z)/2 + psi(z + 1/2)/2 + log 2."""
    z = ctx.real(z)
    lhs = digamma(2 * z, ctx)
    rhs = (digamma(z, ctx) + digamma(z + 0.5, ctx)) / 2 + const_log2(ctx)
    return make_report("duplication", {"z": z}, lhs, rhs, tol, ctx, seed)
