"""Multiple zeta values zeta(k_1, ..., k_n) = sum over 0 < m_1 < ... < m_n.

Two independent routes:

* ``mzv_direct`` -- nested partial sums in exact fixed-point integer
  arithmetic with a rigorous truncation bound (the oracle);
* ``mzv`` -- the iterated-integral representation split at t = 1/2
  (Hoelder convolution), turning every piece into a multiple polylogarithm
  at 1/2 whose series converge like 2**-n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import InadmissibleComposition
from .numerics import PrecisionContext, bernoulli


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(k) for k in self.parts)
        if any(k < 1 for k in parts):
            raise InadmissibleComposition(f"entries must be positive integers: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def admissible(self) -> bool:
        return not self.parts or self.parts[-1] >= 2

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class ZagierIndex:
    """The pair (a, b) naming zeta({2}^a, 3, {2}^b)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"a and b must be non-negative, got ({self.a}, {self.b})")

    @property
    def composition(self) -> Composition:
        return Composition((2,) * self.a + (3,) + (2,) * self.b)

    @property
    def weight(self) -> int:
        return 2 * self.a + 2 * self.b + 3

    @property
    def depth(self) -> int:
        return self.a + self.b + 1


def _as_composition(k) -> Composition:
    comp = k if isinstance(k, Composition) else Composition(tuple(k))
    if not comp.admissible:
        raise InadmissibleComposition(f"{comp} is not admissible (last entry must be >= 2)")
    return comp


# ---------------------------------------------------------------------------
# direct nested summation (oracle)


def _zeta_upper(k: int) -> float:
    """Rigorous upper bound for zeta(k), k >= 2."""
    head = sum(m ** -k for m in range(1, 10))
    return (head + 10.0 ** -k + 10.0 ** (1 - k) / (k - 1)) * (1 + 1e-12)


def _log_tail_integral(M: int, k: int, j: int) -> float:
    """Upper bound for sum_{m > M} m**-k (1 + log m)**j via the integral from M."""
    if j == 0:
        # m**-k is convex, so each term is below its integral over [m - 1/2, m + 1/2]
        return (M + 0.5) ** (1 - k) / (k - 1)
    L = 1 + math.log(M)
    if k * L < j:
        raise ValueError("tail integrand not decreasing; increase the cutoff")
    return M ** (1 - k) * sum(
        math.perm(j, i) * L ** (j - i) / (k - 1) ** (i + 1) for i in range(j + 1))


def direct_tail_bound(parts: Sequence[int], M: int) -> float:
    """Bound on zeta(k) minus the sum over m_n <= M."""
    *inner, last = parts
    bound = _log_tail_integral(M, last, sum(1 for k in inner if k == 1))
    for k in inner:
        if k >= 2:
            bound *= _zeta_upper(k)
    return bound * (1 + 1e-9)


def mzv_direct(k, M: int, ctx: PrecisionContext):
    """Partial sum over 0 < m_1 < ... < m_n <= M and a rigorous error bound.

    Returns (value, tail_bound) with |value - zeta(k)| <= tail_bound.
    Leading (or inner) 1s are allowed.
    """
    comp = _as_composition(k)
    mp = ctx.mp
    if comp.depth == 0:
        return mp.one, mp.zero
    if M < comp.depth:
        raise ValueError(f"cutoff M={M} is below the depth {comp.depth}")
    B = ctx.working
    # prefix[m] = 2**B * (sum over m_1 < ... < m_i <= m), floored; level 0 is the empty product
    prefix = [1 << B] * (M + 1)
    rounding = 0.0
    harmonic = 1 + math.log(M)
    for k_i in comp.parts:
        prefix = list(accumulate(
            [0] + [prefix[m - 1] // m ** k_i for m in range(1, M + 1)]))
        # carried error is damped by sum m**-k; each floor adds < 1 unit
        rounding = rounding * (harmonic if k_i == 1 else _zeta_upper(k_i)) + M
    value = mp.ldexp(mp.mpf(prefix[M]), -B)
    tail = mp.mpf(direct_tail_bound(comp.parts, M)) + mp.ldexp(mp.mpf(rounding + 1), -B)
    return value, tail


# ---------------------------------------------------------------------------
# Hoelder convolution


class HalfPolylogs:
    """Multiple polylogarithms at 1/2, memoised over index tuples.

    ``li(s)`` is sum_{n_1 > n_2 > ... > n_k > 0} 2**-n_1 / prod n_i**s_i.
    One instance shares its tables across all compositions it evaluates.
    """

    def __init__(self, ctx: PrecisionContext, max_depth: int):
        self.ctx = ctx
        mp = ctx.mp
        W = ctx.working
        # the tail beyond N is below 2**-N (1 + log 2N)**depth; keep 16 spare bits
        self.N = N = W + 16 + math.ceil(max_depth * math.log2(1 + math.log(4 * W + 8 * max_depth)))
        self._powers = {}
        self._cum = {(): [mp.one] * (N + 1)}
        self._li = {(): mp.one}
        self._half = [mp.ldexp(mp.one, -n) for n in range(N + 1)]

    def _inv_powers(self, s: int):
        table = self._powers.get(s)
        if table is None:
            mp = self.ctx.mp
            table = [mp.zero] + [1 / mp.mpf(n) ** s for n in range(1, self.N + 1)]
            self._powers[s] = table
        return table

    def _cumulative(self, t: tuple[int, ...]):
        """C_t(n) = sum over n >= n_1 > ... > n_k >= 1 of prod n_i**-s_i."""
        cum = self._cum.get(t)
        if cum is not None:
            return cum
        inner = self._cumulative(t[1:])
        inv = self._inv_powers(t[0])
        cum = [self.ctx.mp.zero] * (self.N + 1)
        acc = cum[0]
        for n in range(1, self.N + 1):
            acc += inv[n] * inner[n - 1]
            cum[n] = acc
        self._cum[t] = cum
        return cum

    def li(self, t: tuple[int, ...]):
        val = self._li.get(t)
        if val is not None:
            return val
        inner = self._cumulative(t[1:])
        inv = self._inv_powers(t[0])
        half = self._half
        val = self.ctx.mp.fsum(half[n] * inv[n] * inner[n - 1] for n in range(1, self.N + 1))
        self._li[t] = val
        return val

    def mzv(self, comp: Composition):
        if comp.depth == 0:
            return self.ctx.mp.one
        word = composition_word(comp)
        total = self.ctx.mp.zero
        for j in range(len(word) + 1):
            left = _word_indices(_dual(word[:j]))
            right = _word_indices(word[j:])
            total += self.li(left) * self.li(right)
        return total


def composition_word(comp: Composition) -> str:
    """Word in letters 0 (dt/t) and 1 (dt/(1-t)), outermost letter first."""
    return "".join("0" * (k - 1) + "1" for k in reversed(comp.parts))


def _dual(word: str) -> str:
    # substitution t -> 1 - t: reverse and swap letters
    return word[::-1].translate(str.maketrans("01", "10"))


def _word_indices(word: str) -> tuple[int, ...]:
    """Word x0^(s1-1) x1 ... x0^(sk-1) x1 -> (s1, ..., sk)."""
    if not word:
        return ()
    if word[-1] != "1":
        raise ValueError(f"word {word!r} does not end in x1")
    return tuple(len(block) + 1 for block in word.split("1")[:-1])


def mzv(k, ctx: PrecisionContext, evaluator: HalfPolylogs | None = None):
    """zeta(k) with absolute error <= 2**-target_bits."""
    comp = _as_composition(k)
    if comp.depth == 0:
        return ctx.mp.one
    if evaluator is None:
        evaluator = HalfPolylogs(ctx, comp.weight)
    return evaluator.mzv(comp)


def mzv_many(compositions: Iterable, ctx: PrecisionContext) -> list:
    comps = [_as_composition(k) for k in compositions]
    if not comps:
        return []
    ev = HalfPolylogs(ctx, max(c.weight for c in comps))
    return [ev.mzv(c) for c in comps]


# ---------------------------------------------------------------------------
# single zeta values and the families of the evaluation formula


def zeta_int(s: int, ctx: PrecisionContext):
    """Riemann zeta(s), s >= 2, by Euler-Maclaurin with Bernoulli corrections."""
    if s < 2:
        raise ValueError(f"zeta_int needs s >= 2, got {s}")
    mp = ctx.mp
    N = 16 + ctx.working // 8
    head = mp.fsum(mp.mpf(n) ** -s for n in range(1, N))
    Nf = mp.mpf(N)
    total = head + Nf ** (1 - s) / (s - 1) + Nf ** -s / 2
    eps = mp.ldexp(mp.one, -ctx.working)
    # term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N**(-s-2k+1)
    rising = mp.mpf(s)
    power = Nf ** (-s - 1)
    fact = 2
    for k in range(1, 4 * ctx.working):
        b = bernoulli(2 * k)
        term = mp.mpf(b.numerator) / b.denominator / fact * rising * power
        total += term
        if abs(term) < eps * total:
            break
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= Nf * Nf
        fact *= (2 * k + 1) * (2 * k + 2)
    return total


def zeta_two_block(n: int, ctx: PrecisionContext, evaluator: HalfPolylogs | None = None):
    """zeta(2, ..., 2) with n twos; exactly 1 for n = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ctx.mp.one
    return mzv((2,) * n, ctx, evaluator)


def h_lhs(idx: ZagierIndex, ctx: PrecisionContext, evaluator: HalfPolylogs | None = None):
    """zeta({2}^a, 3, {2}^b)."""
    return mzv(idx.composition, ctx, evaluator)


def admissible_compositions(max_weight: int, max_depth: int) -> list[Composition]:
    """Every admissible composition with weight <= max_weight, depth <= max_depth."""
    out = []

    def extend(prefix: tuple[int, ...], remaining: int):
        if prefix and prefix[-1] >= 2:
            out.append(Composition(prefix))
        if len(prefix) == max_depth:
            return
        for k in range(1, remaining + 1):
            extend(prefix + (k,), remaining - k)

    extend((), max_weight)
    return sorted(out, key=lambda c: (c.weight, c.depth, c.parts))
