"""Verification outcome records and their machine-readable forms."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .numerics import PrecisionContext

REPORT_FIELDS = (
    "identity_id",
    "params",
    "lhs",
    "rhs",
    "abs_diff",
    "rel_diff",
    "tolerance",
    "pass",
    "precision_bits",
    "seed",
)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check.

    ``passed`` holds iff ``abs_diff <= tolerance`` or ``rel_diff <= tolerance``.
    """

    identity_id: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    abs_diff: Any
    rel_diff: Any
    tolerance: Any
    passed: bool
    precision_bits: int
    seed: int | None = None
    ctx: PrecisionContext = field(default=None, repr=False, compare=False)

    def __reduce__(self):
        # mpf classes of private contexts do not pickle; ship raw mantissas
        ctx = self.ctx or PrecisionContext(self.precision_bits)
        nums = tuple(_pack(v) for v in (self.lhs, self.rhs, self.abs_diff, self.rel_diff, self.tolerance))
        params = {k: _pack(v) for k, v in self.params.items()}
        return (_rebuild, (self.identity_id, params, nums, self.passed, self.precision_bits,
                           self.seed, ctx.target_bits, ctx.guard_bits))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready mapping; numerics become decimal strings."""
        ctx = self.ctx or PrecisionContext(self.precision_bits)
        num = ctx.decimal
        return {
            "identity_id": self.identity_id,
            "params": {k: _param(v, ctx) for k, v in self.params.items()},
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "abs_diff": ctx.mp.nstr(self.abs_diff, 6),
            "rel_diff": ctx.mp.nstr(self.rel_diff, 6),
            "tolerance": ctx.mp.nstr(self.tolerance, 6),
            "pass": self.passed,
            "precision_bits": self.precision_bits,
            "seed": self.seed,
        }


def _pack(value):
    raw = getattr(value, "_mpf_", None)
    return ("mpf", raw) if raw is not None else value


def _unpack(value, ctx: PrecisionContext):
    if isinstance(value, tuple) and len(value) == 2 and value[0] == "mpf":
        return ctx.mp.make_mpf(value[1])
    return value


def _rebuild(identity_id, params, nums, passed, precision_bits, seed, target_bits, guard_bits):
    ctx = PrecisionContext(target_bits, guard_bits)
    values = [_unpack(v, ctx) for v in nums]
    return CheckReport(identity_id, {k: _unpack(v, ctx) for k, v in params.items()}, *values,
                       passed, precision_bits, seed, ctx)


def _param(value, ctx: PrecisionContext):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_param(v, ctx) for v in value]
    return ctx.decimal(value)


def make_report(identity_id: str, params: dict[str, Any], lhs, rhs, tolerance,
                ctx: PrecisionContext, seed: int | None = None, extra_ok: bool = True) -> CheckReport:
    mp = ctx.mp
    lhs = mp.mpf(lhs)
    rhs = mp.mpf(rhs)
    tol = mp.mpf(tolerance)
    abs_diff = abs(lhs - rhs)
    scale = abs(rhs) or abs(lhs)
    rel_diff = abs_diff / scale if scale else mp.zero
    passed = bool(extra_ok and (abs_diff <= tol or rel_diff <= tol))
    return CheckReport(identity_id, dict(params), lhs, rhs, abs_diff, rel_diff, tol,
                       passed, ctx.target_bits, seed, ctx)
