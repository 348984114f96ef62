"""Seeded verification campaigns over every identity family.

Parameters are drawn with numpy's PCG64 generator.  Each identity family gets
its own stream, ``SeedSequence(seed, spawn_key=(family_index,))``, so a
family's draws do not depend on which other families are selected.  Draws
are rounded to four decimals and kept as decimal strings, which makes the
reported parameters exact and short.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .errors import ConfigError
from .hyper import P3F2Params, eq4_rhs, eq5_rhs, eq8_rhs, f32_unit, lgra_rhs, summation_lhs_params
from .mzv import ZagierIndex
from .numerics import DEFAULT_BITS, PrecisionContext
from .report import CheckReport, make_report
from .special import check_duplication, check_reflection
from .zagier import GFPoint, check_eq2, check_eq3, check_eq6, check_eq7, check_eq9, check_zagier

IDENTITIES = (
    "reflection", "duplication", "eq1", "eq2", "eq3", "eq4",
    "eq5", "eq6", "eq7", "eq8", "eq9", "lgra",
)

# stratified by dominant error source: rounding, acceleration, truncation
DEFAULT_TOLERANCES = {
    "reflection": 1e-38,
    "duplication": 1e-38,
    "lgra": 1e-38,
    "eq1": 1e-30,
    "eq2": 1e-10,
    "eq3": 1e-10,
    "eq4": 1e-20,
    "eq5": 1e-20,
    "eq6": 1e-20,
    "eq7": 1e-20,
    "eq8": 1e-20,
    "eq9": 1e-20,
}

RNG_NAME = "PCG64"
MARGIN = 0.05


@dataclass
class CampaignConfig:
    identities: tuple[str, ...] = IDENTITIES
    trials: int = 50
    seed: int = 1
    precision_bits: int = DEFAULT_BITS
    tolerances: dict[str, float] = field(default_factory=dict)
    output_format: str = "text"
    max_ab: int = 3
    jobs: int = 1

    def validate(self) -> None:
        unknown = [name for name in self.identities if name not in IDENTITIES]
        if unknown:
            raise ConfigError(f"unknown identities: {', '.join(unknown)}")
        bad_tol = [name for name in self.tolerances if name not in IDENTITIES]
        if bad_tol:
            raise ConfigError(f"tolerance override for unknown identity: {', '.join(bad_tol)}")
        if any(t <= 0 for t in self.tolerances.values()):
            raise ConfigError("tolerances must be positive")
        if self.trials < 0:
            raise ConfigError("trials must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.precision_bits < 64:
            raise ConfigError("precision must be at least 64 bits")
        if self.output_format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.max_ab < 0:
            raise ConfigError("max_ab must be non-negative")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    def tolerance(self, identity: str) -> float:
        return self.tolerances.get(identity, DEFAULT_TOLERANCES[identity])


# ---------------------------------------------------------------------------
# samplers


def _dist(v: float) -> float:
    """Distance to the nearest non-positive integer."""
    return v if v >= 0 else abs(v - round(v))


def _clear(*values: float) -> bool:
    return all(_dist(v) >= MARGIN for v in values)


def _draw(rng: np.random.Generator, lo: float, hi: float) -> str:
    return f"{rng.uniform(lo, hi):.4f}"


def _draw_signed(rng: np.random.Generator, lo: float, hi: float) -> str:
    v = rng.uniform(lo, hi) * (1 if rng.random() < 0.5 else -1)
    return f"{v:.4f}"


def _rejection(rng, propose: Callable, accept: Callable, limit: int = 100000) -> dict:
    for _ in range(limit):
        params = propose(rng)
        if accept(**{k: float(v) for k, v in params.items()}):
            return params
    raise ConfigError("sampler failed to find an admissible point")


def sample_reflection(rng):
    return _rejection(rng, lambda r: {"z": _draw(r, -3, 3)},
                      lambda z: abs(z - round(z)) >= MARGIN)


def sample_duplication(rng):
    return _rejection(rng, lambda r: {"z": _draw(r, -3, 3)},
                      lambda z: _clear(z, z + 0.5, 2 * z))


def sample_gf_point(rng):
    def accept(x, y):
        return (0.05 <= abs(x) <= 0.45 and 0.05 <= abs(y) <= 0.45
                and abs(x + y) <= 0.9 and abs(x - y) <= 0.9)
    return _rejection(rng, lambda r: {"x": _draw_signed(r, 0.05, 0.45), "y": _draw_signed(r, 0.05, 0.45)}, accept)


def _propose_3f2(r):
    return {"a1": _draw(r, -1.5, 2.5), "a2": _draw(r, -1.5, 2.5), "a3": _draw(r, -1.5, 2.5),
            "b1": _draw(r, 0.1, 4.0), "b2": _draw(r, 0.1, 4.0)}


def sample_eq4(rng):
    def accept(a1, a2, a3, b1, b2):
        s = b1 + b2 - a1 - a2 - a3
        if s < 1 or a3 - b1 + 1 < 0.5:
            return False
        return _clear(b1, b2, b1 - a1 - a2, b1 - a1, b1 - a2, a1, a2, b2 - a3,
                      a1 + a2 - b1, s, b1 + b2 - a1 - a2, a1 + a2 - b1 + 1, b1 - a1 - a2 + 1)
    return _rejection(rng, _propose_3f2, accept)


def sample_eq5(rng):
    def accept(a1, a2, a3, b1, b2):
        s = b1 + b2 - a1 - a2 - a3
        if s < 1 or b2 - a3 < 0.5:
            return False
        return _clear(b1, b2, b2 - a3, s, b1 + b2 - a1 - a2)
    return _rejection(rng, _propose_3f2, accept)


def sample_eq6(rng):
    q = int(rng.integers(1, 11))
    p = int(rng.integers(-2 * q, 2 * q + 1))
    pt = sample_gf_point(rng)
    return {"x": f"{Fraction(p, q)}", "y": pt["y"]}


def sample_eq7(rng):
    def accept(x, y, z):
        if x + y > 0.8:
            return False
        return _clear(1 + y, 1 - x + y - z, 1 - x + y, 1 + y - z, 1 - y, x - y + z - 1, 1 - z,
                      x, z, x - y, 2 - x - z, x - y + z, 2 - x + y - z)
    return _rejection(rng, lambda r: {"x": _draw(r, 0.05, 0.45), "y": _draw(r, -0.45, 0.45),
                                      "z": _draw(r, 0.05, 0.8)}, accept)


def sample_summation(rng):
    def accept(alpha, beta):
        s = 2 + alpha - 2 * beta
        if s < 1 or abs(beta - 1) < MARGIN:
            return False
        return _clear(alpha, 1 + alpha, 2 + alpha - beta, (alpha + 1) / 2, (alpha + 3) / 2 - beta,
                      alpha / 2, alpha / 2 - beta + 1, (alpha + 1) / 2 - beta + 1)
    return _rejection(rng, lambda r: {"alpha": _draw(r, -1.5, 3.0), "beta": _draw(r, -2.0, 2.0)}, accept)


# ---------------------------------------------------------------------------
# evaluators: (params, ctx, tol, seed) -> CheckReport


def _real(ctx, params, *names):
    return [ctx.real(params[n]) for n in names]


def _run_reflection(params, ctx, tol, seed):
    return check_reflection(ctx.real(params["z"]), ctx, tol, seed)


def _run_duplication(params, ctx, tol, seed):
    return check_duplication(ctx.real(params["z"]), ctx, tol, seed)


def _run_eq1(params, ctx, tol, seed):
    return check_zagier(ZagierIndex(params["a"], params["b"]), ctx, tol, seed)


def _run_eq2(params, ctx, tol, seed):
    return check_eq2(GFPoint(*_real(ctx, params, "x", "y")), ctx, tol=tol, seed=seed)


def _run_eq3(params, ctx, tol, seed):
    return check_eq3(GFPoint(*_real(ctx, params, "x", "y")), ctx, tol=tol, seed=seed)


def _run_eq4(params, ctx, tol, seed):
    p = P3F2Params(*_real(ctx, params, "a1", "a2", "a3", "b1", "b2"))
    return make_report("eq4", params, f32_unit(p, ctx), eq4_rhs(p, ctx), tol, ctx, seed)


def _run_eq5(params, ctx, tol, seed):
    p = P3F2Params(*_real(ctx, params, "a1", "a2", "a3", "b1", "b2"))
    return make_report("eq5", params, f32_unit(p, ctx), eq5_rhs(p, ctx), tol, ctx, seed)


def _run_eq6(params, ctx, tol, seed):
    return check_eq6(Fraction(params["x"]), 30, ctx, y=ctx.real(params["y"]), tol=tol, seed=seed)


def _run_eq7(params, ctx, tol, seed):
    return check_eq7(*_real(ctx, params, "x", "y", "z"), ctx, tol, seed)


def _run_eq8(params, ctx, tol, seed):
    alpha, beta = _real(ctx, params, "alpha", "beta")
    lhs = f32_unit(summation_lhs_params(alpha, beta, ctx), ctx)
    return make_report("eq8", params, lhs, eq8_rhs(alpha, beta, ctx), tol, ctx, seed)


def _run_lgra(params, ctx, tol, seed):
    alpha, beta = _real(ctx, params, "alpha", "beta")
    return make_report("lgra", params, eq8_rhs(alpha, beta, ctx), lgra_rhs(alpha, beta, ctx), tol, ctx, seed)


def _run_eq9(params, ctx, tol, seed):
    return check_eq9(*_real(ctx, params, "x", "y"), ctx, tol, seed)


@dataclass(frozen=True)
class Identity:
    name: str
    sampler: Callable | None
    run: Callable


REGISTRY = {
    "reflection": Identity("reflection", sample_reflection, _run_reflection),
    "duplication": Identity("duplication", sample_duplication, _run_duplication),
    "eq1": Identity("eq1", None, _run_eq1),
    "eq2": Identity("eq2", sample_gf_point, _run_eq2),
    "eq3": Identity("eq3", sample_gf_point, _run_eq3),
    "eq4": Identity("eq4", sample_eq4, _run_eq4),
    "eq5": Identity("eq5", sample_eq5, _run_eq5),
    "eq6": Identity("eq6", sample_eq6, _run_eq6),
    "eq7": Identity("eq7", sample_eq7, _run_eq7),
    "eq8": Identity("eq8", sample_summation, _run_eq8),
    "eq9": Identity("eq9", sample_gf_point, _run_eq9),
    "lgra": Identity("lgra", sample_summation, _run_lgra),
}


def family_rng(seed: int, identity: str) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(IDENTITIES.index(identity),))
    return np.random.Generator(np.random.PCG64(ss))


def plan(config: CampaignConfig) -> list[tuple[str, dict]]:
    """All (identity, params) tasks in report order."""
    tasks = []
    if config.trials == 0:
        return tasks
    for name in config.identities:
        ident = REGISTRY[name]
        if ident.sampler is None:
            # the evaluation formula is enumerated, not sampled
            for n in range(config.max_ab + 1):
                for a in range(n, -1, -1):
                    tasks.append((name, {"a": a, "b": n - a}))
            continue
        rng = family_rng(config.seed, name)
        for trial in range(config.trials):
            params = dict(ident.sampler(rng))
            params["trial"] = trial
            params["rng"] = RNG_NAME
            tasks.append((name, params))
    return tasks


def _evaluate(task, precision_bits: int, tol: float, seed: int) -> CheckReport:
    name, params = task
    ctx = PrecisionContext(precision_bits)
    numeric = {k: v for k, v in params.items() if k not in ("trial", "rng")}
    report = REGISTRY[name].run(numeric, ctx, tol, seed)
    # report the drawn decimal strings, not their binary roundings
    return replace(report, params=dict(params))


def _evaluate_star(args):
    return _evaluate(*args)


def run_campaign(config: CampaignConfig) -> list[CheckReport]:
    """Run every planned check; reports come back in planning order."""
    config.validate()
    work = [(task, config.precision_bits, config.tolerance(task[0]), config.seed) for task in plan(config)]
    if config.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_evaluate_star, work, chunksize=max(1, len(work) // (4 * config.jobs))))
    return [_evaluate_star(w) for w in work]


def summarize(reports: Iterable[CheckReport]) -> dict:
    counts: dict[str, list[int]] = {}
    for r in reports:
        c = counts.setdefault(r.identity_id, [0, 0])
        c[0] += 1
        c[1] += r.passed
    total = sum(c[0] for c in counts.values())
    passed = sum(c[1] for c in counts.values())
    return {"total": total, "passed": passed, "failed": total - passed,
            "by_identity": {k: {"total": v[0], "passed": v[1]} for k, v in counts.items()}}
