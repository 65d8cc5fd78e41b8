"""Monte Carlo integration benchmarks across design families.

Compares estimator variance over repeated randomized constructions of each
design kind: iid sampling, Latin hypercube, a coarse strength-2 orthogonal
array, the strength-2 nested design, and the strength-3 nested design.
Per-replication seeds are derived from the master seed by (kind, index), so
reports are identical regardless of execution order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .designs import Design
from .errors import ConstructionError, DimensionMismatchError
from .gf import field_of_order, prime_power
from .nested import (
    NoaPlan,
    _bush_columns,
    _relabel_replicate,
    construct_lhs,
    construct_noa,
    construct_tang,
    plan_noa,
)
from .rng import STAGE_BENCH, STAGE_IID, STAGE_OWEN, derive_seed, stream
from .sampling import PointSet, to_points

E = math.e


@dataclass(frozen=True)
class Integrand:
    name: str
    d: int
    fn: Callable[[np.ndarray], np.ndarray]
    true_integral: float


def make_integrand(name: str, d: int) -> Integrand:
    """Built-in test integrands on [0,1)^d with analytic integrals."""
    if name == "ADD-LIN":
        return Integrand(name, d, lambda x: (x - 0.5).sum(axis=1), 0.0)
    if name == "ADD-EXP":
        return Integrand(name, d, lambda x: np.exp(x).sum(axis=1), d * (E - 1.0))
    if name == "BILIN":
        if d < 2:
            raise ValueError("BILIN needs d >= 2")
        return Integrand(name, d, lambda x: (x[:, 0] - 0.5) * (x[:, 1] - 0.5), 0.0)
    if name == "TRILIN":
        if d < 3:
            raise ValueError("TRILIN needs d >= 3")
        return Integrand(
            name, d, lambda x: (x[:, 0] - 0.5) * (x[:, 1] - 0.5) * (x[:, 2] - 0.5), 0.0
        )
    if name == "PROD-EXP":
        return Integrand(name, d, lambda x: np.exp(x).prod(axis=1), (E - 1.0) ** d)
    raise ValueError(f"unknown integrand {name!r}")


INTEGRANDS = ("ADD-LIN", "ADD-EXP", "BILIN", "TRILIN", "PROD-EXP")


def estimate(points: PointSet, f: Integrand) -> float:
    if points.d != f.d:
        raise DimensionMismatchError(f"points have d={points.d}, integrand d={f.d}")
    return float(np.mean(f.fn(points.points)))


# --- design kinds ------------------------------------------------------------

KINDS = ("iid", "lhs", "oa2", "tang", "noa3")
_KIND_ID = {k: i for i, k in enumerate(KINDS)}


def _oa2_base(n: int, d: int) -> np.ndarray:
    s = math.isqrt(n)
    if s * s != n or prime_power(s) is None:
        raise ConstructionError(f"oa2 needs n a square of a prime power, got n={n}")
    if d > s + 1:
        raise ConstructionError(f"oa2 with n={n} supports at most d={s + 1}")
    return _bush_columns(field_of_order(s), 2, d)


def kind_points(kind: str, n: int, d: int, seed: int, plan: NoaPlan | None = None) -> PointSet:
    """One randomized point set of the given kind, a pure function of seed."""
    if kind == "iid":
        return PointSet(stream(seed, STAGE_IID).random((n, d)))
    if kind == "lhs":
        return to_points(construct_lhs(n, d, seed), "uniform", seed)
    if kind == "oa2":
        base = _oa2_base(n, d)
        s = math.isqrt(n)
        mat = _relabel_replicate(base, 1, s, seed, STAGE_OWEN)
        return to_points(Design(mat, s=s), "uniform", seed)
    if kind == "tang":
        return to_points(construct_tang(n, d, seed).design, "uniform", seed)
    if kind == "noa3":
        if plan is None:
            plan = plan_noa(n, d)
        return to_points(construct_noa(plan, seed).design, "uniform", seed)
    raise ValueError(f"unknown design kind {kind!r}")


# --- benchmark driver --------------------------------------------------------


@dataclass(frozen=True)
class KindStats:
    mean: float
    var: float
    mse: float
    estimates: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class BenchReport:
    n: int
    d: int
    reps: int
    seed: int
    integrand: str
    true_integral: float
    results: dict[str, KindStats]
    degenerate_reps: bool

    def to_dict(self) -> dict:
        out = {
            kind: {
                "mean": st.mean,
                "var": st.var,
                "mse": st.mse,
                "r": self.reps,
                "n": self.n,
                "d": self.d,
            }
            for kind, st in self.results.items()
        }
        return {
            "integrand": self.integrand,
            "true_integral": self.true_integral,
            "seed": self.seed,
            "degenerate_reps": self.degenerate_reps,
            "kinds": out,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def run_bench(
    n: int,
    d: int,
    kinds,
    integrand: str | Integrand,
    reps: int,
    seed: int,
) -> BenchReport:
    """Estimate the integrand with `reps` fresh designs of each kind."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    f = make_integrand(integrand, d) if isinstance(integrand, str) else integrand
    results: dict[str, KindStats] = {}
    for kind in kinds:
        if kind not in _KIND_ID:
            raise ValueError(f"unknown design kind {kind!r}")
        plan = None
        try:
            if kind == "noa3":
                plan = plan_noa(n, d)
            ests = np.empty(reps)
            for r in range(reps):
                rep_seed = derive_seed(seed, STAGE_BENCH, _KIND_ID[kind], r)
                ests[r] = estimate(kind_points(kind, n, d, rep_seed, plan), f)
        except ConstructionError:
            raise
        except Exception as exc:
            raise ConstructionError(f"kind {kind!r} failed for n={n}, d={d}: {exc}") from exc
        mean = float(ests.mean())
        var = float(ests.var(ddof=1)) if reps > 1 else 0.0
        bias = mean - f.true_integral
        # MSE reported via the decomposition, so the identity holds exactly
        mse = var + bias * bias
        results[kind] = KindStats(mean=mean, var=var, mse=mse, estimates=ests)
    return BenchReport(
        n=n,
        d=d,
        reps=reps,
        seed=seed,
        integrand=f.name,
        true_integral=f.true_integral,
        results=results,
        degenerate_reps=reps < 2,
    )


@dataclass(frozen=True)
class RateFit:
    kind: str
    ns: tuple[int, ...]
    variances: tuple[float, ...]
    slope: float | None
    degenerate: bool


def fit_rate(ns, d: int, kind: str, integrand: str, reps: int, seed: int) -> RateFit:
    """Least-squares slope of log variance against log n."""
    ns = tuple(int(v) for v in ns)
    if len(ns) < 3:
        raise ValueError("need at least 3 run counts")
    variances = []
    for n in ns:
        rep = run_bench(n, d, [kind], integrand, reps, seed)
        variances.append(rep.results[kind].var)
    if any(v <= 0.0 for v in variances):
        return RateFit(kind, ns, tuple(variances), None, True)
    slope = float(np.polyfit(np.log(ns), np.log(variances), 1)[0])
    return RateFit(kind, ns, tuple(variances), slope, False)


def format_estimates_csv(report: BenchReport) -> str:
    """Per-replication estimates for external plotting."""
    lines = ["kind,rep,estimate"]
    for kind, st in report.results.items():
        for r, v in enumerate(st.estimates):
            lines.append(f"{kind},{r},{v:.17g}")
    return "\n".join(lines) + "\n"
