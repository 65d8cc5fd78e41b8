"""Nested orthogonal array construction.

The main entry points are ``plan_noa``/``construct_noa`` for the strength-3
ladder, ``construct_tang`` for the strength-2 ladder, and ``construct_lhs``
for a plain Latin hypercube.  All constructions are pure functions of their
parameters and a single user seed.

The strength-3 design is built by combining a replicated strength-3 Bush
array at s3 levels (first column discarded, so rows sharing a leading
coefficient form contiguous blocks of s3^2 rows that are strength 2 on the
remaining columns) with a replicated, shuffled strength-2 Bush array at p^c
levels, one row per block: out = coarse * p^c + fine.  The result has s2 =
p^c * s3 levels, keeps strength 3 under the coarse strata, gains strength 2
at s2, and is then expanded to n distinct levels per column to add the
Latin hypercube rung.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bush import bush_construct
from .designs import Design, check_strength, collapse
from .errors import (
    InternalInvariantError,
    NoNontrivialPlanError,
    UnbalancedColumnError,
)
from .gf import field_new, field_of_order, is_prime, prime_power
from .rng import (
    STAGE_EXPAND,
    STAGE_LHS,
    STAGE_RELABEL2,
    STAGE_RELABEL3,
    STAGE_SHUFFLE2,
    stream,
)


@dataclass(frozen=True)
class NoaPlan:
    """Parameter ladder for an n-run, d-factor strength-3 nested design.

    Identities: k3 * s3^3 = n, b * p^(2c) = k3 * s3, s2 = p^c * s3,
    n / s2^2 = b.
    """

    n: int
    d: int
    s3: int
    k3: int
    p: int
    c: int
    b: int
    s2: int


@dataclass(frozen=True)
class NestedDesign:
    design: Design
    ladder: tuple[tuple[int, int], ...]  # (levels, strength) pairs
    seed: int
    plan: NoaPlan | None = None


def _largest_prime_power_cube_divisor(n: int) -> int | None:
    best = None
    q = 2
    while q**3 <= n:
        if n % q**3 == 0 and prime_power(q) is not None:
            best = q
        q += 1
    return best


def plan_noa(n: int, d: int) -> NoaPlan:
    """Solve the divisibility ladder for (n, d).

    s3 is the largest prime power whose cube divides n; among all (p, c)
    with p^(2c) dividing k3*s3 and p^c + 1 >= d, the pair maximizing p^c is
    chosen (ties broken toward smaller p), which maximizes the strength-2
    resolution s2 = p^c * s3.
    """
    if n < 8:
        raise ValueError(f"n={n} must be >= 8")
    if d < 3:
        raise ValueError(f"d={d} must be >= 3")
    if not any(is_prime(p) and n % p**4 == 0 for p in range(2, int(n**0.25) + 2)):
        raise NoNontrivialPlanError(
            f"no prime p with p^4 dividing n={n}; only the trivial ladders "
            "s2=s3 or s3=1 exist (consider the strength-2 construction instead)"
        )
    s3 = _largest_prime_power_cube_divisor(n)
    if s3 is None or d > s3:
        raise NoNontrivialPlanError(
            f"need d <= s3 but d={d}, s3={s3} for n={n} "
            "(consider the strength-2 construction instead)"
        )
    k3 = n // s3**3
    best: tuple[int, int] | None = None
    residual = k3 * s3
    for p in range(2, residual + 1):
        if not is_prime(p) or residual % (p * p) != 0:
            continue
        c = 1
        while residual % p ** (2 * (c + 1)) == 0:
            c += 1
        if p**c + 1 < d:
            continue
        if best is None or p**c > best[0] ** best[1]:
            best = (p, c)
    if best is None:
        raise NoNontrivialPlanError(
            f"no prime p with p^2 | k3*s3 = {residual} and p^c + 1 >= d={d} "
            f"(n={n}, s3={s3}, k3={k3})"
        )
    p, c = best
    b = residual // p ** (2 * c)
    return NoaPlan(n=n, d=d, s3=s3, k3=k3, p=p, c=c, b=b, s2=p**c * s3)


def _bush_columns(field, t: int, d: int) -> np.ndarray:
    """The d evaluation columns of a Bush array, preferring columns 1..d.

    Column 0 is discarded unless d = s + 1 forces its use; for the coarse
    strength-3 array the caller never allows that case.
    """
    mat = bush_construct(field, t).matrix
    if d <= field.s:
        return mat[:, 1 : 1 + d]
    return mat[:, :d]


def _relabel_replicate(base: np.ndarray, k: int, s: int, seed: int, stage: int) -> np.ndarray:
    """Stack k copies, relabeling each copy's levels per column independently."""
    n0, d = base.shape
    out = np.empty((k * n0, d), dtype=np.int64)
    for r in range(k):
        block = out[r * n0 : (r + 1) * n0]
        for j in range(d):
            perm = stream(seed, stage, r, j).permutation(s)
            block[:, j] = perm[base[:, j]]
    return out


def _expand_levels(mat: np.ndarray, s: int, seed: int, stage: int) -> np.ndarray:
    """Map each level's n/s occurrences to distinct fine levels, per column.

    Occurrences of level i in column j become a random arrangement of
    [i*n/s, (i+1)*n/s), so every column ends up a permutation of 0..n-1 and
    integer-dividing by n/s recovers the input.
    """
    n, d = mat.shape
    if n % s != 0:
        raise UnbalancedColumnError(f"n={n} not divisible by s={s}")
    m = n // s
    out = np.empty_like(mat)
    for j in range(d):
        col = mat[:, j]
        counts = np.bincount(col, minlength=s)
        if (counts != m).any():
            lev = int(np.flatnonzero(counts != m)[0])
            raise UnbalancedColumnError(
                f"column {j}: level {lev} occurs {int(counts[lev])} times, expected {m}"
            )
        order = np.argsort(col, kind="stable")
        rng = stream(seed, stage, j)
        for lev in range(s):
            rows = order[lev * m : (lev + 1) * m]
            out[rows, j] = lev * m + rng.permutation(m)
    return out


def _verify_ladder(design: Design, ladder) -> None:
    for levels, t in ladder:
        rung = collapse(design, levels)
        report = check_strength(rung, t)
        want = design.n // levels**t
        if not report.ok or report.lam != want:
            raise InternalInvariantError(
                f"constructed design fails strength {t} at {levels} levels: {report}"
            )


def construct_noa(plan: NoaPlan, seed: int) -> NestedDesign:
    """Build the strength-3 nested design for a plan, deterministically per seed."""
    s3, k3, d = plan.s3, plan.k3, plan.d
    pc = plan.p**plan.c
    coarse = _bush_columns(field_of_order(s3), 3, d)  # d <= s3, column 0 dropped
    coarse = _relabel_replicate(coarse, k3, s3, seed, STAGE_RELABEL3)
    fine = _bush_columns(field_new(plan.p, plan.c), 2, d)
    fine = _relabel_replicate(fine, plan.b, pc, seed, STAGE_RELABEL2)
    fine = fine[stream(seed, STAGE_SHUFFLE2).permutation(fine.shape[0])]
    # one fine row per contiguous block of s3^2 coarse rows
    combined = coarse * pc + np.repeat(fine, s3 * s3, axis=0)
    final = _expand_levels(combined, plan.s2, seed, STAGE_EXPAND)
    design = Design(final, s=plan.n)
    ladder = ((plan.n, 1), (plan.s2, 2), (s3, 3))
    if __debug__:
        _verify_ladder(design, ladder)
    return NestedDesign(design=design, ladder=ladder, seed=seed, plan=plan)


def construct_lhs(n: int, d: int, seed: int) -> Design:
    """Latin hypercube: each column an independent uniform permutation of 0..n-1."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    mat = np.empty((n, d), dtype=np.int64)
    for j in range(d):
        mat[:, j] = stream(seed, STAGE_LHS, j).permutation(n)
    return Design(mat, s=n)


def expand_to_lhs(design: Design, seed: int) -> Design:
    """Refine a level-balanced design to n distinct levels per column.

    Collapsing the result back to design.s recovers the input exactly; with
    a strength-2 input this is the orthogonal-array-based Latin hypercube.
    """
    return Design(
        _expand_levels(design.matrix, design.s, seed, STAGE_EXPAND), s=design.n
    )


def construct_tang(n: int, d: int, seed: int) -> NestedDesign:
    """Strength-2 nested design: Bush array at s2 levels expanded to n levels."""
    if n < 4 or d < 2:
        raise ValueError("need n >= 4 and d >= 2")
    s2 = None
    q = 2
    while q * q <= n:
        if n % (q * q) == 0 and prime_power(q) is not None and q + 1 >= d:
            s2 = q
        q += 1
    if s2 is None:
        raise NoNontrivialPlanError(
            f"no prime power s2 with s2^2 | n={n} and s2 + 1 >= d={d}"
        )
    base = _bush_columns(field_of_order(s2), 2, d)
    k = n // (s2 * s2)
    mat = _relabel_replicate(base, k, s2, seed, STAGE_RELABEL2)
    final = _expand_levels(mat, s2, seed, STAGE_EXPAND)
    design = Design(final, s=n)
    ladder = ((n, 1), (s2, 2))
    if __debug__:
        _verify_ladder(design, ladder)
    return NestedDesign(design=design, ladder=ladder, seed=seed, plan=None)
