"""Bush's orthogonal array construction over GF(s).

Produces an s^t x (s+1) array of strength t for prime-power s.  Row i
corresponds to the polynomial whose coefficient vector is the base-s digit
expansion of i, with the coefficient of y^(t-1) as the most significant
digit.  Column 0 holds that leading coefficient; column j >= 1 holds the
polynomial evaluated at field element j-1.

The row order is part of the contract: all rows sharing a leading
coefficient are contiguous (s^(t-1) of them), which the nested combiner
relies on.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .designs import Design
from .errors import StrengthError
from .gf import FieldSpec, field_new


def bush_construct(field: FieldSpec, t: int) -> Design:
    return _bush_cached(field.p, field.m, t)


@lru_cache(maxsize=None)
def _bush_cached(p: int, m: int, t: int) -> Design:
    field = field_new(p, m)
    s = field.s
    if not 1 <= t <= 3:
        raise StrengthError(f"strength t={t} outside supported range [1, 3]")
    if s < 2:
        raise StrengthError(f"field order {s} too small")
    n = s**t
    idx = np.arange(n)
    # coeffs[:, k] is the coefficient of y^k; the leading one is most significant
    coeffs = np.stack([(idx // s**k) % s for k in range(t)], axis=1)
    mat = np.empty((n, s + 1), dtype=np.int64)
    mat[:, 0] = coeffs[:, t - 1]
    add, mul = field.add_table, field.mul_table
    for x in range(s):
        acc = coeffs[:, t - 1]
        for k in range(t - 2, -1, -1):
            acc = add[mul[acc, x], coeffs[:, k]]
        mat[:, 1 + x] = acc
    return Design(mat, s=s)
