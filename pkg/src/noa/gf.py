"""Finite field arithmetic GF(p^m).

Elements are plain integers in [0, s) with s = p^m.  The base-p digits of
an element's index, least significant first, are the coefficients of
1, alpha, ..., alpha^(m-1), so index 0 is the additive identity, index 1
the multiplicative identity, and GF(4) enumerates as 0, 1, a, a+1.

Addition is digit-wise mod p; multiplication is polynomial multiplication
reduced modulo a fixed irreducible.  The irreducible is the smallest monic
irreducible of degree m, where "smallest" reads the coefficient vector
(constant term as the least significant digit) as a base-p integer.  Both
operations are backed by precomputed s-by-s tables, which is plenty at the
field orders used here (a few hundred at most).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import FieldOverflowError, IndexRangeError, NotPrimeError

MAX_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(s: int) -> tuple[int, int] | None:
    """Decompose s as p^m with p prime, or return None."""
    if s < 2:
        return None
    p = 2
    while p * p <= s:
        if s % p == 0:
            m = 0
            q = s
            while q % p == 0:
                q //= p
                m += 1
            return (p, m) if q == 1 else None
        p += 1
    return (s, 1)


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division of coefficient lists (constant first) over GF(p); den monic."""
    num = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    for shift in range(len(num) - len(den), -1, -1):
        coef = num[shift + len(den) - 1]
        if coef == 0:
            continue
        quot[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - coef * d) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _monic_polys(degree: int, p: int):
    for low in range(p**degree):
        coeffs = []
        v = low
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield coeffs + [1]


def _is_irreducible(poly: list[int], p: int) -> bool:
    degree = len(poly) - 1
    for deg in range(1, degree // 2 + 1):
        for den in _monic_polys(deg, p):
            _, rem = _poly_divmod(poly, den, p)
            if rem == [0]:
                return False
    return True


def _find_irreducible(p: int, m: int) -> list[int]:
    for poly in _monic_polys(m, p):
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible of degree {m} over GF({p})")


class FieldSpec:
    """Arithmetic context for GF(p^m).  Immutable after construction."""

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise NotPrimeError(f"p={p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree m={m} must be >= 1")
        s = p**m
        if s > MAX_ORDER:
            raise FieldOverflowError(f"field order {p}^{m} exceeds {MAX_ORDER}")
        self.p = p
        self.m = m
        self.s = s
        self.irreducible = _find_irreducible(p, m)
        self.add_table, self.mul_table = self._build_tables()
        self.add_table.flags.writeable = False
        self.mul_table.flags.writeable = False

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digits: list[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _mul_raw(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce alpha^k for k >= m using alpha^m = -(lower irreducible coeffs)
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * self.irreducible[i]) % p
        return self._undigits(prod[:m])

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        s, p, m = self.s, self.p, self.m
        idx = np.arange(s)
        digits = np.stack([(idx // p**k) % p for k in range(m)], axis=1)
        add_digits = (digits[:, None, :] + digits[None, :, :]) % p
        weights = p ** np.arange(m)
        add = (add_digits * weights).sum(axis=2)
        mul = np.empty((s, s), dtype=np.int64)
        for a in range(s):
            for b in range(a, s):
                v = self._mul_raw(a, b)
                mul[a, b] = v
                mul[b, a] = v
        return add.astype(np.int64), mul

    def _check(self, *elems: int) -> None:
        for a in elems:
            if not 0 <= a < self.s:
                raise IndexRangeError(f"element {a} outside [0, {self.s})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def poly_eval(self, coeffs: list[int], x: int) -> int:
        """Horner evaluation of a polynomial given constant-first coefficients."""
        if not coeffs:
            raise ValueError("coeffs must be nonempty")
        self._check(x, *coeffs)
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = int(self.add_table[self.mul_table[acc, x], c])
        return acc

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m})"


@lru_cache(maxsize=None)
def field_new(p: int, m: int) -> FieldSpec:
    """Return the GF(p^m) context; cached since construction is deterministic."""
    return FieldSpec(p, m)


def field_of_order(s: int) -> FieldSpec:
    pm = prime_power(s)
    if pm is None:
        raise NotPrimeError(f"{s} is not a prime power")
    return field_new(*pm)
