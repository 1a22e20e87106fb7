"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coordinate vectors in the power basis 1, x, ..., x^(phi(N)-1)
of Q[x]/Phi_N(x), with zeta_N represented by x.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, lowest degree first."""
    if N < 1:
        raise ValueError("N must be positive")
    num = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(a: list[int], b: Sequence[int]) -> list[int]:
    # b is monic
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    assert not any(a[:db]), "inexact cyclotomic division"
    return q


def totient(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


def _reduce(coeffs: list, N: int) -> tuple:
    """Reduce a polynomial (lowest degree first) modulo Phi_N."""
    phi = cyclotomic_polynomial(N)
    d = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, d - 1, -1):
        a = c[i]
        if a:
            for j in range(d):
                if phi[j]:
                    c[i - d + j] -= a * phi[j]
            c[i] = 0
    c = c[:d] + [0] * (d - len(c))
    return tuple(Fraction(x) for x in c)


class CyclotomicNumber:
    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: Sequence):
        d = totient(order)
        if len(coords) != d:
            raise ValueError(f"Q(zeta_{order}) needs {d} coordinates, got {len(coords)}")
        self.order = order
        self.coords = tuple(Fraction(c) for c in coords)

    @classmethod
    def from_int(cls, N: int, a) -> "CyclotomicNumber":
        return cls(N, [a] + [0] * (totient(N) - 1))

    @classmethod
    def from_root_counts(cls, N: int, counts: Sequence) -> "CyclotomicNumber":
        """The element sum_k counts[k] * zeta_N^k."""
        return cls(N, _reduce(list(counts), N))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def lift(self, M: int) -> "CyclotomicNumber":
        """Same element viewed in Q(zeta_M), M a multiple of the order."""
        if M == self.order:
            return self
        if M % self.order:
            raise ValueError(f"cannot lift from order {self.order} to {M}")
        k = M // self.order
        poly = [Fraction(0)] * (k * (len(self.coords) - 1) + 1)
        for i, c in enumerate(self.coords):
            poly[i * k] = c
        return CyclotomicNumber(M, _reduce(poly, M))

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_int(self.order, other)
        if other.order == self.order:
            return self, other
        L = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(L), other.lift(L)

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-x for x in self.coords])

    def __sub__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.order, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber(self.order, [x * other for x in self.coords])
        a, b = self._common(other)
        prod = [Fraction(0)] * (2 * len(a.coords) - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(a.order, _reduce(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        N = self.order
        inv = _poly_inverse_mod(list(self.coords), [Fraction(c) for c in cyclotomic_polynomial(N)])
        return CyclotomicNumber(N, _reduce(inv, N))

    def __truediv__(self, other):
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber(self.order, [x / other for x in self.coords])
        a, b = self._common(other)
        return a * b.inverse()

    def __eq__(self, other):
        if not isinstance(other, CyclotomicNumber):
            if isinstance(other, (int, Fraction)):
                other = CyclotomicNumber.from_int(self.order, other)
            else:
                return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    # equality is by value across orders, so there is no cheap consistent hash
    __hash__ = None

    def to_complex(self) -> complex:
        w = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum(float(c) * w ** i for i, c in enumerate(self.coords))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.order}^{i}")
        return " + ".join(terms) or "0"


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for j, bj in enumerate(b):
            a[s + j] -= c * bj
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m over Q by the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_trim(_poly_sub(s0, _poly_mul(q, s1)))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def embed_root(N: int, a: int) -> CyclotomicNumber:
    """zeta_N ** a in the power basis of Q(zeta_N)."""
    if N < 1:
        raise ValueError("N must be positive")
    counts = [0] * N
    counts[a % N] = 1
    return CyclotomicNumber.from_root_counts(N, counts)


__all__ = ["cyclotomic_polynomial", "totient", "CyclotomicNumber", "embed_root"]
