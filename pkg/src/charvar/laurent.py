"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CyclotomicNumber
from .words import Character


class LaurentPoly:
    """Element of Z[t_1^+-1, ..., t_r^+-1] stored as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
            if c:
                clean[tuple(mono)] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return LaurentPoly(self.nvars, {tuple(k * a for a in m): c ** (-k)})
        out = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exps."""
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(m, exps)): c
                                        for m, c in self.terms.items()})

    def at_one(self) -> int:
        return sum(self.terms.values())

    def root_counts(self, chi: Character) -> list[int]:
        """Coefficients k -> c_k of the specialization sum_k c_k zeta_N^k."""
        if len(chi) != self.nvars:
            raise ValueError(f"character has {len(chi)} exponents, polynomial has {self.nvars} variables")
        N = chi.order
        counts = [0] * N
        ex = chi.exponents
        for m, c in self.terms.items():
            counts[sum(a * b for a, b in zip(m, ex)) % N] += c
        return counts

    def evaluate(self, chi: Character) -> CyclotomicNumber:
        """Specialize t_i -> zeta_N^chi[i]."""
        return CyclotomicNumber.from_root_counts(chi.order, self.root_counts(chi))

    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Ring map sending t_i to the unit monomial images[i]."""
        nv = images[0].nvars if images else 0
        out = LaurentPoly.zero(nv)
        for m, c in self.terms.items():
            term = LaurentPoly.const(nv, c)
            for i, a in enumerate(m):
                if a:
                    term = term * images[i] ** a
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending lexicographic order of exponents."""
        return sorted(self.terms.items(), key=lambda mc: mc[0], reverse=True)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms():
            factors = [names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self.render()})"

    __str__ = render


def parse_laurent(text: str, names: Sequence[str]) -> LaurentPoly:
    """Parse the canonical rendering back, e.g. ``3*t1^2*t2^-1 - 1``."""
    nv = len(names)
    idx = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(nv)
    tokens = re.findall(r"[+-]|[^+-]+", text.replace("^-", "^~"))
    out = LaurentPoly.zero(nv)
    sign = 1
    for tok in tokens:
        tok = tok.strip()
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            continue
        coeff = sign
        exps = [0] * nv
        for f in tok.split("*"):
            f = f.strip().replace("^~", "^-")
            if re.fullmatch(r"\d+", f):
                coeff *= int(f)
                continue
            name, _, power = f.partition("^")
            if name not in idx:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            exps[idx[name]] += int(power) if power else 1
        out = out + LaurentPoly.monomial(exps, coeff)
        sign = 1
    return out


def phi(n: int, var: int, nvars: int) -> LaurentPoly:
    """1 + t + ... + t^(n-1) in variable ``var``."""
    if n < 1:
        raise ValueError("phi(n) needs n >= 1")
    out = {}
    for k in range(n):
        e = [0] * nvars
        e[var] = k
        out[tuple(e)] = 1
    return LaurentPoly(nvars, out)


def q_sum(m: int, var: int, nvars: int) -> LaurentPoly:
    """(t^m - 1)/(t - 1) for any integer m (negative m gives -t^m - ... - t^-1)."""
    if m >= 0:
        return phi(m, var, nvars) if m else LaurentPoly.zero(nvars)
    out = {}
    for k in range(m, 0):
        e = [0] * nvars
        e[var] = k
        out[tuple(e)] = -1
    return LaurentPoly(nvars, out)


class LaurentMatrix:
    """Dense grid of LaurentPoly entries sharing one variable count."""

    def __init__(self, nvars: int, rows: Iterable[Sequence[LaurentPoly]], ncols: int | None = None):
        self.nvars = nvars
        self.rows = [list(r) for r in rows]
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            for x in r:
                if x.nvars != nvars:
                    raise ValueError("entries must share the variable count")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.shape == other.shape and self.rows == other.rows

    def evaluate(self, chi: Character) -> list[list[CyclotomicNumber]]:
        return [[x.evaluate(chi) for x in row] for row in self.rows]

    def rank_at(self, chi: Character) -> int:
        """Exact rank of the specialization at chi."""
        from .linalg import rank_root_counts

        return rank_root_counts([[x.root_counts(chi) for x in row] for row in self.rows], chi.order)

    def render(self, names: Sequence[str] | None = None) -> str:
        """One row per line, entries separated by ' | '."""
        return "\n".join(" | ".join(x.render(names) for x in row) for row in self.rows)

    @classmethod
    def parse(cls, text: str, names: Sequence[str], ncols: int | None = None) -> "LaurentMatrix":
        rows = [[parse_laurent(cell, names) for cell in line.split("|")]
                for line in text.strip().splitlines() if line.strip()]
        return cls(len(names), rows, ncols)


__all__ = ["LaurentPoly", "LaurentMatrix", "parse_laurent", "phi", "q_sum"]
