"""Presentation matrix of the Alexander invariant G'/G'' from a Zariski presentation.

In a Zariski presentation the first r generators x_1..x_r (meridians)
abelianize to a basis of H_1 = Z^r and the remaining generators y_k
abelianize to zero.  The module is generated by x_ij = [x_i, x_j] (i < j)
and the y_k, with relations the rewritten relators plus the Jacobian
relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .laurent import LaurentMatrix, LaurentPoly, q_sum
from .linalg import determinant, hermite_rows
from .words import Character, GroupPresentation, Word, abelianization


class NotZariskiError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class InvariantGenerator:
    kind: str  # "comm" or "extra"
    i: int
    j: int = -1

    def __post_init__(self):
        if self.kind == "comm" and not self.i < self.j:
            raise ValueError("commutator generator needs i < j")
        if self.kind not in ("comm", "extra"):
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "comm":
            return f"x{self.i + 1}{self.j + 1}" if self.j < 9 else f"x{self.i + 1}_{self.j + 1}"
        return f"y{self.i + 1}"


class InvariantElement:
    """Finite Lambda-combination of invariant generators."""

    def __init__(self, nvars: int, coeffs: dict | None = None):
        self.nvars = nvars
        self.coeffs = {g: c for g, c in (coeffs or {}).items() if c}

    def add_term(self, g: InvariantGenerator, c: LaurentPoly):
        v = self.coeffs.get(g)
        v = c if v is None else v + c
        if v:
            self.coeffs[g] = v
        else:
            self.coeffs.pop(g, None)

    def __add__(self, other: "InvariantElement") -> "InvariantElement":
        out = InvariantElement(self.nvars, dict(self.coeffs))
        for g, c in other.coeffs.items():
            out.add_term(g, c)
        return out

    def __neg__(self):
        return InvariantElement(self.nvars, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p: LaurentPoly) -> "InvariantElement":
        return InvariantElement(self.nvars, {g: c * p for g, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, InvariantElement) and self.coeffs == other.coeffs

    def row(self, generators: Sequence[InvariantGenerator]) -> list[LaurentPoly]:
        extra = set(self.coeffs) - set(generators)
        if extra:
            raise ValueError(f"element uses generators outside the basis: {sorted(extra)}")
        return [self.coeffs.get(g, LaurentPoly.zero(self.nvars)) for g in generators]

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c.render()})*{g.label()}" for g, c in sorted(self.coeffs.items()))

    __repr__ = render


@dataclass
class InvariantPresentation:
    generators: list[InvariantGenerator]
    matrix: LaurentMatrix
    nrelator_rows: int

    def corank_at(self, chi: Character) -> tuple[int, int]:
        """(corank, rank) of the matrix specialized at chi."""
        ncols = len(self.generators)
        if self.matrix.nrows == 0 or ncols == 0:
            return ncols, 0
        rk = self.matrix.rank_at(chi)
        return ncols - rk, rk


def commutator_generators(r: int, s: int = 0) -> list[InvariantGenerator]:
    """Column order: x_ij lexicographic, then y_k."""
    gens = [InvariantGenerator("comm", i, j) for i, j in combinations(range(r), 2)]
    gens += [InvariantGenerator("extra", k) for k in range(s)]
    return gens


def zariski_rank(P: GroupPresentation) -> int:
    """Number r of meridians if P is a Zariski presentation, else raise NotZariskiError."""
    A = abelianization(P)
    if A.torsion:
        raise NotZariskiError(f"H1 has torsion {A.torsion}; no Zariski presentation exists")
    r = A.free_rank
    coords = [list(c) for c in A.coordinates]
    B = coords[:r]
    if r and abs(determinant(B)) != 1:
        raise NotZariskiError(f"the first {r} generators do not abelianize to a basis of H1 = Z^{r}")
    for k, c in enumerate(coords[r:]):
        if any(c):
            raise NotZariskiError(f"generator {P.names[r + k]} is not a meridian but has nonzero homology class")
    return r


@dataclass
class ZariskiForm:
    """A Zariski presentation Q of the same group together with the change of generators."""

    presentation: GroupPresentation
    rank: int
    new_in_old: list[Word]
    old_in_new: list[Word]
    source: GroupPresentation

    def transform_character(self, chi: Character) -> Character:
        return Character(chi.order, tuple(chi.value_exponent(w) for w in self.new_in_old))


def zariski_form(P: GroupPresentation) -> ZariskiForm:
    """Nielsen-transform the generators so that P becomes a Zariski presentation.

    Requires H1 to be free.  Row operations on the matrix of generator
    classes are mirrored as Nielsen moves on the generators.
    """
    A = abelianization(P)
    if A.torsion:
        raise NotZariskiError(f"H1 has torsion {A.torsion}; no Zariski presentation exists")
    n, r = P.ngens, A.free_rank
    if r == 0:
        return ZariskiForm(P, 0, [Word.gen(g) for g in range(n)], [Word.gen(g) for g in range(n)], P)
    H, ops = hermite_rows([list(c) for c in A.coordinates])
    for i in range(n):
        want = [int(i == j) for j in range(r)] if i < r else [0] * r
        if H[i] != want:
            raise NotZariskiError("generator classes do not span H1")  # cannot happen for a presentation
    new_in_old = [Word.gen(g) for g in range(n)]
    old_in_new = [Word.gen(g) for g in range(n)]
    for op in ops:
        if op[0] == "add":
            _, i, j, k = op
            new_in_old[i] = new_in_old[i] * new_in_old[j] ** k
            sub = [Word.gen(g) for g in range(n)]
            sub[i] = Word.gen(i) * Word.gen(j, -k)
            old_in_new = [w.substitute(sub) for w in old_in_new]
        elif op[0] == "swap":
            _, i, j = op
            new_in_old[i], new_in_old[j] = new_in_old[j], new_in_old[i]
            sub = [Word.gen(g) for g in range(n)]
            sub[i], sub[j] = Word.gen(j), Word.gen(i)
            old_in_new = [w.substitute(sub) for w in old_in_new]
        else:
            _, i = op
            new_in_old[i] = new_in_old[i].inverse()
            sub = [Word.gen(g) for g in range(n)]
            sub[i] = Word.gen(i, -1)
            old_in_new = [w.substitute(sub) for w in old_in_new]
    names = tuple([f"x{i + 1}" for i in range(r)] + [f"y{k + 1}" for k in range(n - r)])
    rels = tuple(w.substitute(old_in_new) for w in P.relators)
    Q = GroupPresentation(names, tuple(w for w in rels if w))
    return ZariskiForm(Q, r, new_in_old, old_in_new, P)


def _letter_ab(g: int, r: int) -> list[int]:
    v = [0] * r
    if g < r:
        v[g] = 1
    return v


def _telescope_factor(p: Sequence[int], i: int, r: int) -> dict:
    """Class of s(p) x_i s(p + e_i)^-1 as {(i, k): LaurentPoly}."""
    out = {}
    base = list(p[: i + 1]) + [0] * (r - i - 1)
    mid = [0] * r
    for k in range(i + 1, r):
        if p[k]:
            q = q_sum(p[k], k, r)
            mono = [a + b for a, b in zip(base, mid)]
            out[(i, k)] = -(q.shift(mono))
        mid[k] = p[k]
    return out


def rewrite_in_invariant(w: Word, P: GroupPresentation, r: int | None = None) -> InvariantElement:
    """Express a word of G' as a combination of the x_ij and y_k.

    ``r`` is the number of meridians; it is computed (and the presentation
    checked) when omitted.
    """
    if r is None:
        r = zariski_rank(P)
    letters = list(w.letters())
    total = [0] * r
    for g, s in letters:
        if g < r:
            total[g] += s
    if any(total):
        raise ValueError("word is not in the commutator subgroup")
    out = InvariantElement(r)
    # explicit stack of (lo, hi, shift): contributes t^shift * class(letters[lo:hi])
    stack = [(0, len(letters), (0,) * r)]
    while stack:
        lo, hi, shift = stack.pop()
        if hi - lo == 0:
            continue
        g0, s0 = letters[lo]
        g1, s1 = letters[hi - 1]
        if hi - lo >= 2 and g0 == g1 and s0 == -s1:
            ab = _letter_ab(g0, r)
            stack.append((lo + 1, hi - 1, tuple(a + s0 * b for a, b in zip(shift, ab))))
            continue
        split = None
        p = [0] * r
        for k in range(lo, hi - 1):
            g, s = letters[k]
            if g < r:
                p[g] += s
                if not any(p):
                    split = k + 1
                    break
        if split is not None:
            stack.append((split, hi, shift))
            stack.append((lo, split, shift))
            continue
        p = [0] * r
        for g, s in letters[lo:hi]:
            if g >= r:
                out.add_term(InvariantGenerator("extra", g - r), LaurentPoly.monomial(
                    [a + b for a, b in zip(shift, p)], s))
                continue
            if s > 0:
                terms = _telescope_factor(p, g, r)
                sign = 1
                p[g] += 1
            else:
                p[g] -= 1
                terms = _telescope_factor(p, g, r)
                sign = -1
            for (i, k), c in terms.items():
                c = c.shift(shift)
                out.add_term(InvariantGenerator("comm", i, k), c if sign > 0 else -c)
    return out


def jacobian_relations(r: int) -> list[InvariantElement]:
    """J(i,j,k) = (t_k - 1) x_ij - (t_j - 1) x_ik + (t_i - 1) x_jk for i < j < k."""
    rows = []
    for i, j, k in combinations(range(r), 3):
        def tm1(a):
            return LaurentPoly.var(r, a) - 1
        e = InvariantElement(r)
        e.add_term(InvariantGenerator("comm", i, j), tm1(k))
        e.add_term(InvariantGenerator("comm", i, k), -tm1(j))
        e.add_term(InvariantGenerator("comm", j, k), tm1(i))
        rows.append(e)
    return rows


def invariant_matrix(P: GroupPresentation) -> InvariantPresentation:
    """Relator rewrites followed by the Jacobian rows; columns x_ij then y_k."""
    r = zariski_rank(P)
    gens = commutator_generators(r, P.ngens - r)
    rows = [rewrite_in_invariant(R, P, r).row(gens) for R in P.relators]
    nrel = len(rows)
    rows += [J.row(gens) for J in jacobian_relations(r)]
    return InvariantPresentation(gens, LaurentMatrix(r, rows, len(gens)), nrel)


def theta_of_element(e: InvariantElement, P: GroupPresentation, r: int) -> list[LaurentPoly]:
    """Image under x_ij -> (1 - t_j) e_i + (t_i - 1) e_j, y_k -> e_{r+k}."""
    out = [LaurentPoly.zero(r) for _ in range(P.ngens)]
    for g, c in e.coeffs.items():
        if g.kind == "comm":
            out[g.i] = out[g.i] + c * (1 - LaurentPoly.var(r, g.j))
            out[g.j] = out[g.j] + c * (LaurentPoly.var(r, g.i) - 1)
        else:
            out[r + g.i] = out[r + g.i] + c
    return out


def zariski_ab_map(r: int, ngens: int) -> list[tuple[int, ...]]:
    return [tuple(_letter_ab(g, r)) for g in range(ngens)]


__all__ = [
    "NotZariskiError", "InvariantGenerator", "InvariantElement", "InvariantPresentation",
    "commutator_generators", "zariski_rank", "ZariskiForm", "zariski_form",
    "rewrite_in_invariant", "jacobian_relations", "invariant_matrix", "theta_of_element",
    "zariski_ab_map",
]
