"""Depths of characters and torsion scans of characteristic varieties."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

from .fox import alexander_matrix
from .invariant import NotZariskiError, invariant_matrix, zariski_form, zariski_rank
from .linalg import smith_normal_form
from .words import Character, GroupPresentation, Word, abelianization, validate_character

METHODS = ("auto", "fox", "invariant", "both")
DEFAULT_SCAN_BUDGET = 200_000


class DepthMismatchError(RuntimeError):
    """The Fox and invariant computations disagree (this indicates a bug)."""


@dataclass(frozen=True)
class DepthReport:
    character: Character
    depth: int
    method: str
    ranks: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def stratum(self) -> str:
        return f"V_{self.depth}"

    def to_json(self) -> dict:
        return {"character": self.character.to_json(), "depth": self.depth,
                "method": self.method, "ranks": dict(self.ranks), "stratum": self.stratum}


class _Context:
    """Matrices of one presentation, built lazily and reused across characters."""

    def __init__(self, P: GroupPresentation):
        self.P = P
        self._fox = None
        self._inv = None

    @property
    def fox(self):
        if self._fox is None:
            self._fox = alexander_matrix(self.P)
        return self._fox

    @property
    def invariant(self):
        """(form, invariant presentation); form is None when P is already Zariski."""
        if self._inv is None:
            try:
                zariski_rank(self.P)
                form, Q = None, self.P
            except NotZariskiError:
                form = zariski_form(self.P)
                Q = form.presentation
            self._inv = (form, invariant_matrix(Q))
        return self._inv

    def fox_depth(self, chi: Character) -> tuple[int, int]:
        n = self.P.ngens
        if self.fox.nrows == 0:
            return n - 1, 0
        rk = self.fox.rank_at(chi)
        return n - 1 - rk, rk

    def invariant_depth(self, chi: Character) -> tuple[int, int]:
        form, inv = self.invariant
        if form is not None:
            chi = form.transform_character(chi)
        r = inv.matrix.nvars
        return inv.corank_at(chi.restrict(range(r)))


@lru_cache(maxsize=64)
def _context(P: GroupPresentation) -> _Context:
    return _Context(P)


def depth(P: GroupPresentation, chi: Character, method: str = "auto") -> DepthReport:
    """Depth of chi.

    fox:       #generators - 1 - rank of the Alexander matrix at chi (chi != 1)
    invariant: corank of the Alexander-invariant matrix at chi; a
               non-Zariski presentation is first Nielsen-transformed
    both:      run both and insist they agree (chi != 1)
    auto:      fox away from the trivial character, invariant at it
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    ok, why = validate_character(chi, P)
    if not ok:
        raise ValueError(f"invalid character: {why}")
    ctx = _context(P)
    trivial = chi.is_trivial()
    if method == "fox" and trivial:
        raise ValueError("the fox method does not apply to the trivial character")
    if method == "auto":
        method = "invariant" if trivial else "fox"
    if method == "both" and trivial:
        method = "invariant"
    ranks = {}
    if method in ("fox", "both"):
        d_fox, ranks["fox"] = ctx.fox_depth(chi)
    if method in ("invariant", "both"):
        d_inv, ranks["invariant"] = ctx.invariant_depth(chi)
    if method == "both" and d_fox != d_inv:
        raise DepthMismatchError(f"fox depth {d_fox} != invariant depth {d_inv} at {chi}")
    d = d_fox if method in ("fox", "both") else d_inv
    return DepthReport(chi, d, method, ranks)


def character_lattice(P: GroupPresentation, N: int, mask: Sequence[int] | None = None) -> list[Character]:
    """All valid characters of order dividing N, supported on ``mask`` if given.

    Solutions of R e = 0 mod N come from the Smith form U R V = D: with
    f = V^-1 e the system splits into d_i f_i = 0 mod N.
    """
    n = P.ngens
    cols = list(range(n)) if mask is None else sorted(set(mask))
    R = [[row[c] for c in cols] for row in P.relation_matrix()]
    if P.degrees is not None:
        R.append([P.degrees[c] for c in cols])
    m = len(cols)
    if R:
        D, _, V = smith_normal_form(R)
        diag = [D[i][i] if i < len(D) else 0 for i in range(m)]
    else:
        V = [[int(i == j) for j in range(m)] for i in range(m)]
        diag = [0] * m
    ranges = []
    for d in diag:
        g = math.gcd(d, N)  # gcd(0, N) = N: free coordinate
        step = N // g
        ranges.append([k * step for k in range(g)])
    out = set()
    for f in product(*ranges):
        e = [sum(V[i][j] * f[j] for j in range(m)) % N for i in range(m)]
        full = [0] * n
        for c, x in zip(cols, e):
            full[c] = x
        out.add(tuple(full))
    chars = [Character(N, e) for e in sorted(out)]
    return [c for c in chars if validate_character(c, P)[0]]


def lattice_size(P: GroupPresentation, N: int, mask: Sequence[int] | None = None) -> int:
    m = P.ngens if mask is None else len(set(mask))
    return N ** m


def _scan_chunk(args):
    P, chars, method = args
    out = []
    for chi in chars:
        rep = depth(P, chi, method)
        if rep.depth:
            out.append(rep)
    return out


def torsion_scan(P: GroupPresentation, N: int, mask: Sequence[int] | None = None,
                 method: str = "auto", jobs: int = 1, budget: int = DEFAULT_SCAN_BUDGET,
                 include_trivial: bool | None = None) -> dict[Character, DepthReport]:
    """Depth of every valid character of order dividing N; depth-0 characters are omitted.

    The trivial character is included when its depth is computable, i.e.
    when H1 is free (it needs the invariant method).
    """
    size = lattice_size(P, N, mask)
    if size > budget:
        raise ValueError(f"{size} candidate characters exceed the budget {budget}; "
                         "restrict the scan with a mask")
    chars = character_lattice(P, N, mask)
    if include_trivial is None:
        include_trivial = method != "fox" and abelianization(P).is_free()
    if not include_trivial:
        chars = [c for c in chars if not c.is_trivial()]
    if jobs > 1 and len(chars) > 1:
        k = max(1, len(chars) // (4 * jobs))
        chunks = [(P, chars[i:i + k], method) for i in range(0, len(chars), k)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = [r for part in ex.map(_scan_chunk, chunks) for r in part]
    else:
        results = _scan_chunk((P, chars, method))
    return {r.character: r for r in sorted(results, key=lambda r: r.character.exponents)}


def kill_generators(P: GroupPresentation, remove: Sequence[int]) -> tuple[GroupPresentation, list[int]]:
    """Quotient by the given meridians (filling in those components).

    Returns the simplified presentation and the indices of P's generators
    it keeps, in the order of the new generators.
    """
    from .covers import tietze_simplify

    remove = set(remove)
    Q = P.with_relators(Word.gen(g) for g in sorted(remove))
    keep = [g for g in range(P.ngens) if g not in remove]
    S, _ = tietze_simplify(Q, keep=keep)
    kept = [P.index(nm) for nm in S.names]
    return GroupPresentation(S.names, S.relators), kept


def classify_coordinate(chi: Character, P: GroupPresentation,
                        deletion: tuple[GroupPresentation, Sequence[int]] | None = None) -> dict:
    """Coordinate / essential-candidate label for a character.

    ``deletion`` is (Q, keep): Q presents the complement with the components
    where chi is trivial removed, and keep[i] is the generator of P that
    becomes generator i of Q.  When omitted it is built by killing those
    meridians.
    """
    if chi.is_trivial() or all(chi.exponents):
        return {"label": "non-coordinate", "depth": None, "sub_depth": None}
    d = depth(P, chi).depth
    if deletion is None:
        deletion = kill_generators(P, [g for g, e in enumerate(chi.exponents) if e == 0])
    Q, keep = deletion
    sub = chi.restrict(keep)
    ok, why = validate_character(sub, Q)
    if not ok:
        raise ValueError(f"restricted character is invalid on the sub-presentation: {why}")
    sd = depth(Q, sub).depth if not sub.is_trivial() else None
    if sd is None:
        label = "coordinate"
    else:
        label = "essential-candidate" if d > sd else "coordinate"
    return {"label": label, "depth": d, "sub_depth": sd}


__all__ = [
    "METHODS", "DepthMismatchError", "DepthReport", "depth", "character_lattice",
    "torsion_scan", "kill_generators", "classify_coordinate",
]
