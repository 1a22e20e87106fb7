"""Abelianized Fox calculus."""

from __future__ import annotations

from typing import Sequence

from .laurent import LaurentMatrix, LaurentPoly
from .words import GroupPresentation, Word


def _identity_map(n: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def fox_derivatives(w: Word, ngens: int, ab: Sequence[Sequence[int]] | None = None) -> list[LaurentPoly]:
    """All abelianized Fox derivatives of w at once.

    ``ab[g]`` is the exponent vector of t attached to generator g; by
    default generator g gets its own variable t_g.
    """
    if ab is None:
        ab = _identity_map(ngens)
    nv = len(ab[0]) if ab else 0
    acc: list[dict] = [dict() for _ in range(ngens)]
    prefix = [0] * nv
    for g, s in w.letters():
        if s > 0:
            key = tuple(prefix)
            acc[g][key] = acc[g].get(key, 0) + 1
            prefix = [a + b for a, b in zip(prefix, ab[g])]
        else:
            prefix = [a - b for a, b in zip(prefix, ab[g])]
            key = tuple(prefix)
            acc[g][key] = acc[g].get(key, 0) - 1
    return [LaurentPoly(nv, d) for d in acc]


def fox_derivative(w: Word, g: int, P: GroupPresentation) -> LaurentPoly:
    if not 0 <= g < P.ngens:
        raise KeyError(f"unknown generator index {g}")
    return fox_derivatives(w, P.ngens)[g]


def alexander_matrix(P: GroupPresentation, ab: Sequence[Sequence[int]] | None = None) -> LaurentMatrix:
    """Row per relator, column per generator."""
    nv = len(ab[0]) if ab else P.ngens
    rows = [fox_derivatives(r, P.ngens, ab) for r in P.relators]
    return LaurentMatrix(nv, rows, P.ngens)


def theta_embed(w: Word, P: GroupPresentation) -> list[LaurentPoly]:
    """Fox-derivative vector of a word in the commutator subgroup."""
    if any(w.exponent_sums(P.ngens)):
        raise ValueError("word is not in the commutator subgroup")
    return fox_derivatives(w, P.ngens)


__all__ = ["fox_derivatives", "fox_derivative", "alexander_matrix", "theta_embed"]
