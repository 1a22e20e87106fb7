"""Reidemeister-Schreier presentations for kernels of maps onto finite abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Sequence

from .linalg import invariant_factors
from .words import GroupPresentation, Word


@dataclass(frozen=True)
class FiniteAbelianQuotient:
    """Map G -> Z_{f1} x ... x Z_{fk} given by the image of each generator."""

    factors: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "images", tuple(
            tuple(a % f for a, f in zip(img, self.factors)) for img in self.images))
        if any(f < 1 for f in self.factors):
            raise ValueError("factors must be positive")
        if any(len(img) != len(self.factors) for img in self.images):
            raise ValueError("each image needs one coordinate per factor")

    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(f) for f in self.factors)))

    def add(self, c, v, k: int = 1) -> tuple[int, ...]:
        return tuple((a + k * b) % f for a, b, f in zip(c, v, self.factors))

    def of_word(self, w: Word) -> tuple[int, ...]:
        c = (0,) * len(self.factors)
        for g, e in w.syllables:
            c = self.add(c, self.images[g], e)
        return c

    def is_surjective(self) -> bool:
        k = len(self.factors)
        rows = [list(img) for img in self.images]
        rows += [[f if i == j else 0 for j in range(k)] for i, f in enumerate(self.factors)]
        d = invariant_factors(rows)
        return len(d) == k and all(x == 1 for x in d)


class SchreierCover:
    """Coset data and rewriting for the kernel of alpha.

    The transversal is monomial: generators in ``transversal`` order are
    used in turn, each representative being extended by powers of the next
    generator, so for alpha onto Z_n x Z_n with transversal (e1, e2) the
    representatives are s(i, j) = e1^i e2^j.
    """

    def __init__(self, P: GroupPresentation, alpha: FiniteAbelianQuotient,
                 transversal: Sequence[int] | None = None):
        if len(alpha.images) != P.ngens:
            raise ValueError("alpha needs one image per generator")
        if not alpha.is_surjective():
            raise ValueError("alpha is not surjective")
        for k, r in enumerate(P.relators):
            if any(alpha.of_word(r)):
                raise ValueError(f"alpha does not kill relator {k}")
        self.P = P
        self.alpha = alpha
        zero = (0,) * len(alpha.factors)
        if transversal is None:
            transversal = [g for g in range(P.ngens) if any(alpha.images[g])]
        reps: dict[tuple, Word] = {zero: Word()}
        for g in transversal:
            for c, w in list(reps.items()):
                m, cc = 1, alpha.add(c, alpha.images[g])
                while cc not in reps:
                    reps[cc] = w * Word.gen(g, m)
                    m += 1
                    cc = alpha.add(cc, alpha.images[g])
        if len(reps) != alpha.order():
            raise ValueError("transversal generators do not reach every coset")
        self.cosets = sorted(reps)
        self.reps = reps
        # Schreier generators s(c) g s(c + alpha(g))^-1, dropping the trivial ones
        self.table: dict[tuple[tuple, int], int] = {}
        names = []
        for g in range(P.ngens):
            for c in self.cosets:
                w = reps[c] * Word.gen(g) * reps[alpha.add(c, alpha.images[g])].inverse()
                if w:
                    self.table[(c, g)] = len(names)
                    names.append(P.names[g] + "_" + "_".join(map(str, c)))
        self.names = tuple(names)

    def rewrite(self, w: Word, coset: tuple | None = None) -> Word:
        """The word s(c) w s(c + alpha(w))^-1 in Schreier generators."""
        a = self.alpha
        c = coset if coset is not None else (0,) * len(a.factors)
        out = []
        for g, s in w.letters():
            if s > 0:
                k = self.table.get((c, g))
                if k is not None:
                    out.append((k, 1))
                c = a.add(c, a.images[g])
            else:
                c = a.add(c, a.images[g], -1)
                k = self.table.get((c, g))
                if k is not None:
                    out.append((k, -1))
        return Word(tuple(out))

    def lift_relators(self, words: Sequence[Word]) -> list[Word]:
        """Rewrites of s(c) w s(c)^-1 for every coset c and every w (w in the kernel)."""
        out = []
        for w in words:
            if any(self.alpha.of_word(w)):
                raise ValueError(f"{w.render(self.P.names)} is not in the kernel")
            for c in self.cosets:
                r = self.rewrite(w, c)
                if r:
                    out.append(r)
        return out

    def presentation(self) -> GroupPresentation:
        return GroupPresentation(self.names, tuple(self.lift_relators(self.P.relators)))


def kernel_presentation(P: GroupPresentation, alpha: FiniteAbelianQuotient,
                        transversal: Sequence[int] | None = None) -> GroupPresentation:
    return SchreierCover(P, alpha, transversal).presentation()


def quotient_by_relators(P: GroupPresentation, extra: Sequence[Word]) -> GroupPresentation:
    return P.with_relators(extra)


def _occurrences(r: Word, g: int) -> int:
    return sum(abs(e) for h, e in r.syllables if h == g)


def _solve_for(r: Word, g: int) -> Word:
    """r contains g exactly once; return the word equal to g forced by r = 1."""
    letters = list(r.letters())
    k = next(i for i, (h, _) in enumerate(letters) if h == g)
    s = letters[k][1]
    rest = Word(tuple(letters[k + 1:]) + tuple(letters[:k]))  # g^s rest = 1 after rotation
    return rest.inverse() if s > 0 else rest


def _dedupe(rels) -> list[Word]:
    seen, out = set(), []
    for r in rels:
        r = r.cyclic_reduce()
        if r and r not in seen and r.inverse() not in seen:
            seen.add(r)
            out.append(r)
    return out


def tietze_simplify(P: GroupPresentation, budget: int = 1000,
                    keep: Sequence[int] = ()) -> tuple[GroupPresentation, list[Word]]:
    """Eliminate generators that occur exactly once in some relator.

    At each step the shortest such relator is used (ties go to the higher
    generator index).  Generators in ``keep`` are never eliminated.  Returns
    the simplified presentation and, for each original generator, its
    expression in the surviving generators.
    """
    n = P.ngens
    keep = set(keep)
    rels = _dedupe(P.relators)
    alive = list(range(n))
    images = [Word.gen(g) for g in range(n)]  # in original indices
    for _ in range(budget):
        best = None
        for r in rels:
            for g in r.generators():
                if g in keep or _occurrences(r, g) != 1:
                    continue
                key = (len(r), -g)
                if best is None or key < best[0]:
                    best = (key, r, g)
        if best is None:
            break
        _, r, g = best
        sol = _solve_for(r, g)
        sub = [Word.gen(h) for h in range(n)]
        sub[g] = sol
        rels = _dedupe(x.substitute(sub) for x in rels if x is not r)
        images = [w.substitute(sub) for w in images]
        alive.remove(g)
    newidx = {g: i for i, g in enumerate(alive)}
    ren = [Word.gen(newidx[g]) if g in newidx else Word() for g in range(n)]
    out = GroupPresentation(tuple(P.names[g] for g in alive), tuple(r.substitute(ren) for r in rels),
                            tuple(P.degrees[g] for g in alive) if P.degrees else None)
    return out, [w.substitute(ren) for w in images]


def load_ceva_group() -> GroupPresentation:
    from .dsl import parse_group_dsl

    text = resources.files("charvar").joinpath("data/ceva.grp").read_text()
    return parse_group_dsl(text)


def kummer_quotient(n: int) -> FiniteAbelianQuotient:
    """e0 -> (-1,-1), e1 -> (1,0), e2 -> (0,1), e3, e4, e5 -> 0 in Z_n x Z_n.

    The image of e0 is forced by the product relator e4 e3 e5 e2 e1 e0.
    """
    return FiniteAbelianQuotient((n, n), ((-1, -1), (1, 0), (0, 1), (0, 0), (0, 0), (0, 0)))


def fermat_group(n: int, budget: int = 10000) -> GroupPresentation:
    """Fundamental group of the Fermat-curve complement X_n.

    Built from the Ceva presentation: kernel of the Kummer quotient, kill
    e0^n, e1^n, e2^n, then simplify down to the generators
    e5 = e5_0_0, e3_j = e3_0_j, e4_i = e4_i_0 in that order.
    """
    if n < 2:
        raise ValueError("fermat_group needs n >= 2")
    G = load_ceva_group()
    cover = SchreierCover(G, kummer_quotient(n), transversal=[1, 2])
    K = cover.presentation()
    kills = cover.lift_relators([Word.gen(G.index(f"e{k}"), n) for k in range(3)])
    Gn = quotient_by_relators(K, kills)
    keep_names = ["e5_0_0"] + [f"e3_0_{j}" for j in range(n)] + [f"e4_{i}_0" for i in range(n)]
    keep = [Gn.index(s) for s in keep_names]
    S, _ = tietze_simplify(Gn, budget, keep)
    if S.ngens != len(keep):
        raise RuntimeError(f"simplification stopped at {S.ngens} generators")
    order = [S.index(s) for s in keep_names]
    final_names = ["e5"] + [f"e3_{j}" for j in range(n)] + [f"e4_{i}" for i in range(n)]
    pos = {g: i for i, g in enumerate(order)}
    ren = [Word.gen(pos[g]) for g in range(S.ngens)]
    return GroupPresentation(tuple(final_names), tuple(r.substitute(ren) for r in S.relators))


__all__ = [
    "FiniteAbelianQuotient", "SchreierCover", "kernel_presentation", "quotient_by_relators",
    "tietze_simplify", "load_ceva_group", "kummer_quotient", "fermat_group",
]
