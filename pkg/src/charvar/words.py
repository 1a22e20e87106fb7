"""Free-group words, group presentations, homomorphisms and characters.

Generators are referred to by index; names are carried along only for
printing and parsing.  A word is stored as a tuple of syllables
``(generator, exponent)`` in freely reduced form, so two words are equal
as group elements of the free group iff they compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .linalg import smith_normal_form

INFINITE = 0  # order marker for an infinite cyclic factor


def _reduce_syllables(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class Word:
    """Element of a free group, kept freely reduced."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce_syllables(self.syllables))

    @classmethod
    def letters_of(cls, letters: Iterable[int]) -> "Word":
        """Build from signed 1-based letters: ``3`` is g2, ``-3`` is g2^-1."""
        return cls(tuple((abs(l) - 1, 1 if l > 0 else -1) for l in letters))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    def letters(self) -> Iterator[tuple[int, int]]:
        """Iterate over single letters ``(generator, +-1)``."""
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.syllables * k)

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def exponent_sums(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for g, e in self.syllables:
            v[g] += e
        return v

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Apply the endomorphism of the free group sending generator i to images[i]."""
        out: list[tuple[int, int]] = []
        for g, e in self.syllables:
            img = images[g] if e > 0 else images[g].inverse()
            out.extend(img.syllables * abs(e))
        return Word(tuple(out))

    def cyclic_reduce(self) -> "Word":
        s = list(self.syllables)
        while len(s) >= 2 and s[0][0] == s[-1][0]:
            g, e = s[0][0], s[0][1] + s[-1][1]
            s = s[1:-1]
            if e:
                s.insert(0, (g, e))
        return Word(tuple(s))

    def render(self, names: Sequence[str]) -> str:
        if not self.syllables:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.syllables)


def free_reduce(w: Word) -> Word:
    """Canonical freely reduced form (words are always stored reduced)."""
    return Word(w.syllables)


def commutator(a: Word, b: Word) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class GroupPresentation:
    names: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "relators", tuple(self.relators))
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(self.degrees))
            if len(self.degrees) != len(self.names):
                raise ValueError("degree labels must have one entry per generator")
        n = len(self.names)
        for r in self.relators:
            for g in r.generators():
                if not 0 <= g < n:
                    raise ValueError(f"relator uses undeclared generator index {g}")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, *spec) -> Word:
        """Shorthand: ``P.word("a", ("b", -1))``."""
        syl = []
        for s in spec:
            if isinstance(s, str):
                syl.append((self.index(s), 1))
            else:
                syl.append((self.index(s[0]), s[1]))
        return Word(tuple(syl))

    def relation_matrix(self) -> list[list[int]]:
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def with_relators(self, extra: Iterable[Word]) -> "GroupPresentation":
        return GroupPresentation(self.names, self.relators + tuple(extra), self.degrees)


def free_group(r: int, prefix: str = "x") -> GroupPresentation:
    return GroupPresentation(tuple(f"{prefix}{i + 1}" for i in range(r)))


@dataclass(frozen=True)
class AbelianStructure:
    """``Z^free_rank + sum Z/torsion_i``.

    ``coordinates[i]`` is the class of generator i: the first
    ``len(torsion)`` entries are residues modulo the torsion factors, the
    rest are free coordinates.
    """

    free_rank: int
    torsion: tuple[int, ...]
    coordinates: tuple[tuple[int, ...], ...]

    def is_free(self) -> bool:
        return not self.torsion


def abelianization(P: GroupPresentation) -> AbelianStructure:
    n = P.ngens
    R = P.relation_matrix()
    if not R:
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return AbelianStructure(n, (), eye)
    D, _, V = smith_normal_form(R)
    diag = [D[i][i] for i in range(min(len(D), n)) if D[i][i] != 0]
    rank = len(diag)
    torsion_idx = [i for i, d in enumerate(diag) if d > 1]
    coords = []
    for g in range(n):
        row = V[g]  # class of generator g in the Smith basis (U R V = D)
        tors = tuple(row[i] % diag[i] for i in torsion_idx)
        free = tuple(row[rank:])
        coords.append(tors + free)
    return AbelianStructure(n - rank, tuple(diag[i] for i in torsion_idx), tuple(coords))


@dataclass(frozen=True)
class Character:
    """Torsion character: generator g goes to ``zeta_order ** exponents[g]``."""

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("character order must be positive")
        object.__setattr__(self, "exponents", tuple(e % self.order for e in self.exponents))

    @classmethod
    def trivial(cls, n: int) -> "Character":
        return cls(1, (0,) * n)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "Character":
        """Order-two character from a tuple of +-1 values, as printed in tables."""
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        return cls(2, tuple(0 if s == 1 else 1 for s in signs))

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def true_order(self) -> int:
        g = reduce(math.gcd, self.exponents, self.order)
        return self.order // g

    def lift(self, N: int) -> "Character":
        if N % self.order:
            raise ValueError(f"{N} is not a multiple of {self.order}")
        k = N // self.order
        return Character(N, tuple(e * k for e in self.exponents))

    def reduced(self) -> "Character":
        """Same character written over its exact order."""
        m = self.true_order()
        k = self.order // m
        return Character(m, tuple(e // k for e in self.exponents))

    def power(self, k: int) -> "Character":
        return Character(self.order, tuple(e * k for e in self.exponents))

    def value_exponent(self, w: Word) -> int:
        """Exponent a with chi(w) = zeta_order ** a."""
        return sum(self.exponents[g] * e for g, e in w.syllables) % self.order

    def restrict(self, indices: Sequence[int]) -> "Character":
        return Character(self.order, tuple(self.exponents[i] for i in indices))

    def __len__(self):
        return len(self.exponents)

    def signs(self) -> tuple[int, ...]:
        if self.order > 2:
            raise ValueError("not an order-two character")
        c = self.lift(2)
        return tuple(1 if e == 0 else -1 for e in c.exponents)

    def to_json(self) -> dict:
        return {"order": self.order, "exponents": list(self.exponents)}


def common_order(*chars: Character) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), (c.order for c in chars), 1)


def validate_character(chi: Character, P: GroupPresentation) -> tuple[bool, str]:
    """Check that chi kills every relator and honours the degree labels."""
    if len(chi) != P.ngens:
        raise ValueError(f"character has {len(chi)} exponents, presentation has {P.ngens} generators")
    for k, r in enumerate(P.relators):
        if chi.value_exponent(r):
            return False, f"relator {k} ({r.render(P.names)}) is not killed"
    if P.degrees is not None:
        s = sum(d * e for d, e in zip(P.degrees, chi.exponents)) % chi.order
        if s:
            return False, "sum of degree-weighted exponents is not 0 mod the order"
    return True, "ok"


def normal_form_free_product_cyclic(w: Word, orders: Sequence[int]) -> Word:
    """Normal form in a free product of cyclic groups.

    ``orders[g]`` is the order of generator g, with 0 (``INFINITE``) for an
    infinite cyclic factor.  Exponents are reduced into ``[0, m)``.
    """
    stack: list[list[int]] = []

    def push(g, e):
        m = orders[g]
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
        if m:
            e %= m
        if e:
            stack.append([g, e])

    for g, e in w.syllables:
        push(g, e)
    return Word(tuple((g, e) for g, e in stack))


def presentation_orders(P: GroupPresentation) -> list[int] | None:
    """Orders of the cyclic factors when P is visibly a free product of cyclics.

    That means every relator is a single syllable ``g^m`` (at most one per
    generator, up to gcd).  Returns None otherwise.
    """
    orders = [INFINITE] * P.ngens
    for r in P.relators:
        if len(r.syllables) != 1:
            return None
        g, e = r.syllables[0]
        orders[g] = math.gcd(orders[g], abs(e))
    return orders


@dataclass(frozen=True)
class GroupHom:
    source: GroupPresentation
    target: GroupPresentation
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.ngens:
            raise ValueError("need one image per source generator")
        for w in self.images:
            if any(g >= self.target.ngens for g in w.generators()):
                raise ValueError("image uses a generator outside the target")

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.images)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``other`` after ``self``."""
        return GroupHom(self.source, other.target, tuple(other(w) for w in self.images))


def verify_hom(h: GroupHom, target_orders: Sequence[int] | None = None) -> bool:
    """True iff every source relator maps to the identity of the target.

    The target must be a free product of cyclic groups; pass its orders or
    let them be read off the target presentation.
    """
    if target_orders is None:
        target_orders = presentation_orders(h.target)
        if target_orders is None:
            raise ValueError("target is not a free product of cyclic groups")
    if len(target_orders) != h.target.ngens:
        raise ValueError("need one order per target generator")
    return all(not normal_form_free_product_cyclic(h(r), target_orders) for r in h.source.relators)


__all__ = [
    "INFINITE", "Word", "free_reduce", "commutator", "GroupPresentation", "free_group",
    "AbelianStructure", "abelianization", "Character", "common_order", "validate_character",
    "normal_form_free_product_cyclic", "presentation_orders", "GroupHom", "verify_hom",
]
