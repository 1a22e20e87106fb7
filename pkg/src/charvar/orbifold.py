"""Orbicurve groups, marked pencils, independence of pencils, quasitoric identities."""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .engine import depth
from .fox import alexander_matrix
from .laurent import LaurentPoly
from .linalg import integer_kernel, rational_rank, smith_normal_form
from .words import (Character, GroupHom, GroupPresentation, Word, common_order, validate_character,
                    verify_hom)


@dataclass(frozen=True)
class Orbicurve:
    """P^1 with cone points of the given labels and ``punctures`` points removed."""

    labels: tuple[int, ...]
    punctures: int = 0

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if any(m < 2 for m in self.labels):
            raise ValueError("labels must be at least 2")
        if self.punctures < 0:
            raise ValueError("number of punctures must be nonnegative")

    @property
    def compact(self) -> bool:
        return self.punctures == 0


def orbifold_group(C: Orbicurve) -> GroupPresentation:
    s, k = len(C.labels), C.punctures
    names = [f"mu{j + 1}" for j in range(s)] + [f"f{j + 1}" for j in range(max(k - 1, 0))]
    rels = [Word.gen(j, m) for j, m in enumerate(C.labels)]
    if k == 0:
        rels.append(Word(tuple((j, 1) for j in range(s))))
    return GroupPresentation(tuple(names), tuple(rels))


def orbifold_depth(C: Orbicurve, rho: Character) -> int:
    if rho.is_trivial():
        raise ValueError("a marking must be a nontrivial character")
    return depth(orbifold_group(C), rho, "fox").depth


C22 = Orbicurve((2, 2), 1)


@dataclass
class PencilData:
    """A homomorphism to an orbicurve group, with optional equivariant H1 data.

    ``equivariant`` maps a source homology generator name to its image in
    Z[t]/(phi_n) as a coefficient vector of length n - 1.  ``orbits`` lists
    (base, [g_0, g_1, ...]) with g_j = t^j * base under the deck action.
    """

    name: str
    hom: GroupHom
    orbicurve: Orbicurve | None = None
    n: int | None = None
    equivariant: dict[str, tuple[int, ...]] = field(default_factory=dict)
    orbits: list[tuple[str, list[str]]] = field(default_factory=list)


def pullback_character(p: PencilData, rho: Character) -> Character:
    if len(rho) != p.hom.target.ngens:
        raise ValueError("marking has the wrong number of generators")
    if not verify_hom(p.hom):
        raise ValueError(f"pencil {p.name}: the homomorphism does not kill every relator")
    return Character(rho.order, tuple(rho.value_exponent(w) for w in p.hom.images))


def same_character(a: Character, b: Character) -> bool:
    N = common_order(a, b)
    return len(a) == len(b) and a.lift(N) == b.lift(N)


def verify_marked_pencil(p: PencilData, chi: Character, rho: Character) -> bool:
    return same_character(pullback_character(p, rho), chi)


# --- pencils into C_{2,2} = <mu1, mu2 | mu1^2, mu2^2>, the infinite dihedral group ---
#
# Elements are pairs (a, e) in Z x| Z_2 with r = mu1 mu2 = (1, 0) and mu1 = (0, 1);
# (a, e)(b, f) = (a + (-1)^e b, e + f).  Conjugates of mu1 are (even, 1), of
# mu2 (odd, 1), loops around the puncture (+-1, 0).

MERIDIAN_TYPES = {
    "mu1": "conjugate of mu1",
    "mu2": "conjugate of mu2",
    "inf": "loop around the puncture",
    "inf2": "square of a loop around the puncture",
    "triv": "trivial image (horizontal component or doubled cone fibre)",
}


def dihedral_word(a: int, e: int) -> Word:
    """(a, 0) = r^a, (a, 1) = r^a mu1 with r = mu1 mu2."""
    r = Word(((0, 1), (1, 1)))
    w = r ** a
    if e % 2:
        w = w * Word.gen(0)
    return w


def twisted_fox_matrix(P: GroupPresentation, signs: Sequence[int]) -> list[list[int]]:
    """Fox matrix of P at the order-two character with the given signs, as integers."""
    chi = Character.from_signs(signs)
    M = alexander_matrix(P).evaluate(chi)
    return [[int(x.coords[0]) for x in row] for row in M]


def lift_pencil(P: GroupPresentation, types: Sequence[str], name: str = "pencil") -> tuple[PencilData, list[int]]:
    """Find a homomorphism P -> C_{2,2} whose generator images have the given types.

    The Z-coordinates a_g form a crossed homomorphism twisted by the sign
    character, so they satisfy Fox(signs) a = 0.  Loops around the puncture
    get a = +-1 (or +-2), trivial images a = 0 and cone meridians a of the
    right parity.  Returns the pencil and the cocycle a.
    """
    from itertools import product as iproduct

    n = P.ngens
    if len(types) != n:
        raise ValueError("need one meridian type per generator")
    for t in types:
        if t not in MERIDIAN_TYPES:
            raise ValueError(f"unknown meridian type {t!r}")
    eps = [1 if t in ("mu1", "mu2") else 0 for t in types]
    if not validate_character(Character(2, tuple(eps)), P)[0]:
        raise ValueError(f"{name}: the cone-meridian pattern does not kill every relator mod 2")
    A = twisted_fox_matrix(P, [(-1) ** e for e in eps])
    cone = [g for g in range(n) if types[g] in ("mu1", "mu2")]
    loops = [g for g in range(n) if types[g] in ("inf", "inf2")]
    for signs in iproduct((1, -1), repeat=len(loops)):
        # a_g = 2 b_g + parity for cone meridians; loops and trivial ones fixed
        fixed = [0] * n
        for g, s in zip(loops, signs):
            fixed[g] = s * (1 if types[g] == "inf" else 2)
        for g in cone:
            fixed[g] = 1 if types[g] == "mu2" else 0
        rhs = [-sum(row[g] * fixed[g] for g in range(n)) for row in A]
        sol = _solve_integer([[2 * row[g] for g in cone] for row in A], rhs)
        if sol is None:
            continue
        a = list(fixed)
        for g, b in zip(cone, sol):
            a[g] += 2 * b
        images = tuple(dihedral_word(a[g], eps[g]) for g in range(n))
        hom = GroupHom(P, orbifold_group(C22), images)
        if verify_hom(hom):
            return PencilData(name, hom, C22), a
    raise ValueError(f"{name}: no homomorphism to C_(2,2) with the requested meridian types")


def _solve_integer(A: list[list[int]], b: list[int]) -> list[int] | None:
    """One integer solution of A x = b, or None."""
    m = len(A)
    k = len(A[0]) if A else 0
    if k == 0:
        return [] if not any(b) else None
    D, U, V = smith_normal_form(A)
    c = [sum(U[i][j] * b[j] for j in range(m)) for i in range(m)]
    y = [0] * k
    for i in range(m):
        d = D[i][i] if i < k else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(V[i][j] * y[j] for j in range(k)) for i in range(k)]


def cocycles_independent(cocycles: Sequence[Sequence[int]], signs: Sequence[int]) -> bool:
    """Linear independence of the cocycle classes modulo coboundaries over Q."""
    cob = [s - 1 for s in signs]
    rows = [list(c) for c in cocycles]
    base = 1 if any(cob) else 0
    return rational_rank(rows + [cob]) == len(rows) + base


# --- equivariant H1 data in R = Z[t]/(phi_n) ---

def _mult_matrix(b: Sequence[int], n: int) -> list[list[int]]:
    """Matrix of multiplication by b on the Z-basis 1, t, ..., t^(n-2) of Z[t]/(phi_n)."""
    d = n - 1
    cols = []
    for k in range(d):
        prod = [0] * (d + k)
        for i, c in enumerate(b):
            prod[i + k] += c
        cols.append(_reduce_phi(prod, n))
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _reduce_phi(p: list[int], n: int) -> list[int]:
    """Reduce modulo 1 + t + ... + t^(n-1)."""
    d = n - 1
    p = list(p) + [0] * max(0, d - len(p))
    for i in range(len(p) - 1, d - 1, -1):
        c = p[i]
        if c:
            for j in range(i - d, i):
                p[j] -= c
            p[i] = 0
    return p[:d]


def times_t(v: Sequence[int], n: int, k: int = 1) -> list[int]:
    out = list(v)
    for _ in range(k % n):
        out = _reduce_phi([0] + out, n)
    return out


DISCREPANCY_NOTE = ("the listed generator images span a proper sublattice of R^m; surjectivity of the "
                    "direct sum cannot be confirmed from these images alone, so H1 presumably has "
                    "classes beyond the listed meridians")


def check_equivariance(p: PencilData) -> bool:
    n = p.n
    for base, members in p.orbits:
        b = p.equivariant[base]
        for j, g in enumerate(members):
            if list(p.equivariant[g]) != times_t(b, n, j):
                return False
    return True


def independence_check(pencils: Sequence[PencilData], n: int,
                       generators: Sequence[str] | None = None) -> dict:
    if not pencils:
        raise ValueError("no pencils given")
    for p in pencils:
        if p.n != n:
            raise ValueError(f"pencil {p.name} has module order {p.n}, expected {n}")
    if generators is None:
        generators = list(pencils[0].equivariant)
    for p in pencils:
        missing = [g for g in generators if g not in p.equivariant]
        if missing:
            raise ValueError(f"pencil {p.name} has no image for {missing}")
        if any(len(p.equivariant[g]) != n - 1 for g in generators):
            raise ValueError(f"pencil {p.name}: images must have length {n - 1}")
    m, d = len(pencils), n - 1
    # independence: sum_e a_e * Psi_e(g) = 0 for all g forces a = 0
    system = []
    for g in generators:
        blocks = [_mult_matrix(p.equivariant[g], n) for p in pencils]
        for i in range(d):
            system.append([x for B in blocks for x in B[i]])
    kernel = integer_kernel(system) if system else [[0] * (m * d)]
    independent = not kernel
    # strong independence on data: all translates t^k * (Psi_1(g), ..., Psi_m(g)) span R^m
    rows = []
    for g in generators:
        for k in range(n):
            rows.append([x for p in pencils for x in times_t(p.equivariant[g], n, k)])
    D, _, _ = smith_normal_form(rows)
    diag = [D[i][i] for i in range(min(len(D), m * d))]
    factors = [x for x in diag if x != 1] + [0] * (m * d - len(diag))
    strong = not factors
    out = {"independent": independent, "strongly_independent_on_data": strong,
           "cokernel": factors, "kernel": kernel}
    if not strong:
        out["note"] = DISCREPANCY_NOTE
    return out


# --- quasitoric identities ---

def parse_polynomial(expr: str, variables: Sequence[str], params: Mapping[str, int] | None = None,
                     definitions: Mapping[str, LaurentPoly] | None = None) -> LaurentPoly:
    """Integer polynomial from an arithmetic expression (``^`` or ``**`` for powers)."""
    nv = len(variables)
    env = {v: LaurentPoly.var(nv, i) for i, v in enumerate(variables)}
    env.update(definitions or {})
    params = dict(params or {})
    tree = ast.parse(expr.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in params:
                return params[node.id]
            if node.id in env:
                return env[node.id]
            raise ValueError(f"unknown name {node.id!r} in {expr!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, int) or b < 0:
                    raise ValueError(f"exponents must be nonnegative integers in {expr!r}")
                return a ** b
        raise ValueError(f"unsupported syntax in {expr!r}")

    v = ev(tree)
    return LaurentPoly.const(nv, v) if isinstance(v, int) else v


def quasitoric_verify(terms: Sequence[tuple[int, Sequence[tuple[LaurentPoly, int]]]]) -> bool:
    """True iff sum of coeff * prod(factor^mult) vanishes identically."""
    total = None
    for coeff, factors in terms:
        t = None
        for f, mult in factors:
            fm = f ** mult
            t = fm if t is None else t * fm
        t = t * coeff
        total = t if total is None else total + t
    return total is None or total.is_zero()


def quasitoric_from_json(data: dict, params: Mapping[str, int] | None = None) -> list:
    variables = data["variables"]
    defs: dict[str, LaurentPoly] = {}
    for k, e in data.get("definitions", {}).items():
        defs[k] = parse_polynomial(e, variables, params, defs)
    terms = []
    for t in data["terms"]:
        factors = [(parse_polynomial(e, variables, params, defs), int(m)) for e, m in t["factors"]]
        terms.append((int(t["coefficient"]), factors))
    return terms


__all__ = [
    "Orbicurve", "orbifold_group", "orbifold_depth", "C22", "PencilData", "pullback_character",
    "same_character", "verify_marked_pencil", "MERIDIAN_TYPES", "dihedral_word", "lift_pencil",
    "cocycles_independent", "times_t", "check_equivariance", "independence_check",
    "DISCREPANCY_NOTE", "parse_polynomial", "quasitoric_verify", "quasitoric_from_json",
]
