"""End-to-end checks of the library against known values.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``run_all`` runs
them in order.  The test suite and ``charvar fixtures run`` share them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .arrangements import intersection_points, presentation_from_lines
from .covers import fermat_group, load_ceva_group
from .engine import character_lattice, depth, torsion_scan
from .fixtures import (arrangement_group, arrangement_lines, fermat_pencils, named_characters,
                       quasitoric_identities, sc_marking, sc_pencils)
from .fox import fox_derivatives
from .invariant import invariant_matrix
from .laurent import LaurentMatrix, LaurentPoly
from .linalg import determinant, smith_normal_form
from .orbifold import (C22, cocycles_independent, check_equivariance, independence_check,
                       orbifold_depth, orbifold_group, quasitoric_from_json, quasitoric_verify,
                       times_t, verify_marked_pencil)
from .words import (Character, GroupPresentation, Word, abelianization, commutator, free_group,
                    validate_character, verify_hom)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


A4_TEXT = """
t3 - 1 | -(t2 - 1) | 0 | t1 - 1 | 0 | 0
t4 - 1 | 0 | -(t2 - 1) | 0 | t1 - 1 | 0
0 | t4 - 1 | -(t3 - 1) | 0 | 0 | t1 - 1
0 | 0 | 0 | t4 - 1 | -(t3 - 1) | t2 - 1
"""


def criterion_1() -> CriterionResult:
    got = invariant_matrix(free_group(4)).matrix
    names = ["t1", "t2", "t3", "t4"]
    rows = [[_parse_entry(c, names) for c in line.split("|")]
            for line in A4_TEXT.strip().splitlines()]
    want = LaurentMatrix(4, rows, 6)
    ok = got == want
    return CriterionResult(1, "golden A4 matrix", ok, "4x6 matrix " + ("matches" if ok else "differs"))


def _parse_entry(cell: str, names) -> LaurentPoly:
    from .laurent import parse_laurent

    cell = cell.strip()
    if cell.startswith("-(") and cell.endswith(")"):
        return -parse_laurent(cell[2:-1], names)
    return parse_laurent(cell, names)


def criterion_2() -> CriterionResult:
    bad = []
    for r in range(2, 7):
        F = free_group(r)
        d = depth(F, Character(2, (1,) * r), "both").depth
        d1 = depth(F, Character.trivial(r), "invariant").depth
        if d != r - 1 or d1 != math.comb(r, 2):
            bad.append((r, d, d1))
    return CriterionResult(2, "free-group depths", not bad,
                           "r = 2..6 all match" if not bad else f"mismatches {bad}")


def criterion_3(ns=(2, 3)) -> CriterionResult:
    parts, ok = [], True
    for n in ns:
        F = fermat_group(n)
        A = abelianization(F)
        free = A.is_free() and A.free_rank == 2 * n
        ds = []
        for i in range(1, n):
            chi = Character(n, (i,) + (0,) * (F.ngens - 1))
            ds.append(depth(F, chi, "both").depth)
        ok &= free and all(d == 3 for d in ds)
        parts.append(f"n={n}: H1 free of rank {A.free_rank}, depths {ds}")
    return CriterionResult(3, "Fermat depth 3", ok, "; ".join(parts))


# --- method agreement ---

def random_zariski_presentation(rng: random.Random) -> GroupPresentation:
    """Generators are meridians and every relator lies in the commutator subgroup."""
    r = rng.randint(2, 4)

    def rand_word(lo, hi):
        return Word(tuple((rng.randrange(r), rng.choice((1, -1))) for _ in range(rng.randint(lo, hi))))

    rels = []
    for _ in range(rng.randint(1, 3)):
        w = commutator(rand_word(1, 3), rand_word(1, 3))
        if rng.random() < 0.5:
            c = rand_word(1, 2)
            w = c * w * c.inverse()
        if w:
            rels.append(w)
    return GroupPresentation(tuple(f"x{i + 1}" for i in range(r)), tuple(rels))


def random_character(rng: random.Random, n: int, orders=(2, 3, 4, 5, 6)) -> Character:
    while True:
        N = rng.choice(orders)
        chi = Character(N, tuple(rng.randrange(N) for _ in range(n)))
        if not chi.is_trivial():
            return chi


def agreement_fixtures() -> list[tuple[str, GroupPresentation, list[Character]]]:
    """Fixture presentations with the characters checked on them."""
    out = []
    for r in (2, 3, 4):
        F = free_group(r)
        out.append((f"F{r}", F, character_lattice(F, 2) + character_lattice(F, 3)))
    G = load_ceva_group()
    out.append(("ceva", G, character_lattice(G, 2) + character_lattice(G, 3)))
    F2 = fermat_group(2)
    out.append(("fermat2", F2, character_lattice(F2, 2)))
    for k in (6, 7):
        P = arrangement_group(k)
        out.append((f"C{k}", P, character_lattice(P, 2)))
    return [(name, P, [c for c in chars if not c.is_trivial()]) for name, P, chars in out]


def criterion_4(count: int = 200, seed: int = 20240601) -> CriterionResult:
    bad, checked = [], 0
    for name, P, chars in agreement_fixtures():
        for chi in chars:
            rf = depth(P, chi, "fox").depth
            ri = depth(P, chi, "invariant").depth
            checked += 1
            if rf != ri:
                bad.append((name, chi.exponents, rf, ri))
    rng = random.Random(seed)
    for _ in range(count):
        P = random_zariski_presentation(rng)
        chi = random_character(rng, P.ngens)
        rf = depth(P, chi, "fox").depth
        ri = depth(P, chi, "invariant").depth
        checked += 1
        if rf != ri:
            bad.append((P, chi, rf, ri))
    return CriterionResult(4, "method agreement", not bad,
                           f"{checked} pairs agree" if not bad else f"{len(bad)} disagreements, first {bad[0]}")


# --- order-two scans of C7, C8, C9 ---

def multiple_point_sets(lines) -> list[frozenset]:
    return [s for _, s in intersection_points(lines) if len(s) >= 3]


def ceva_subsets(lines) -> list[frozenset]:
    """Six-line subsets with four triple and three double points."""
    out = []
    for S in combinations(range(len(lines)), 6):
        sub = [lines[i] for i in S]
        mult = sorted(len(s) for _, s in intersection_points(sub))
        if mult == [2, 2, 2, 3, 3, 3, 3]:
            out.append(frozenset(S))
    return out


@lru_cache(maxsize=None)
def _sub_group(lines: tuple, subset: tuple) -> GroupPresentation:
    return presentation_from_lines([lines[i] for i in subset])


def attribution(k: int) -> dict:
    """Order-two scan of C_k split by whether a smaller sub-arrangement explains each depth.

    A character supported inside a multiple point or a Ceva sub-arrangement
    T with fewer lines is attributable to T when its restriction to T has the
    same depth there.
    """
    lines = arrangement_lines(k)
    P = arrangement_group(k)
    scan = torsion_scan(P, 2, include_trivial=False)
    cevas = [T for T in ceva_subsets(lines) if len(T) < k]
    candidates = [T for T in multiple_point_sets(lines) if len(T) < k] + cevas
    explained, essential = {}, {}
    for chi, rep in scan.items():
        supp = {i for i, e in enumerate(chi.exponents) if e}
        source = None
        for T in candidates:
            if not supp <= T:
                continue
            sub = tuple(sorted(T))
            d = depth(_sub_group(lines, sub), chi.restrict(sub)).depth
            if d == rep.depth:
                source = sub
                break
        if source is None:
            essential[chi] = rep.depth
        else:
            explained[chi] = (rep.depth, source)
    return {"scan": scan, "essential": essential, "explained": explained, "ceva_subarrangements": len(cevas)}


EXPECTED_ESSENTIAL = {7: ("chi7",), 8: ("chi8_1", "chi8_2"), 9: ("chi9_1", "chi9_2", "chi9_3")}


def criterion_5(ks=(7, 8, 9)) -> CriterionResult:
    named = named_characters()
    ok, parts = True, []
    for k in ks:
        res = attribution(k)
        want = {named[c] for c in EXPECTED_ESSENTIAL[k]}
        depth2 = all(res["scan"].get(c) is not None and res["scan"][c].depth == 2 for c in want)
        got = set(res["essential"])
        good = depth2 and got == want
        ok &= good
        parts.append(f"C{k}: {len(res['scan'])} positive-depth, {len(got)} unexplained "
                     f"({'as expected' if good else sorted(c.exponents for c in got)}), "
                     f"{res['ceva_subarrangements']} Ceva sub-arrangements")
    return CriterionResult(5, "C7-C9 order-two scans", ok, "; ".join(parts))


def criterion_6() -> CriterionResult:
    P = arrangement_group(6)
    d = depth(P, Character(3, (1,) * 6), "both").depth
    return CriterionResult(6, "C6 order-three character", d == 1, f"depth {d}")


def criterion_7() -> CriterionResult:
    d = orbifold_depth(C22, Character(2, (1, 1)))
    scan = torsion_scan(orbifold_group(C22), 2, method="fox")
    unique = [c.exponents for c in scan] == [(1, 1)]
    return CriterionResult(7, "orbifold marking on C_(2,2)", d == 1 and unique,
                           f"depth {d}, positive-depth characters {[c.exponents for c in scan]}")


def criterion_8() -> CriterionResult:
    rho = sc_marking()
    d_rho = orbifold_depth(C22, rho)
    entries = sc_pencils()
    by_char: dict = {}
    ok = d_rho == 1
    for p, cocycle, chi, _ in entries:
        ok &= verify_marked_pencil(p, chi, rho)
        by_char.setdefault(chi, []).append(cocycle)
    parts = []
    for chi, cocycles in by_char.items():
        d = depth(arrangement_group(len(chi)), chi).depth
        indep = cocycles_independent(cocycles, chi.signs())
        m = len(cocycles)
        good = indep and d >= m * d_rho and d == m * d_rho
        ok &= good
        parts.append(f"C{len(chi)}: d = {d}, {m} independent pencils x d(rho) = {d_rho}")
    return CriterionResult(8, "marked pencils and the bound", ok, "; ".join(parts))


# --- independence ---

def minors_invariant_factors(rows: list[list[int]]) -> list[int]:
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m = len(rows[0]) if rows else 0
    uniq = []
    for r in rows:  # duplicate and zero rows do not change any D_k
        if any(r) and r not in uniq and [-x for x in r] not in uniq:
            uniq.append(r)
    out, prev = [], 1
    for k in range(1, min(len(uniq), m) + 1):
        g = 0
        for R in combinations(range(len(uniq)), k):
            for C in combinations(range(m), k):
                g = math.gcd(g, int(determinant([[uniq[i][j] for j in C] for i in R])))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def stacked_translates(pencils, n: int, generators) -> list[list[int]]:
    return [[x for p in pencils for x in times_t(p.equivariant[g], n, k)]
            for g in generators for k in range(n)]


def criterion_9(ns=(2, 3)) -> CriterionResult:
    ok, parts = True, []
    for n in ns:
        pencils, data = fermat_pencils(n)
        gens = data["independence_generators"]
        homs_ok = all(verify_hom(p.hom) and check_equivariance(p) for p in pencils)
        res = independence_check(pencils, n, gens)
        rows = stacked_translates(pencils, n, gens)
        oracle = [d for d in minors_invariant_factors(rows) if d != 1]
        full_rank = len(minors_invariant_factors(rows)) == len(rows[0])
        good = homs_ok and res["independent"] and full_rank and res["cokernel"] == oracle
        good &= res["strongly_independent_on_data"] == (not oracle)
        good &= ("note" in res) == bool(oracle)
        if n == 2:
            good &= res["cokernel"] == [2]
        ok &= good
        parts.append(f"n={n}: independent={res['independent']}, cokernel {res['cokernel']} "
                     f"(oracle {oracle})" + (", note emitted" if "note" in res else ""))
    return CriterionResult(9, "pencil independence", ok, "; ".join(parts))


def criterion_10() -> CriterionResult:
    ok, parts = True, []
    for ident in quasitoric_identities():
        for n in ident.get("params", {}).get("n", [None]):
            params = {"n": n} if n is not None else None
            good = quasitoric_verify(quasitoric_from_json(ident, params))
            ok &= good
            parts.append(ident["name"] + (f"(n={n})" if n is not None else "") + (" ok" if good else " FAILS"))
    return CriterionResult(10, "quasitoric identities", ok, ", ".join(parts))


# --- property suites ---

def random_int_matrix(rng: random.Random, max_dim: int = 5, bound: int = 9) -> list[list[int]]:
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def snf_matches_minors(M: list[list[int]]) -> bool:
    D, U, V = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nonzero = [abs(d) for d in diag if d]
    return nonzero == minors_invariant_factors(M)


def random_laurent(rng: random.Random, nvars: int, terms: int = 4, span: int = 3) -> LaurentPoly:
    t = {}
    for _ in range(rng.randint(0, terms)):
        mono = tuple(rng.randint(-span, span) for _ in range(nvars))
        t[mono] = t.get(mono, 0) + rng.randint(-5, 5)
    return LaurentPoly(nvars, t)


def evaluation_is_homomorphism(p: LaurentPoly, q: LaurentPoly, chi: Character) -> bool:
    ep, eq = p.evaluate(chi), q.evaluate(chi)
    return (p * q).evaluate(chi) == ep * eq and (p + q).evaluate(chi) == ep + eq \
        and (p - q).evaluate(chi) == ep - eq


def fox_identity_holds(w: Word, n: int) -> bool:
    """sum_g (dw/dg) (t_g - 1) = t^ab(w) - 1."""
    ders = fox_derivatives(w, n)
    lhs = LaurentPoly.zero(n)
    for g, d in enumerate(ders):
        lhs = lhs + d * (LaurentPoly.var(n, g) - 1)
    return lhs == LaurentPoly.monomial(w.exponent_sums(n)) - 1


def property_fixtures() -> list[tuple[str, GroupPresentation]]:
    out = [(f"F{r}", free_group(r)) for r in (2, 3, 4)]
    out.append(("ceva", load_ceva_group()))
    out += [(f"fermat{n}", fermat_group(n)) for n in (2, 3)]
    out += [(f"C{k}", arrangement_group(k)) for k in (6, 7, 8, 9)]
    out.append(("C22", orbifold_group(C22)))
    return out


def galois_samples(name: str, P: GroupPresentation, rng: random.Random, count: int = 6) -> list[Character]:
    """Known positive-depth characters plus random valid characters of order 3, 4 or 5."""
    chars = []
    if name.startswith("fermat"):
        n = (P.ngens - 1) // 2
        chars.append(Character(n, (1,) + (0,) * (P.ngens - 1)))
    if name == "C6":
        chars.append(Character(3, (1,) * 6))
    if name == "C22":
        return [Character(2, (1, 1))]
    tries = 0
    while len(chars) < count and tries < 1000:
        tries += 1
        chi = random_character(rng, P.ngens, (3, 4, 5))
        if P.degrees is not None:
            s = sum(e * d for e, d in zip(chi.exponents, P.degrees)) % chi.order
            ex = list(chi.exponents)
            ex[-1] = (ex[-1] - s) % chi.order
            chi = Character(chi.order, tuple(ex))
        if validate_character(chi, P)[0] and not chi.is_trivial():
            chars.append(chi)
    return chars


def galois_invariant(P: GroupPresentation, chi: Character) -> bool:
    N = chi.order
    d = depth(P, chi).depth
    return all(depth(P, chi.power(k)).depth == d for k in range(2, N) if math.gcd(k, N) == 1)


def criterion_11(samples: int = 500, seed: int = 7) -> CriterionResult:
    rng = random.Random(seed)
    snf_bad = sum(not snf_matches_minors(random_int_matrix(rng)) for _ in range(samples))
    ev_bad = 0
    for _ in range(samples):
        nv = rng.randint(1, 3)
        chi = Character(rng.randint(1, 8), tuple(rng.randrange(8) for _ in range(nv)))
        ev_bad += not evaluation_is_homomorphism(random_laurent(rng, nv), random_laurent(rng, nv), chi)
    fox_bad, gal_bad, nrel, nchar = 0, 0, 0, 0
    for name, P in property_fixtures():
        for r in P.relators:
            nrel += 1
            fox_bad += not fox_identity_holds(r, P.ngens)
        for chi in galois_samples(name, P, rng):
            nchar += 1
            gal_bad += not galois_invariant(P, chi)
    ok = not (snf_bad or ev_bad or fox_bad or gal_bad)
    detail = (f"SNF {samples - snf_bad}/{samples}, evaluation {samples - ev_bad}/{samples}, "
              f"Fox identity {nrel - fox_bad}/{nrel} relators, Galois {nchar - gal_bad}/{nchar} characters")
    return CriterionResult(11, "property suites", ok, detail)


CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_all(report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    out = []
    for f in CRITERIA:
        try:
            res = f()
        except Exception as exc:  # a crash counts as a failure of that item
            res = CriterionResult(CRITERIA.index(f) + 1, f.__name__, False, f"error: {exc!r}")
        out.append(res)
        if report:
            report(res)
    return out


__all__ = ["CriterionResult", "CRITERIA", "run_all", "attribution", "minors_invariant_factors",
           "random_zariski_presentation", "random_character"] + [f"criterion_{i}" for i in range(1, 12)]
