import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from charvar.acceptance import stacked_translates
from charvar.covers import fermat_group
from charvar.engine import depth, torsion_scan
from charvar.fixtures import arrangement_group, fermat_pencils, quasitoric_identities, sc_marking, sc_pencils
from charvar.laurent import LaurentPoly
from charvar.orbifold import (C22, MERIDIAN_TYPES, Orbicurve, check_equivariance, cocycles_independent,
                              dihedral_word, independence_check, lift_pencil, orbifold_depth,
                              orbifold_group, parse_polynomial, pullback_character, quasitoric_from_json,
                              quasitoric_verify, same_character, times_t, verify_marked_pencil)
from charvar.words import Character, GroupHom, Word, free_group, verify_hom


def test_orbicurve_groups():
    G = orbifold_group(Orbicurve((2, 3, 6)))
    assert G.ngens == 3 and len(G.relators) == 4
    assert orbifold_group(C22).ngens == 2
    assert orbifold_group(Orbicurve((), 3)).ngens == 2
    with pytest.raises(ValueError):
        Orbicurve((1, 2))


def test_unique_marking_on_c22():
    assert orbifold_depth(C22, Character(2, (1, 1))) == 1
    assert orbifold_depth(C22, Character(2, (1, 0))) == 0
    scan = torsion_scan(orbifold_group(C22), 2, method="fox")
    assert [c.exponents for c in scan] == [(1, 1)]


def test_marking_must_be_nontrivial():
    with pytest.raises(ValueError):
        orbifold_depth(C22, Character.trivial(2))


def test_three_punctures():
    # P^1 minus three points: F_2, every nontrivial character has depth 1
    assert orbifold_depth(Orbicurve((), 3), Character(3, (1, 0))) == 1


def test_dihedral_words():
    G = orbifold_group(C22)
    assert dihedral_word(0, 1) == Word.gen(0)
    assert dihedral_word(1, 0) == Word(((0, 1), (1, 1)))
    Z4 = orbifold_group(Orbicurve((4,), 1))
    assert verify_hom(GroupHom(Z4, G, (dihedral_word(0, 1),)))
    assert not verify_hom(GroupHom(Z4, G, (dihedral_word(1, 0),)))


@pytest.fixture(scope="module")
def pencils():
    return sc_pencils()


def test_sc_pencils_are_marked(pencils):
    rho = sc_marking()
    assert rho == Character(2, (1, 1))
    for p, cocycle, chi, entry in pencils:
        assert verify_hom(p.hom)
        assert verify_marked_pencil(p, chi, rho), entry["name"]
        assert all(t in MERIDIAN_TYPES for t in entry["types"])


def test_depth_bound_is_sharp(pencils):
    by_chi = {}
    for p, cocycle, chi, _ in pencils:
        by_chi.setdefault(chi, []).append(cocycle)
    assert len(by_chi) == 3
    for chi, cocycles in by_chi.items():
        d = depth(arrangement_group(len(chi)), chi).depth
        assert cocycles_independent(cocycles, chi.signs())
        assert d == len(cocycles) * orbifold_depth(C22, sc_marking()) == 2


def test_cocycle_dependence_detected(pencils):
    p, cocycle, chi, _ = pencils[0]
    assert not cocycles_independent([cocycle, [2 * x for x in cocycle]], chi.signs())


def test_lift_pencil_rejects_impossible_types():
    P = free_group(2).with_relators([Word.gen(0) * Word.gen(1)])
    with pytest.raises(ValueError, match="mod 2"):
        lift_pencil(P, ["mu1", "triv"])
    with pytest.raises(ValueError, match="no homomorphism"):
        lift_pencil(P, ["inf", "triv"])
    with pytest.raises(ValueError, match="unknown meridian type"):
        lift_pencil(free_group(1), ["nope"])


def test_same_character_across_orders():
    assert same_character(Character(2, (1, 0)), Character(4, (2, 0)))
    assert not same_character(Character(2, (1, 0)), Character(4, (1, 0)))


@pytest.mark.parametrize("n", [2, 3])
def test_fermat_pencils(n):
    F = fermat_group(n)
    ps, data = fermat_pencils(n, F)
    rho = Character(n, (1, 0))
    chi = Character(n, (1,) + (0,) * (2 * n))
    for p in ps:
        assert verify_hom(p.hom) and check_equivariance(p)
        assert same_character(pullback_character(p, rho), chi)
    # the marking of C_(n,n) taking xi_n on one cone point only has depth 0
    assert orbifold_depth(Orbicurve((n, n), 1), rho) == 0


def gamma_image(eps, k, i, j, n):
    """Independent transcription: xi^j if eps == k, xi^(i+j) if eps == 3, else 0."""
    if eps == k:
        m = j
    elif eps == 3:
        m = i + j
    else:
        return [0] * (n - 1)
    return times_t([1] + [0] * (n - 2), n, m)


@pytest.mark.parametrize("n", [2, 3])
def test_fermat_equivariant_fixture_matches_formula(n):
    ps, _ = fermat_pencils(n)
    for eps, p in enumerate(ps, 1):
        for k in (1, 2):
            for i in range(n):
                for j in range(n):
                    assert list(p.equivariant[f"g{k}_{i}_{j}"]) == gamma_image(eps, k, i, j, n)


@pytest.mark.parametrize("n, cokernel", [(2, [2]), (3, [3])])
def test_independence_against_sympy(n, cokernel):
    ps, data = fermat_pencils(n)
    gens = data["independence_generators"]
    res = independence_check(ps, n, gens)
    assert res["independent"] and res["kernel"] == []
    S = sympy_snf(sympy.Matrix(stacked_translates(ps, n, gens)), domain=sympy.ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(S.shape))]
    assert 0 not in diag
    assert res["cokernel"] == [d for d in diag if d != 1] == cokernel
    assert not res["strongly_independent_on_data"] and "note" in res


def test_times_t_cycles():
    assert times_t([1, 0], 3, 3) == [1, 0]
    assert times_t([1, 0], 3, 2) == [-1, -1]


def test_dependent_pencils_detected():
    ps, data = fermat_pencils(2)
    res = independence_check([ps[0], ps[0]], 2, data["independence_generators"])
    assert not res["independent"] and res["kernel"]


def test_quasitoric_identities():
    for ident in quasitoric_identities():
        for n in ident.get("params", {}).get("n", [None]):
            assert quasitoric_verify(quasitoric_from_json(ident, {"n": n} if n else None))


def test_quasitoric_detects_wrong_identity():
    ident = dict(quasitoric_identities()[0])
    ident["terms"] = [dict(t) for t in ident["terms"]]
    ident["terms"][0]["coefficient"] = 2
    assert not quasitoric_verify(quasitoric_from_json(ident))


def test_parse_polynomial():
    x, y = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    assert parse_polynomial("x^n - 2*y", ["x", "y"], {"n": 3}) == x ** 3 - 2 * y
    assert parse_polynomial("-(x - y)**2", ["x", "y"]) == -((x - y) * (x - y))
    with pytest.raises(ValueError):
        parse_polynomial("x / y", ["x", "y"])
    with pytest.raises(ValueError):
        parse_polynomial("z", ["x", "y"])
