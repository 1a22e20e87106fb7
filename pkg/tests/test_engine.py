import math

import pytest

from charvar.covers import fermat_group, load_ceva_group
from charvar.engine import (DepthReport, character_lattice, classify_coordinate, depth, kill_generators,
                            torsion_scan)
from charvar.fixtures import arrangement_group, named_characters
from charvar.invariant import NotZariskiError
from charvar.words import Character, GroupPresentation, Word, free_group


@pytest.fixture(scope="module")
def fermat2():
    return fermat_group(2)


def test_free_group_depths():
    F4 = free_group(4)
    assert depth(F4, Character(2, (1, 1, 1, 1))).depth == 3
    assert depth(F4, Character.trivial(4)).depth == 6
    assert depth(F4, Character.trivial(4)).method == "invariant"


def test_fermat_character(fermat2):
    rep = depth(fermat2, Character.from_signs((-1, 1, 1, 1, 1)), "both")
    assert rep.depth == 3 and rep.stratum == "V_3"
    assert set(rep.ranks) == {"fox", "invariant"}


def test_free_product_of_two_involutions():
    P = GroupPresentation(("a", "b"), (Word.gen(0, 2), Word.gen(1, 2)))
    assert depth(P, Character(2, (1, 1)), "fox").depth == 1


def test_method_errors():
    F2 = free_group(2)
    with pytest.raises(ValueError, match="fox"):
        depth(F2, Character.trivial(2), "fox")
    with pytest.raises(ValueError, match="unknown method"):
        depth(F2, Character(2, (1, 0)), "magic")
    P = GroupPresentation(("a", "b"), (Word.gen(0, 2), Word.gen(1, 2)))
    with pytest.raises(NotZariskiError):
        depth(P, Character(2, (1, 1)), "invariant")
    with pytest.raises(ValueError, match="invalid character"):
        depth(P, Character(3, (1, 0)))


def test_report_json():
    rep = depth(free_group(2), Character(2, (1, 1)), "fox")
    d = rep.to_json()
    assert d == {"character": {"order": 2, "exponents": [1, 1]}, "depth": 1, "method": "fox",
                 "ranks": {"fox": 0}, "stratum": "V_1"}
    assert isinstance(rep, DepthReport)


def test_scan_free_group():
    res = torsion_scan(free_group(2), 2)
    assert len(res) == 4 and all(r.depth == 1 for r in res.values())


def test_scan_fermat_mask(fermat2):
    res = torsion_scan(fermat2, 2, mask=[0])
    assert [(c.exponents, r.depth) for c, r in res.items()] == [((1, 0, 0, 0, 0), 3)]


def test_scan_c7_finds_chi7():
    res = torsion_scan(arrangement_group(7), 2)
    chi7 = named_characters()["chi7"]
    assert res[chi7].depth == 2


def test_scan_budget():
    with pytest.raises(ValueError, match="budget"):
        torsion_scan(free_group(6), 5, budget=100)


def test_lattice_respects_degrees():
    P = arrangement_group(6)
    chars = character_lattice(P, 2)
    assert len(chars) == 2 ** 5
    assert all(sum(c.exponents) % 2 == 0 for c in chars)


def test_parallel_scan_matches_serial():
    G = load_ceva_group()
    assert torsion_scan(G, 3, jobs=2) == torsion_scan(G, 3, jobs=1)


def test_scan_monotonicity():
    G = load_ceva_group()
    small = torsion_scan(G, 2)
    big = torsion_scan(G, 4)
    restricted = {c.reduced(): r.depth for c, r in big.items() if c.true_order() <= 2}
    assert restricted == {c.reduced(): r.depth for c, r in small.items()}


@pytest.mark.parametrize("name", ["ceva", "C6"])
def test_galois_orbits_have_constant_depth(name):
    P = load_ceva_group() if name == "ceva" else arrangement_group(6)
    for N in (3, 5):
        res = torsion_scan(P, N)
        for chi, rep in res.items():
            for k in range(2, N):
                if math.gcd(k, N) == 1:
                    assert res[chi.power(k)].depth == rep.depth


def test_classify_coordinate(fermat2):
    assert classify_coordinate(Character(2, (1, 1)), free_group(2))["label"] == "non-coordinate"
    assert classify_coordinate(Character.trivial(2), free_group(2))["label"] == "non-coordinate"
    rep = classify_coordinate(Character.from_signs((-1, 1, 1, 1, 1)), fermat2)
    assert rep["label"] == "essential-candidate"
    assert rep["depth"] == 3 and rep["sub_depth"] < 3


def test_classify_with_explicit_deletion():
    F3 = free_group(3)
    Q, keep = kill_generators(F3, [2])
    assert keep == [0, 1]
    # every nontrivial character of F_3 has depth 2, its restriction to F_2 depth 1;
    # the label is only a candidate since V_1(F_3) is the whole torus
    rep = classify_coordinate(Character(2, (1, 1, 0)), F3, (Q, keep))
    assert rep == {"label": "essential-candidate", "depth": 2, "sub_depth": 1}
    Z3 = GroupPresentation(("a", "b", "c"), tuple(Word.letters_of([i, j, -i, -j])
                                                  for i, j in ((1, 2), (1, 3), (2, 3))))
    rep = classify_coordinate(Character(2, (1, 1, 0)), Z3)
    assert rep == {"label": "coordinate", "depth": 0, "sub_depth": 0}
