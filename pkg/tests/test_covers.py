import pytest

from charvar.covers import (FiniteAbelianQuotient, SchreierCover, fermat_group, kernel_presentation,
                            kummer_quotient, load_ceva_group, tietze_simplify)
from charvar.engine import depth
from charvar.words import Character, GroupPresentation, Word, abelianization, free_group


def test_quotient_surjectivity():
    assert FiniteAbelianQuotient((2, 2), ((1, 0), (0, 1))).is_surjective()
    assert not FiniteAbelianQuotient((2, 2), ((1, 1), (1, 1))).is_surjective()
    assert not FiniteAbelianQuotient((4,), ((2,),)).is_surjective()


def test_index_two_subgroup_of_free_group():
    # Schreier: index k subgroup of F_r is free of rank k(r-1)+1
    F = free_group(2)
    K = kernel_presentation(F, FiniteAbelianQuotient((2,), ((1,), (0,))))
    assert K.ngens == 3 and K.relators == ()


def test_rewrite_of_kernel_elements():
    F = free_group(2)
    cover = SchreierCover(F, FiniteAbelianQuotient((3,), ((1,), (0,))))
    assert cover.rewrite(Word.gen(0, 3)).generators()
    with pytest.raises(ValueError):
        cover.lift_relators([Word.gen(0)])


def test_alpha_must_kill_relators():
    G = load_ceva_group()
    # e0 -> (1, 1) does not kill the product relator over Z_3 x Z_3
    bad = FiniteAbelianQuotient((3, 3), ((1, 1), (1, 0), (0, 1), (0, 0), (0, 0), (0, 0)))
    with pytest.raises(ValueError, match="relator"):
        SchreierCover(G, bad)
    SchreierCover(G, kummer_quotient(3))


def test_tietze_keeps_group():
    P = GroupPresentation(("a", "b", "c"), (Word.letters_of([1, 2, -3]), Word.letters_of([1, 2, -1, -2])))
    S, images = tietze_simplify(P)
    assert S.ngens == 2
    assert abelianization(S).free_rank == 2
    # the eliminated generator is expressed through the survivors
    assert len(images) == 3 and all(w.generators() <= set(range(S.ngens)) for w in images)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fermat_group_homology(n):
    F = fermat_group(n)
    A = abelianization(F)
    assert F.ngens == 2 * n + 1
    assert A.free_rank == 2 * n and not A.torsion


@pytest.mark.parametrize("n", [2, 3])
def test_fermat_character_depth(n):
    F = fermat_group(n)
    for i in range(1, n):
        chi = Character(n, (i,) + (0,) * (2 * n))
        assert depth(F, chi, "both").depth == 3


def test_fermat_relator_count_n2():
    assert len(fermat_group(2).relators) == 14
