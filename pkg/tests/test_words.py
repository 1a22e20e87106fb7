from hypothesis import given, strategies as st

from charvar.words import (Character, GroupHom, GroupPresentation, Word, abelianization, commutator,
                           free_group, free_reduce, normal_form_free_product_cyclic, validate_character,
                           verify_hom)

letters = st.lists(st.integers(min_value=-3, max_value=3).filter(bool), max_size=12)


def naive_reduce(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def to_letters(w):
    return [(g + 1) * s for g, s in w.letters()]


@given(letters)
def test_free_reduce_matches_stack_reduction(seq):
    assert to_letters(free_reduce(Word.letters_of(seq))) == naive_reduce(seq)


@given(letters, letters)
def test_inverse_cancels(a, b):
    w = Word.letters_of(a) * Word.letters_of(b)
    assert not (w * w.inverse())
    assert (w.inverse()).inverse() == w


def test_commutator_convention():
    a, b = Word.gen(0), Word.gen(1)
    assert to_letters(commutator(a, b)) == [1, 2, -1, -2]


def test_cyclic_reduce():
    w = Word.letters_of([2, 1, 3, -2])
    assert to_letters(w.cyclic_reduce()) == [1, 3]


def test_abelianization_free_and_torsion():
    assert abelianization(free_group(3)).free_rank == 3
    P = GroupPresentation(("a", "b"), (Word.gen(0, 2), Word.gen(1, 2)))
    A = abelianization(P)
    assert A.free_rank == 0 and sorted(A.torsion) == [2, 2]


def test_projective_degrees_drop_rank():
    P = GroupPresentation(("a", "b", "c"), (Word.letters_of([3, 2, 1]),), (1, 1, 1))
    assert abelianization(P).free_rank == 2


def test_character_basics():
    chi = Character.from_signs((1, -1, -1))
    assert chi.order == 2 and chi.exponents == (0, 1, 1)
    assert chi.signs() == (1, -1, -1)
    assert chi.lift(6).exponents == (0, 3, 3)
    assert Character(6, (0, 3, 3)).reduced() == chi
    assert Character(4, (2, 0)).true_order() == 2
    assert chi.value_exponent(Word.letters_of([2, 3, 3])) == 1


def test_validate_character():
    P = GroupPresentation(("a", "b"), (Word.letters_of([1, 2]),))
    assert validate_character(Character(3, (1, 2)), P)[0]
    ok, why = validate_character(Character(3, (1, 1)), P)
    assert not ok and "relator 0" in why


def test_normal_form_free_product():
    w = Word(((0, 3), (1, 1), (1, -1), (0, 1)))
    assert normal_form_free_product_cyclic(w, (2, 0)) == Word()


def test_verify_hom_into_dihedral():
    Z2Z2 = GroupPresentation(("m1", "m2"), (Word.gen(0, 2), Word.gen(1, 2)))
    P = GroupPresentation(("a",), (Word.gen(0, 4),))
    assert verify_hom(GroupHom(P, Z2Z2, (Word.gen(0),)))
    Q = GroupPresentation(("a",), (Word.gen(0, 3),))
    assert not verify_hom(GroupHom(Q, Z2Z2, (Word.gen(0),)))
