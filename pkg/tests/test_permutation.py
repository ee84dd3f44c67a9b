import pytest
from hypothesis import given, strategies as st

from biclosed.permutation import Permutation, parse_permutation


def perms(m):
    return st.permutations(list(range(1, m + 1))).map(lambda p: Permutation(tuple(p)))


def test_cycle_roundtrip_examples():
    assert Permutation.from_cycles("(1,3)", 3).images == (3, 2, 1)
    assert Permutation.from_cycles("(1,2,3)", 3).images == (2, 3, 1)
    assert Permutation.from_cycles("(1 2)(3 4)", 4).images == (2, 1, 4, 3)
    assert str(Permutation((2, 3, 1))) == "(1,2,3)"
    assert str(Permutation.identity(4)) == "()"
    assert Permutation.from_cycles("id", 3).is_identity()


def test_composition_applies_right_factor_first():
    s = Permutation.from_cycles("(1,2)", 3)
    t = Permutation.from_cycles("(2,3)", 3)
    # (s t)(2) = s(t(2)) = s(3) = 3
    assert (s * t)(2) == 3
    assert (t * s)(2) == 1


@pytest.mark.parametrize("text", ["(1,4)", "(1,2", "(1,2)(2,3)", "12"])
def test_bad_cycles_rejected(text):
    with pytest.raises(ValueError):
        Permutation.from_cycles(text, 3)


def test_image_list_parsing():
    assert parse_permutation("[2, 1, 3]", 3) == Permutation((2, 1, 3))
    with pytest.raises(ValueError):
        parse_permutation("[1, 1, 3]", 3)
    with pytest.raises(ValueError):
        parse_permutation("[1, 2]", 3)


def test_all_has_factorial_size():
    assert len(list(Permutation.all(4))) == 24
    assert len(set(Permutation.all(4))) == 24


@given(perms(5), perms(5), perms(5))
def test_group_laws(a, b, c):
    e = Permutation.identity(5)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert Permutation.from_cycles(str(a), 5) == a
