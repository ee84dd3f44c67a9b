import itertools

import pytest

from biclosed.bijection import (
    PositionVector, associative_via_biclosed, biclosed_to_semigroup,
    biclosed_to_semigroup_structural, classify, deinterleave, find_form, format_labels,
    interleave, op_to_pairs, pairs_to_op, parse_labels, semigroup_from_form,
    semigroup_to_biclosed,
)
from biclosed.errors import NotAssociative, NotBiclosed
from biclosed.permutation import Permutation
from biclosed.root_system import (
    RootSet, act_set, build_psi, full_root_system, is_biclosed, standard_positive_system,
)
from biclosed.semigroup import (
    PreorderDecomposition, QuasitrivialOp, act_op, all_quasitrivial, from_preorder,
    is_associative, natural_max, natural_min, projection, to_preorder,
)

from conftest import all_subsets
from test_semigroup import NON_ASSOCIATIVE

P = Permutation.from_cycles


def rs(n, *roots):
    return RootSet.from_roots(n, roots)


WORKED_TABLE = {
    (1, 4): "A_1<A_2<B_1<B_2",
    (1, 5): "A_1<B_1<A_2<B_2",
    (1, 6): "A_1<B_1<B_2<A_2",
    (2, 5): "B_1<A_1<A_2<B_2",
    (2, 6): "B_1<A_1<B_2<A_2",
    (3, 6): "B_1<B_2<A_1<A_2",
}


def test_interleave_worked_table():
    vectors = list(PositionVector.all(8, (2, 3)))
    assert [v.positions for v in vectors] == sorted(WORKED_TABLE)
    for v in vectors:
        assert v.p == 2
        assert format_labels(interleave(v)) == WORKED_TABLE[v.positions]


def test_interleave_without_runs():
    assert interleave(PositionVector(4, (), ())) == [("B", j) for j in range(1, 6)]
    assert deinterleave(parse_labels("B_1<B_2<B_3"), 2, ()).positions == ()


def test_deinterleave_examples():
    assert deinterleave(parse_labels("A_1<B_1<B_2<A_2"), 8, (2, 3)).positions == (1, 6)
    assert deinterleave(parse_labels("B_1<B_2<A_1<A_2"), 8, (2, 3)).positions == (3, 6)
    with pytest.raises(ValueError):
        deinterleave(parse_labels("A_2<A_1<B_1<B_2"), 8, (2, 3))
    with pytest.raises(ValueError):
        deinterleave(parse_labels("B_2<A_1<B_1<A_2"), 8, (2, 3))
    with pytest.raises(ValueError):
        deinterleave(parse_labels("A_1<A_2<B_1"), 8, (2, 3))


def test_position_vector_validation():
    with pytest.raises(ValueError):
        PositionVector(8, (2, 3), (1, 3))  # runs touch
    with pytest.raises(ValueError):
        PositionVector(8, (2, 3), (1, 7))  # overruns n
    with pytest.raises(ValueError):
        PositionVector(8, (2,), (0,))


def _shuffles(t, p):
    for slots in itertools.combinations(range(t + p), t):
        out, a, b = [], 0, 0
        for k in range(t + p):
            if k in slots:
                a += 1
                out.append(("A", a))
            else:
                b += 1
                out.append(("B", b))
        yield out


@pytest.mark.parametrize("n", range(0, 9))
def test_interleave_is_a_bijection(n):
    for t in range(0, 4):
        for sizes in itertools.product(range(1, n + 1), repeat=t):
            vectors = list(PositionVector.all(n, sizes))
            if not vectors:
                continue
            images = [tuple(interleave(v)) for v in vectors]
            assert sorted(images) == sorted(tuple(s) for s in _shuffles(t, vectors[0].p))
            for v, img in zip(vectors, images):
                assert deinterleave(img, n, sizes) == v
            for order in _shuffles(t, vectors[0].p):
                assert interleave(deinterleave(order, n, sizes)) == order


def test_op_to_pairs_examples():
    assert op_to_pairs(projection(3, 1)) == RootSet(2)
    assert op_to_pairs(projection(3, 2)) == full_root_system(2)
    C = op_to_pairs(NON_ASSOCIATIVE)
    assert C == rs(2, (1, 2), (2, 1), (3, 1), (2, 3))
    assert not is_biclosed(C)


def test_pairs_to_op_examples():
    assert pairs_to_op(RootSet(2)) == projection(3, 1)
    assert pairs_to_op(rs(1, (1, 2))) == natural_max(2)
    assert pairs_to_op(rs(1, (2, 1))) == natural_min(2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_pair_dictionary_is_a_bijection(m):
    images = set()
    for F in all_quasitrivial(m):
        C = op_to_pairs(F)
        assert pairs_to_op(C) == F
        images.add(C)
    assert len(images) == 2 ** (m * (m - 1))
    for C in all_subsets(m - 1) if m <= 3 else []:
        assert op_to_pairs(pairs_to_op(C)) == C


def _four_cases(F, C):
    """The pair dictionary case by case, on every j < k."""
    for j, k in itertools.combinations(range(1, F.m + 1), 2):
        pos, neg = (j, k) in C, (k, j) in C
        values = (F(j, k), F(k, j))
        if not pos and not neg:
            assert values == (j, k)
        elif pos and not neg:
            assert values == (k, k)
        elif neg and not pos:
            assert values == (j, j)
        else:
            assert values == (k, j)


def test_four_cases_hold_on_every_table():
    for m in (2, 3, 4):
        for F in all_quasitrivial(m):
            _four_cases(F, op_to_pairs(F))


def test_associative_via_biclosed():
    assert associative_via_biclosed(natural_max(3))
    assert not associative_via_biclosed(NON_ASSOCIATIVE)
    for m in range(1, 6):
        assert associative_via_biclosed(projection(m, 1))


def test_biclosed_to_semigroup_examples():
    assert biclosed_to_semigroup(RootSet(2)) == projection(3, 1)
    F = biclosed_to_semigroup(rs(2, (1, 2), (3, 2)))
    assert str(to_preorder(F)) == "{1,3}^1≺2"
    assert biclosed_to_semigroup(standard_positive_system(2)) == natural_max(3)
    with pytest.raises(NotBiclosed) as info:
        biclosed_to_semigroup(rs(2, (1, 3)))
    assert info.value.witness == ("complement", (1, 2), (2, 3))


def test_semigroup_to_biclosed_examples():
    assert semigroup_to_biclosed(projection(3, 2)) == full_root_system(2)
    F = from_preorder(PreorderDecomposition(3, ((2,), (1, 3)), (None, 1)))
    assert semigroup_to_biclosed(F) == rs(2, (2, 3), (2, 1))
    assert semigroup_to_biclosed(natural_max(3)) == standard_positive_system(2)
    with pytest.raises(NotAssociative):
        semigroup_to_biclosed(NON_ASSOCIATIVE)


def test_classify_examples():
    c = classify(rs(2, (1, 2), (3, 2)))
    assert (c.w, c.delta1, c.delta2) == (P("(2,3)", 3), {1}, set())
    c = classify(standard_positive_system(2))
    assert c.w.is_identity() and not c.delta1 and not c.delta2
    c = classify(rs(2, (3, 2), (1, 3), (3, 1), (1, 2)))
    assert (c.w, c.delta1, c.delta2) == (P("(2,3)", 3), set(), {1})
    assert str(c) == "(2,3)Φ⁺_{∅,{α_1}}"
    with pytest.raises(NotBiclosed):
        classify(rs(2, (1, 3)))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_bijection_properties(n, biclosed_by_rank):
    sets = biclosed_by_rank[n]
    perms = list(Permutation.all(n + 1))
    ops = set()
    for C in sets:
        F = biclosed_to_semigroup(C)
        ops.add(F)
        assert is_associative(F)
        assert semigroup_to_biclosed(F) == C
        assert F == biclosed_to_semigroup_structural(C)
        form = classify(C)
        assert build_psi(form.w, form.delta1, form.delta2, n) == C
        # the canonical w lists each class in ascending order
        assert form.w.images == tuple(x for b in to_preorder(F).blocks for x in b)
        for s in perms:
            assert act_op(s, F) == biclosed_to_semigroup(act_set(s, C))
    assert len(ops) == len(sets)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classify_after_build_psi_is_canonical(n):
    for form_pair in [(D1, D2) for D1, D2 in __import__("biclosed").root_system.orthogonal_pairs(n)]:
        for w in Permutation.all(n + 1):
            C = build_psi(w, *form_pair, n)
            c = classify(C)
            assert (c.delta1, c.delta2) == form_pair
            assert w.inverse() * c.w in set(
                __import__("biclosed").root_system.stabilizer(build_psi(Permutation.identity(n + 1), *form_pair, n)))


def test_structural_route_is_independent_of_representative():
    # every w in the coset gives the same operation
    n = 3
    D1, D2 = frozenset({1}), frozenset({3})
    base = build_psi(Permutation.identity(4), D1, D2, n)
    ops = set()
    for w in Permutation.all(4):
        if build_psi(w, D1, D2, n) == base:
            ops.add(semigroup_from_form(w, D1, D2, n))
    assert ops == {biclosed_to_semigroup(base)}


def test_find_form_may_pick_another_representative():
    C = rs(2, (3, 1), (2, 1))  # (1,3) Phi+_{{1},{}} in the worked example
    found = find_form(C)
    assert build_psi(found.w, found.delta1, found.delta2, 2) == C
    assert classify(C).w == P("(1,2,3)", 3)
