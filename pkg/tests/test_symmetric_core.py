import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from py_jmfree.exceptions import DegreeMismatchError, InvalidPermutationError
from py_jmfree.symmetric_core import (
    GroupAlgebraElement,
    Permutation,
    algebra_multiply,
    compose,
    cycle_type,
    pad_cycle_type,
    reduced_length,
    transposition_chain,
)


def perm(*images):
    return Permutation(tuple(images))


def permutations_of(degree):
    return st.permutations(list(range(1, degree + 1))).map(lambda images: Permutation(tuple(images)))


def elements_of(degree):
    coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(st.tuples(permutations_of(degree), coefficients), max_size=4).map(
        lambda terms: GroupAlgebraElement(degree, terms)
    )


def test_permutation_rejects_non_bijections():
    with pytest.raises(InvalidPermutationError):
        perm(1, 1, 2)
    with pytest.raises(InvalidPermutationError):
        Permutation(())


def test_compose_follows_right_to_left_convention():
    s = Permutation.transposition(1, 2, 3)
    t = Permutation.transposition(2, 3, 3)
    assert compose(s, t) == perm(2, 3, 1)


def test_compose_identity_and_inverse():
    sigma = perm(3, 1, 4, 2)
    e = Permutation.identity(4)
    assert compose(e, sigma) == sigma
    assert compose(sigma, sigma.inverse()) == e


def test_compose_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_reduced_length_examples():
    assert reduced_length(Permutation.identity(5)) == 0
    assert reduced_length(Permutation.transposition(1, 2, 5)) == 1
    assert reduced_length(Permutation.from_cycles([(1, 2, 3)], 5)) == 2


def test_reduced_length_is_shortest_transposition_product():
    degree = 5
    transpositions = [Permutation.transposition(i, j, degree) for i, j in itertools.combinations(range(1, degree + 1), 2)]
    distance = {Permutation.identity(degree): 0}
    frontier = [Permutation.identity(degree)]
    while frontier:
        following = []
        for sigma in frontier:
            for t in transpositions:
                product = compose(sigma, t)
                if product not in distance:
                    distance[product] = distance[sigma] + 1
                    following.append(product)
        frontier = following
    assert len(distance) == 120
    assert all(reduced_length(sigma) == d for sigma, d in distance.items())


def test_cycle_type_examples():
    assert cycle_type(Permutation.from_cycles([(1, 2), (3, 4)], 5)) == (2, 2, 1)
    assert cycle_type(Permutation.identity(3)) == (1, 1, 1)
    product = compose(Permutation.from_cycles([(1, 2, 3)], 5), Permutation.transposition(4, 5, 5))
    assert cycle_type(product) == (3, 2)


def test_embed_adds_fixpoints():
    sigma = Permutation.from_cycles([(1, 2, 3)], 3)
    embedded = sigma.embed(6)
    assert embedded.degree == 6
    assert all(embedded(x) == x for x in range(4, 7))
    assert cycle_type(embedded) == pad_cycle_type(cycle_type(sigma), 6)
    with pytest.raises(DegreeMismatchError):
        embedded.embed(4)


def test_cycle_notation():
    assert str(Permutation.identity(3)) == "()"
    assert str(Permutation.from_cycles([(1, 2), (3, 4)], 4)) == "(1 2)(3 4)"
    assert str(Permutation.from_cycles([(4, 2, 3)], 5)) == "(2 3 4)"


def test_from_cycles_maps_each_point_to_its_successor():
    sigma = Permutation.from_cycles([(1, 3, 2)], 4)
    assert sigma == perm(3, 1, 2, 4)
    assert Permutation.from_cycles([], 3) == Permutation.identity(3)
    assert Permutation.from_cycles([(2,)], 2) == Permutation.identity(2)
    with pytest.raises(InvalidPermutationError):
        Permutation.from_cycles([(1, 2), (2, 3)], 3)
    with pytest.raises(InvalidPermutationError):
        Permutation.from_cycles([(1, 4)], 3)


def test_cycles_with_and_without_fixpoints():
    sigma = perm(3, 2, 1, 5, 4, 6)
    assert sigma.cycles() == [(1, 3), (4, 5)]
    assert sigma.cycles(include_fixpoints=True) == [(1, 3), (2,), (4, 5), (6,)]
    assert Permutation.identity(2).cycles() == []


@given(st.integers(min_value=1, max_value=8).flatmap(permutations_of))
def test_sympy_conversion_keeps_the_action(sigma):
    other = sigma.to_sympy()
    assert all(other(x - 1) + 1 == sigma(x) for x in range(1, sigma.degree + 1))
    assert Permutation.from_sympy(other) == sigma
    assert Permutation.from_cycles(sigma.cycles(), sigma.degree) == sigma
    assert sorted(len(c) for c in sigma.cycles(include_fixpoints=True)) == sorted(cycle_type(sigma))


@given(st.integers(min_value=1, max_value=8).flatmap(permutations_of))
def test_inverse_undoes_the_permutation(sigma):
    inverse = sigma.inverse()
    assert all(inverse(sigma(x)) == x for x in range(1, sigma.degree + 1))


def test_reduced_length_is_subadditive_on_s5():
    group = [Permutation(images) for images in itertools.permutations(range(1, 6))]
    lengths = {sigma: reduced_length(sigma) for sigma in group}
    for s in group:
        for t in group:
            assert lengths[compose(s, t)] <= lengths[s] + lengths[t]


@given(st.integers(min_value=1, max_value=8).flatmap(lambda d: st.tuples(permutations_of(d), permutations_of(d))))
def test_cycle_type_is_conjugation_invariant(pair):
    s, g = pair
    assert cycle_type(compose(compose(g, s), g.inverse())) == cycle_type(s)


def test_transposition_chain_skips_zero_and_repeated_indices():
    assert transposition_chain((1, 2), 3).is_identity()
    assert transposition_chain((0, 1, 0, 2), 3).is_identity()
    assert cycle_type(transposition_chain((1, 2, 3), 3)) == (2, 1)
    expected = compose(compose(Permutation.transposition(1, 2, 4), Permutation.transposition(2, 3, 4)), Permutation.transposition(3, 1, 4))
    assert transposition_chain((1, 2, 3), 4) == expected


def test_algebra_multiply_examples():
    e = Permutation.identity(3)
    t12 = Permutation.transposition(1, 2, 3)
    t13 = Permutation.transposition(1, 3, 3)
    two = GroupAlgebraElement.basis(e, 2)
    three = GroupAlgebraElement.basis(e, 3)
    assert algebra_multiply(two, three) == GroupAlgebraElement.basis(e, 6)
    swap = GroupAlgebraElement.basis(t12)
    assert algebra_multiply(swap, swap) == GroupAlgebraElement.identity(3)
    left = GroupAlgebraElement(3, {t12: 1, t13: 1})
    expected = GroupAlgebraElement(3, {e: 1, compose(t13, t12): 1})
    assert algebra_multiply(left, swap, opposite=False) == expected


def test_zero_coefficients_are_pruned():
    t = Permutation.transposition(1, 2, 2)
    element = GroupAlgebraElement(2, [(t, Fraction(1, 2)), (t, Fraction(-1, 2))])
    assert element.is_zero()
    assert len(element - element) == 0


def test_group_algebra_rejects_mixed_degrees():
    with pytest.raises(DegreeMismatchError):
        GroupAlgebraElement(3, {Permutation.identity(2): 1})
    with pytest.raises(DegreeMismatchError):
        GroupAlgebraElement.identity(2) * GroupAlgebraElement.identity(3)


def test_class_sums_aggregate_by_cycle_type():
    element = GroupAlgebraElement(3, {
        Permutation.transposition(1, 2, 3): 1,
        Permutation.transposition(2, 3, 3): 2,
        Permutation.identity(3): Fraction(1, 2),
    })
    assert element.class_sums() == {(2, 1): Fraction(3), (1, 1, 1): Fraction(1, 2)}


@given(elements_of(4), elements_of(4), elements_of(4))
def test_multiplication_is_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(st.integers(min_value=1, max_value=6).flatmap(lambda d: st.tuples(elements_of(d), elements_of(d))))
def test_opposite_product_is_reversed_product(pair):
    a, b = pair
    assert algebra_multiply(a, b, opposite=True) == algebra_multiply(b, a, opposite=False)
