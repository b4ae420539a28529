"""Free graded Lie algebras: bases against independent oracles, bracket
identities, normalization, and the boundary-sphere element."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from derhom.freelie import (GradedSpace, LieElement, bracket,
                            bracketing_span_dims, degree_basis,
                            generator_space, graded_witt_dims,
                            normalize_tensor, omega, weight_basis)
from derhom.manifolds import ManifoldSpec


def space(*degrees):
    return GradedSpace(tuple(("x%d" % i, d) for i, d in enumerate(degrees)))


def test_generator_space():
    I = ManifoldSpec(((3, 4), (3, 4)))
    V = generator_space(I)
    assert V.basis == (("a1", 2), ("b1", 3), ("a2", 2), ("b2", 3))
    assert V.graded_dims() == {2: 2, 3: 2}


def test_weight_basis_even_generator():
    # one generator of even degree: [x, x] = 0, everything vanishes above
    # weight 1
    V = space(2)
    assert len(weight_basis(V, 1)) == 1
    assert len(weight_basis(V, 2)) == 0
    assert len(weight_basis(V, 3)) == 0


def test_weight_basis_odd_generator():
    # one generator of odd degree: [x, x] != 0, [x, [x, x]] = 0 by Jacobi
    V = space(3)
    assert len(weight_basis(V, 1)) == 1
    assert len(weight_basis(V, 2)) == 1
    assert len(weight_basis(V, 3)) == 0


def test_weight_basis_two_generators():
    # two odd generators: weight 2 has [a,a], [a,b], [b,b]
    V = space(3, 3)
    assert len(weight_basis(V, 2)) == 3


@pytest.mark.parametrize("degrees", [(2,), (3,), (2, 3), (3, 3), (2, 2, 3)])
def test_weight_basis_against_oracles(degrees):
    V = space(*degrees)
    for w in range(1, 5):
        by_deg = {}
        for mono in weight_basis(V, w):
            by_deg[mono.degree] = by_deg.get(mono.degree, 0) + 1
        assert by_deg == graded_witt_dims(V, w), (degrees, w)
        assert by_deg == bracketing_span_dims(V, w), (degrees, w)


def test_degree_basis_windows_are_exact():
    V = generator_space(ManifoldSpec(((3, 4),)))
    # degrees are >= 2, so degree d admits weight at most d // 2; the basis
    # enumerates every weight
    for d in range(2, 9):
        monos = degree_basis(V, d)
        assert all(m.degree == d for m in monos)
        assert all(m.weight <= d // 2 for m in monos)


def gens(V):
    return [LieElement.generator(V, l) for l in V.labels]


def test_bracket_antisymmetry_and_jacobi():
    V = space(2, 3, 3)
    xs = gens(V)
    for x, y in itertools.product(xs, repeat=2):
        sx, sy = x.degree(), y.degree()
        lhs = bracket(x, y)
        rhs = bracket(y, x).scale(-((-1) ** (sx * sy)))
        assert lhs == rhs
    for x, y, z in itertools.product(xs, repeat=3):
        sx, sy, sz = x.degree(), y.degree(), z.degree()
        a = bracket(x, bracket(y, z))
        b = bracket(bracket(x, y), z)
        c = bracket(y, bracket(x, z)).scale((-1) ** (sx * sy))
        assert a == b.add(c), (x, y, z)


def test_normalize_tensor_round_trip():
    V = space(2, 3, 2)
    xs = gens(V)
    for x, y in itertools.product(xs, repeat=2):
        el = bracket(x, y)
        renorm = normalize_tensor(V, el.tensor_expansion())
        assert renorm == el
    el = bracket(xs[0], bracket(xs[1], xs[2]))
    assert normalize_tensor(V, el.tensor_expansion()) == el


def test_normalize_rejects_non_lie_tensors():
    V = space(2, 2)
    # x (x) y alone is not primitive
    t = {("x0", "x1"): Fraction(1)}
    with pytest.raises(ValueError):
        normalize_tensor(V, t)


def test_omega_degree_and_content():
    I = ManifoldSpec(((3, 4),))
    om = omega(I)
    assert om.degree() == I.n - 2
    V = generator_space(I)
    a, b = gens(V)
    # omega = -(-1)^3 [a, b] = [a, b]
    assert om == bracket(a, b)


def test_omega_multi_summand():
    I = ManifoldSpec(((3, 4), (3, 4)))
    om = omega(I)
    assert om.degree() == 5
    V = generator_space(I)
    a1, b1, a2, b2 = gens(V)
    assert om == bracket(a1, b1).add(bracket(a2, b2))


degree_lists = st.lists(st.integers(min_value=2, max_value=4),
                        min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(degree_lists, st.integers(min_value=1, max_value=4))
def test_witt_dims_match_basis(degrees, w):
    V = space(*degrees)
    monos = weight_basis(V, w)
    by_deg = {}
    for m in monos:
        by_deg[m.degree] = by_deg.get(m.degree, 0) + 1
    assert by_deg == graded_witt_dims(V, w)


@settings(max_examples=20, deadline=None)
@given(degree_lists)
def test_degree_basis_consistent_with_weight_basis(degrees):
    V = space(*degrees)
    for d in range(2, 7):
        direct = degree_basis(V, d)
        collected = [m for w in range(1, d + 1)
                     for m in weight_basis(V, w) if m.degree == d]
        assert sorted(map(repr, direct)) == sorted(map(repr, collected))
