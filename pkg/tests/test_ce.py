"""Bigraded Chevalley-Eilenberg chains: word enumeration, differential
signs, homology tables, induced maps, and coinvariant genus scans."""

import itertools
from fractions import Fraction

import pytest

from derhom import ce
from derhom.ce import (GradedLieData, NotAChainMap, abelian_lie, ce_basis,
                       ce_boundary, ce_homology_dims, ce_homology_table,
                       chain_coefficient_blocks, coinvariant_scan,
                       der_omega_lie, induced_homology_map, insert_letter,
                       lambda_map_matrix)
from derhom.forms import gamma_generators
from derhom.linalg import RationalMatrix, rank
from derhom.manifolds import ManifoldSpec

I34 = ManifoldSpec(((3, 4),))


def test_ce_basis_trivial_cases():
    g = abelian_lie({2: 1})
    assert ce_basis(g, 0, 0) == [()]
    assert ce_basis(g, 0, 1) == []
    # one odd suspended letter: no squares
    assert ce_basis(g, 1, 2) == [((2, 0),)]
    assert ce_basis(g, 2, 4) == []
    # an even suspended letter repeats freely
    h = abelian_lie({3: 1})
    assert ce_basis(h, 2, 6) == [((3, 0), (3, 0))]


def test_ce_basis_counts_match_free_graded_commutative():
    # Lambda on letters of suspended degrees 2, 2, 3: Poincare series
    # (1 + t^3) / (1 - t^2)^2
    g = abelian_lie({1: 2, 2: 1})
    import itertools as it
    want = {}
    for e1, e2, e3 in it.product(range(8), range(8), range(2)):
        p = e1 + e2 + e3
        q = e1 + e2 + 2 * e3
        if p + q <= 12:
            want[(p, q)] = want.get((p, q), 0) + 1
    for (p, q), m in want.items():
        assert len(ce_basis(g, p, q)) == m, (p, q)


def test_word_grading_invariants():
    g = der_omega_lie(I34, 5)
    for q in range(0, 6):
        for p in range(0, 4):
            for w in ce_basis(g, p, q):
                assert len(w) == p
                assert sum(d for d, _ in w) == q
            M = ce_boundary(g, p, q)
            assert M.cols == len(ce_basis(g, p, q))
            assert M.rows == len(ce_basis(g, p - 1, q)) if p else True


def test_insert_letter_signs():
    # passing an odd suspended letter with an odd suspended letter flips
    w = ((2, 0),)
    res = insert_letter(w, (4, 0))
    assert res == (((2, 0), (4, 0)), -1)
    # even suspended letters pass freely
    res = insert_letter(((3, 0),), (5, 0))
    assert res == (((3, 0), (5, 0)), 1)
    # odd suspended repeats vanish
    assert insert_letter(((2, 0),), (2, 0)) is None


def test_two_letter_boundary_sign():
    # single relation [x, y] = z with |x| = |y| = 1:
    # delta(sx ^ sy) = (-1)^{|x|} sz = -sz
    def br(a, b):
        if {a, b} == {(1, 0), (1, 1)}:
            return {0: 1}
        return {}

    g = GradedLieData({1: 2, 2: 1}, br)
    M = ce_boundary(g, 2, 2)
    basis = ce_basis(g, 2, 2)
    col = basis.index(((1, 0), (1, 1)))
    assert M.entry(0, col) == -1


def test_abelian_homology_closed_form():
    g = abelian_lie({2: 1})
    dims = ce_homology_dims(g, 6)
    total = {}
    for (p, q), d in dims.items():
        if d:
            total[p + q] = total.get(p + q, 0) + d
    assert total == {0: 1, 3: 1}


def test_delta_squared_zero_on_derivation_algebra():
    # asserted inside ce_homology_dims for every bidegree
    ce_homology_dims(der_omega_lie(I34, 6), 6)


def test_delta_squared_detects_sign_errors():
    # negative control: a "bracket" violating graded antisymmetry makes the
    # differential fail delta^2 = 0
    def bad(a, b):
        if a == (1, 0) and b == (1, 1):
            return {0: 1}
        if a == (1, 1) and b == (1, 0):
            return {0: -1}   # wrong sign for odd letters
        if a == (1, 0) and b == (2, 0):
            return {0: 1}
        if a == (2, 0) and b == (1, 0):
            return {0: 1}
        return {}

    from derhom.linalg import CompositionNotZero
    g = GradedLieData({1: 2, 2: 1, 3: 1}, bad)
    with pytest.raises((AssertionError, CompositionNotZero)):
        ce_homology_dims(g, 5)


def test_homology_table_rows():
    table = ce_homology_table(I34, 4)
    assert (0, 0, 1, True) in table
    assert all(c for _, _, _, c in table)
    # deterministic
    assert table == ce_homology_table(I34, 4)
    by_r = {}
    for p, q, d, _ in table:
        if d:
            by_r[p + q] = by_r.get(p + q, 0) + d
    assert by_r[0] == 1


def test_induced_map_identity():
    lie = der_omega_lie(I34, 4)
    phi = {k: RationalMatrix.identity(sp.dim())
           for k, sp in lie.spaces.items()}
    hm = induced_homology_map(phi, lie, lie, 4)
    for M in hm.values():
        assert M == RationalMatrix.identity(M.rows)


def test_induced_map_rejects_non_chain_maps():
    # [x, y] = z; scaling z but not x, y cannot commute with delta
    def br(a, b):
        if {a, b} == {(1, 0), (1, 1)}:
            return {0: 1}
        return {}

    g = GradedLieData({1: 2, 2: 1}, br)
    phi = {1: RationalMatrix.identity(2),
           2: RationalMatrix.from_rows([[Fraction(2)]])}
    with pytest.raises(NotAChainMap):
        induced_homology_map(phi, g, g, 4)


def test_gamma_generators_act_invertibly():
    cut = 4
    lie = der_omega_lie(I34, cut)
    for g in gamma_generators(I34):
        phi = ce.gamma_phi(g, I34, lie)
        hm = induced_homology_map(phi, lie, lie, cut)
        for M in hm.values():
            assert M.rows == M.cols
            assert rank(M) == M.rows


def test_stabilization_functoriality_on_homology():
    cut = 4
    I, J, K = I34, I34.stabilized(3), I34.stabilized(3).stabilized(3)
    lI, lJ, lK = (der_omega_lie(x, cut) for x in (I, J, K))
    pIJ = ce.stabilization_phi(I, J, lI, lJ)
    pJK = ce.stabilization_phi(J, K, lJ, lK)
    hIJ = induced_homology_map(pIJ, lI, lJ, cut)
    hJK = induced_homology_map(pJK, lJ, lK, cut)
    direct = {k: pJK[k].matmul(pIJ[k]) for k in pIJ}
    hIK = induced_homology_map(direct, lI, lK, cut)
    for key in hIK:
        assert hJK[key].matmul(hIJ[key]) == hIK[key], key


def test_chain_blocks():
    assert chain_coefficient_blocks(0) == [(0, 0)]
    assert chain_coefficient_blocks(2) == [(1, 1)]
    assert (2, 2) in chain_coefficient_blocks(4)


def test_coinvariant_scan_degree_zero():
    dims, surj = coinvariant_scan(I34, 3, 0, 3)
    assert dims == [1, 1, 1]
    assert surj == [True, True]


def test_coinvariant_scan_small_degree():
    dims, surj = coinvariant_scan(I34, 3, 2, 4)
    assert len(dims) == 4 and len(surj) == 3
    assert all(d >= 0 for d in dims)
