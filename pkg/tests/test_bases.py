import pytest
from hypothesis import given, strategies as st

from conftest import safe_kappas
from plurikit.bases import (Partition, all_bidegrees, descending_basis, enumerate_N, enumerate_N0,
                            gram_matrix, gram_matrix_D, mi_add, mi_bidegree, monomial_basis,
                            project_Pi, reconstruct_from_seed, seed_of)
from plurikit.errors import PoleAtKappa
from plurikit.field import KAPPA, ONE, K, asc_poch
from plurikit.linalg import identity
from plurikit.poly import Ambient, Bidegree, Poly
from plurikit.weyl import apply_D

A2 = Ambient(2)
NU_SWAP = ((0, 1), (1, 0))
H = Poly.t(1, 2, 2) * Poly.t(2, 1, 2) - Poly.t(1, 1, 2) * Poly.t(2, 2, 2) / KAPPA


def test_enumerate_N0_examples():
    assert enumerate_N0((1, 1), (1, 1), partition=(1, 1)) == [NU_SWAP]
    assert enumerate_N0((1, 0), (1, 0), partition=(1, 1)) == []
    assert enumerate_N0((1, 1), (1, 1), partition=(2,)) == []


def test_enumerate_N_counts():
    # contingency tables with unit margins are permutations
    assert len(enumerate_N(Bidegree((1, 1, 1), (1, 1, 1)))) == 6
    for nu in enumerate_N(Bidegree((2, 1), (1, 2))):
        assert mi_bidegree(nu) == Bidegree((2, 1), (1, 2))


def test_project_Pi_examples():
    t12 = Poly.t(1, 2, 2)
    assert project_Pi(t12) == t12
    assert project_Pi(Poly.t_power(NU_SWAP)) == H
    assert project_Pi(Poly.const(1, A2)) == 1


def test_monomial_basis_examples():
    assert monomial_basis((1, 1), (1, 1)) == {NU_SWAP: H}
    assert monomial_basis((1, 0), (0, 1)) == {((0, 1), (0, 0)): Poly.t(1, 2, 2)}


def test_monomial_basis_n2_coefficient():
    nu0 = ((0, 2), (2, 0))
    p = monomial_basis((2, 2), (2, 2))[nu0]
    c0 = p.terms[Poly.t_power(nu0).sorted_terms()[0][0]]
    c1 = p.terms[Poly.t_power(((1, 1), (1, 1))).sorted_terms()[0][0]]
    assert c1 / c0 == K(-4) / (KAPPA + 2)


def test_descending_examples():
    assert descending_basis((0, 0, 0), (0, 0, 0)) == {((0, 0, 0),) * 3: Poly.const(1, Ambient(3))}
    e12 = ((0, 1, 0), (0, 0, 0), (0, 0, 0))
    assert descending_basis(mi_bidegree(e12))[e12] == Poly.t(1, 2, 3) / KAPPA
    nu = ((0, 1, 0), (0, 0, 1), (0, 0, 0))
    t = lambda i, j: Poly.t(i, j, 3)
    printed = KAPPA ** 2 * t(1, 2) * t(2, 3) - KAPPA * t(2, 2) * t(1, 3)
    norm = asc_poch(KAPPA, 2) * asc_poch(KAPPA - 1, 2)
    assert descending_basis(mi_bidegree(nu))[nu] == printed / norm


def test_reconstruct_examples():
    e12 = ((0, 1), (0, 0))
    assert reconstruct_from_seed({e12: 1}) == Poly.t(1, 2, 2)
    assert reconstruct_from_seed({NU_SWAP: 1}) == H
    assert reconstruct_from_seed({}, n=2).is_zero()


def test_gram_examples():
    one = {((0, 0), (0, 0)): Poly.const(1, A2)}
    assert gram_matrix(one) == [[ONE]]
    m = monomial_basis((1, 1), (1, 1))
    d = descending_basis((1, 1), (1, 1))
    assert gram_matrix(m, d) == [[ONE]]
    e12 = monomial_basis((1, 0), (0, 1))
    assert gram_matrix(e12) == [[KAPPA]]


@pytest.mark.parametrize("bd", list(all_bidegrees(2, 2)) + [Bidegree((1, 1, 1), (1, 1, 1)),
                                                           Bidegree((2, 1, 0), (0, 1, 2))])
def test_duality(bd):
    m = monomial_basis(bd)
    d = descending_basis(bd)
    assert gram_matrix(m, d) == identity(len(m))
    assert gram_matrix_D(m) == gram_matrix(m)


@pytest.mark.parametrize("bd", list(all_bidegrees(3, 2)))
def test_descending_property(bd):
    basis = descending_basis(bd)
    n = bd.n
    lower = {}
    for nu, p in basis.items():
        for i in range(1, n + 1):
            assert apply_D(i, i, p).is_zero()
            for j in range(1, n + 1):
                if i == j:
                    continue
                mu = mi_add(nu, i, j, -1)
                got = apply_D(i, j, p)
                if mu is None:
                    assert got.is_zero()
                    continue
                low = bd.shift(i, j)
                if low not in lower:
                    lower[low] = descending_basis(low)
                assert got == lower[low][mu]


@pytest.mark.parametrize("bd", list(all_bidegrees(2, 3)) + list(all_bidegrees(3, 2)))
def test_methods_agree(bd):
    assert descending_basis(bd, method="generating_function") == descending_basis(bd)


def test_dimension_matches_count():
    # dim P_{a,b} for n = 2 is 1 when a1 = b2, a2 = b1 and the set is nonempty
    for bd in all_bidegrees(2, 3):
        want = 1 if bd.a == bd.b[::-1] else 0
        assert len(monomial_basis(bd)) == want


def test_partition_basis_annihilated_by_blocks():
    part = Partition((2, 1))
    bd = Bidegree((1, 1, 1), (1, 1, 1))
    for p in monomial_basis(bd, partition=part).values():
        for i, j in part.block_pairs():
            assert apply_D(i, j, p).is_zero()
    for p in descending_basis(bd, partition=part).values():
        for i, j in part.block_pairs():
            assert apply_D(i, j, p).is_zero()


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        monomial_basis((1, 0), (0, 1), partition=(3,))


def test_descending_pole():
    with pytest.raises(PoleAtKappa):
        descending_basis((1, 1, 0), (0, 1, 1), kappa=2)


@given(safe_kappas)
def test_specialized_basis_matches(q):
    sym = descending_basis((1, 1, 1), (1, 1, 1))
    num = descending_basis((1, 1, 1), (1, 1, 1), kappa=q)
    for nu in sym:
        assert sym[nu].specialize(q) == num[nu]


@given(st.dictionaries(st.sampled_from(enumerate_N0(Bidegree((1, 1, 1), (1, 1, 1)))),
                       st.integers(-4, 4)))
def test_seed_faithful(seed):
    bd = Bidegree((1, 1, 1), (1, 1, 1))
    p = reconstruct_from_seed(seed, bd, n=3)
    for i in range(1, 4):
        assert apply_D(i, i, p).is_zero()
    assert seed_of(p, bd) == {nu: K(c) for nu, c in seed.items() if c}


def test_count_of_N_for_unit_margins():
    for n in range(1, 4):
        bd = Bidegree((1,) * n, (1,) * n)
        assert len(enumerate_N(bd)) == [1, 2, 6][n - 1]
