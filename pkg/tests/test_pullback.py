import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import t_polys
from plurikit.bases import all_bidegrees, descending_basis, mi_abs, mi_factorial, mi_transpose
from plurikit.errors import NonHomogeneous, PoleAtS, ZeroPochhammer
from plurikit.field import KAPPA, K
from plurikit.poly import Ambient, Poly
from plurikit.pullback import (WeightPair, bideterminant, block_annihilated, build_diff2_operator,
                               c_mn, c_pullback, check_phi_derivative_identity, disk_integral_oracle,
                               highest_weight_norm, phi_inverse, phi_kappa, pull_back)

A2 = Ambient(2)


def test_phi_examples():
    assert phi_kappa(Poly.const(1, A2)) == 1
    assert phi_kappa(Poly.t(1, 2, 2)) == Poly.t(2, 1, 2).scale(-KAPPA)
    assert phi_kappa(Poly.t(1, 1, 2)) == Poly.t(1, 1, 2).scale(-KAPPA)


def test_phi_non_homogeneous():
    with pytest.raises(NonHomogeneous):
        phi_kappa(Poly.t(1, 2, 2) + Poly.t(1, 2, 2) ** 2)


@pytest.mark.parametrize("bd", list(all_bidegrees(2, 2)) + list(all_bidegrees(3, 2)))
def test_phi_of_descending(bd):
    for nu, p in descending_basis(bd).items():
        sign = -1 if mi_abs(nu) % 2 else 1
        want = Poly.t_power(mi_transpose(nu), Fraction(sign, mi_factorial(nu)))
        assert phi_kappa(p) == want


def test_phi_inverse_examples():
    assert phi_inverse(Poly.const(1, A2)) == 1
    for nu, p in descending_basis((1, 1), (1, 1)).items():
        q = Poly.t_power(mi_transpose(nu), Fraction(1, mi_factorial(nu)))
        assert phi_inverse(q) == p


@pytest.mark.parametrize("seed", ["A", "B"])
@given(q=t_polys(n=2, max_degree=3, homogeneous=True))
def test_phi_round_trip(seed, q):
    if q.is_zero():
        return
    assert phi_kappa(phi_inverse(q, seed=seed)) == q


def test_phi_derivative_examples():
    assert check_phi_derivative_identity(Poly.const(1, A2), 1, 1)
    assert check_phi_derivative_identity(Poly.t(1, 1, 2), 1, 1)


@given(t_polys(n=2, max_degree=3, homogeneous=True), st.integers(1, 2), st.integers(1, 2))
def test_phi_derivative_identity(p, i, j):
    assert check_phi_derivative_identity(p, i, j)


def test_c_mn_examples():
    s = KAPPA
    k, l = 2, 3
    c = c_mn(1, 1, w=WeightPair((k,), (l,)))
    assert c.pi_power == 1 and c.rational == 1 / (s + k + l + 1)
    z = c_mn(2, 2)
    # prod_i 1 / (s + 4 - i)_(2)
    assert z.rational == 1 / ((s + 3) * (s + 2) * (s + 2) * (s + 1))
    assert z.pi_power == 4
    with pytest.raises(PoleAtS):
        c_mn(1, 1, s=-1)


@pytest.mark.parametrize("m,s,k,l", [(1, 0, 0, 0), (1, 2, 0, 0), (2, 0, 0, 0), (2, 1, 1, 0), (3, 2, 1, 2)])
def test_c_mn_against_quadrature(m, s, k, l):
    w = WeightPair((k,), (l,))
    est, err = disk_integral_oracle(m, 1, s, w)
    assert err < 1e-8
    assert abs(est - c_mn(m, 1, s, w).to_float()) < 1e-6


def test_disk_radial_values():
    assert abs(disk_integral_oracle(1, 1, 0)[0] - math.pi) < 1e-10
    assert abs(disk_integral_oracle(1, 1, 1)[0] - math.pi / 2) < 1e-10
    assert abs(disk_integral_oracle(1, 1, 2)[0] - math.pi / 3) < 1e-10


def test_highest_weight_norm():
    assert highest_weight_norm(WeightPair()) == 1
    assert highest_weight_norm(WeightPair((4,))) == 24
    assert highest_weight_norm(WeightPair((2, 1))) == 3
    assert highest_weight_norm(WeightPair((2, 1), (3,))) == 18


def test_weight_pair_validation():
    with pytest.raises(ValueError):
        WeightPair((1, 2))
    with pytest.raises(ValueError):
        WeightPair((-1,))
    assert WeightPair((2, 0, 0)).k == (2,)


@pytest.mark.parametrize("mu", range(2, 9))
def test_c_pullback_hand_case(mu):
    c = c_pullback(mu, 1, 1, WeightPair())
    assert c.to_float() == pytest.approx(2 ** (mu - 2) * math.pi / (mu - 1))
    assert c.rational == K(Fraction(1, mu - 1))


@pytest.mark.parametrize("mu,m,n2", [(4, 1, 2), (5, 2, 2), (6, 3, 3)])
def test_c_pullback_zero_weights(mu, m, n2):
    c = c_pullback(mu, m, n2, WeightPair())
    assert c.two_power == -2 * m * n2 * n2 - m * (n2 - 2) * mu
    assert c.pi_power == m * n2 * n2
    want = Fraction(1)
    for i in range(1, n2 + 1):
        want /= math.prod(range(mu - i - n2 + 1, mu - i + 1))
    assert c.rational == K(want ** m)


@given(st.lists(st.integers(0, 4), max_size=2), st.lists(st.integers(0, 4), max_size=2),
       st.integers(5, 9), st.integers(1, 2))
def test_c_pullback_symmetric(k, l, mu, m):
    w = WeightPair(tuple(sorted(k, reverse=True)), tuple(sorted(l, reverse=True)))
    a = c_pullback(mu, m, 2, w)
    b = c_pullback(mu, m, 2, w.swapped())
    assert (a.rational, a.two_power, a.pi_power) == (b.rational, b.two_power, b.pi_power)


def test_c_pullback_errors():
    with pytest.raises(ZeroPochhammer):
        c_pullback(2, 1, 2, WeightPair())
    with pytest.raises(ValueError):
        c_pullback(6, 2, 1, [WeightPair()] * 3)


def test_c_pullback_example_json():
    c = c_pullback(6, 1, 2, WeightPair((2, 1), (1,)))
    assert c.to_json() == {"two_exp": -4, "pi_exp": 4, "rational": "3/1120"}


def test_bideterminant():
    amb = Ambient(2)
    M = [[Poly.t(1, 1, 2), Poly.t(1, 2, 2)], [Poly.t(2, 1, 2), Poly.t(2, 2, 2)]]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    assert bideterminant(M, (2, 1)) == M[0][0] * det
    assert bideterminant(M, ()) == Poly.const(1, amb)


@pytest.mark.parametrize("n1,n2,w", [(1, 1, WeightPair((1,), (1,))), (2, 1, WeightPair((1,), (1,))),
                                     (2, 2, WeightPair((1,), (2,))), (2, 1, WeightPair((2,), ()))])
def test_diff2_pluriharmonic(n1, n2, w):
    res = build_diff2_operator(n1, n2, w)
    assert res.annihilated
    assert not res.P.is_zero()


def test_diff2_negative_control():
    # pulling back Q0 itself, without phi^-1, is not pluriharmonic
    res = build_diff2_operator(2, 1, WeightPair((1,), (1,)))
    m = res.m
    q0 = Poly.t(1, 2, 2 * m) * Poly.t(2, 1, 2 * m)
    assert phi_kappa(res.P0) == q0
    assert not block_annihilated(pull_back(q0, 2, 1, m), 2, 1)
