from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import kappa_rationals, safe_kappas
from plurikit.errors import PoleAtKappa
from plurikit.field import KAPPA, ONE, ZERO, K, KappaRational, asc_poch, desc_poch, eval_at


def test_asc_poch_examples():
    assert asc_poch(KAPPA - 1, 0) == ONE
    assert asc_poch(KAPPA - 1, 2) == KAPPA * KAPPA - KAPPA
    assert asc_poch(3, 3) == 60


def test_desc_poch_examples():
    x = KAPPA + 7
    assert desc_poch(x, 1) == x
    assert desc_poch(5, 3) == 60
    assert desc_poch(KAPPA, 2) == KAPPA * KAPPA - KAPPA


def test_eval_at_examples():
    assert eval_at(1 / (KAPPA - 2), 3) == 1
    assert eval_at((KAPPA * KAPPA - KAPPA) / (KAPPA - 1), 5) == 5
    with pytest.raises(PoleAtKappa):
        eval_at(1 / (KAPPA - 2), 2)


def test_cancellation_is_structural():
    a = (KAPPA * KAPPA - 1) / (KAPPA - 1)
    assert a == KAPPA + 1
    assert hash(a) == hash(KAPPA + 1)
    assert a.is_polynomial()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_str():
    assert str(KAPPA) == "k"
    assert str(K(Fraction(1, 2)) / (KAPPA * KAPPA + KAPPA)) == "(1/2)/(k^2 + k)"


@given(kappa_rationals(), kappa_rationals(), kappa_rationals())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == ZERO


@given(kappa_rationals())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == ONE


@given(kappa_rationals())
def test_json_round_trip(a):
    assert KappaRational.from_json(a.to_json()) == a


@given(kappa_rationals(), kappa_rationals(), safe_kappas)
def test_specialization_is_a_homomorphism(a, b, q):
    try:
        fa, fb = eval_at(a, q), eval_at(b, q)
    except PoleAtKappa:
        return
    assert eval_at(a * b, q) == fa * fb
    assert eval_at(a + b, q) == fa + fb


@given(st.integers(0, 6), st.integers(-4, 4))
def test_asc_desc_relation(r, shift):
    # (x)^(r) = (x + r - 1)_(r)
    x = KAPPA + shift
    assert asc_poch(x, r) == desc_poch(x + r - 1, r)
