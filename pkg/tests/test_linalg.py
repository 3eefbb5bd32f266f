import pytest
from hypothesis import given, strategies as st

from conftest import kappa_rationals
from plurikit import linalg
from plurikit.errors import SingularSystem
from plurikit.field import KAPPA, ONE, ZERO, K


def test_det_and_solve_symbolic():
    a = [[KAPPA, ONE], [ONE, KAPPA]]
    assert linalg.det(a) == KAPPA * KAPPA - 1
    x = linalg.solve(a, [[ONE], [ZERO]])
    assert linalg.matmul(a, x) == [[ONE], [ZERO]]


def test_singular():
    a = [[ONE, KAPPA], [K(2), 2 * KAPPA]]
    assert linalg.rank(a) == 1
    assert linalg.det(a) == ZERO
    with pytest.raises(SingularSystem):
        linalg.solve(a, [[ONE], [ZERO]])


@given(st.lists(kappa_rationals(max_deg=1), min_size=9, max_size=9))
def test_inverse_when_regular(entries):
    a = [entries[0:3], entries[3:6], entries[6:9]]
    if linalg.det(a).is_zero():
        assert linalg.rank(a) < 3
        return
    inv = linalg.solve(a, linalg.identity(3))
    assert linalg.matmul(a, inv) == linalg.identity(3)
