import sympy
import pytest
from hypothesis import given, strategies as st

from plurikit.field import KAPPA, ONE, ZERO, K, asc_poch
from plurikit.genfun import (TruncatedSeries, apply_J, apply_Lp, apply_Mn, build_G,
                             build_symmetric_G, check_commutation, eps_minus, eps_plus,
                             g2_closed_form, g3_closed_form, g3_coefficient, l1_constants,
                             normalization, s_weight, seed_A, seed_B, sigma,
                             substitute_and_extract, uv_degree)
from plurikit.poly import U1, U2, V1, V2, X, Ambient, Poly, mono_from_dict, sv, tv
from plurikit.weyl import apply_D


def series(exps_to_coeff, w=8):
    terms = {mono_from_dict({sv(a + 1): e for a, e in enumerate(ex) if e}): K(c)
             for ex, c in exps_to_coeff.items()}
    return TruncatedSeries.make(terms, w)


def const(c, w=8):
    return series({(): c}, w)


def test_Lp_examples():
    assert apply_Lp(2, series({(0, 1): 1})) == TruncatedSeries.make({(): KAPPA - 1}, 8)
    assert apply_Lp(2, series({(2,): 1})) == const(-2)
    assert apply_Lp(1, const(1)).is_zero()


def test_Mn_examples():
    assert apply_Mn(2, series({(2,): 1})) == const(2)
    # ordered pairs (1, 2) and (2, 1) both contribute
    assert apply_Mn(3, series({(1, 1): 1})) == const(2)
    assert apply_Mn(2, const(1)).is_zero()


def test_J_on_constant():
    f = const(5)
    assert apply_J(KAPPA - 2, 2, f) == f


def test_J_coefficient_rule():
    # r = 1 coefficient of s_2 in J(s_2 M_2) f is M_2 f / (nu + 1)
    f = series({(2,): 1})
    out = apply_J(KAPPA - 2, 2, f)
    assert out.coefficient([0, 1]) == 2 / (KAPPA - 1)


def test_build_G_trivial():
    g = seed_A(5)
    assert build_G(1, g).poly == g.poly


@pytest.mark.parametrize("w", [2, 4, 6])
def test_G2_closed_form(w):
    assert build_G(2, seed_B(w)) == g2_closed_form(w)


@pytest.mark.parametrize("w", [3, 6, 9])
def test_G3_closed_form(w):
    assert build_G(3, seed_A(w)) == g3_closed_form(w)


def test_g3_values():
    for a in range(5):
        assert g3_coefficient(a, 0, 0) == asc_poch(KAPPA - 1, a)
    assert g3_coefficient(0, 0, 0) == ONE
    # (kappa - 1) A_{0,1,0} = A_{2,0,0}
    assert (KAPPA - 1) * g3_coefficient(0, 1, 0) == g3_coefficient(2, 0, 0)
    assert g3_coefficient(0, 1, 0) == KAPPA


@pytest.mark.parametrize("n", [2, 3])
def test_Lp_annihilates_G(n):
    w = 7
    G = build_G(n, seed_A(w), w)
    for p in range(2, n + 1):
        lp = apply_Lp(p, G).poly.truncate(w - p, s_weight)
        assert lp.is_zero()
    assert not apply_Lp(1, G).poly.truncate(w - 1, s_weight).is_zero()


def test_sigma_examples():
    amb = Ambient(3)
    assert sigma(3, 0) == Poly.const(1, amb)
    t = lambda i, j: Poly.t(i, j, 3)
    x = lambda i, j: Poly.variable((X, i, j), amb)
    pairs = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]
    assert sigma(3, 1) == sum((t(i, j) * x(i, j) for i, j in pairs), Poly.zero(amb))
    det = ((t(3, 3) * t(2, 2) - t(3, 2) * t(2, 3)) * t(1, 1) + (t(3, 1) * t(2, 3) - t(3, 3) * t(2, 1)) * t(1, 2)
           + (t(3, 2) * t(2, 1) - t(3, 1) * t(2, 2)) * t(1, 3))
    assert sigma(3, 3) == det * (x(3, 1) * x(2, 3) * x(1, 2) + x(3, 2) * x(2, 1) * x(1, 3))


def _to_sympy(p: Poly, syms):
    out = 0
    for m, c in p.terms.items():
        term = sympy.Rational(c.constant_value().numerator, c.constant_value().denominator)
        for v, e in m:
            term *= syms[v] ** e
        out += term
    return sympy.expand(out)


@pytest.mark.parametrize("n,i,full", [(2, 1, False), (2, 2, True), (3, 2, False), (3, 2, True), (3, 3, True)])
def test_sigma_principal_minor_oracle(n, i, full):
    from itertools import combinations

    T = sympy.Matrix(n, n, lambda a, b: sympy.Symbol(f"t{a + 1}{b + 1}"))
    Xm = sympy.Matrix(n, n, lambda a, b: 0 if (a == b and not full) else sympy.Symbol(f"x{a + 1}{b + 1}"))
    M = Xm * T.T
    want = sum(M.extract(list(S), list(S)).det() for S in combinations(range(n), i))
    syms = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            syms[tv(a, b)] = sympy.Symbol(f"t{a}{b}")
            syms[(X, a, b)] = sympy.Symbol(f"x{a}{b}")
    assert _to_sympy(sigma(n, i, full=full), syms) == sympy.expand(want)


def test_extraction_gives_unnormalized_descending():
    G = build_G(2, seed_A(2), 2)
    raw = substitute_and_extract(G, 2, degree=2)
    nu = ((0, 1), (1, 0))
    t = lambda i, j: Poly.t(i, j, 2)
    p = raw[nu]
    assert apply_D(1, 1, p).is_zero() and apply_D(2, 2, p).is_zero()
    assert p.terms[(t(1, 2) * t(2, 1)).sorted_terms()[0][0]] != ZERO
    one_x = Poly.const(1, Ambient(2)).extract_coefficient(X, mono_from_dict({(X, 1, 2): 1}))
    assert one_x.is_zero()


def test_seed_normalizations():
    for d in range(1, 5):
        assert normalization(seed_A(d), d) == asc_poch(KAPPA, d) * asc_poch(KAPPA - 1, d)
        assert normalization(seed_B(d), d) == asc_poch(KAPPA, d) * asc_poch(2 * KAPPA - 3, d) / 2 ** d
    assert l1_constants(seed_B(1), 1) == [KAPPA * (2 * KAPPA - 3) / 2]


def test_commutation_examples():
    assert check_commutation(2, 2, 4)
    assert check_commutation(2, 3, 6)
    assert check_commutation(1, 2, 3)


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (2, 3)])
def test_printed_commutator_fails(p, q):
    assert check_commutation(p, q, 5)
    assert not check_commutation(p, q, 5, coeff=-1)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 12))
def test_eps_antisymmetry(a, b, m):
    assert eps_minus(a, b, m) == -eps_minus(b, a, m)
    assert eps_plus(a, b, m) == eps_plus(b, a, m)


@pytest.mark.parametrize("n1,n2", [(1, 1), (2, 1)])
def test_symmetric_generator(n1, n2):
    g = build_symmetric_G(n1, n2, 4)
    assert g.constant_term() == ONE
    for i in range(1, n1 + 1):
        for j in range(1, n1 + 1):
            assert apply_D(i, j, g).is_zero()
    for m in g.terms:
        assert uv_degree(m) <= 4


def test_symmetric_generator_degree_two():
    amb = Ambient(2)
    g = build_symmetric_G(1, 1, 2)
    v = lambda f: Poly.variable((f, 1, 1), amb)
    tau12 = Poly.t(1, 2, 2) * v(U1) * v(V2)
    tau21 = Poly.t(2, 1, 2) * v(V1) * v(U2)
    deg2 = g - Poly.const(1, amb)
    assert deg2 == (tau12 + tau21).scale(KAPPA - K(3) / 2)
