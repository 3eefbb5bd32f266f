from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from plurikit.field import KappaRational
from plurikit.poly import Ambient, Poly, tv

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(-5, 5)
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def kappa_rationals(draw, max_deg=2):
    num = draw(st.lists(small_ints, min_size=1, max_size=max_deg + 1))
    den = draw(st.lists(small_ints, min_size=1, max_size=max_deg + 1).filter(any))
    return KappaRational.from_coeffs(num, den)


@st.composite
def t_polys(draw, n=None, max_degree=3, max_terms=3, homogeneous=False):
    n = draw(st.integers(1, 3)) if n is None else n
    amb = Ambient(n)
    deg = draw(st.integers(0, max_degree))
    out = Poly.zero(amb)
    for _ in range(draw(st.integers(1, max_terms))):
        d = deg if homogeneous else draw(st.integers(0, max_degree))
        m = Poly.const(draw(st.integers(-3, 3)), amb)
        for _ in range(d):
            m = m * Poly.variable(tv(draw(st.integers(1, n)), draw(st.integers(1, n))), amb)
        out = out + m
    return out


# rationals away from every integer, so no basis pole is hit
safe_kappas = st.builds(lambda a, b: Fraction(2 * a + 1, 2 * b) + Fraction(1, 7),
                        st.integers(-12, 12), st.integers(1, 4))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
