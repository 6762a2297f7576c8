"""Factorization bridge used by the decomposition routines."""

from gls.factor import factor_list, squarefree_part
from gls.parse import parse_polynomial
from gls.poly import PolyRing


def P(text, variables=("x", "y")):
    ring = PolyRing(variables)
    return parse_polynomial(ring, text)


def test_factor_list():
    f = P("x^2 - y^2")
    factors = {str(g) for g, m in factor_list(f)}
    assert factors == {"x - y", "x + y"} or factors == {"-x + y", "x + y"}
    f = P("x^3*y")
    mults = {str(g): m for g, m in factor_list(f)}
    assert mults["x"] == 3 and mults["y"] == 1


def test_irreducible_stays_whole():
    f = P("x^2 + y^2 + 1")
    factors = factor_list(f)
    assert len(factors) == 1 and factors[0][1] == 1


def test_squarefree_part():
    f = P("x^3*y^2 - 2*x^3*y + x^3")  # x^3 (y-1)^2
    s = squarefree_part(f)
    # up to scalar: x(y - 1)
    g = P("x*y - x")
    assert s * g.terms[max(g.terms)] == g * s.terms[max(s.terms)]


def test_univariate_in_t():
    ring = PolyRing(("t",))
    f = parse_polynomial(ring, "256*t^5 - t")
    factors = {str(g) for g, _ in factor_list(f)}
    assert len(factors) == 4  # t, 4t-1, 4t+1, 16t^2+1 up to scalars
