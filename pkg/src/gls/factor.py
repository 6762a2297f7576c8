"""Factorization of polynomials over Q, delegated to sympy.

Only factorization (and squarefree parts) cross this bridge; all other
arithmetic stays in the internal representation.
"""

import sympy

from gmpy2 import mpq

from .poly import Polynomial


def _symbols(ring):
    return sympy.symbols(ring.variables)


def to_sympy(f):
    syms = _symbols(f.ring)
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        t = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, m):
            if e:
                t *= s ** e
        expr += t
    return expr


def from_sympy(ring, expr):
    syms = _symbols(ring)
    p = sympy.Poly(expr, *syms, domain="QQ")
    terms = {}
    for mon, coeff in p.terms():
        terms[tuple(int(e) for e in mon)] = mpq(coeff.p, coeff.q)
    return Polynomial(ring, terms)


def factor_list(f):
    """Irreducible factors over Q as [(Polynomial, multiplicity)],
    dropping the constant content."""
    if f.is_zero() or f.is_constant():
        return []
    _, factors = sympy.factor_list(to_sympy(f), *_symbols(f.ring))
    return [(from_sympy(f.ring, g), int(k)) for g, k in factors]


def squarefree_part(f):
    if f.is_zero():
        return f
    out = f.ring.one()
    for g, _ in factor_list(f):
        out = out * g
    return out
