"""Polynomial factorization over Q, delegated to sympy.

Only characteristic-zero input is supported here; the splitting logic that
consumes these factorizations never runs over prime fields.  Monomials are
factored directly without the sympy round trip.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .poly import Polynomial, RingDescriptor


def _sympy_symbols(rng: RingDescriptor):
    return [sympy.Symbol(v) for v in rng.variables]


def to_sympy(f: Polynomial):
    syms = _sympy_symbols(f.ring)
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            if e:
                term *= s**e
        expr += term
    return expr


def from_sympy(expr, rng: RingDescriptor) -> Polynomial:
    syms = _sympy_symbols(rng)
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    terms = {}
    for mono, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return Polynomial(rng, terms)


def factor_polynomial(f: Polynomial):
    """Irreducible factorization over Q as [(factor, exponent), ...].

    Constant factors are dropped.  Factors are normalized to have integer
    content-free sympy form; exponents are positive ints.
    """
    if f.ring.characteristic != 0:
        raise ValueError("factorization implemented over Q only")
    if f.is_zero() or f.is_constant():
        return []
    if f.is_term():
        (m, _), = f.terms.items()
        out = []
        for i, e in enumerate(m):
            if e:
                out.append((Polynomial.variable(f.ring, i), e))
        return out
    _, factors = sympy.factor_list(to_sympy(f))
    out = []
    for expr, e in factors:
        g = from_sympy(expr, f.ring)
        if not g.is_constant():
            out.append((g, int(e)))
    out.sort(key=lambda fe: (fe[0].total_degree(), fe[0].to_text()))
    return out


def is_irreducible(f: Polynomial) -> bool:
    facs = factor_polynomial(f)
    return len(facs) == 1 and facs[0][1] == 1


def factor_univariate(coeffs) -> list:
    """Factor sum(coeffs[k] * T^k) over Q; returns [(coeff_list, exponent)]."""
    T = sympy.Symbol("T")
    expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * T**k
               for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, T, domain="QQ"))
    out = []
    for fac, e in factors:
        p = sympy.Poly(fac, T, domain="QQ")
        cs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
              for c in reversed(p.all_coeffs())]
        if len(cs) > 1:
            out.append((cs, int(e)))
    return out
