"""Sparse univariate polynomials with nonnegative rational exponents.

One kernel serves both ordinary polynomial rings B[X] (integral exponents) and
monoid domains B[M] with M a submonoid of the nonnegative rationals.

Text grammar: terms joined by ``+``/``-``; a term is ``[coefficient *] x [^ e]``
where ``e`` is an integer or ``(p/q)``.  Coefficients that are not a single
atom are parenthesised (``(1+sqrt2)*x``); finite-field coefficients that involve
the field generator are written in brackets (``[x+1]*x^2``) because ``x`` is
the polynomial variable outside them.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from . import _expr
from .domains import Domain, FiniteField, Scalar, coerce
from .errors import (
    CoefficientNotInDomain,
    DomainMismatch,
    NonIntegralExponent,
    NotInvertible,
    ParseError,
    ZeroPolynomial,
)


class Poly:
    """Immutable sparse polynomial; terms are kept sorted by exponent with no zero coefficients."""

    __slots__ = ("domain", "_terms")

    def __init__(self, domain: Domain, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Scalar] = {}
        for e, c in items:
            e = Fraction(e)
            if e < 0:
                raise ParseError(f"negative exponent {e}")
            c = domain(c)
            acc[e] = acc[e] + c if e in acc else c
        self.domain = domain
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e]}

    # construction helpers
    @classmethod
    def from_coeffs(cls, domain: Domain, coeffs: Iterable) -> "Poly":
        return cls(domain, enumerate(coeffs))

    @classmethod
    def monomial(cls, domain: Domain, coeff, exponent=1) -> "Poly":
        return cls(domain, {exponent: coeff})

    @classmethod
    def constant(cls, domain: Domain, c) -> "Poly":
        return cls(domain, {0: c})

    @classmethod
    def x(cls, domain: Domain) -> "Poly":
        return cls(domain, {1: 1})

    @classmethod
    def parse(cls, text: str, domain: Domain) -> "Poly":
        return poly_parse(text, domain)

    # inspection
    @property
    def terms(self) -> dict[Fraction, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def exponents(self) -> list[Fraction]:
        return list(self._terms)

    def coeff(self, e) -> Scalar:
        return self._terms.get(Fraction(e), self.domain.zero())

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self):
        """Largest exponent (an int when integral); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        d = next(reversed(self._terms))
        return int(d) if d.denominator == 1 else d

    def leading_coefficient(self) -> Scalar:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self._terms[next(reversed(self._terms))]

    def constant_term(self) -> Scalar:
        return self.coeff(0)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def has_integral_exponents(self) -> bool:
        return all(e.denominator == 1 for e in self._terms)

    def require_integral(self) -> None:
        if not self.has_integral_exponents():
            raise NonIntegralExponent(f"{self} has non-integral exponents")

    def coeff_list(self) -> list[Scalar]:
        self.require_integral()
        out = [self.domain.zero()] * (self.degree + 1)
        for e, c in self._terms.items():
            out[int(e)] = c
        return out

    # arithmetic
    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.domain != self.domain:
                raise DomainMismatch(f"{self.domain} vs {other.domain}")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return Poly.constant(self.domain, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.domain, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.domain, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        # integer exponent keys hash and add far faster than Fractions
        step = math.lcm(*(e.denominator for e in self._terms), *(e.denominator for e in other._terms))
        raw = dom.mul_terms(
            {e.numerator * (step // e.denominator): c.value for e, c in self._terms.items()},
            {e.numerator * (step // e.denominator): c.value for e, c in other._terms.items()},
        )
        out = Poly.__new__(Poly)
        out.domain = dom
        out._terms = {Fraction(k, step): Scalar(dom, raw[k]) for k in sorted(raw) if not dom.is_zero(raw[k])}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(self.domain, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.domain(c)
        return Poly(self.domain, {e: v * c for e, v in self._terms.items()})

    def shift(self, e) -> "Poly":
        """Multiply by X^e."""
        e = Fraction(e)
        return Poly(self.domain, {k + e: v for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.domain == other.domain and self._terms == other._terms
        if isinstance(other, (Scalar, int, Fraction)):
            try:
                return self == Poly.constant(self.domain, other)
            except (CoefficientNotInDomain, DomainMismatch):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, tuple(self._terms.items())))

    def __call__(self, a) -> Scalar:
        return poly_eval(self, a)

    def derivative(self) -> "Poly":
        self.require_integral()
        return Poly(self.domain, {e - 1: c * int(e) for e, c in self._terms.items() if e != 0})

    def map_domain(self, target: Domain) -> "Poly":
        """Coerce every coefficient along the embedding into ``target``."""
        if target == self.domain:
            return self
        return Poly(target, {e: coerce(c, target) for e, c in self._terms.items()})

    def monic(self) -> "Poly":
        return self.scale(self.leading_coefficient().inverse())

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"Poly({self.domain}, {poly_format(self)!r})"


# -- algorithms ----------------------------------------------------------------------

def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_eval(f: Poly, a) -> Scalar:
    """Horner evaluation at ``a`` (integral exponents only)."""
    f.require_integral()
    a = f.domain(a)
    acc = f.domain.zero()
    prev = None
    for e in sorted(f._terms, reverse=True):
        if prev is not None:
            acc = acc * a ** int(prev - e)
        acc = acc + f._terms[e]
        prev = e
    if prev:
        acc = acc * a ** int(prev)
    return acc


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Long division; the divisor's leading coefficient must be invertible."""
    g = f._check(g)
    f.require_integral()
    g.require_integral()
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = g.leading_coefficient().inverse()
    dg = g.degree
    rem = dict(f._terms)
    quot: dict[Fraction, Scalar] = {}
    while rem:
        top = max(rem)
        if top < dg:
            break
        factor = rem[top] * lead_inv
        shift = top - dg
        quot[shift] = factor
        for e, c in g._terms.items():
            k = e + shift
            val = rem.get(k, f.domain.zero()) - factor * c
            if val:
                rem[k] = val
            else:
                rem.pop(k, None)
    return Poly(f.domain, quot), Poly(f.domain, rem)


def exact_quotient(f: Poly, g: Poly) -> Poly | None:
    """f / g when g divides f exactly (over a ring where g's lead is a unit), else None."""
    try:
        q, r = poly_divmod(f, g)
    except NotInvertible:
        return None
    return q if r.is_zero() else None


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over a field coefficient domain."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic() if not a.is_zero() else a


# -- text ----------------------------------------------------------------------------

class _PolyEvaluator:
    def __init__(self, domain: Domain):
        self.domain = domain

    def num(self, n):
        return Poly.constant(self.domain, n)

    def name(self, name):
        if name in ("x", "X"):
            return Poly.x(self.domain)
        return Poly.constant(self.domain, self.domain.symbol(name))

    def bracket(self, text):
        return Poly.constant(self.domain, self.domain.parse(text))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b.is_constant() or b.is_zero():
            raise ParseError("can only divide by a nonzero constant")
        try:
            return a.scale(b.constant_term().inverse())
        except NotInvertible:
            raise CoefficientNotInDomain(f"{b} is not invertible in {self.domain}") from None

    def neg(self, a):
        return -a

    def pow(self, a, e):
        if e.denominator == 1:
            return a ** int(e)
        if a.is_monomial() and a.leading_coefficient() == 1:
            (base,) = a.exponents
            return Poly.monomial(self.domain, 1, base * e)
        raise ParseError("fractional powers apply only to x")


def poly_parse(text: str, domain: Domain) -> Poly:
    return _expr.evaluate(_expr.parse(text), _PolyEvaluator(domain))


def _format_exponent(e: Fraction) -> str:
    if e == 1:
        return "x"
    if e.denominator == 1:
        return f"x^{e.numerator}"
    return f"x^({e.numerator}/{e.denominator})"


def format_coefficient(c: Scalar) -> str:
    """A coefficient as it appears inside a polynomial term."""
    text = str(c)
    if c.is_simple():
        return text
    if isinstance(c.domain, FiniteField):
        return f"[{text}]"
    return f"({text})"


def poly_format(f: Poly) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for e in sorted(f._terms, reverse=True):
        c = f._terms[e]
        cs = format_coefficient(c)
        if e == 0:
            piece = cs
        elif cs == "1":
            piece = _format_exponent(e)
        elif cs == "-1":
            piece = "-" + _format_exponent(e)
        else:
            piece = f"{cs}*{_format_exponent(e)}"
        pieces.append(piece)
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out
