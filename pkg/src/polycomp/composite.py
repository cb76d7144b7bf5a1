"""Composite subrings of B[X]: A+XB[X], chain and non-chain towers, and I(B,A)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from ._expr import split_top_level
from .domains import (
    Domain,
    FiniteField,
    Integers,
    PrimeField,
    Rationals,
    coerce,
    domain_contains,
    is_member,
    parse_domain,
)
from .errors import InvalidSpec, NotAMember, ParseError, UnsupportedIBAPair
from .poly import Poly

KINDS = ("T", "Tn", "TPrimeN", "IBA")
_SPEC_NAMES = {"T": "T", "Tn": "Tn", "TPn": "TPrimeN", "IBA": "IBA"}
_SPEC_TAGS = {v: k for k, v in _SPEC_NAMES.items()}


def _is_finite_field(d: Domain) -> bool:
    return isinstance(d, (PrimeField, FiniteField))


@dataclass(frozen=True)
class CompositeSpec:
    kind: str
    tower: tuple
    top: Domain

    def __post_init__(self):
        object.__setattr__(self, "tower", tuple(self.tower))
        kind, tower, top = self.kind, self.tower, self.top
        if kind not in KINDS:
            raise InvalidSpec(f"unknown composite kind {kind!r}")
        if not tower:
            raise InvalidSpec("tower must be nonempty")
        for a in tower:
            if not domain_contains(a, top):
                raise InvalidSpec(f"{a} is not a subdomain of {top}")
        if kind in ("T", "IBA") and len(tower) != 1:
            raise InvalidSpec(f"{kind} takes exactly one subdomain A")
        if kind == "Tn":
            for lower, upper in zip(tower, tower[1:]):
                if not domain_contains(lower, upper):
                    raise InvalidSpec(f"Tn tower is not a chain: {lower} is not inside {upper}")
        if kind == "TPrimeN":
            if all(domain_contains(lower, upper) for lower, upper in zip(tower, tower[1:])):
                raise InvalidSpec("TPrimeN tower forms a chain; use Tn")
        if kind == "IBA":
            a = tower[0]
            finite_pair = _is_finite_field(a) and _is_finite_field(top)
            z_in_q = isinstance(a, Integers) and isinstance(top, Rationals)
            if not (finite_pair or z_in_q):
                raise UnsupportedIBAPair(f"I(B,A) membership is decidable here only for finite fields or (Z, Q), not ({a}, {top})")

    @property
    def n(self) -> int:
        return len(self.tower)

    @property
    def base(self) -> Domain:
        return self.tower[0]

    def component(self, i: int) -> Domain:
        """Coefficient domain required at X^i (positional kinds only)."""
        if self.kind == "IBA":
            raise InvalidSpec("I(B,A) has no positional coefficient domains")
        return self.tower[i] if i < self.n else self.top

    def t_spec(self) -> "CompositeSpec":
        """The composite A0 + XB[X] sharing this spec's base and top."""
        return CompositeSpec("T", (self.base,), self.top)

    @property
    def is_field_tower(self) -> bool:
        return self.top.is_field and all(a.is_field for a in self.tower)

    def lift(self, f: Poly) -> Poly:
        return f.map_domain(self.top)

    def contains(self, f: Poly) -> bool:
        return composite_membership(f, self)

    def require(self, f: Poly) -> Poly:
        g = self.lift(f)
        if not composite_membership(g, self):
            raise NotAMember(f"{g} is not an element of {self}")
        return g

    def coefficient_choices(self, i: int) -> list:
        return [coerce(a, self.top) for a in self.component(i).elements()]

    def members(self, max_degree: int) -> Iterator[Poly]:
        """Every member of degree <= max_degree (finite top only), in a fixed order."""
        if self.kind == "IBA":
            elems = list(self.top.elements())
            for coeffs in itertools.product(elems, repeat=max_degree + 1):
                f = Poly.from_coeffs(self.top, coeffs)
                if composite_membership(f, self):
                    yield f
            return
        choices = [self.coefficient_choices(i) for i in range(max_degree + 1)]
        for coeffs in itertools.product(*choices):
            yield Poly.from_coeffs(self.top, coeffs)

    @classmethod
    def parse(cls, text: str) -> "CompositeSpec":
        return parse_spec(text)

    def __str__(self):
        tag = _SPEC_TAGS[self.kind]
        if self.kind in ("T", "IBA"):
            return f"{tag}(A={self.tower[0]}; B={self.top})"
        inner = ", ".join(f"A{i}={a}" for i, a in enumerate(self.tower))
        return f"{tag}({inner}; B={self.top})"


def parse_spec(text: str) -> CompositeSpec:
    s = text.strip()
    head, sep, rest = s.partition("(")
    if not sep or not rest.endswith(")") or head.strip() not in _SPEC_NAMES:
        raise ParseError(f"bad composite spec {text!r}")
    kind = _SPEC_NAMES[head.strip()]
    parts = split_top_level(rest[:-1], ";")
    if len(parts) != 2:
        raise ParseError(f"composite spec needs 'A...; B=...' in {text!r}")
    key, eq, top_text = parts[1].strip().partition("=")
    if key.strip() != "B" or not eq:
        raise ParseError(f"missing B= in {text!r}")
    tower = []
    for i, item in enumerate(split_top_level(parts[0], ",")):
        key, eq, dom = item.strip().partition("=")
        key = key.strip()
        if not eq or key not in ("A", f"A{i}"):
            raise ParseError(f"expected A{i}=... in {text!r}, got {item.strip()!r}")
        tower.append(parse_domain(dom))
    return CompositeSpec(kind, tuple(tower), parse_domain(top_text))


def binomial_coordinates(f: Poly) -> list[Fraction]:
    """Coordinates of f in the basis C(X,0), C(X,1), ...: the forward differences at 0."""
    q = Rationals()
    g = f.map_domain(q)
    d = max(g.degree, 0)
    values = [g(k).value for k in range(d + 1)]
    coords = []
    while values:
        coords.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    return coords


def composite_membership(f: Poly, spec: CompositeSpec) -> bool:
    g = spec.lift(f)
    g.require_integral()
    if spec.kind == "IBA":
        a_dom = spec.base
        if isinstance(a_dom, Integers):
            return all(c.denominator == 1 for c in binomial_coordinates(g))
        return all(is_member(g(coerce(a, spec.top)), a_dom) for a in a_dom.elements())
    for e, c in g.items():
        i = int(e)
        if i < spec.n and not is_member(c, spec.tower[i]):
            return False
    return True


class ClosureReport(NamedTuple):
    product: Poly
    in_spec: bool
    in_A0_plus_XB: bool


def composite_mul_with_closure(f: Poly, g: Poly, spec: CompositeSpec) -> ClosureReport:
    f, g = spec.require(f), spec.require(g)
    product = f * g
    return ClosureReport(product, composite_membership(product, spec), composite_membership(product, spec.t_spec()))
