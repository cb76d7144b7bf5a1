"""Finitely generated submonoids of the nonnegative rationals and the domains B[M].

Membership is decided on the scaled numerical semigroup: with ``scale`` the lcm
of the generator denominators every element becomes an integer and a reachability
table over 0..n answers the question.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .domains import Domain, Integers, Rationals, Scalar, coerce, is_prime_element, restrict
from .errors import (
    DomainMismatch,
    HypothesisViolated,
    InvalidSpec,
    NegativeExponent,
    NonMonomialDenominator,
    NotApplicable,
    NotInMonoid,
    ParseError,
    SearchSpaceTooLarge,
    Unsupported,
    ZeroPolynomial,
)
from .poly import Poly, exact_quotient

TABLE_CAP = 10_000_000
SEARCH_CAP = 2_000_000


@lru_cache(maxsize=256)
def _reachable(gens: tuple[int, ...], limit: int) -> bytes:
    table = bytearray(limit + 1)
    table[0] = 1
    for n in range(1, limit + 1):
        table[n] = any(g <= n and table[n - g] for g in gens)
    return bytes(table)


@dataclass(frozen=True)
class MonoidSpec:
    generators: tuple
    scale: int = field(init=False, compare=False)
    scaled_generators: tuple = field(init=False, compare=False)

    def __post_init__(self):
        gens = sorted({Fraction(g) for g in self.generators})
        if not gens:
            raise InvalidSpec("a monoid needs at least one generator")
        if gens[0] <= 0:
            raise InvalidSpec(f"generators must be positive, got {gens[0]}")
        scale = math.lcm(*(g.denominator for g in gens))
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "scaled_generators", tuple(int(g * scale) for g in gens))

    @property
    def group_step(self) -> Fraction:
        """The quotient group of M is group_step * Z."""
        return Fraction(math.gcd(*self.scaled_generators), self.scale)

    def table(self, n: int) -> bytes:
        if n > TABLE_CAP:
            raise SearchSpaceTooLarge(f"membership table up to {n} exceeds the cap {TABLE_CAP}")
        limit = 1 << max(n, 1).bit_length()
        return _reachable(self.scaled_generators, min(limit, TABLE_CAP))

    def __contains__(self, q) -> bool:
        return monoid_contains(q, self)

    def members_upto(self, bound) -> list[Fraction]:
        n = math.floor(Fraction(bound) * self.scale)
        if n < 0:
            return []
        table = self.table(n)
        return [Fraction(k, self.scale) for k in range(n + 1) if table[k]]

    def __str__(self):
        return "M<" + ",".join(str(g) for g in self.generators) + ">"


def parse_monoid(text: str) -> MonoidSpec:
    s = text.strip()
    m = re.fullmatch(r"M?\s*[<⟨]\s*(.*?)\s*[>⟩]", s)
    body = m.group(1) if m else s
    try:
        gens = [Fraction(part.strip()) for part in body.split(",") if part.strip()]
    except ValueError:
        raise ParseError(f"bad monoid {text!r}; expected e.g. M<2,3> or <1/2,1/3>") from None
    return MonoidSpec(tuple(gens))


def monoid_contains(q, M: MonoidSpec) -> bool:
    q = Fraction(q)
    if q < 0:
        raise NegativeExponent(f"{q} is negative")
    n = q * M.scale
    if n.denominator != 1:
        return False
    n = int(n)
    if n % math.gcd(*M.scaled_generators):
        return False
    return bool(M.table(n)[n])


def decompose(q, M: MonoidSpec) -> tuple[Fraction, Fraction] | None:
    """Two nonzero members summing to q, or None (q is then an atom or outside M)."""
    q = Fraction(q)
    if not monoid_contains(q, M) or q == 0:
        return None
    n = int(q * M.scale)
    table = M.table(n)
    for k in range(1, n // 2 + 1):
        if table[k] and table[n - k]:
            return Fraction(k, M.scale), Fraction(n - k, M.scale)
    return None


def monoid_atoms(M: MonoidSpec, bound) -> list[Fraction]:
    return [m for m in M.members_upto(bound) if m and decompose(m, M) is None]


def in_shifted_monoid(m, m1, M: MonoidSpec) -> bool:
    """m in m1 + M."""
    m, m1 = Fraction(m), Fraction(m1)
    for value in (m, m1):
        if value < 0 or not monoid_contains(value, M):
            raise NotInMonoid(f"{value} is not in {M}")
    return m >= m1 and monoid_contains(m - m1, M)


# -- elements of B[M] ----------------------------------------------------------------

@dataclass(frozen=True)
class MPoly:
    poly: Poly
    monoid: MonoidSpec

    def __post_init__(self):
        for e in self.poly.exponents:
            if not monoid_contains(e, self.monoid):
                raise NotInMonoid(f"exponent {e} of {self.poly} is not in {self.monoid}")

    @classmethod
    def parse(cls, text: str, domain: Domain, monoid: MonoidSpec) -> "MPoly":
        return cls(Poly.parse(text, domain), monoid)

    @property
    def domain(self) -> Domain:
        return self.poly.domain

    def _other(self, other: "MPoly") -> Poly:
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.monoid != self.monoid:
            raise DomainMismatch(f"{self.monoid} vs {other.monoid}")
        return other.poly

    def __add__(self, other):
        p = self._other(other)
        return p if p is NotImplemented else MPoly(self.poly + p, self.monoid)

    def __sub__(self, other):
        p = self._other(other)
        return p if p is NotImplemented else MPoly(self.poly - p, self.monoid)

    def __mul__(self, other):
        p = self._other(other)
        return p if p is NotImplemented else MPoly(self.poly * p, self.monoid)

    def __neg__(self):
        return MPoly(-self.poly, self.monoid)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self):
        return str(self.poly)


def mdomain_is_unit(f: MPoly) -> bool:
    c0 = f.poly.constant_term()
    return c0.is_unit() and all(c.is_nilpotent() for e, c in f.poly.items() if e != 0)


def mdomain_is_nilpotent(f: MPoly) -> bool:
    return all(c.is_nilpotent() for _, c in f.poly.items())


def beta(f: MPoly) -> Fraction:
    """Largest exponent in the support."""
    if f.is_zero():
        raise ZeroPolynomial("beta is undefined for zero")
    return Fraction(f.poly.degree)


# -- division via integer exponents -------------------------------------------------

def _division_field(domain: Domain) -> Domain:
    if domain.is_field:
        return domain
    if isinstance(domain, Integers):
        return Rationals()
    raise Unsupported(f"division in B[M] needs B to be Z or a field, not {domain}")


def _to_integral(f: MPoly, scale: int, field_: Domain) -> Poly:
    return Poly(field_, {e * scale: coerce(c, field_) for e, c in f.poly.items()})


def _from_integral(q: Poly, scale: int, domain: Domain, monoid: MonoidSpec) -> MPoly | None:
    terms = {}
    for e, c in q.items():
        c = restrict(c, domain)
        exponent = e / scale
        if c is None or not monoid_contains(exponent, monoid):
            return None
        terms[exponent] = c
    return MPoly(Poly(domain, terms), monoid)


def divides_in_mdomain(f: MPoly, d: MPoly) -> MPoly | None:
    """The quotient q with d*q = f in B[M], or None when there is none.

    Quotients in a domain are unique, so exact division over the fraction
    field (in the variable X^(1/scale)) settles the question.
    """
    d._other(f)
    if d.is_zero():
        raise ZeroDivisionError("division by zero in B[M]")
    field_ = _division_field(f.domain)
    scale = f.monoid.scale
    q = exact_quotient(_to_integral(f, scale, field_), _to_integral(d, scale, field_))
    if q is None:
        return None
    return _from_integral(q, scale, f.domain, f.monoid)


class ChainStep(NamedTuple):
    index: int
    divides: bool
    nonunit_quotient: bool
    beta_ok: bool
    quotient: MPoly | None

    @property
    def ok(self) -> bool:
        return self.divides and self.nonunit_quotient and self.beta_ok


@dataclass(frozen=True)
class ChainReport:
    steps: tuple
    betas: tuple

    @property
    def accepted(self) -> bool:
        return all(step.ok for step in self.steps)

    @property
    def first_failure(self) -> ChainStep | None:
        return next((step for step in self.steps if not step.ok), None)

    def to_json(self) -> dict:
        fail = self.first_failure
        return {
            "accepted": self.accepted,
            "betas": [str(b) for b in self.betas],
            "steps": [
                {
                    "step": s.index,
                    "divides": s.divides,
                    "nonunit_quotient": s.nonunit_quotient,
                    "beta_ok": s.beta_ok,
                    "quotient": None if s.quotient is None else str(s.quotient),
                }
                for s in self.steps
            ],
            "first_failure": None if fail is None else fail.index,
        }


def accp_chain_check(chain: list[MPoly]) -> ChainReport:
    """Check that (f1) < (f2) < ... is a properly ascending chain of principal ideals.

    Step k compares f_k with f_{k+1} (numbered from 1): f_{k+1} must divide f_k
    with a nonunit quotient, and beta must drop by an element of M.
    """
    if len(chain) < 2:
        raise ValueError("a chain needs at least two entries")
    if any(f.is_zero() for f in chain):
        raise ZeroPolynomial("chain entries must be nonzero")
    betas = tuple(beta(f) for f in chain)
    steps = []
    for k, (big, small) in enumerate(zip(chain, chain[1:]), start=1):
        q = divides_in_mdomain(big, small)
        gap = betas[k - 1] - betas[k]
        steps.append(
            ChainStep(
                index=k,
                divides=q is not None,
                nonunit_quotient=q is not None and not mdomain_is_unit(q),
                beta_ok=gap > 0 and monoid_contains(gap, big.monoid),
                quotient=q,
            )
        )
    return ChainReport(tuple(steps), betas)


# -- irreducible elements ---------------------------------------------------------------

def construct_irreducible_x1(primes, exponents, monoid: MonoidSpec, domain: Domain = Integers()) -> MPoly:
    """p_{r-1} X^{m_r} - ... - p_1 X^{m_2} - X^{m_1}, after checking every hypothesis."""
    if not isinstance(domain, Integers):
        raise HypothesisViolated("domain", f"coefficients must be Z, not {domain}")
    exps = [Fraction(m) for m in exponents]
    ps = [domain(p.value if isinstance(p, Scalar) else p) for p in primes]
    if len(exps) < 2 or len(ps) != len(exps) - 1:
        raise HypothesisViolated("arity", f"need r >= 2 exponents and r-1 primes, got {len(exps)} and {len(ps)}")
    for p in ps:
        if not is_prime_element(p):
            raise HypothesisViolated("prime", f"{p} is not a prime element of Z")
    for m in exps:
        if m < 0 or not monoid_contains(m, monoid):
            raise HypothesisViolated("member", f"{m} is not in {monoid}")
    if len(set(exps)) != len(exps):
        raise HypothesisViolated("distinct", "exponents must be distinct")
    m1 = exps[0]
    if m1 == 0 or decompose(m1, monoid) is not None:
        raise HypothesisViolated("atom", f"m1 = {m1} is not an atom of {monoid}")
    for m in exps[1:]:
        if in_shifted_monoid(m, m1, monoid):
            raise HypothesisViolated("shift", f"{m} lies in {m1} + {monoid}")
    terms = {m1: -1}
    for p, m in zip(ps[:-1], exps[1:-1]):
        terms[m] = -p
    terms[exps[-1]] = ps[-1]
    return MPoly(Poly(domain, terms), monoid)


def _coefficient_range(domain: Domain, bound: int) -> list[Scalar]:
    if domain.is_finite:
        return list(domain.elements())
    if isinstance(domain, Integers):
        return [domain(c) for c in range(-bound, bound + 1)]
    raise Unsupported(f"bounded search needs Z or a finite ring, not {domain}")


def bounded_elements(monoid: MonoidSpec, domain: Domain, support_bound, coeff_bound: int, cap: int = SEARCH_CAP):
    """All nonzero elements with support in M ∩ [0, support_bound] and bounded coefficients."""
    support = monoid.members_upto(support_bound)
    coeffs = _coefficient_range(domain, coeff_bound)
    count = len(coeffs) ** len(support)
    if count > cap:
        raise SearchSpaceTooLarge(f"{count} candidates exceed the cap {cap}")
    for combo in itertools.product(coeffs, repeat=len(support)):
        p = Poly(domain, zip(support, combo))
        if p:
            yield MPoly(p, monoid)


def mdomain_irreducible_oracle(f: MPoly, support_bound, coeff_bound: int, cap: int = SEARCH_CAP) -> bool:
    """True iff no factorisation into two nonunits is found by exhaustive search.

    Over Z or a finite field the cofactor is obtained by exact division and is
    not itself bounded; over other finite rings both factors are enumerated.
    """
    if f.is_zero() or mdomain_is_unit(f):
        raise NotApplicable("irreducibility is defined only for nonzero nonunits")
    candidates = [g for g in bounded_elements(f.monoid, f.domain, support_bound, coeff_bound, cap) if not mdomain_is_unit(g)]
    if isinstance(f.domain, Integers) or f.domain.is_field:
        for g in candidates:
            q = divides_in_mdomain(f, g)
            if q is not None and not mdomain_is_unit(q):
                return False
        return True
    return not any((g * h).poly == f.poly for g in candidates for h in candidates)


# -- localisation at the zero ideal -------------------------------------------------------

def localize_at_zero(f: MPoly, g: MPoly) -> list[tuple[Fraction, Fraction]]:
    """f / g for a monomial g, as (a/b, m - n) terms with exponents in the quotient group of M."""
    if not isinstance(f.domain, Integers) or g.domain != f.domain:
        raise Unsupported("localisation is implemented for B = Z")
    if g.is_zero() or not g.poly.is_monomial():
        raise NonMonomialDenominator(f"{g} is not a nonzero monomial")
    (n,), b = g.poly.exponents, g.poly.leading_coefficient().value
    step = f.monoid.group_step
    out = []
    for m, a in f.poly.items():
        e = m - n
        if (e / step).denominator != 1:
            raise AssertionError(f"{e} escaped the quotient group")  # pragma: no cover
        out.append((Fraction(a.value, b), e))
    return out


def format_terms(terms: list[tuple[Fraction, Fraction]]) -> str:
    """Render a localisation term list; negative exponents are allowed here."""
    if not terms:
        return "0"
    pieces = []
    for c, e in sorted(terms, key=lambda t: t[1], reverse=True):
        if e == 0:
            body = str(c)
        else:
            power = "x" if e == 1 else (f"x^{e}" if e.denominator == 1 and e > 0 else f"x^({e})")
            body = power if c == 1 else ("-" + power if c == -1 else f"({c})*{power}")
        pieces.append(body)
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out
