"""Factorisation in B[X] for the supported coefficient fields.

Finite fields use exhaustive trial division by monic polynomials.  Q and the
multiquadratic fields are delegated to sympy's algebraic factoriser; the
results are converted back to exact coordinates and re-multiplied as a check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from functools import lru_cache

import sympy

from .domains import Domain, FiniteField, MultiQuadratic, PrimeField, Rationals, Scalar
from .errors import BudgetExceeded, NotAField
from .poly import Poly, exact_quotient

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class Budget:
    """Limits on B[X] factorisation.

    ``degree`` caps deg f; ``candidates`` caps trial divisors over a finite
    field; ``coefficient``, when set, caps the coefficient bound of a
    characteristic-0 input.
    """

    degree: int = 12
    candidates: int = 2_000_000
    coefficient: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _require_field(f: Poly) -> None:
    if not f.domain.is_field:
        raise NotAField(f"{f.domain} is not a field")
    f.require_integral()


def _monic_candidates(domain: Domain, degree: int):
    elems = list(domain.elements())
    size = len(elems)
    for n in range(size ** degree):
        coeffs = []
        for _ in range(degree):
            n, r = divmod(n, size)
            coeffs.append(elems[r])
        yield Poly.from_coeffs(domain, coeffs + [domain.one()])


def candidate_count(domain: Domain, degree: int) -> int:
    return sum(domain.size ** k for k in range(1, degree // 2 + 1))


def _finite_factor(f: Poly, budget: Budget) -> Poly | None:
    d = f.degree
    if candidate_count(f.domain, d) > budget.candidates:
        raise BudgetExceeded(f"trial division over {f.domain} at degree {d} exceeds budget", budget.as_dict())
    for k in range(1, d // 2 + 1):
        for g in _monic_candidates(f.domain, k):
            if exact_quotient(f, g) is not None:
                return g
    return None


# -- characteristic zero via sympy ----------------------------------------------------

def _scalar_to_sympy(c: Scalar):
    if isinstance(c.domain, Rationals):
        return sympy.Rational(c.value.numerator, c.value.denominator)
    expr = sympy.Integer(0)
    for mask, coord in enumerate(c.value):
        if coord:
            expr += sympy.Rational(coord.numerator, coord.denominator) * sympy.sqrt(c.domain.mask_product[mask])
    return expr


def _sqrt_sum_to_scalar(expr, domain: Domain) -> Scalar:
    """Convert a rational combination of square roots of integers."""
    total = domain.zero()
    for key, coef in sympy.expand(expr).as_coefficients_dict().items():
        coef = Fraction(int(sympy.numer(coef)), int(sympy.denom(coef)))
        if key == 1:
            total = total + domain(coef)
            continue
        base, exp = key.as_base_exp()
        if exp != sympy.Rational(1, 2) or not base.is_Integer:
            raise ValueError(f"unexpected coefficient term {key}")
        total = total + domain.symbol(f"sqrt{int(base)}") * domain(coef)
    return total


def _to_sympy_poly(f: Poly):
    return sum(_scalar_to_sympy(c) * _X ** int(e) for e, c in f.items())


def _extension(domain: Domain):
    if isinstance(domain, MultiQuadratic):
        return [sympy.sqrt(d) for d in domain.ds]
    return None


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _from_sympy_factor(fac: "sympy.Poly", domain: Domain) -> Poly:
    coeffs = list(reversed(fac.rep.to_list()))
    if not isinstance(domain, MultiQuadratic):
        return Poly.from_coeffs(domain, [_to_fraction(c) for c in coeffs])
    # coefficients are polynomials in sympy's primitive element of the extension
    theta = _sqrt_sum_to_scalar(fac.domain.ext.as_expr(), domain)
    out = []
    for c in coeffs:
        acc = domain.zero()
        for q in c.to_list():
            acc = acc * theta + domain(_to_fraction(q))
        out.append(acc)
    return Poly.from_coeffs(domain, out)


@lru_cache(maxsize=4096)
def _char0_factor_list(f: Poly) -> tuple[Scalar, tuple]:
    ext = _extension(f.domain)
    expr = _to_sympy_poly(f)
    sp = sympy.Poly(expr, _X, extension=ext) if ext else sympy.Poly(expr, _X, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for fac, mult in factors:
        p = _from_sympy_factor(fac, f.domain)
        if p.degree >= 1:
            out.append((p.monic(), mult))
    product = Poly.constant(f.domain, 1)
    for p, m in out:
        product = product * p ** m
    unit = f.leading_coefficient()
    if product.scale(unit) != f:
        raise ArithmeticError(f"factorisation of {f} failed verification")
    return unit, tuple(out)


def mignotte_style_bound(f: Poly) -> int | None:
    """(deg choose deg//2) times the largest coefficient size, after clearing denominators.

    None over finite fields, where coefficient size is meaningless.
    """
    if f.domain.is_finite:
        return None
    denoms = []
    for _, c in f.items():
        coords = c.value if isinstance(c.domain, MultiQuadratic) else (c.value,)
        denoms.extend(Fraction(x).denominator for x in coords)
    scale = math.lcm(*denoms) if denoms else 1
    size = 0.0
    for _, c in f.items():
        if isinstance(c.domain, MultiQuadratic):
            mag = sum(abs(float(x)) * math.sqrt(c.domain.mask_product[m]) for m, x in enumerate(c.value))
        else:
            mag = abs(float(c.value))
        size = max(size, mag * scale)
    d = max(f.degree, 0)
    return math.comb(d, d // 2) * math.ceil(size)


def _check_coefficients(f: Poly, budget: Budget) -> None:
    if budget.coefficient is not None:
        bound = mignotte_style_bound(f)
        if bound > budget.coefficient:
            raise BudgetExceeded(f"coefficient bound {bound} exceeds the budget {budget.coefficient}", budget.as_dict())


# -- public entry points --------------------------------------------------------------

def find_factor(f: Poly, budget: Budget = Budget()) -> Poly | None:
    """A monic factor of degree 1..deg f - 1, or None when f is irreducible in B[X]."""
    _require_field(f)
    if f.degree > budget.degree:
        raise BudgetExceeded(f"degree {f.degree} exceeds the degree budget {budget.degree}", budget.as_dict())
    if f.degree < 2:
        return None
    if f.domain.is_finite:
        return _finite_factor(f, budget)
    _check_coefficients(f, budget)
    _, factors = _char0_factor_list(f)
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    return factors[0][0]


def factor_in_BX(f: Poly, budget: Budget = Budget()) -> tuple[Scalar, list[tuple[Poly, int]]]:
    """Complete factorisation f = unit * prod p_i^e_i with p_i monic irreducible."""
    _require_field(f)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > budget.degree:
        raise BudgetExceeded(f"degree {f.degree} exceeds the degree budget {budget.degree}", budget.as_dict())
    unit = f.leading_coefficient()
    if f.degree < 1:
        return unit, []
    if not f.domain.is_finite:
        _check_coefficients(f, budget)
        unit, factors = _char0_factor_list(f)
        return unit, list(factors)
    counts: dict[Poly, int] = {}
    rest = f.monic()
    while rest.degree >= 1:
        g = _finite_factor(rest, budget) if rest.degree >= 2 else None
        g = rest if g is None else g
        rest = exact_quotient(rest, g)
        counts[g] = counts.get(g, 0) + 1
    return unit, sorted(counts.items(), key=lambda item: (item[0].degree, str(item[0])))


def is_finite_field(d: Domain) -> bool:
    return isinstance(d, (PrimeField, FiniteField))
