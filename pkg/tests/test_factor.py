import itertools
import random

import pytest

from oracles import irreducible_over_Q_low_degree
from polycomp.classify import is_irreducible_in_BX
from polycomp.domains import parse_domain
from polycomp.errors import BudgetExceeded, NotAField
from polycomp.factor import Budget, factor_in_BX, find_factor, mignotte_style_bound
from polycomp.poly import Poly


def mobius(n):
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def gauss_count(q, n):
    """Number of monic irreducible polynomials of degree n over GF(q)."""
    return sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def monic_polys(dom, n):
    elems = list(dom.elements())
    for coeffs in itertools.product(elems, repeat=n):
        yield Poly.from_coeffs(dom, list(coeffs) + [dom.one()])


@pytest.mark.parametrize("text,max_deg", [("GF(2)", 6), ("GF(3)", 4), ("GF(4)", 3), ("GF(5)", 3)])
def test_irreducible_counts_match_gauss_formula(text, max_deg):
    dom = parse_domain(text)
    for n in range(1, max_deg + 1):
        count = sum(1 for f in monic_polys(dom, n) if find_factor(f) is None)
        assert count == gauss_count(dom.size, n)


def test_finite_factorisation_reconstructs():
    rng = random.Random(1)
    for text in ["GF(2)", "GF(3)", "GF(4)", "GF(9)"]:
        dom = parse_domain(text)
        for _ in range(30):
            f = Poly.from_coeffs(dom, [dom.sample(rng) for _ in range(rng.randint(2, 6))])
            if f.degree < 1:
                continue
            unit, factors = factor_in_BX(f)
            product = Poly.constant(dom, unit)
            for p, m in factors:
                assert p.leading_coefficient() == dom.one()
                assert find_factor(p) is None
                product = product * p**m
            assert product == f


def test_rational_irreducibility_matches_root_test():
    q = parse_domain("Q")
    rng = random.Random(2)
    for _ in range(200):
        deg = rng.choice([2, 3])
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([1, 2, 3, -1, -2, 5])]
        f = Poly.from_coeffs(q, coeffs)
        assert (find_factor(f) is None) == irreducible_over_Q_low_degree(coeffs)


def test_rational_products_are_reducible():
    q = parse_domain("Q")
    rng = random.Random(3)
    for _ in range(50):
        g = Poly.from_coeffs(q, [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [1])
        h = Poly.from_coeffs(q, [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [2])
        assert find_factor(g * h) is not None


@pytest.mark.parametrize(
    "field,degrees",
    [("Q", [4]), ("Q(sqrt2)", [2, 2]), ("Q(sqrt3)", [2, 2]), ("Q(sqrt5)", [4]), ("Q(sqrt6)", [2, 2]), ("Q(sqrt2,sqrt3)", [1, 1, 1, 1])],
)
def test_splitting_of_x4_minus_10x2_plus_1(field, degrees):
    dom = parse_domain(field)
    f = Poly.parse("x^4 - 10*x^2 + 1", dom)
    unit, factors = factor_in_BX(f)
    assert sorted(p.degree for p, m in factors for _ in range(m)) == degrees
    product = Poly.constant(dom, unit)
    for p, m in factors:
        product = product * p**m
    assert product == f


def test_multiquadratic_random_products():
    rng = random.Random(4)
    dom = parse_domain("Q(sqrt2,sqrt3)")
    for _ in range(15):
        g = Poly.from_coeffs(dom, [dom.sample(rng, 3) for _ in range(2)] + [dom.one()])
        h = Poly.from_coeffs(dom, [dom.sample(rng, 3)] + [dom.one()])
        f = g * h
        unit, factors = factor_in_BX(f)
        assert sum(p.degree * m for p, m in factors) == 3 and len(factors) >= 2


def test_examples_in_bx():
    v = is_irreducible_in_BX(Poly.parse("x^2+x+1", parse_domain("GF(2)")))
    assert v.verdict
    v = is_irreducible_in_BX(Poly.parse("x^2", parse_domain("GF(3)")))
    x = Poly.x(parse_domain("GF(3)"))
    assert not v.verdict and v.witness == (x, x)
    v = is_irreducible_in_BX(Poly.parse("x^2-2", parse_domain("Q")))
    assert v.verdict and v.coefficient_bound == 4
    assert not is_irreducible_in_BX(Poly.parse("x^2-2", parse_domain("Q(sqrt2)"))).verdict


def test_budgets_and_errors():
    q = parse_domain("Q")
    f = Poly.parse("x^13 + 1", q)
    with pytest.raises(BudgetExceeded) as info:
        find_factor(f)
    assert info.value.budget["degree"] == 12
    assert find_factor(f, Budget(degree=13)) is not None
    with pytest.raises(BudgetExceeded):
        find_factor(Poly.parse("x^4 + 100*x + 1", q), Budget(coefficient=10))
    with pytest.raises(BudgetExceeded):
        find_factor(Poly.parse("x^12 + x + 1", parse_domain("GF(9)")), Budget(candidates=1000))
    with pytest.raises(NotAField):
        find_factor(Poly.parse("x^2 - 1", parse_domain("Z")))


def test_coefficient_bound_formula():
    q = parse_domain("Q")
    assert mignotte_style_bound(Poly.parse("x^4 - 10*x^2 + 1", q)) == 6 * 10
    assert mignotte_style_bound(Poly.parse("x^2/3 + 1/2", q)) == 2 * 3
    assert mignotte_style_bound(Poly.parse("x + 1", parse_domain("GF(2)"))) is None
