import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import GF4_ADD, GF4_MUL, gf4_encode
from polycomp.domains import (
    FiniteField,
    Integers,
    IntegersMod,
    MultiQuadratic,
    PrimeField,
    Rationals,
    coerce,
    domain_contains,
    is_member,
    is_prime_element,
    parse_domain,
    restrict,
)
from polycomp.errors import (
    CoefficientNotInDomain,
    DomainMismatch,
    InfiniteDomain,
    InvalidDomain,
    NoEmbedding,
    NotInvertible,
    ParseError,
    Unsupported,
)

DOMAIN_TEXTS = ["Z", "Z/4", "Z/6", "Q", "GF(2)", "GF(5)", "GF(4)", "GF(9)", "GF(8)", "Q(sqrt2)", "Q(sqrt2,sqrt3)", "Q(sqrt3,sqrt5)"]


def elements(text):
    dom = parse_domain(text)
    return st.integers(0, 10**6).map(lambda seed: dom.sample(random.Random(seed), 7))


@pytest.mark.parametrize("text", DOMAIN_TEXTS)
def test_ring_axioms(text):
    dom = parse_domain(text)

    @settings(max_examples=60, deadline=None)
    @given(elements(text), elements(text), elements(text))
    def check(a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + dom.zero() == a and a * dom.one() == a
        assert a - a == dom.zero()

    check()


@pytest.mark.parametrize("text", ["Q", "GF(2)", "GF(7)", "GF(4)", "GF(27)", "Q(sqrt2)", "Q(sqrt2,sqrt3)"])
def test_field_inverses(text):
    dom = parse_domain(text)
    rng = random.Random(3)
    for _ in range(100):
        a = dom.sample(rng, 9)
        if a:
            assert a * a.inverse() == dom.one()
        else:
            with pytest.raises(NotInvertible):
                a.inverse()


def test_gf4_matches_hand_table():
    gf4 = parse_domain("GF(4)")
    elems = list(gf4.elements())
    assert len(elems) == 4
    for a in elems:
        for b in elems:
            assert gf4_encode((a + b).value) == GF4_ADD[gf4_encode(a.value)][gf4_encode(b.value)]
            assert gf4_encode((a * b).value) == GF4_MUL[gf4_encode(a.value)][gf4_encode(b.value)]


def test_canonical_forms_are_unique():
    z6 = IntegersMod(6)
    assert z6(7) == z6(1) and z6(-1) == z6(5) and z6(7).value == 1
    q = Rationals()
    assert q(Fraction(2, 4)).value == Fraction(1, 2)
    k = parse_domain("Q(sqrt2)")
    assert k.parse("sqrt8") == k.parse("2*sqrt2")
    kk = parse_domain("Q(sqrt2,sqrt3)")
    assert kk.parse("sqrt2*sqrt3") == kk.parse("sqrt6")
    assert hash(kk.parse("sqrt2*sqrt3")) == hash(kk.parse("sqrt6"))


def test_units_and_nilpotents():
    z4 = IntegersMod(4)
    assert z4(3).is_unit() and not z4(2).is_unit()
    assert z4(2).is_nilpotent() and not z4(1).is_nilpotent()
    z12 = IntegersMod(12)
    assert z12(6).is_nilpotent() and not z12(4).is_nilpotent()
    zz = Integers()
    assert zz(-1).is_unit() and not zz(2).is_unit()
    assert not IntegersMod(4).is_integral and IntegersMod(5).is_integral


def test_multiquadratic_values():
    k = parse_domain("Q(sqrt2,sqrt3)")
    r2, r3 = k.symbol("sqrt2"), k.symbol("sqrt3")
    assert r2 * r2 == k(2)
    assert r2 * r3 == k.symbol("sqrt6")
    u = k.parse("1+sqrt2+sqrt3")
    assert u * u.inverse() == k.one()
    assert str(k.parse("1/2+2*sqrt3-sqrt6")) == "1/2+2*sqrt3-sqrt6"


def test_parse_format_roundtrip():
    rng = random.Random(11)
    for text in DOMAIN_TEXTS:
        dom = parse_domain(text)
        assert parse_domain(str(dom)) == dom
        for _ in range(40):
            a = dom.sample(rng, 6)
            assert dom.parse(str(a)) == a


@pytest.mark.parametrize(
    "sub,sup",
    [("Z", "Q"), ("Q", "Q(sqrt2)"), ("Q(sqrt2)", "Q(sqrt2,sqrt3)"), ("Q(sqrt3)", "Q(sqrt2,sqrt3)"), ("GF(2)", "GF(4)"), ("GF(4)", "GF(16)"), ("GF(3)", "GF(9)"), ("Z", "Q(sqrt5)")],
)
def test_coercion_is_a_ring_homomorphism(sub, sup):
    a_dom, b_dom = parse_domain(sub), parse_domain(sup)
    assert domain_contains(a_dom, b_dom)
    rng = random.Random(5)
    for _ in range(200):
        x, y = a_dom.sample(rng, 6), a_dom.sample(rng, 6)
        assert coerce(x + y, b_dom) == coerce(x, b_dom) + coerce(y, b_dom)
        assert coerce(x * y, b_dom) == coerce(x, b_dom) * coerce(y, b_dom)
        assert restrict(coerce(x, b_dom), a_dom) == x
    assert coerce(a_dom.one(), b_dom) == b_dom.one()


def test_non_embeddings():
    assert not domain_contains(parse_domain("GF(4)"), parse_domain("GF(8)"))
    assert not domain_contains(parse_domain("Q(sqrt2)"), parse_domain("Q(sqrt3,sqrt5)"))
    assert not domain_contains(parse_domain("Q"), parse_domain("Z"))
    with pytest.raises(NoEmbedding):
        coerce(parse_domain("Q").one(), parse_domain("Z"))


def test_restrict_detects_non_members():
    gf16 = parse_domain("GF(16)")
    gf4, gf2 = parse_domain("GF(4)"), parse_domain("GF(2)")
    image4 = {coerce(a, gf16) for a in gf4.elements()}
    for a in gf16.elements():
        assert is_member(a, gf4) == (a in image4)
        assert is_member(a, gf2) == (a in (gf16.zero(), gf16.one()))
    k = parse_domain("Q(sqrt2,sqrt3)")
    assert not is_member(k.symbol("sqrt6"), parse_domain("Q(sqrt2)"))
    assert is_member(k.symbol("sqrt3"), parse_domain("Q(sqrt3)"))
    assert not is_member(Rationals()(Fraction(1, 2)), Integers())


def test_errors():
    with pytest.raises(ParseError):
        parse_domain("R")
    with pytest.raises(InvalidDomain):
        parse_domain("GF(6)")
    with pytest.raises(InvalidDomain):
        MultiQuadratic((4,))
    with pytest.raises(InvalidDomain):
        IntegersMod(1)
    with pytest.raises(InfiniteDomain):
        list(Rationals().elements())
    with pytest.raises(DomainMismatch):
        IntegersMod(4)(1) + IntegersMod(5)(1)
    with pytest.raises(CoefficientNotInDomain):
        Integers()(Fraction(1, 2))
    with pytest.raises(CoefficientNotInDomain):
        parse_domain("Q(sqrt2)").parse("sqrt3")
    with pytest.raises(InvalidDomain):
        FiniteField(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(Unsupported):
        is_prime_element(Rationals()(2))


def test_prime_elements():
    zz = Integers()
    assert [n for n in range(-8, 12) if is_prime_element(zz(n))] == [-7, -5, -3, -2, 2, 3, 5, 7, 11]


def test_prime_field_and_explicit_modulus():
    assert isinstance(parse_domain("GF(7)"), PrimeField)
    f9 = parse_domain("GF(9,x^2+1)")
    i = f9.symbol("x")
    assert i * i == f9(-1)
    assert len(set(f9.elements())) == 9
