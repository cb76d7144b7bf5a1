"""Acceptance criteria, one check each with a pinned time limit.

Run directly (``python tests/test_acceptance.py``) to print one PASS/FAIL line per
criterion; under pytest the same lines appear in the terminal summary.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import caesar_reference, generator_sums, integer_valued_on  # noqa: E402
from polycomp.cipher import SAMPLE_KEY, BasicSystem, KeyPolynomial, decrypt, encrypt, expand_key, format_letters, key_from_json, parse_letters  # noqa: E402
from polycomp.classify import (  # noqa: E402
    Frac,
    frac_add,
    frac_eq,
    frac_make,
    frac_mul,
    graded_closure_check,
    irreducible_composite_oracle,
    is_irreducible_composite,
    is_unit_composite,
    unit_oracle,
)
from polycomp.composite import composite_membership, composite_mul_with_closure, parse_spec  # noqa: E402
from polycomp.domains import Integers  # noqa: E402
from polycomp.monoid import (  # noqa: E402
    MonoidSpec,
    MPoly,
    accp_chain_check,
    beta,
    construct_irreducible_x1,
    format_terms,
    localize_at_zero,
    mdomain_irreducible_oracle,
    monoid_atoms,
    monoid_contains,
)
from polycomp.poly import Poly  # noqa: E402

RESULTS: dict[int, str] = {}


def random_member(spec, rng, degree=4, bound=4):
    coeffs = [spec.top(spec.component(i).sample(rng, bound)) for i in range(degree + 1)]
    return Poly.from_coeffs(spec.top, coeffs)


def golden_trace():
    start = time.perf_counter()
    key = expand_key(*key_from_json(SAMPLE_KEY))
    cipher = format_letters(encrypt(parse_letters("0 2 4 6 8 9 6 5"), key))
    plain = format_letters(decrypt(parse_letters(cipher), key))
    elapsed = time.perf_counter() - start
    ok = cipher == "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3" and plain == "0 2 4 6 8 9 6 5"
    return ok, f"ciphertext {cipher!r}, plaintext {plain!r}", elapsed


def cipher_roundtrip():
    rng = random.Random(2024)
    start = time.perf_counter()
    failures = 0
    for _ in range(1000):
        n = rng.choice([2, 10, 26, 256])

        def system():
            perm = list(range(n))
            rng.shuffle(perm)
            return BasicSystem("p", tuple(perm))

        key = expand_key(KeyPolynomial(tuple(system() for _ in range(rng.randint(1, 4)))), KeyPolynomial(tuple(system() for _ in range(rng.randint(1, 3)))))
        message = [rng.randrange(n) for _ in range(rng.randint(0, 24))]
        failures += decrypt(encrypt(message, key, rng.randrange(n)), key, len(message)) != message
    elapsed = time.perf_counter() - start
    # Caesar keys also checked against the shift-sum reference
    fs, gs = [1, 2, 3], [-1, -2]
    ref_ok = caesar_reference([0, 2, 4, 6, 8, 9, 6, 5], fs, gs, 10) == parse_letters("1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3")
    return failures == 0 and ref_ok, f"1000 pairs, {failures} failures", elapsed


def unit_agreement():
    spec = parse_spec("T(A=Z/4; B=Z/4)")
    start = time.perf_counter()
    members = list(spec.members(3))
    mismatches = sum(is_unit_composite(f, spec) != unit_oracle(f, spec, 3) for f in members)
    elapsed = time.perf_counter() - start
    return len(members) == 256 and mismatches == 0, f"{len(members)} polynomials, {mismatches} mismatches", elapsed


def irreducible_agreement():
    spec = parse_spec("T(A=GF(2); B=GF(4))")
    start = time.perf_counter()
    checked = mismatches = 0
    for f in spec.members(4):
        if f.is_zero() or is_unit_composite(f, spec):
            continue
        checked += 1
        mismatches += is_irreducible_composite(f, spec).verdict != irreducible_composite_oracle(f, spec, f.degree)
    elapsed = time.perf_counter() - start
    return checked == 510 and mismatches == 0, f"{checked} nonzero nonunits, {mismatches} mismatches", elapsed


def non_chain_collapse():
    spec = parse_spec("TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2,sqrt3))")
    rng = random.Random(5)
    start = time.perf_counter()
    collapsed = sum(composite_mul_with_closure(random_member(spec, rng), random_member(spec, rng), spec).in_A0_plus_XB for _ in range(500))
    top = spec.top
    witness = composite_mul_with_closure(Poly.parse("sqrt2*x", top), Poly.x(top), spec)
    elapsed = time.perf_counter() - start
    ok = collapsed == 500 and not witness.in_spec and witness.in_A0_plus_XB
    return ok, f"{collapsed}/500 in A0+XB[X]; sqrt2*x * x = {witness.product} leaves the composite", elapsed


def integer_valued_criterion():
    spec = parse_spec("IBA(A=Z; B=Q)")
    q = spec.top
    rng = random.Random(6)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(300):
        coeffs = [Fraction(rng.randint(-12, 12), rng.choice([1, 2, 3, 4, 6, 8, 12, 24, 120])) for _ in range(rng.randint(1, 6))]
        mismatches += composite_membership(Poly.from_coeffs(q, coeffs), spec) != integer_valued_on(coeffs, range(-25, 26))
    examples = composite_membership(Poly.parse("(x^2+x)/2", q), spec) and not composite_membership(Poly.parse("x/2", q), spec)
    elapsed = time.perf_counter() - start
    return mismatches == 0 and examples, f"300 polynomials, {mismatches} mismatches; (x^2+x)/2 in, x/2 out", elapsed


def monoid_layer():
    start = time.perf_counter()
    mismatches = 0
    for m in (MonoidSpec((2, 3)), MonoidSpec((Fraction(1, 2), Fraction(1, 3))), MonoidSpec((3, 5, 7))):
        reached = generator_sums(m.scaled_generators, 60, 60)
        mismatches += sum(monoid_contains(Fraction(n, m.scale), m) != (n in reached) for n in range(61))
    m23 = MonoidSpec((2, 3))
    atoms = monoid_atoms(m23, 10)
    f = construct_irreducible_x1([2], [2, 3], m23)
    irreducible = mdomain_irreducible_oracle(f, 3, 4)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and atoms == [2, 3] and str(f) == "2*x^3 - x^2" and irreducible
    return ok, f"{mismatches} membership mismatches; atoms {[str(a) for a in atoms]}; {f} irreducible={irreducible}", elapsed


def graded_counterexample():
    start = time.perf_counter()
    tp = parse_spec("TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2,sqrt3))")
    res = graded_closure_check(tp, 1, 1)
    tn = parse_spec("Tn(A0=Q, A1=Q(sqrt2), A2=Q(sqrt2,sqrt3); B=Q(sqrt2,sqrt3))")
    chain_ok = all(graded_closure_check(tn, i, j, samples=10, seed=i + j).holds for i in range(3) for j in range(3) if i + j < 3)
    elapsed = time.perf_counter() - start
    ok = not res.holds and str(res.witness[2]) == "sqrt2" and chain_ok
    return ok, f"(1,1) witness {res.witness[0]} * {res.witness[1]} = {res.witness[2]}; chain pairs hold={chain_ok}", elapsed


def accp_machinery():
    m23 = MonoidSpec((2, 3))
    z = Integers()
    mp = lambda t: MPoly.parse(t, z, m23)
    start = time.perf_counter()
    good = accp_chain_check([mp("x^5"), mp("x^3")])
    bad = accp_chain_check([mp("x^5"), mp("x^3"), mp("x^2")])
    failure = bad.first_failure
    rng = random.Random(9)
    support = m23.members_upto(10)
    additive = 0
    while additive < 200:
        f = MPoly(Poly(z, {e: rng.randint(-6, 6) for e in rng.sample(support, 4)}), m23)
        g = MPoly(Poly(z, {e: rng.randint(-6, 6) for e in rng.sample(support, 4)}), m23)
        if f.is_zero() or g.is_zero():
            continue
        if beta(f * g) != beta(f) + beta(g):
            break
        additive += 1
    elapsed = time.perf_counter() - start
    ok = good.accepted and not bad.accepted and failure.index == 2 and not failure.divides and additive == 200
    return ok, f"[x^5, x^3] accepted; [x^5, x^3, x^2] rejected at step {failure.index} (divides={failure.divides}); beta additive on {additive} pairs", elapsed


def localization():
    spec = parse_spec("T(A=Q; B=Q(sqrt2))")
    rng = random.Random(10)
    top = spec.top
    start = time.perf_counter()

    def member():
        return random_member(spec, rng, 3, 4)

    def denominator():
        s = member()
        return s if s.constant_term() else s + Poly.constant(top, 1)

    bad = 0
    for _ in range(100):
        (g1, s1), (g2, s2), (g3, s3) = [(member(), denominator()) for _ in range(3)]
        a, b, c = frac_make(g1, s1, spec), frac_make(g2, s2, spec), frac_make(g3, s3, spec)
        total, prod = frac_add(a, b), frac_mul(a, b)
        formulas = (total.numerator, total.denominator) == (g1 * s2 + g2 * s1, s1 * s2) and (prod.numerator, prod.denominator) == (g1 * g2, s1 * s2)
        t = denominator()
        cross = frac_eq(a, Frac(g1 * t, s1 * t, spec)) and frac_eq(a, b) == (g1 * s2 == g2 * s1)
        laws = frac_eq(frac_add(frac_add(a, b), c), frac_add(a, frac_add(b, c))) and frac_eq(frac_mul(frac_mul(a, b), c), frac_mul(a, frac_mul(b, c)))
        laws = laws and frac_eq(frac_add(a, b), frac_add(b, a)) and frac_eq(frac_mul(a, b), frac_mul(b, a))
        bad += not (formulas and cross and laws)
    m23 = MonoidSpec((2, 3))
    z = Integers()
    terms = localize_at_zero(MPoly.parse("2*x^3", z, m23), MPoly.parse("4*x^2", z, m23))
    elapsed = time.perf_counter() - start
    return bad == 0 and terms == [(Fraction(1, 2), 1)], f"100 triples, {bad} failures; (2x^3)/(4x^2) = {format_terms(terms)}", elapsed


CRITERIA = [
    (1, "golden cipher trace", golden_trace, 0.001),
    (2, "cipher roundtrip", cipher_roundtrip, 5.0),
    (3, "units vs oracle", unit_agreement, 1.0),
    (4, "irreducibles vs oracle", irreducible_agreement, 30.0),
    (5, "non-chain product collapse", non_chain_collapse, 2.0),
    (6, "integer-valued membership", integer_valued_criterion, 2.0),
    (7, "monoid layer", monoid_layer, 10.0),
    (8, "graded counterexample", graded_counterexample, 1.0),
    (9, "ACCP machinery", accp_machinery, 5.0),
    (10, "localization", localization, 2.0),
]


def evaluate(number, title, check, limit):
    ok, detail, elapsed = check()
    passed = ok and elapsed < limit
    line = f"{'PASS' if passed else 'FAIL'} criterion {number} ({title}): {detail}; {elapsed * 1000:.1f} ms (limit {limit * 1000:g} ms)"
    RESULTS[number] = line
    return passed, ok, elapsed, line


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"criterion_{n:02d}" for n, *_ in CRITERIA])
def test_criterion(number, title, check, limit):
    passed, ok, elapsed, line = evaluate(number, title, check, limit)
    print(line)
    assert ok, line
    assert elapsed < limit, line


if __name__ == "__main__":
    results = [evaluate(*criterion) for criterion in CRITERIA]
    for *_, line in results:
        print(line)
    sys.exit(0 if all(r[0] for r in results) else 1)
