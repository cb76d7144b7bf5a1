"""Deterministic end-to-end checks of the worked examples, one PASS/FAIL line each."""
from __future__ import annotations

from typing import Callable, NamedTuple

from .cipher import SAMPLE_KEY, decrypt, encrypt, expand_key, format_letters, key_from_json
from .classify import graded_closure_check, is_unit_composite, unit_oracle
from .composite import parse_spec
from .monoid import construct_irreducible_x1, mdomain_irreducible_oracle, parse_monoid

PLAINTEXT = [0, 2, 4, 6, 8, 9, 6, 5]
CIPHERTEXT = "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3"


class DemoItem(NamedTuple):
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _cipher_item(key_data: dict) -> DemoItem:
    key = expand_key(*key_from_json(key_data))
    ct = format_letters(encrypt(PLAINTEXT, key))
    back = decrypt([int(t) for t in ct.split()], key)
    ok = ct == CIPHERTEXT and back == PLAINTEXT
    return DemoItem("cipher-trace", ok, f"ciphertext {ct}; decrypted {format_letters(back)}")


def _graded_item() -> DemoItem:
    spec = parse_spec("TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2,sqrt3))")
    res = graded_closure_check(spec, 1, 1)
    ok = not res.holds and res.witness is not None and str(res.witness[2]) == "sqrt2"
    detail = "holds" if res.holds else f"{res.witness[0]} * {res.witness[1]} = {res.witness[2]} is not in A2"
    return DemoItem("graded-counterexample", ok, detail)


def _x1_item() -> DemoItem:
    f = construct_irreducible_x1([2], [2, 3], parse_monoid("M<2,3>"))
    irreducible = mdomain_irreducible_oracle(f, 3, 4)
    return DemoItem("monoid-irreducible", str(f) == "2*x^3 - x^2" and irreducible, f"{f}; oracle irreducible={irreducible}")


def _unit_item() -> DemoItem:
    spec = parse_spec("T(A=Z/4; B=Z/4)")
    members = list(spec.members(3))
    mismatches = sum(is_unit_composite(f, spec) != unit_oracle(f, spec, 3) for f in members)
    units = sum(is_unit_composite(f, spec) for f in members)
    return DemoItem("unit-sweep", mismatches == 0, f"{len(members)} polynomials, {units} units, {mismatches} mismatches")


def run_examples(key_data: dict | None = None) -> list[DemoItem]:
    checks: list[Callable[[], DemoItem]] = [
        lambda: _cipher_item(SAMPLE_KEY if key_data is None else key_data),
        _graded_item,
        _x1_item,
        _unit_item,
    ]
    return [check() for check in checks]

