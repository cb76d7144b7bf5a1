"""Command-line front end.

Exit status: 0 on success, 1 when the algebra rejects the request, 2 on usage
or input-parsing errors (the message names the offending flag).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import cipher, classify, monoid
from ._expr import split_top_level
from .composite import composite_membership, parse_spec
from .demo import run_examples
from .domains import Rationals, parse_domain
from .errors import AlgebraError, ParseError
from .factor import Budget
from .monoid import MPoly, parse_monoid
from .poly import Poly


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"argument {flag}: {message}")
        self.flag = flag


def _value(flag: str, parser: Callable, text: str):
    try:
        return parser(text)
    except (ParseError, ValueError) as exc:
        raise UsageError(flag, str(exc)) from None


def _require(args, name: str):
    value = getattr(args, name.lstrip("-").replace("-", "_"))
    if value is None:
        raise UsageError(name, "is required for this subcommand")
    return value


# -- output helpers ----------------------------------------------------------------

def _jsonable(obj: Any):
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(_jsonable(payload)))
    else:
        print(text)


def _bool_text(b: bool) -> str:
    return "true" if b else "false"


# -- algebra -----------------------------------------------------------------------

def _spec_and_poly(args):
    spec = _value("--spec", parse_spec, _require(args, "--spec"))
    f = _value("--poly", lambda t: Poly.parse(t, spec.top), _require(args, "--poly"))
    return spec, f


def _budget(args) -> Budget:
    return Budget(degree=args.budget_degree, coefficient=args.budget_coeff)


def cmd_membership(args):
    spec, f = _spec_and_poly(args)
    ok = composite_membership(f, spec)
    _emit(args, {"verdict": ok}, _bool_text(ok))


def cmd_is_unit(args):
    spec, f = _spec_and_poly(args)
    verdict = classify.is_unit_composite(f, spec)
    payload = {"verdict": verdict}
    if args.oracle:
        payload["oracle"] = classify.unit_oracle(f, spec, args.bound)
        payload["agree"] = payload["oracle"] == verdict
    _emit(args, payload, _bool_text(verdict) + (f" (oracle {_bool_text(payload['oracle'])})" if args.oracle else ""))


def cmd_is_nilpotent(args):
    spec, f = _spec_and_poly(args)
    verdict = classify.is_nilpotent_composite(f, spec)
    _emit(args, {"verdict": verdict}, _bool_text(verdict))


def cmd_irreducible(args):
    if args.domain is not None:
        if args.spec is not None:
            raise UsageError("--domain", "give either --domain (irreducibility in B[X]) or --spec, not both")
        dom = _value("--domain", parse_domain, args.domain)
        f = _value("--poly", lambda t: Poly.parse(t, dom), _require(args, "--poly"))
        verdict = classify.is_irreducible_in_BX(f, _budget(args))
    else:
        spec, f = _spec_and_poly(args)
        verdict = classify.is_irreducible_composite(f, spec, _budget(args))
    payload = verdict.to_json()
    text = f"{_bool_text(verdict.verdict)} ({verdict.reason})"
    if verdict.witness:
        text += f" witness: ({verdict.witness[0]}) * ({verdict.witness[1]})"
    if args.oracle:
        if args.domain is not None:
            raise UsageError("--oracle", "the oracle needs a composite --spec")
        payload["oracle"] = classify.irreducible_composite_oracle(f, spec, args.bound)
        payload["agree"] = payload["oracle"] == verdict.verdict
        text += f" (oracle {_bool_text(payload['oracle'])})"
    _emit(args, payload, text)


def cmd_squarefree(args):
    spec, f = _spec_and_poly(args)
    verdict = classify.is_squarefree_composite(f, spec, _budget(args))
    payload = {"verdict": verdict}
    text = _bool_text(verdict)
    if not verdict and spec.kind != "T":
        g, k = classify.square_witness(f, spec, _budget(args))
        payload["witness"] = [str(g), str(k)]
        text += f" witness: ({g})^2 * ({k})"
    _emit(args, payload, text)


def cmd_graded_check(args):
    spec = _value("--spec", parse_spec, _require(args, "--spec"))
    res = classify.graded_closure_check(spec, args.i, args.j, args.samples, args.seed)
    payload = {"holds": res.holds, "witness": None if res.witness is None else [str(v) for v in res.witness]}
    text = "holds" if res.holds else f"fails: {res.witness[0]} * {res.witness[1]} = {res.witness[2]}"
    _emit(args, payload, text)


def cmd_quotient_x(args):
    spec, f = _spec_and_poly(args)
    value = classify.quotient_by_X(f, spec)
    in_ideal = classify.in_maximal_ideal(f, spec)
    _emit(args, {"value": str(value), "in_maximal_ideal": in_ideal}, str(value))


def cmd_in_system(args):
    spec, f = _spec_and_poly(args)
    verdict = classify.in_saturated_system(f, spec, args.variant)
    _emit(args, {"verdict": verdict}, _bool_text(verdict))


def _parse_fraction_arg(text: str, spec):
    parts = split_top_level(text, "|")
    if len(parts) != 2:
        raise ParseError("expected 'numerator | denominator'")
    return Poly.parse(parts[0], spec.top), Poly.parse(parts[1], spec.top)


def cmd_frac(args):
    spec = _value("--spec", parse_spec, _require(args, "--spec"))
    raw = _require(args, "--frac")
    if len(raw) != 2:
        raise UsageError("--frac", "give exactly two fractions")
    a, b = (classify.frac_make(*_value("--frac", lambda t: _parse_fraction_arg(t, spec), t), spec, args.system) for t in raw)
    if args.op == "eq":
        verdict = classify.frac_eq(a, b)
        _emit(args, {"verdict": verdict}, _bool_text(verdict))
        return
    res = classify.frac_add(a, b) if args.op == "add" else classify.frac_mul(a, b)
    _emit(args, {"numerator": str(res.numerator), "denominator": str(res.denominator)}, str(res))


# -- monoid ------------------------------------------------------------------------

def _monoid(args):
    return _value("--monoid", parse_monoid, _require(args, "--monoid"))


def _mdomain(args):
    return _value("--domain", parse_domain, args.domain or "Z")


def _mpoly(flag: str, text: str, dom, m):
    return _value(flag, lambda t: MPoly.parse(t, dom, m), text)


def _fraction(flag: str, text: str) -> Fraction:
    return _value(flag, Fraction, text)


def cmd_contains(args):
    m = _monoid(args)
    value = _fraction("--q", _require(args, "--q"))
    verdict = monoid.monoid_contains(value, m)
    _emit(args, {"verdict": verdict}, _bool_text(verdict))


def cmd_atoms(args):
    m = _monoid(args)
    bound = _fraction("--bound", _require(args, "--bound"))
    atoms = monoid.monoid_atoms(m, bound)
    _emit(args, {"atoms": atoms}, "[" + ", ".join(str(a) for a in atoms) + "]")


def cmd_construct_x1(args):
    m = _monoid(args)
    primes = _value("--primes", lambda t: [int(p) for p in t.split(",")], _require(args, "--primes"))
    exps = _value("--exponents", lambda t: [Fraction(e) for e in t.split(",")], _require(args, "--exponents"))
    f = monoid.construct_irreducible_x1(primes, exps, m)
    payload = {"poly": str(f)}
    text = str(f)
    if args.oracle:
        payload["oracle_irreducible"] = monoid.mdomain_irreducible_oracle(f, args.support_bound, args.coeff_bound)
        text += f" (oracle irreducible {_bool_text(payload['oracle_irreducible'])})"
    _emit(args, payload, text)


def cmd_irreducible_oracle(args):
    m, dom = _monoid(args), _mdomain(args)
    f = _mpoly("--poly", _require(args, "--poly"), dom, m)
    verdict = monoid.mdomain_irreducible_oracle(f, args.support_bound, args.coeff_bound)
    payload = {"verdict": verdict, "support_bound": args.support_bound, "coeff_bound": args.coeff_bound}
    _emit(args, payload, _bool_text(verdict))


def cmd_beta(args):
    m, dom = _monoid(args), _mdomain(args)
    f = _mpoly("--poly", _require(args, "--poly"), dom, m)
    b = monoid.beta(f)
    _emit(args, {"beta": b}, str(b))


def _read_chain(args) -> list[str]:
    lines = list(args.chain or [])
    if args.chain_file:
        for line in Path(args.chain_file).read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    if not lines:
        raise UsageError("--chain", "give the chain with --chain (repeated) or --chain-file")
    return lines


def cmd_accp_check(args):
    m, dom = _monoid(args), _mdomain(args)
    chain = [_mpoly("--chain", t, dom, m) for t in _read_chain(args)]
    report = monoid.accp_chain_check(chain)
    payload = report.to_json()
    if report.accepted:
        text = "accepted; betas " + " > ".join(str(b) for b in report.betas)
    else:
        s = report.first_failure
        failed = [n for n, ok in (("divides", s.divides), ("nonunit_quotient", s.nonunit_quotient), ("beta", s.beta_ok)) if not ok]
        text = f"rejected at step {s.index}: " + ", ".join(failed)
    _emit(args, payload, text)


def cmd_localize0(args):
    m = _monoid(args)
    dom = parse_domain("Z")
    num = _mpoly("--num", _require(args, "--num"), dom, m)
    den = _mpoly("--den", _require(args, "--den"), dom, m)
    terms = monoid.localize_at_zero(num, den)
    _emit(args, {"terms": [[c, e] for c, e in terms], "text": monoid.format_terms(terms)}, monoid.format_terms(terms))


# -- cipher ------------------------------------------------------------------------

def _key(args):
    path = _require(args, "--key")
    try:
        return cipher.load_key(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("--key", str(exc)) from None


def _charset(args):
    if not args.charset:
        return None
    try:
        return cipher.load_charset(args.charset)
    except OSError as exc:
        raise UsageError("--charset", str(exc)) from None


def _message_text(args) -> str:
    return args.message if args.message is not None else sys.stdin.read()


def _letters(args, charset) -> list[int]:
    text = _message_text(args)
    if charset is None:
        return _value("--message", cipher.parse_letters, text)
    return cipher.text_to_letters(text.rstrip("\n"), charset)


def cmd_expand_key(args):
    key = _key(args)
    desc = key.describe()
    text = "\n".join(f"X^{i}: " + " + ".join(entry) for i, entry in enumerate(desc))
    _emit(args, {"alphabet_size": key.alphabet_size, "block_len": key.block_len, "coefficients": desc}, text)


def cmd_encrypt(args):
    key, charset = _key(args), _charset(args)
    pad = args.pad
    if charset is not None and isinstance(pad, str) and not pad.isdigit():
        pad = cipher.text_to_letters(pad, charset)[0]
    out = cipher.encrypt(_letters(args, charset), key, int(pad))
    text = cipher.format_letters(out) if charset is None else cipher.letters_to_text(out, charset)
    _emit(args, {"ciphertext": text, "letters": out}, text)


def cmd_decrypt(args):
    key, charset = _key(args), _charset(args)
    out = cipher.decrypt(_letters(args, charset), key, args.length)
    text = cipher.format_letters(out) if charset is None else cipher.letters_to_text(out, charset)
    _emit(args, {"plaintext": text, "letters": out}, text)


def cmd_mencode(args):
    letters = _value("--message", cipher.parse_letters, _message_text(args))
    p = cipher.monoid_encode(letters, args.alphabet_size)
    _emit(args, {"poly": str(p)}, str(p))


def cmd_mdecode(args):
    p = _value("--poly", lambda t: MPoly.parse(t, Rationals(), cipher.NATURALS), _require(args, "--poly"))
    letters = cipher.monoid_decode(p, args.alphabet_size)
    _emit(args, {"letters": letters}, cipher.format_letters(letters))


# -- demo --------------------------------------------------------------------------

def cmd_demo_examples(args) -> int:
    key_data = None
    if args.key:
        try:
            key_data = json.loads(Path(args.key).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("--key", str(exc)) from None
    items = run_examples(key_data)
    if args.json:
        print(json.dumps({"items": [item._asdict() for item in items], "all_passed": all(i.passed for i in items)}))
    else:
        for item in items:
            print(item.line())
    return 0 if all(item.passed for item in items) else 1


# -- parser ------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print a JSON object")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polycomp", description="Polynomial composites, monoid domains and the composite-key cipher.")
    groups = parser.add_subparsers(dest="group", required=True)

    alg = groups.add_parser("alg", help="composite rings A+XB[X], towers, I(B,A)").add_subparsers(dest="command", required=True)

    def alg_cmd(name, func, help_text, poly=True):
        p = alg.add_parser(name, help=help_text)
        p.add_argument("--spec", help='e.g. "T(A=Q; B=Q(sqrt2))"')
        if poly:
            p.add_argument("--poly", help='e.g. "1+2*x"')
        _common(p)
        p.set_defaults(func=func)
        return p

    alg_cmd("membership", cmd_membership, "is the polynomial in the composite")
    p = alg_cmd("is-unit", cmd_is_unit, "unit test")
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive inverse search")
    p.add_argument("--bound", type=int, default=3, help="degree bound for the oracle")
    alg_cmd("is-nilpotent", cmd_is_nilpotent, "nilpotency test")
    p = alg_cmd("irreducible", cmd_irreducible, "irreducibility with a witness factorisation")
    p.add_argument("--domain", help="decide irreducibility in B[X] over this field instead of a composite")
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive factor search")
    p.add_argument("--bound", type=int, default=4, help="degree bound for the oracle")
    p.add_argument("--budget-degree", type=int, default=Budget.degree)
    p.add_argument("--budget-coeff", type=int, default=None)
    p = alg_cmd("squarefree", cmd_squarefree, "squarefree test")
    p.add_argument("--budget-degree", type=int, default=Budget.degree)
    p.add_argument("--budget-coeff", type=int, default=None)
    p = alg_cmd("graded-check", cmd_graded_check, "does A_i * A_j land in A_(i+j)", poly=False)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    alg_cmd("quotient-x", cmd_quotient_x, "image in the quotient by X")
    p = alg_cmd("in-system", cmd_in_system, "membership in the saturated multiplicative system")
    p.add_argument("--variant", choices=classify.SYSTEMS, default="nonzero_constant")
    p = alg_cmd("frac", cmd_frac, "arithmetic on fractions g/s", poly=False)
    p.add_argument("--frac", action="append", help='"numerator | denominator"; give twice')
    p.add_argument("--op", choices=("add", "mul", "eq"), default="add")
    p.add_argument("--system", choices=classify.SYSTEMS, default="nonzero_constant")

    mon = groups.add_parser("monoid", help="submonoids of Q+ and B[M]").add_subparsers(dest="command", required=True)

    def mon_cmd(name, func, help_text):
        p = mon.add_parser(name, help=help_text)
        p.add_argument("--monoid", help='e.g. "M<2,3>" or "<1/2,1/3>"')
        _common(p)
        p.set_defaults(func=func)
        return p

    def search_bounds(p, support=3, coeff=4):
        p.add_argument("--support-bound", type=Fraction, default=Fraction(support))
        p.add_argument("--coeff-bound", type=int, default=coeff)

    p = mon_cmd("contains", cmd_contains, "membership of a rational")
    p.add_argument("--q")
    p = mon_cmd("atoms", cmd_atoms, "atoms up to a bound")
    p.add_argument("--bound")
    p = mon_cmd("construct-x1", cmd_construct_x1, "build a certified irreducible element of Z[M]")
    p.add_argument("--primes", help="comma-separated p1,...,p(r-1)")
    p.add_argument("--exponents", help="comma-separated m1,...,mr")
    p.add_argument("--oracle", action="store_true")
    search_bounds(p)
    for name, func, help_text in (
        ("irreducible-oracle", cmd_irreducible_oracle, "exhaustive irreducibility search"),
        ("beta", cmd_beta, "largest exponent"),
    ):
        p = mon_cmd(name, func, help_text)
        p.add_argument("--poly")
        p.add_argument("--domain", help="coefficient ring (default Z)")
        if name == "irreducible-oracle":
            search_bounds(p)
    p = mon_cmd("accp-check", cmd_accp_check, "verify a properly ascending principal chain")
    p.add_argument("--chain", action="append", help="one chain entry; repeat in order")
    p.add_argument("--chain-file", help="file with one entry per line, # starts a comment")
    p.add_argument("--domain", help="coefficient ring (default Z)")
    p = mon_cmd("localize0", cmd_localize0, "num/den in the fraction field, den a monomial")
    p.add_argument("--num")
    p.add_argument("--den")

    cip = groups.add_parser("cipher", help="composite-key block cipher").add_subparsers(dest="command", required=True)

    def cip_cmd(name, func, help_text, key=True):
        p = cip.add_parser(name, help=help_text)
        if key:
            p.add_argument("--key", help="key JSON file")
        _common(p)
        p.set_defaults(func=func)
        return p

    cip_cmd("expand-key", cmd_expand_key, "show the expanded composite key")
    p = cip_cmd("encrypt", cmd_encrypt, "encrypt letters (stdin if --message is absent)")
    p.add_argument("--message")
    p.add_argument("--pad", default="0", help="pad letter for the last block")
    p.add_argument("--charset", help="file listing the alphabet symbols")
    p = cip_cmd("decrypt", cmd_decrypt, "decrypt letters (stdin if --message is absent)")
    p.add_argument("--message")
    p.add_argument("--length", type=int, default=None, help="trim the plaintext to this many letters")
    p.add_argument("--charset", help="file listing the alphabet symbols")
    p = cip_cmd("mencode", cmd_mencode, "encode a message as a polynomial", key=False)
    p.add_argument("--message")
    p.add_argument("--alphabet-size", type=int, required=True)
    p = cip_cmd("mdecode", cmd_mdecode, "decode a polynomial back to letters", key=False)
    p.add_argument("--poly")
    p.add_argument("--alphabet-size", type=int, required=True)

    demo = groups.add_parser("demo", help="worked examples").add_subparsers(dest="command", required=True)
    p = demo.add_parser("paper", help="run every worked example and print PASS/FAIL lines")
    p.add_argument("--key", help="replacement key JSON (a tampered key makes the cipher item fail)")
    _common(p)
    p.set_defaults(func=cmd_demo_examples)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    except AlgebraError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
