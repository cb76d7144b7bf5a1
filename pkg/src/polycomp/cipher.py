"""A block cipher keyed by a product of substitution-system polynomials.

Each key polynomial has substitution systems as coefficients.  Multiplying two
of them symbolically gives, at X^i, the list of products A_k B_{i-k}.  A letter
at block position i turns into two letters: the first runs through every A-part
of coefficient i in ascending k, the second through every B-part in that same
order.  Decryption inverts both chains and insists that they agree.

The module also provides an injective encoding of messages as polynomials over Q.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .domains import Rationals
from .errors import (
    AlphabetMismatch,
    DecodeError,
    InconsistentPair,
    InvalidSpec,
    LetterOutOfRange,
    MalformedLength,
    ParseError,
)
from .monoid import MonoidSpec, MPoly
from .poly import Poly


@dataclass(frozen=True)
class BasicSystem:
    """A bijective substitution on the alphabet {0..N-1}."""

    name: str
    forward: tuple

    def __post_init__(self):
        forward = tuple(int(v) for v in self.forward)
        if sorted(forward) != list(range(len(forward))):
            raise InvalidSpec(f"system {self.name!r} is not a bijection on 0..{len(forward) - 1}")
        object.__setattr__(self, "forward", forward)
        inverse = [0] * len(forward)
        for x, y in enumerate(forward):
            inverse[y] = x
        object.__setattr__(self, "_inverse", tuple(inverse))

    @property
    def alphabet_size(self) -> int:
        return len(self.forward)

    @property
    def inverse(self) -> tuple:
        return self._inverse

    def __call__(self, x: int) -> int:
        return self.forward[x]

    def invert(self, y: int) -> int:
        return self._inverse[y]

    def __str__(self):
        return self.name


def caesar(shift: int, alphabet_size: int, name: str | None = None) -> BasicSystem:
    return BasicSystem(name or f"caesar({shift:+d})", tuple((x + shift) % alphabet_size for x in range(alphabet_size)))


def identity(alphabet_size: int) -> BasicSystem:
    return caesar(0, alphabet_size, "id")


@dataclass(frozen=True)
class KeyPolynomial:
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise InvalidSpec("a key polynomial needs at least one coefficient")
        if len({s.alphabet_size for s in coeffs}) != 1:
            raise AlphabetMismatch("coefficients act on different alphabets")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def alphabet_size(self) -> int:
        return self.coefficients[0].alphabet_size

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class CompositeKey:
    """Entry i lists the pairs (A_k, B_{i-k}) in ascending k."""

    coefficients: tuple
    alphabet_size: int

    @property
    def block_len(self) -> int:
        return len(self.coefficients)

    def describe(self) -> list[list[str]]:
        return [[f"{a}*{b}" for a, b in entry] for entry in self.coefficients]


def expand_key(f: KeyPolynomial, g: KeyPolynomial) -> CompositeKey:
    if f.alphabet_size != g.alphabet_size:
        raise AlphabetMismatch(f"alphabets of size {f.alphabet_size} and {g.alphabet_size}")
    entries = []
    for i in range(f.degree + g.degree + 1):
        entries.append(
            tuple(
                (f.coefficients[k], g.coefficients[i - k])
                for k in range(len(f.coefficients))
                if 0 <= i - k < len(g.coefficients)
            )
        )
    return CompositeKey(tuple(entries), f.alphabet_size)


def _check_letter(x: int, n: int) -> int:
    if not isinstance(x, int) or not 0 <= x < n:
        raise LetterOutOfRange(f"letter {x!r} is outside 0..{n - 1}")
    return x


def encrypt_letter(x: int, coeff: Sequence[tuple[BasicSystem, BasicSystem]]) -> tuple[int, int]:
    _check_letter(x, coeff[0][0].alphabet_size)
    first = second = x
    for a, b in coeff:
        first, second = a(first), b(second)
    return first, second


def decrypt_pair(pair: tuple[int, int], coeff, position: int = 0) -> int:
    first, second = pair
    for a, b in reversed(coeff):
        first, second = a.invert(first), b.invert(second)
    if first != second:
        raise InconsistentPair(position, (first, second))
    return first


def pad_message(message: Sequence[int], block_len: int, pad: int) -> list[int]:
    message = list(message)
    return message + [pad] * (-len(message) % block_len)


def encrypt(message: Sequence[int], key: CompositeKey, pad: int = 0) -> list[int]:
    _check_letter(pad, key.alphabet_size)
    padded = pad_message(message, key.block_len, pad)
    out = []
    for t, x in enumerate(padded):
        out.extend(encrypt_letter(_check_letter(x, key.alphabet_size), key.coefficients[t % key.block_len]))
    return out


def decrypt(ciphertext: Sequence[int], key: CompositeKey, length: int | None = None) -> list[int]:
    """Invert ``encrypt``; the result keeps any padding unless ``length`` trims it."""
    ciphertext = list(ciphertext)
    if len(ciphertext) % (2 * key.block_len):
        raise MalformedLength(f"ciphertext length {len(ciphertext)} is not a multiple of {2 * key.block_len}")
    out = []
    for t in range(len(ciphertext) // 2):
        pair = tuple(_check_letter(v, key.alphabet_size) for v in ciphertext[2 * t : 2 * t + 2])
        out.append(decrypt_pair(pair, key.coefficients[t % key.block_len], t % key.block_len))
    return out if length is None else out[:length]


# -- key files -----------------------------------------------------------------------

def _system_from_json(entry: dict, n: int, label: str) -> BasicSystem:
    kind = entry.get("type")
    if kind == "caesar":
        return caesar(int(entry["shift"]), n, entry.get("name") or f"{label}")
    if kind == "permutation":
        return BasicSystem(entry.get("name") or label, tuple(entry["map"]))
    raise InvalidSpec(f"unknown system type {kind!r}")


def key_from_json(data: dict) -> tuple[KeyPolynomial, KeyPolynomial]:
    try:
        n = int(data["alphabet_size"])
        f = KeyPolynomial(tuple(_system_from_json(e, n, f"A{i}") for i, e in enumerate(data["f"])))
        g = KeyPolynomial(tuple(_system_from_json(e, n, f"B{i}") for i, e in enumerate(data["g"])))
    except (KeyError, TypeError) as exc:
        raise InvalidSpec(f"malformed key: missing or bad field {exc}") from None
    for poly in (f, g):
        if poly.alphabet_size != n:
            raise AlphabetMismatch(f"a system acts on {poly.alphabet_size} letters, key says {n}")
    return f, g


def load_key(path: str | Path) -> CompositeKey:
    return expand_key(*key_from_json(json.loads(Path(path).read_text(encoding="utf-8"))))


SAMPLE_KEY = {
    "alphabet_size": 10,
    "f": [{"type": "caesar", "shift": 1}, {"type": "caesar", "shift": 2}, {"type": "caesar", "shift": 3}],
    "g": [{"type": "caesar", "shift": -1}, {"type": "caesar", "shift": -2}],
}


# -- letters and charsets -------------------------------------------------------------

def parse_letters(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise ParseError(f"letters must be whitespace-separated integers: {exc}") from None


def format_letters(letters: Iterable[int]) -> str:
    return " ".join(str(x) for x in letters)


def load_charset(path: str | Path) -> list[str]:
    """One symbol per line, or every character of a single line."""
    lines = [line for line in Path(path).read_text(encoding="utf-8").splitlines() if line != ""]
    symbols = lines if len(lines) > 1 else list(lines[0]) if lines else []
    if len(set(symbols)) != len(symbols) or not symbols:
        raise InvalidSpec("charset symbols must be nonempty and distinct")
    return symbols


def text_to_letters(text: str, charset: Sequence[str]) -> list[int]:
    index = {s: i for i, s in enumerate(charset)}
    try:
        return [index[ch] for ch in text]
    except KeyError as exc:
        raise LetterOutOfRange(f"symbol {exc} is not in the charset") from None


def letters_to_text(letters: Iterable[int], charset: Sequence[str]) -> str:
    return "".join(charset[_check_letter(x, len(charset))] for x in letters)


# -- polynomial encoding --------------------------------------------------------------

NATURALS = MonoidSpec((1,))


def monoid_encode(message: Sequence[int], alphabet_size: int) -> MPoly:
    """Letter l at position t becomes the term X^(t*N + l)."""
    q = Rationals()
    terms = {t * alphabet_size + _check_letter(x, alphabet_size): 1 for t, x in enumerate(message)}
    return MPoly(Poly(q, terms), NATURALS)


def monoid_decode(p: MPoly, alphabet_size: int) -> list[int]:
    letters = []
    for position, (e, c) in enumerate(p.poly.items()):
        if c != 1:
            raise DecodeError(f"coefficient {c} at X^{e} is not 1")
        if e.denominator != 1:
            raise DecodeError(f"exponent {e} is not an integer")
        t, letter = divmod(int(e), alphabet_size)
        if t != position:
            kind = "duplicate" if t < position else "missing"
            raise DecodeError(f"{kind} position near {position} (exponent {e})")
        letters.append(letter)
    return letters
