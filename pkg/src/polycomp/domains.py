"""Exact coefficient structures and the embeddings between them.

Supported domains: ``Z``, ``Z/n``, ``Q``, ``GF(p)``, ``GF(p^k, modulus)`` and
the multiquadratic fields ``Q(sqrt d1)`` / ``Q(sqrt d1, sqrt d2)``.  Elements
are :class:`Scalar` values holding a canonical raw representation:

* ``Integers``, ``IntegersMod``, ``PrimeField``: ``int`` (residues reduced)
* ``Rationals``: ``Fraction``
* ``FiniteField``: tuple of ``k`` residues, coordinates in powers of the generator ``x``
* ``MultiQuadratic``: tuple of ``Fraction`` coordinates, indexed by bitmask over the
  square roots (mask 0 is 1, mask 1 is sqrt d1, mask 2 is sqrt d2, mask 3 is sqrt(d1*d2))
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Callable, Iterator

import sympy

from . import _expr
from .errors import (
    CoefficientNotInDomain,
    DomainMismatch,
    InfiniteDomain,
    InvalidDomain,
    NoEmbedding,
    NotInvertible,
    ParseError,
    Unsupported,
)


# -- GF(p)[x] helpers on coefficient lists (lowest degree first) ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def gfp_is_irreducible(m: list[int], p: int) -> bool:
    """Exhaustive trial division of ``m`` by every monic polynomial of degree <= deg/2."""
    d = len(m) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for cand in _monic_polys(p, k):
            if not _gfp_mod(list(m), cand, p):
                return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for cand in _monic_polys(p, k):
        if gfp_is_irreducible(cand, p):
            return tuple(cand)
    raise InvalidDomain(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


def _format_gfp_poly(coeffs, var="x") -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            mono = str(c)
        else:
            power = var if i == 1 else f"{var}^{i}"
            mono = power if c == 1 else f"{c}*{power}"
        parts.append(mono)
    return "+".join(parts) if parts else "0"


def _squarefree(n: int) -> bool:
    return n > 1 and all(e == 1 for e in sympy.factorint(n).values())


def _clear_denominators(terms: dict, dim: int) -> tuple[dict, int]:
    """Integer coordinates over one common denominator for a map of rational values."""
    rows = {e: (v,) if dim == 1 and not isinstance(v, tuple) else v for e, v in terms.items()}
    den = math.lcm(*(c.denominator for row in rows.values() for c in row)) if rows else 1
    return {e: tuple(c.numerator * (den // c.denominator) for c in row) for e, row in rows.items()}, den


# -- scalars ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Scalar:
    """An element of a :class:`Domain` in canonical form."""

    domain: "Domain"
    value: Any

    def _coerce_other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.domain is not self.domain and other.domain != self.domain:
                raise DomainMismatch(f"{self.domain} vs {other.domain}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.domain(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return Scalar(self.domain, self.domain.add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.domain, self.domain.neg(self.value))

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return Scalar(self.domain, self.domain.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.domain.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.domain == other.domain and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.domain(other)
            except CoefficientNotInDomain:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.value))

    def __bool__(self):
        return not self.domain.is_zero(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.domain, self.domain.inv(self.value))

    def is_unit(self) -> bool:
        try:
            self.inverse()
        except NotInvertible:
            return False
        return True

    def is_nilpotent(self) -> bool:
        return self.domain.nilpotent(self.value)

    def is_simple(self) -> bool:
        """True when the value prints as a single signed atom (no inner + or -)."""
        return self.domain.is_simple(self.value)

    def __str__(self):
        return self.domain.format_value(self.value)

    def __repr__(self):
        return f"Scalar({self.domain}, {self})"


# -- domains ----------------------------------------------------------------------

class Domain:
    is_field = False
    is_finite = False
    characteristic = 0

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.domain == self:
                return value
            return coerce(value, self)
        return Scalar(self, self.canonical(value))

    def zero(self) -> Scalar:
        return self(0)

    def one(self) -> Scalar:
        return self(1)

    def is_zero(self, x) -> bool:
        return x == self._zero_value

    @cached_property
    def _zero_value(self):
        return self.canonical(0)

    @property
    def is_integral(self) -> bool:
        return self.is_field

    def canonical(self, value):  # pragma: no cover - abstract
        raise NotImplementedError

    def is_simple(self, x) -> bool:
        return True

    def mul_terms(self, left: dict, right: dict) -> dict:
        """Product of two maps exponent -> raw value, without building scalars."""
        add, mul = self.add, self.mul
        acc: dict = {}
        for e1, a in left.items():
            for e2, b in right.items():
                e = e1 + e2
                prod = mul(a, b)
                acc[e] = add(acc[e], prod) if e in acc else prod
        return acc

    @property
    def size(self) -> int:
        raise InfiniteDomain(f"{self} is infinite")

    def elements(self) -> Iterator[Scalar]:
        raise InfiniteDomain(f"{self} is infinite")

    def additive_basis(self) -> list[Scalar]:
        """Generators of the domain as a module over its prime ring."""
        return [self.one()]

    def parse(self, text: str) -> Scalar:
        node = _expr.parse(text)
        return _expr.evaluate(node, _ScalarEvaluator(self))

    def symbol(self, name: str) -> Scalar:
        raise CoefficientNotInDomain(f"{name!r} is not an element of {self}")

    def sample(self, rng: random.Random, bound: int = 5) -> Scalar:
        if self.is_finite:
            return rng.choice(self._element_list)
        return self(rng.randint(-bound, bound))

    @cached_property
    def _element_list(self) -> list[Scalar]:
        return list(self.elements())


@dataclass(frozen=True)
class Integers(Domain):
    def canonical(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        raise CoefficientNotInDomain(f"{value} is not an integer")

    @property
    def is_integral(self):
        return True

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x in (1, -1):
            return x
        raise NotInvertible(f"{x} is not a unit of Z")

    def nilpotent(self, x):
        return x == 0

    def format_value(self, x):
        return str(x)

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class IntegersMod(Domain):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidDomain(f"Z/n needs n >= 2, got {self.n}")

    @property
    def characteristic(self):
        return self.n

    @property
    def is_finite(self):
        return True

    @property
    def is_integral(self):
        return sympy.isprime(self.n)

    @cached_property
    def _radical(self) -> int:
        return math.prod(sympy.factorint(self.n))

    def canonical(self, value):
        if isinstance(value, Fraction):
            if value.denominator == 1:
                value = value.numerator
            else:
                try:
                    return value.numerator * pow(value.denominator, -1, self.n) % self.n
                except ValueError:
                    raise CoefficientNotInDomain(f"{value} has no image in {self}") from None
        if not isinstance(value, int):
            raise CoefficientNotInDomain(f"{value!r} is not a residue")
        return value % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return -x % self.n

    def mul(self, x, y):
        return x * y % self.n

    def inv(self, x):
        try:
            return pow(x, -1, self.n)
        except ValueError:
            raise NotInvertible(f"{x} is not invertible mod {self.n}") from None

    def nilpotent(self, x):
        return x % self._radical == 0

    def format_value(self, x):
        return str(x)

    @property
    def size(self):
        return self.n

    def elements(self):
        return (Scalar(self, v) for v in range(self.n))

    def __str__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class Rationals(Domain):
    is_field = True

    def canonical(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise CoefficientNotInDomain(f"{value!r} is not rational")

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise NotInvertible("0 is not invertible")
        return 1 / x

    def mul_terms(self, left, right):
        (lnum, lden), (rnum, rden) = _clear_denominators(left, 1), _clear_denominators(right, 1)
        acc: dict = {}
        for e1, (a,) in lnum.items():
            for e2, (b,) in rnum.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + a * b
        den = lden * rden
        return {e: Fraction(c, den) for e, c in acc.items()}

    def nilpotent(self, x):
        return x == 0

    def format_value(self, x):
        return str(x)

    def sample(self, rng, bound=5):
        return self(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Domain):
    p: int
    is_field = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not sympy.isprime(self.p):
            raise InvalidDomain(f"GF(p) needs a prime p, got {self.p}")

    @property
    def characteristic(self):
        return self.p

    @property
    def is_finite(self):
        return True

    def canonical(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise CoefficientNotInDomain(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if not isinstance(value, int):
            raise CoefficientNotInDomain(f"{value!r} is not a residue")
        return value % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x == 0:
            raise NotInvertible("0 is not invertible")
        return pow(x, -1, self.p)

    def nilpotent(self, x):
        return x == 0

    def format_value(self, x):
        return str(x)

    @property
    def size(self):
        return self.p

    def elements(self):
        return (Scalar(self, v) for v in range(self.p))

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class FiniteField(Domain):
    """GF(p^k) as GF(p)[x]/(modulus); ``modulus`` is monic, lowest coefficient first."""

    p: int
    k: int
    modulus: tuple
    is_field = True

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise InvalidDomain(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise InvalidDomain("extension degree must be >= 1")
        m = tuple(c % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.k + 1 or m[-1] != 1:
            raise InvalidDomain(f"modulus must be monic of degree {self.k}")
        if not gfp_is_irreducible(list(m), self.p):
            raise InvalidDomain(f"{_format_gfp_poly(m)} is reducible over GF({self.p})")

    @property
    def characteristic(self):
        return self.p

    @property
    def is_finite(self):
        return True

    @property
    def size(self):
        return self.p ** self.k

    def canonical(self, value):
        if isinstance(value, tuple):
            coeffs = list(value)
        elif isinstance(value, int):
            coeffs = [value]
        elif isinstance(value, Fraction):
            coeffs = [PrimeField(self.p).canonical(value)]
        else:
            raise CoefficientNotInDomain(f"{value!r} is not an element of {self}")
        rem = _gfp_mod(coeffs, list(self.modulus), self.p)
        return tuple(rem + [0] * (self.k - len(rem)))

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        return self._mul_table(x, y)

    @lru_cache(maxsize=None)
    def _mul_table(self, x, y):
        prod = [0] * (2 * self.k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        return self.canonical(tuple(prod))

    def inv(self, x):
        if not any(x):
            raise NotInvertible("0 is not invertible")
        return self._pow_raw(x, self.size - 2)

    def _pow_raw(self, x, n):
        result = self.canonical(1)
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def nilpotent(self, x):
        return not any(x)

    def is_simple(self, x):
        return not any(x[1:])

    def format_value(self, x):
        return _format_gfp_poly(x)

    def symbol(self, name):
        if name == "x":
            return self((0, 1))
        return super().symbol(name)

    def elements(self):
        for n in range(self.size):
            digits = []
            for _ in range(self.k):
                n, r = divmod(n, self.p)
                digits.append(r)
            yield Scalar(self, tuple(digits))

    def additive_basis(self):
        return [self.canonical_scalar(i) for i in range(self.k)]

    def canonical_scalar(self, power: int) -> Scalar:
        return self(tuple([0] * power + [1]))

    def in_subfield(self, a: Scalar, m: int) -> bool:
        """Frobenius fixed-point test a^(p^m) == a, i.e. membership in GF(p^m)."""
        return self._pow_raw(a.value, self.p ** m) == a.value

    def __str__(self):
        return f"GF({self.size},{_format_gfp_poly(self.modulus)})"


@dataclass(frozen=True)
class MultiQuadratic(Domain):
    """Q(sqrt d1[, sqrt d2]) with coordinates on the product-of-roots basis."""

    ds: tuple
    is_field = True

    def __post_init__(self):
        ds = tuple(sorted(self.ds))
        object.__setattr__(self, "ds", ds)
        if not 1 <= len(ds) <= 2:
            raise InvalidDomain("multiquadratic fields take one or two square roots")
        if len(set(ds)) != len(ds):
            raise InvalidDomain(f"square roots must be distinct: {ds}")
        for d in ds:
            if not isinstance(d, int) or not _squarefree(d):
                raise InvalidDomain(f"{d} is not a squarefree integer > 1")

    @cached_property
    def dim(self) -> int:
        return 1 << len(self.ds)

    @cached_property
    def mask_product(self) -> tuple:
        return tuple(math.prod(d for i, d in enumerate(self.ds) if mask >> i & 1) for mask in range(self.dim))

    def canonical(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return (Fraction(value),) + (Fraction(0),) * (self.dim - 1)
        if isinstance(value, tuple) and len(value) == self.dim:
            return tuple(Fraction(c) for c in value)
        raise CoefficientNotInDomain(f"{value!r} is not an element of {self}")

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        out = [Fraction(0)] * self.dim
        for s, a in enumerate(x):
            if not a:
                continue
            for t, b in enumerate(y):
                if b:
                    common = s & t
                    out[s ^ t] += a * b * self.mask_product[common]
        return tuple(out)

    def mul_terms(self, left, right):
        (lnum, lden), (rnum, rden) = _clear_denominators(left, self.dim), _clear_denominators(right, self.dim)
        dim, table = self.dim, self.mask_product
        acc: dict = {}
        right_nz = [(e2, [(t, b) for t, b in enumerate(y) if b]) for e2, y in rnum.items()]
        for e1, x in lnum.items():
            left_nz = [(s, a) for s, a in enumerate(x) if a]
            for e2, y in right_nz:
                e = e1 + e2
                out = acc.get(e)
                if out is None:
                    out = acc[e] = [0] * dim
                for s, a in left_nz:
                    for t, b in y:
                        out[s ^ t] += a * b * table[s & t]
        den = lden * rden
        return {e: tuple(Fraction(c, den) for c in out) for e, out in acc.items()}

    def conjugate(self, x, i: int):
        """Apply the automorphism sending sqrt d_i to -sqrt d_i."""
        return tuple(-c if mask >> i & 1 else c for mask, c in enumerate(x))

    def inv(self, x):
        if not any(x):
            raise NotInvertible("0 is not invertible")
        # product of the nontrivial conjugates; x * other is rational (the norm)
        other = self.canonical(1)
        for flips in range(1, self.dim):
            conj = x
            for i in range(len(self.ds)):
                if flips >> i & 1:
                    conj = self.conjugate(conj, i)
            other = self.mul(other, conj)
        norm = self.mul(x, other)[0]
        return tuple(c / norm for c in other)

    def nilpotent(self, x):
        return not any(x)

    def is_simple(self, x):
        return sum(1 for c in x if c) <= 1

    def format_value(self, x):
        parts = []
        for mask, c in enumerate(x):
            if not c:
                continue
            if mask == 0:
                parts.append(str(c))
                continue
            root = f"sqrt{self.mask_product[mask]}"
            if c == 1:
                parts.append(root)
            elif c == -1:
                parts.append("-" + root)
            else:
                parts.append(f"{c}*{root}")
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += part if part.startswith("-") else "+" + part
        return out

    def symbol(self, name):
        if name.startswith("sqrt") and name[4:].isdigit():
            n = int(name[4:])
            for mask, prod in enumerate(self.mask_product):
                ratio = Fraction(n, prod)
                num_root, den_root = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
                if num_root ** 2 == ratio.numerator and den_root ** 2 == ratio.denominator:
                    coords = [Fraction(0)] * self.dim
                    coords[mask] = Fraction(num_root, den_root)
                    return Scalar(self, tuple(coords))
        return super().symbol(name)

    def additive_basis(self):
        return [Scalar(self, tuple(Fraction(int(m == mask)) for m in range(self.dim))) for mask in range(self.dim)]

    def sample(self, rng, bound=5):
        return Scalar(self, tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(self.dim)))

    def __str__(self):
        return "Q(" + ",".join(f"sqrt{d}" for d in self.ds) + ")"


class _ScalarEvaluator:
    def __init__(self, domain: Domain):
        self.domain = domain

    def num(self, n):
        return self.domain(n)

    def name(self, name):
        return self.domain.symbol(name)

    def bracket(self, text):
        return self.domain.parse(text)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        try:
            return a / b
        except NotInvertible:
            raise CoefficientNotInDomain(f"cannot divide by {b} in {self.domain}") from None

    def neg(self, a):
        return -a

    def pow(self, a, e):
        if e.denominator != 1:
            raise ParseError("scalar exponents must be integers")
        return a ** int(e)


# -- parsing domains ----------------------------------------------------------------

def parse_domain(text: str) -> Domain:
    s = text.strip().replace(" ", "")
    if s == "Z":
        return Integers()
    if s == "Q":
        return Rationals()
    if s.startswith("Z/"):
        try:
            return IntegersMod(int(s[2:]))
        except ValueError:
            raise ParseError(f"bad modulus in {text!r}") from None
    if s.startswith("GF(") and s.endswith(")"):
        inner = s[3:-1].split(",", 1)
        try:
            q = int(inner[0])
        except ValueError:
            raise ParseError(f"bad field order in {text!r}") from None
        if q < 2:
            raise InvalidDomain(f"bad field order {q}")
        factors = sympy.factorint(q)
        if len(factors) != 1:
            raise InvalidDomain(f"{q} is not a prime power")
        ((p, k),) = factors.items()
        if len(inner) == 1:
            return PrimeField(p) if k == 1 else FiniteField(p, k, first_irreducible(p, k))
        modulus = _parse_gfp_poly(inner[1], p)
        return FiniteField(p, k, tuple(modulus))
    if s.startswith("Q(") and s.endswith(")"):
        ds = []
        for part in s[2:-1].split(","):
            if not part.startswith("sqrt") or not part[4:].isdigit():
                raise ParseError(f"bad square root {part!r} in {text!r}")
            ds.append(int(part[4:]))
        return MultiQuadratic(tuple(ds))
    raise ParseError(f"unknown domain {text!r}")


class _GFpPolyEvaluator:
    def __init__(self, p):
        self.p = p

    def num(self, n):
        return [n % self.p]

    def name(self, name):
        if name != "x":
            raise ParseError(f"unknown symbol {name!r} in modulus")
        return [0, 1]

    def bracket(self, text):
        raise ParseError("brackets not allowed in a modulus")

    def add(self, a, b):
        n = max(len(a), len(b))
        return [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % self.p for i in range(n)]

    def neg(self, a):
        return [-c % self.p for c in a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % self.p
        return out

    def div(self, a, b):
        raise ParseError("division not allowed in a modulus")

    def pow(self, a, e):
        if e.denominator != 1:
            raise ParseError("modulus exponents must be integers")
        out = [1]
        for _ in range(int(e)):
            out = self.mul(out, a)
        return out


def _parse_gfp_poly(text: str, p: int) -> list[int]:
    return _trim(_expr.evaluate(_expr.parse(text), _GFpPolyEvaluator(p)))


# -- embeddings ----------------------------------------------------------------------

def domain_is_field(d: Domain) -> bool:
    return d.is_field


def domain_is_integral(d: Domain) -> bool:
    return d.is_integral


def _rational_like(d: Domain) -> bool:
    return isinstance(d, (Integers, Rationals))


@lru_cache(maxsize=None)
def _embedding(sub: Domain, sup: Domain) -> Callable | None:
    """Raw-value map realising ``sub`` inside ``sup``, or None when unsupported."""
    if sub == sup:
        return lambda v: v
    if isinstance(sub, Integers) and isinstance(sup, Rationals):
        return Fraction
    if _rational_like(sub) and isinstance(sup, MultiQuadratic):
        return lambda v: sup.canonical(Fraction(v))
    if isinstance(sub, MultiQuadratic) and isinstance(sup, MultiQuadratic):
        if not set(sub.ds) <= set(sup.ds):
            return None
        bit = [sup.ds.index(d) for d in sub.ds]

        def remap(v):
            out = [Fraction(0)] * sup.dim
            for mask, c in enumerate(v):
                target = sum(1 << bit[i] for i in range(len(sub.ds)) if mask >> i & 1)
                out[target] = c
            return tuple(out)

        return remap
    if isinstance(sub, PrimeField) and isinstance(sup, FiniteField) and sub.p == sup.p:
        return lambda v: sup.canonical(v)
    if isinstance(sub, FiniteField) and isinstance(sup, FiniteField) and sub.p == sup.p:
        if sup.k % sub.k:
            return None
        root = _find_root(sub.modulus, sup)
        powers = [sup.canonical(1)]
        for _ in range(sub.k - 1):
            powers.append(sup.mul(powers[-1], root))

        def embed(v):
            acc = sup.canonical(0)
            for c, pw in zip(v, powers):
                if c:
                    acc = sup.add(acc, sup.mul(sup.canonical(c), pw))
            return acc

        return embed
    return None


def _find_root(modulus: tuple, field: FiniteField):
    """First element of ``field`` (in enumeration order) that is a root of ``modulus``."""
    for a in field.elements():
        acc = field.canonical(0)
        for c in reversed(modulus):
            acc = field.add(field.mul(acc, a.value), field.canonical(c))
        if not any(acc):
            return a.value
    raise NoEmbedding(f"{_format_gfp_poly(modulus)} has no root in {field}")  # pragma: no cover


def domain_contains(sub: Domain, sup: Domain) -> bool:
    return _embedding(sub, sup) is not None


def coerce(a: Scalar, sup: Domain) -> Scalar:
    emb = _embedding(a.domain, sup)
    if emb is None:
        raise NoEmbedding(f"{a.domain} does not embed in {sup}")
    return Scalar(sup, emb(a.value))


@lru_cache(maxsize=None)
def _preimage_table(sub: Domain, sup: Domain) -> dict:
    emb = _embedding(sub, sup)
    return {emb(e.value): e.value for e in sub.elements()}


def restrict(a: Scalar, sub: Domain) -> Scalar | None:
    """Pull ``a`` back along the embedding ``sub -> a.domain``; None if ``a`` is outside the image."""
    sup = a.domain
    if sub == sup:
        return a
    if not domain_contains(sub, sup):
        raise NoEmbedding(f"{sub} does not embed in {sup}")
    v = a.value
    if isinstance(sup, Rationals):  # sub is Z
        return Scalar(sub, v.numerator) if v.denominator == 1 else None
    if isinstance(sup, MultiQuadratic):
        if _rational_like(sub):
            if any(v[1:]):
                return None
            if isinstance(sub, Integers):
                return Scalar(sub, v[0].numerator) if v[0].denominator == 1 else None
            return Scalar(sub, v[0])
        bit = [sup.ds.index(d) for d in sub.ds]
        image_masks = {sum(1 << bit[i] for i in range(len(sub.ds)) if m >> i & 1): m for m in range(sub.dim)}
        out = [Fraction(0)] * sub.dim
        for mask, c in enumerate(v):
            if c:
                if mask not in image_masks:
                    return None
                out[image_masks[mask]] = c
        return Scalar(sub, tuple(out))
    if isinstance(sup, FiniteField):
        order_exp = 1 if isinstance(sub, PrimeField) else sub.k
        if not sup.in_subfield(a, order_exp):
            return None
        return Scalar(sub, _preimage_table(sub, sup)[v])
    raise Unsupported(f"restriction from {sup} to {sub}")  # pragma: no cover


def is_member(a: Scalar, sub: Domain) -> bool:
    """True iff ``a`` lies in the image of ``sub`` inside ``a.domain``."""
    return restrict(a, sub) is not None


def is_prime_element(a: Scalar) -> bool:
    if not isinstance(a.domain, Integers):
        raise Unsupported(f"prime elements are only decided over Z, not {a.domain}")
    return sympy.isprime(abs(a.value))


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def invert(a: Scalar) -> Scalar:
    return a.inverse()
