"""Reference computations written without the package, used as test oracles."""
from __future__ import annotations

import itertools
from fractions import Fraction

# GF(4) = {0, 1, a, a+1} with a^2 = a + 1, elements encoded 0..3 as bit pairs (c0 + 2*c1).
GF4_ADD = [[a ^ b for b in range(4)] for a in range(4)]
GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


def gf4_encode(value: tuple) -> int:
    return value[0] + 2 * value[1]


def rational_roots(coeffs: list[int]) -> set[Fraction]:
    """Rational roots of an integer polynomial (lowest degree first) by the rational root theorem."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    roots = set()
    if not coeffs:
        return roots
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    low, high = abs(coeffs[k]), abs(coeffs[-1])
    divisors = lambda n: [d for d in range(1, n + 1) if n % d == 0]
    for p in divisors(low):
        for q in divisors(high):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand**i for i, c in enumerate(coeffs)) == 0:
                    roots.add(cand)
    return roots


def irreducible_over_Q_low_degree(coeffs: list[int]) -> bool:
    """Degree 2 or 3 over Q: irreducible iff no rational root."""
    while coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    assert len(coeffs) - 1 in (2, 3)
    return not rational_roots(coeffs)


def generator_sums(scaled_gens: tuple[int, ...], limit: int, depth: int) -> set[int]:
    """All sums of at most ``depth`` generators that stay <= limit."""
    reached = {0}
    frontier = {0}
    for _ in range(depth):
        frontier = {s + g for s in frontier for g in scaled_gens if s + g <= limit} - reached
        if not frontier:
            break
        reached |= frontier
    return reached


def eval_fraction_poly(coeffs: list[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_valued_on(coeffs: list[Fraction], points) -> bool:
    return all(eval_fraction_poly(coeffs, x).denominator == 1 for x in points)


def caesar_reference(message: list[int], f_shifts: list[int], g_shifts: list[int], n: int) -> list[int]:
    """Composite-key encryption for Caesar systems: sums of shifts replace the chains."""
    m = len(f_shifts) + len(g_shifts) - 1
    a_sum = [sum(f_shifts[k] for k in range(len(f_shifts)) if 0 <= i - k < len(g_shifts)) for i in range(m)]
    b_sum = [sum(g_shifts[i - k] for k in range(len(f_shifts)) if 0 <= i - k < len(g_shifts)) for i in range(m)]
    out = []
    for t, x in enumerate(message):
        out += [(x + a_sum[t % m]) % n, (x + b_sum[t % m]) % n]
    return out


def all_tuples(values, length):
    return itertools.product(values, repeat=length)
