"""Shared test harness: exhaustive enumeration of small idempotent semirings.

Tables have zero at index 0 and one at index 1; the identity rows are fixed
and only the remaining entries are scanned, with the axiom validator as the
filter.  This gives an independent brute-force source of valid carriers for
property tests.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from idemval.finite_semiring import FiniteSemiring, make_semiring, validate


def _free_add_pairs(n):
    return [(x, y) for x in range(1, n) for y in range(x + 1, n)]


def _free_mul_pairs(n):
    return [(x, y) for x in range(2, n) for y in range(x, n)]


@lru_cache(maxsize=None)
def enumerate_semirings(n: int) -> tuple[FiniteSemiring, ...]:
    """Every idempotent semiring structure on 0..n-1 with zero 0 and one 1."""
    assert 2 <= n <= 4, "enumeration is meant for tiny carriers"
    names = tuple(str(k) if k != 1 else "1" for k in range(n))
    names = ("0", "1") + tuple(f"e{k}" for k in range(2, n))
    add_pairs = _free_add_pairs(n)
    mul_pairs = _free_mul_pairs(n)
    found = []
    for add_choice in product(range(n), repeat=len(add_pairs)):
        add = [[0] * n for _ in range(n)]
        for x in range(n):
            add[0][x] = add[x][0] = x
            add[x][x] = x
        for (x, y), v in zip(add_pairs, add_choice):
            add[x][y] = add[y][x] = v
        for mul_choice in product(range(n), repeat=len(mul_pairs)):
            mul = [[0] * n for _ in range(n)]
            for x in range(n):
                mul[1][x] = mul[x][1] = x
            for (x, y), v in zip(mul_pairs, mul_choice):
                mul[x][y] = mul[y][x] = v
            candidate = FiniteSemiring(
                f"T{len(found)}", names,
                tuple(tuple(row) for row in add),
                tuple(tuple(row) for row in mul), 0, 1)
            if not validate(candidate):
                found.append(candidate)
    return tuple(found)


def small_semirings(max_size: int = 3) -> list[FiniteSemiring]:
    out = []
    for n in range(2, max_size + 1):
        out.extend(enumerate_semirings(n))
    return out


def random_semiring(rng, n: int) -> FiniteSemiring:
    return rng.choice(enumerate_semirings(n))
