"""Shared generators for randomized tests: groups, multiplicity tables."""

from __future__ import annotations

from finemw.groups import FiniteAbelianGroup, index_tuples
from finemw.rank_data import EAlphaTable

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def random_distinct_group(rng, max_tuples: int = 8) -> FiniteAbelianGroup:
    """Distinct-prime group with at most ``max_tuples`` index tuples."""
    factors = []
    size = 1
    for _ in range(rng.randint(0, 3)):
        used = [p for p, _ in factors]
        q = rng.choice([p for p in SMALL_PRIMES if p not in used])
        n = rng.randint(1, 3)
        if size * (n + 1) > max_tuples:
            continue
        factors.append((q, n))
        size *= n + 1
    return FiniteAbelianGroup(factors)


def random_ea_table(
    rng, g: FiniteAbelianGroup, max_level: int, max_entry: int = 3
) -> EAlphaTable:
    values = {}
    for alpha in index_tuples(g):
        for k in range(max_level + 1):
            e = rng.randint(0, max_entry)
            if e:
                values[(alpha, k)] = e
    return EAlphaTable(g, max_level, values)
