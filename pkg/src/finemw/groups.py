"""Finite abelian groups and their rational irreducible representations.

A group is an ordered product of prime-power cyclic factors.  Its rational
irreducible representations are indexed by tuples alpha with 0 <= alpha_i <=
n_i under the componentwise partial order; the representation at alpha has
dimension prod_i phi(p_i^alpha_i).  The closed-form operations here assume
pairwise distinct factor primes, where every indexed representation really is
irreducible; repeated primes require an explicit override and are probed by
the matrix oracle in finemw.group_algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .numbertheory import is_prime, prime_power_phi


class RepeatedPrimeError(ValueError):
    """A factor prime appears twice without the explicit override."""


class FiniteAbelianGroup:
    """Ordered product of cyclic factors Z/p_i^{n_i}Z, in input order."""

    __slots__ = ("factors",)

    def __init__(self, factors, *, allow_repeated_primes: bool = False):
        factors = tuple((int(p), int(n)) for p, n in factors)
        for p, n in factors:
            if not is_prime(p):
                raise ValueError(f"factor prime {p} is not prime")
            if n < 1:
                raise ValueError(f"factor exponent {n} must be >= 1")
        primes = [p for p, _ in factors]
        if len(set(primes)) != len(primes) and not allow_repeated_primes:
            raise RepeatedPrimeError(
                f"repeated factor primes in {factors}; pass "
                "allow_repeated_primes=True to model them anyway"
            )
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAbelianGroup is immutable")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        out = 1
        for p, n in self.factors:
            out *= p**n
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for p, n in self.factors:
            out = lcm(out, p**n)
        return out

    @property
    def distinct_support(self) -> bool:
        primes = [p for p, _ in self.factors]
        return len(set(primes)) == len(primes)

    def is_trivial(self) -> bool:
        return not self.factors

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteAbelianGroup):
            return self.factors == other.factors
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        body = " x ".join(f"Z/{p}^{n}" for p, n in self.factors)
        return f"FiniteAbelianGroup({body or 'trivial'})"


@dataclass(frozen=True)
class IrrepDescriptor:
    """A rational irreducible representation named by its index tuple."""

    tuple: tuple[int, ...]
    dimension: int


def validate_tuple(g: FiniteAbelianGroup, a) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != g.rank:
        raise ValueError(f"tuple {a} has length {len(a)}, expected {g.rank}")
    for (p, n), ai in zip(g.factors, a):
        if not 0 <= ai <= n:
            raise ValueError(f"tuple entry {ai} outside [0, {n}] for factor {p}^{n}")
    return a


def index_tuples(g: FiniteAbelianGroup) -> list[tuple[int, ...]]:
    """All index tuples in lexicographic order; prod (n_i + 1) of them."""
    ranges = [range(n + 1) for _, n in g.factors]
    return list(itertools.product(*ranges))


def tuple_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Componentwise partial order."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {a} vs {b}")
    return all(x <= y for x, y in zip(a, b))


def irrep_dim(g: FiniteAbelianGroup, a) -> int:
    """prod_i phi(p_i^{a_i}), the dimension of the representation at a."""
    a = validate_tuple(g, a)
    out = 1
    for (p, _), ai in zip(g.factors, a):
        out *= prime_power_phi(p, ai)
    return out


def irrep_descriptor(g: FiniteAbelianGroup, a) -> IrrepDescriptor:
    a = validate_tuple(g, a)
    return IrrepDescriptor(a, irrep_dim(g, a))


def fixed_subspace_dim(g: FiniteAbelianGroup, beta, alpha) -> int:
    """Dimension of the alpha-fixed part of the representation at beta.

    The subgroup cut out by alpha (generated by the p_i^{alpha_i}-th powers)
    acts trivially on the beta representation exactly when beta <= alpha,
    and without nonzero fixed vectors otherwise.
    """
    beta = validate_tuple(g, beta)
    alpha = validate_tuple(g, alpha)
    return irrep_dim(g, beta) if tuple_leq(beta, alpha) else 0


def fixed_field_degree(g: FiniteAbelianGroup, alpha) -> int:
    """prod_i p_i^{alpha_i}: the index of the alpha-subgroup."""
    alpha = validate_tuple(g, alpha)
    out = 1
    for (p, _), ai in zip(g.factors, alpha):
        out *= p**ai
    return out
