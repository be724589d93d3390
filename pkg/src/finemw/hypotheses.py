"""Standing-hypothesis checks: non-splitting, ramification, reduction type.

The structure theorems require an odd working prime p, a base field K whose
Galois group has exponent m such that p does not split in the m-th cyclotomic
field ("the star condition"), K disjoint from the cyclotomic tower of the
rationals, and (for the signed theory) p unramified in K with a_p = 0.  All
of these reduce to elementary congruence computations on m and the conductor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .groups import FiniteAbelianGroup
from .numbertheory import (
    euler_phi,
    hasse_bound_ok,
    is_prime,
    multiplicative_order,
)

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"
UNSUPPORTED = "unsupported"


class HasseBoundError(ValueError):
    """An a_p value violates |a_p| <= 2*sqrt(p)."""


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0:
        raise ValueError(f"the working prime must be odd, got {p}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def group_exponent(g: FiniteAbelianGroup) -> int:
    """lcm of the cyclic factor orders; 1 for the trivial group."""
    out = 1
    for p, n in g.factors:
        out = lcm(out, p**n)
    return out


@dataclass(frozen=True)
class StarResult:
    """Verdict of the non-splitting condition, with its witness data.

    Writing m = p^r * m' with p coprime to m', the condition holds exactly
    when p generates the units modulo m'; m' in {1, 2} passes vacuously.
    """

    passed: bool
    p: int
    m: int
    r: int
    m_prime: int
    order: int
    totient: int

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "p": self.p,
            "m": self.m,
            "r": self.r,
            "m_prime": self.m_prime,
            "order": self.order,
            "totient": self.totient,
        }


def star_check(g: FiniteAbelianGroup, p: int) -> StarResult:
    """Does p stay non-split in the cyclotomic field of the group exponent?"""
    _require_odd_prime(p)
    m = group_exponent(g)
    r = 0
    m_prime = m
    while m_prime % p == 0:
        m_prime //= p
        r += 1
    if m_prime <= 2:
        return StarResult(True, p, m, r, m_prime, 1, 1)
    order = multiplicative_order(p, m_prime)
    totient = euler_phi(m_prime)
    return StarResult(order == totient, p, m, r, m_prime, order, totient)


@dataclass(frozen=True)
class FieldDescriptor:
    """Abelian base field presented by its Galois group and conductor."""

    group: FiniteAbelianGroup
    conductor: int

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {self.conductor}")
        exponent = group_exponent(self.group)
        if euler_phi(self.conductor) % exponent != 0:
            raise ValueError(
                f"group exponent {exponent} does not divide "
                f"phi({self.conductor}) = {euler_phi(self.conductor)}"
            )


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    witness: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class HypothesisReport:
    checks: tuple[HypothesisCheck, ...] = field(default=())

    def check(self, name: str) -> HypothesisCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def field_hypotheses(k: FieldDescriptor, p: int) -> HypothesisReport:
    """Ramification and tower-disjointness verdicts from the conductor.

    p is unramified in K exactly when p does not divide the conductor; K
    meets the cyclotomic tower of the rationals nontrivially exactly when
    p^2 divides the conductor (the first tower layer sits inside the p^2-th
    cyclotomic field).
    """
    _require_odd_prime(p)
    v = _conductor_valuation(k.conductor, p)
    witness = {"p": p, "conductor": k.conductor, "valuation": v}
    return HypothesisReport(
        (
            HypothesisCheck("unramified", v == 0, witness),
            HypothesisCheck("disjoint_from_cyclotomic_tower", v <= 1, witness),
        )
    )


def _conductor_valuation(conductor: int, p: int) -> int:
    v = 0
    while conductor % p == 0:
        conductor //= p
        v += 1
    return v


def reduction_type(ap: int, p: int) -> str:
    """Trichotomy at a good prime from a_p.

    "ordinary" when p does not divide a_p; "supersingular" when a_p = 0 (the
    signed theory applies); "unsupported" when p divides a nonzero a_p, which
    the signed constructions here do not cover.
    """
    _require_odd_prime(p)
    if not hasse_bound_ok(ap, p):
        raise HasseBoundError(f"|a_p| = {abs(ap)} exceeds 2*sqrt({p})")
    if ap % p != 0:
        return ORDINARY
    if ap == 0:
        return SUPERSINGULAR
    return UNSUPPORTED


@dataclass(frozen=True)
class CurveData:
    """Elliptic curve attributes needed by the hypothesis layer.

    ``ap`` maps a prime to the trace of Frobenius at that prime.  The
    conductor and rank are optional; ``source`` records where the data came
    from (user input, fixture, cache, or network).
    """

    label: str
    ap: dict[int, int]
    rank: int | None = None
    conductor: int | None = None
    source: str = "user"

    def __post_init__(self):
        for q, a in self.ap.items():
            if not is_prime(q):
                raise ValueError(f"a_p key {q} is not prime")
            if not hasse_bound_ok(a, q):
                raise HasseBoundError(f"a_{q} = {a} violates the Hasse bound")

    def ap_at(self, p: int) -> int:
        if p not in self.ap:
            raise KeyError(f"a_p unknown at {p} for {self.label}")
        return self.ap[p]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ap": {str(q): a for q, a in sorted(self.ap.items())},
            "rank": self.rank,
            "conductor": self.conductor,
            "source": self.source,
        }
