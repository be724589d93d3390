"""Rank-growth tables and the multiplicity solver.

A rank table records, for every index tuple alpha and every tower level n,
the Mordell-Weil rank over the fixed field of the alpha-subgroup at level n.
The solver inverts that data into the multiplicities e_{alpha,k}: how many
copies of (representation at alpha) tensor (level-k cyclotomic piece) occur
in the rational point group at level k.  The inversion is exact; any inexact
division or negative multiplicity means the input cannot come from a module
of the modeled shape and is reported with its location.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .groups import (
    FiniteAbelianGroup,
    index_tuples,
    irrep_dim,
    tuple_leq,
    validate_tuple,
)
from .hypotheses import CurveData, FieldDescriptor
from .numbertheory import is_prime, prime_power_phi


class InputError(ValueError):
    """Invalid problem document; ``location`` names the offending field."""

    kind = "input"

    def __init__(self, message: str, location: str = ""):
        super().__init__(message if not location else f"{location}: {message}")
        self.location = location


class SchemaError(InputError):
    kind = "schema"


class MissingTupleRowError(InputError):
    kind = "missing-tuple-row"


class NonMonotoneRanksError(InputError):
    kind = "non-monotone-ranks"


class HypothesisFieldError(InputError):
    kind = "hypothesis-field"


class InconsistentRankData(ValueError):
    """Rank data incompatible with the structured growth model."""

    def __init__(self, alpha: tuple[int, ...], level: int, reason: str):
        super().__init__(f"at alpha={alpha}, level={level}: {reason}")
        self.alpha = alpha
        self.level = level
        self.reason = reason


@dataclass(frozen=True)
class RankTable:
    """Ranks over the alpha-fixed fields, per tower level."""

    group: FiniteAbelianGroup
    max_level: int
    ranks: Mapping[tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        if self.max_level < 0:
            raise InputError("max_level must be >= 0", "max_level")
        tuples = index_tuples(self.group)
        clean = {}
        for alpha in tuples:
            if alpha not in self.ranks:
                raise MissingTupleRowError(
                    f"missing tuple row for alpha={alpha}", "ranks"
                )
            row = tuple(int(x) for x in self.ranks[alpha])
            if len(row) != self.max_level + 1:
                raise SchemaError(
                    f"row for {alpha} has length {len(row)}, expected "
                    f"{self.max_level + 1}",
                    "ranks",
                )
            if any(x < 0 for x in row):
                raise SchemaError(f"negative rank in row {alpha}", "ranks")
            if any(a > b for a, b in zip(row, row[1:])):
                raise NonMonotoneRanksError(
                    f"ranks decrease along the tower in row {alpha}", "ranks"
                )
            clean[alpha] = row
        extras = set(self.ranks) - set(tuples)
        if extras:
            raise SchemaError(f"unexpected tuple rows {sorted(extras)}", "ranks")
        for beta in tuples:
            for alpha in tuples:
                if tuple_leq(beta, alpha):
                    for n in range(self.max_level + 1):
                        if clean[beta][n] > clean[alpha][n]:
                            raise NonMonotoneRanksError(
                                f"rank at {beta} exceeds rank at {alpha} "
                                f"(level {n}) despite field containment",
                                "ranks",
                            )
        object.__setattr__(self, "ranks", clean)

    def rank_at(self, alpha, n: int) -> int:
        alpha = validate_tuple(self.group, alpha)
        if n == -1:
            return 0
        return self.ranks[alpha][n]


@dataclass(frozen=True)
class EAlphaTable:
    """Solved multiplicities e_{alpha,k} >= 0."""

    group: FiniteAbelianGroup
    max_level: int
    values: Mapping[tuple[tuple[int, ...], int], int]

    def __post_init__(self):
        clean = {}
        for (alpha, k), e in self.values.items():
            alpha = validate_tuple(self.group, alpha)
            if not 0 <= k <= self.max_level:
                raise ValueError(f"level {k} outside 0..{self.max_level}")
            if e < 0:
                raise ValueError(f"negative multiplicity at ({alpha}, {k})")
            if e > 0:
                clean[(alpha, k)] = int(e)
        object.__setattr__(self, "values", clean)

    def get(self, alpha, k: int) -> int:
        return self.values.get((tuple(alpha), k), 0)

    def positive_at(self, k: int) -> list[tuple[int, ...]]:
        """Index tuples with a positive multiplicity at level k, in lex order."""
        return [a for a in index_tuples(self.group) if self.get(a, k) > 0]

    def to_dict(self) -> dict:
        return {
            f"{','.join(map(str, a))}|{k}": e
            for (a, k), e in sorted(self.values.items())
        }


@dataclass(frozen=True)
class GrowthSummary:
    """Per-level aggregates: rank jumps e_n, image growth theta_n, s_n.

    e_n is the normalized rank jump at level n; theta_n sums the dimensions
    of the representations that actually jump there; s_n = e_n - theta_n
    counts the level-n cyclotomic copies surviving in the fine part.
    """

    p: int
    e: tuple[int, ...]
    theta: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.e) == len(self.theta) == len(self.s)):
            raise ValueError("e, theta, s must have equal length")

    @property
    def max_level(self) -> int:
        return len(self.e) - 1

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e": list(self.e),
            "theta": list(self.theta),
            "s": list(self.s),
        }


def solve_e_alpha(table: RankTable, p: int) -> EAlphaTable:
    """Invert a rank table into multiplicities, level by level.

    At level n and tuple alpha (tuples in lexicographic order, a linear
    extension of the componentwise order):

        e_{alpha,n} = ( (rank jump at alpha, level n) / phi(p^n)
                        - sum over beta < alpha of e_{beta,n} * dim(beta) )
                      / dim(alpha)

    with phi(p^0) = 1 and level -1 ranks read as 0.  Every division must be
    exact and every result nonnegative; the first violation in iteration
    order raises InconsistentRankData naming (alpha, n).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    g = table.group
    tuples = index_tuples(g)
    dims = {a: irrep_dim(g, a) for a in tuples}
    values: dict[tuple[tuple[int, ...], int], int] = {}
    for n in range(table.max_level + 1):
        phi_n = prime_power_phi(p, n)
        for alpha in tuples:
            jump = table.rank_at(alpha, n) - table.rank_at(alpha, n - 1)
            if jump % phi_n != 0:
                raise InconsistentRankData(
                    alpha, n, f"rank jump {jump} not divisible by phi(p^n)={phi_n}"
                )
            total = jump // phi_n
            for beta in tuples:
                if beta != alpha and tuple_leq(beta, alpha):
                    total -= values.get((beta, n), 0) * dims[beta]
            if total % dims[alpha] != 0:
                raise InconsistentRankData(
                    alpha,
                    n,
                    f"residual {total} not divisible by dim={dims[alpha]}",
                )
            e = total // dims[alpha]
            if e < 0:
                raise InconsistentRankData(alpha, n, f"negative multiplicity {e}")
            if e:
                values[(alpha, n)] = e
    return EAlphaTable(g, table.max_level, values)


def synthesize_rank_table(ea: EAlphaTable, p: int) -> RankTable:
    """The unique rank table whose solved multiplicities are ``ea``.

    rank(alpha, n) = sum over beta <= alpha, k <= n of
    e_{beta,k} * dim(beta) * phi(p^k).
    """
    g = ea.group
    tuples = index_tuples(g)
    dims = {a: irrep_dim(g, a) for a in tuples}
    ranks = {}
    for alpha in tuples:
        below = [b for b in tuples if tuple_leq(b, alpha)]
        row = []
        acc = 0
        for n in range(ea.max_level + 1):
            phi_n = prime_power_phi(p, n)
            acc += sum(ea.get(b, n) * dims[b] for b in below) * phi_n
            row.append(acc)
        ranks[alpha] = tuple(row)
    return RankTable(g, ea.max_level, ranks)


def growth_summary(ea: EAlphaTable, p: int) -> GrowthSummary:
    """Aggregate the multiplicities into (e_n, theta_n, s_n)."""
    g = ea.group
    dims = {a: irrep_dim(g, a) for a in index_tuples(g)}
    e, theta, s = [], [], []
    for n in range(ea.max_level + 1):
        positive = ea.positive_at(n)
        en = sum(ea.get(a, n) * dims[a] for a in positive)
        tn = sum(dims[a] for a in positive)
        if en - tn < 0:
            raise InconsistentRankData(
                positive[0] if positive else (), n, f"s_{n} = {en - tn} < 0"
            )
        e.append(en)
        theta.append(tn)
        s.append(en - tn)
    return GrowthSummary(p, tuple(e), tuple(theta), tuple(s))


# -- problem documents --------------------------------------------------------


@dataclass(frozen=True)
class ProblemInstance:
    """Fully validated input: prime, field data, optional curve, rank table."""

    p: int
    group: FiniteAbelianGroup
    conductor: int
    curve: CurveData | None
    table: RankTable
    assume_fine_sha_finite: bool = True

    @property
    def max_level(self) -> int:
        return self.table.max_level

    @property
    def field(self) -> FieldDescriptor:
        return FieldDescriptor(self.group, self.conductor)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "group": [list(f) for f in self.group.factors],
            "conductor": self.conductor,
            "curve": self.curve.to_dict() if self.curve else None,
            "max_level": self.max_level,
            "assume_fine_sha_finite": self.assume_fine_sha_finite,
        }


_TOP_KEYS = {
    "p",
    "group",
    "conductor",
    "curve",
    "max_level",
    "ranks",
    "assume_fine_sha_finite",
}
_CURVE_KEYS = {"label", "ap"}


def _tuple_key(key: str, length: int) -> tuple[int, ...]:
    if key == "":
        parts: list[int] = []
    else:
        try:
            parts = [int(x) for x in key.split(",")]
        except ValueError:
            raise SchemaError(f"malformed tuple key {key!r}", "ranks") from None
    if len(parts) != length:
        raise SchemaError(
            f"tuple key {key!r} has {len(parts)} entries, expected {length}",
            "ranks",
        )
    return tuple(parts)


def parse_input(document: str, *, allow_repeated_primes: bool = False) -> ProblemInstance:
    """Parse and validate a problem document (JSON text).

    Schema:
        {"p": 3, "group": [[2,1]], "conductor": 20,
         "curve": {"label": "...", "ap": 0}, "max_level": 2,
         "ranks": {"0": [0,0,0], "1": [1,3,3]},
         "assume_fine_sha_finite": true}

    Rank keys are comma-joined tuple entries ("" for the trivial group);
    unknown fields are rejected.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}", "document") from None
    if not isinstance(raw, dict):
        raise SchemaError("top level must be an object", "document")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}", "document")
    for key in ("p", "group", "conductor", "max_level", "ranks"):
        if key not in raw:
            raise SchemaError(f"missing required field {key!r}", "document")

    p = raw["p"]
    if not isinstance(p, int) or not is_prime(p) or p == 2:
        raise HypothesisFieldError(f"p must be an odd prime, got {p!r}", "p")

    if not isinstance(raw["group"], list) or not all(
        isinstance(f, list) and len(f) == 2 and all(isinstance(x, int) for x in f)
        for f in raw["group"]
    ):
        raise SchemaError("group must be a list of [prime, exponent] pairs", "group")
    try:
        group = FiniteAbelianGroup(
            raw["group"], allow_repeated_primes=allow_repeated_primes
        )
    except ValueError as exc:
        raise HypothesisFieldError(str(exc), "group") from None

    conductor = raw["conductor"]
    if not isinstance(conductor, int) or conductor < 1:
        raise SchemaError("conductor must be a positive integer", "conductor")
    try:
        FieldDescriptor(group, conductor)
    except ValueError as exc:
        raise HypothesisFieldError(str(exc), "conductor") from None

    max_level = raw["max_level"]
    if not isinstance(max_level, int) or max_level < 0:
        raise SchemaError("max_level must be a nonnegative integer", "max_level")

    curve = None
    if raw.get("curve") is not None:
        cdoc = raw["curve"]
        if not isinstance(cdoc, dict) or set(cdoc) != _CURVE_KEYS:
            raise SchemaError(
                "curve must be an object with exactly 'label' and 'ap'", "curve"
            )
        if not isinstance(cdoc["label"], str) or not isinstance(cdoc["ap"], int):
            raise SchemaError("curve label must be text and ap an integer", "curve")
        try:
            curve = CurveData(label=cdoc["label"], ap={p: cdoc["ap"]})
        except ValueError as exc:
            raise HypothesisFieldError(str(exc), "curve.ap") from None

    ranks_doc = raw["ranks"]
    if not isinstance(ranks_doc, dict):
        raise SchemaError("ranks must be an object", "ranks")
    ranks = {}
    for key, row in ranks_doc.items():
        if not isinstance(row, list) or not all(isinstance(x, int) for x in row):
            raise SchemaError(f"rank row {key!r} must be a list of integers", "ranks")
        ranks[_tuple_key(key, group.rank)] = tuple(row)
    table = RankTable(group, max_level, ranks)

    flag = raw.get("assume_fine_sha_finite", True)
    if not isinstance(flag, bool):
        raise SchemaError("assume_fine_sha_finite must be boolean", "document")

    return ProblemInstance(p, group, conductor, curve, table, flag)
