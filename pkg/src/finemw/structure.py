"""Structure theorems: characteristic ideals, equivariant decompositions,
target ideals, and Selmer-shape validators.

Everything is driven by the growth aggregates (e_n, theta_n) or the full
multiplicity table e_{alpha,k}:

* fine part: one level-n cyclotomic factor per surviving copy, exponent
  e_n - theta_n;
* signed parts: exponent e_n at levels of one parity, e_n - theta_n at the
  other, with x^{e_0} at level zero; their gcd recovers the fine exponents;
* equivariant refinements attach the index tuples, with multiplicities
  e_{alpha,k} - 1 (fine) or e_{alpha,k} - t_k^sign (signed), where t_k^+ is
  1 at odd levels and 0 otherwise, and t_k^- is 1 at positive even levels
  and 0 otherwise.

The validators enforce the constraints a candidate Selmer-shape must satisfy
(distinct repeated-factor levels, parity under the signed theory) and derive
the induced Tate-Shafarevich shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal, Sequence

from .groups import FiniteAbelianGroup, irrep_dim
from .hypotheses import SUPERSINGULAR
from .iwasawa import CharIdeal, char_gcd, char_ideal_from_exponents
from .rank_data import EAlphaTable, GrowthSummary

Sign = Literal["+", "-"]

ORDINARY_SHAPE = "ordinary"
PLUS_SHAPE = "supersingular+"
MINUS_SHAPE = "supersingular-"
_SHAPE_KINDS = (ORDINARY_SHAPE, PLUS_SHAPE, MINUS_SHAPE)


class ReductionTypeError(ValueError):
    """Signed-structure operation invoked outside supersingular reduction."""


def sign_shift(sign: Sign, k: int) -> int:
    """t_k for the given sign: the summand lost at level k.

    For "+": 0 at even levels (including 0), 1 at odd levels.
    For "-": 0 at odd levels and at 0, 1 at positive even levels.
    """
    if sign == "+":
        return 0 if k % 2 == 0 else 1
    if sign == "-":
        return 1 if (k % 2 == 0 and k > 0) else 0
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


# -- Lambda-module structure --------------------------------------------------


@dataclass(frozen=True)
class FineStructure:
    """Characteristic ideal of the dual fine part with its exponent list."""

    char_ideal: CharIdeal
    exponents: tuple[int, ...]

    def to_dict(self) -> dict:
        lam, mu = self.char_ideal.invariants()
        return {
            "char_ideal": self.char_ideal.to_text(),
            "exponents": list(self.exponents),
            "lambda": lam,
            "mu": mu,
        }


def fine_mw_structure(gs: GrowthSummary) -> FineStructure:
    """Fine dual structure: level-n exponent e_n - theta_n for every n."""
    exps = {n: gs.e[n] - gs.theta[n] for n in range(len(gs.e))}
    if any(v < 0 for v in exps.values()):
        raise ValueError("negative exponent: summary is inconsistent")
    ideal = char_ideal_from_exponents(gs.p, 0, exps)
    return FineStructure(ideal, tuple(exps[n] for n in sorted(exps)))


@dataclass(frozen=True)
class PMStructure:
    """Signed characteristic ideals with their per-level exponents."""

    r_plus: tuple[int, ...]
    r_minus: tuple[int, ...]
    char_plus: CharIdeal
    char_minus: CharIdeal
    gcd: CharIdeal

    def to_dict(self) -> dict:
        return {
            "r_plus": list(self.r_plus),
            "r_minus": list(self.r_minus),
            "char_plus": self.char_plus.to_text(),
            "char_minus": self.char_minus.to_text(),
            "gcd": self.gcd.to_text(),
        }


def pm_mw_structure(gs: GrowthSummary, reduction: str = SUPERSINGULAR) -> PMStructure:
    """Signed dual structure under supersingular reduction (a_p = 0).

    Level-0 exponent is e_0 on both sides.  At positive levels the plus side
    keeps e_n at even levels and drops to e_n - theta_n at odd levels; the
    minus side swaps the parities.  The gcd is x^{e_0} times the fine
    exponents at positive levels.
    """
    if reduction != SUPERSINGULAR:
        raise ReductionTypeError(
            f"signed structure requires supersingular reduction, got {reduction!r}"
        )
    levels = range(len(gs.e))
    r_plus = tuple(
        gs.e[n] if (n == 0 or n % 2 == 0) else gs.e[n] - gs.theta[n] for n in levels
    )
    r_minus = tuple(
        gs.e[n] if (n == 0 or n % 2 == 1) else gs.e[n] - gs.theta[n] for n in levels
    )
    char_plus = char_ideal_from_exponents(gs.p, 0, dict(enumerate(r_plus)))
    char_minus = char_ideal_from_exponents(gs.p, 0, dict(enumerate(r_minus)))
    return PMStructure(
        r_plus, r_minus, char_plus, char_minus, char_gcd(char_plus, char_minus)
    )


# -- equivariant refinements --------------------------------------------------


@dataclass(frozen=True)
class EquivariantDecomposition:
    """Multiset of summands (alpha, level, multiplicity), multiplicity >= 1."""

    group: FiniteAbelianGroup
    summands: tuple[tuple[tuple[int, ...], int, int], ...]

    def contraction(self) -> dict[int, int]:
        """Per-level sums of multiplicity * dim(alpha)."""
        out: dict[int, int] = {}
        for alpha, k, mult in self.summands:
            out[k] = out.get(k, 0) + mult * irrep_dim(self.group, alpha)
        return out

    def to_dict(self) -> dict:
        return {
            "summands": [
                {"alpha": list(a), "level": k, "multiplicity": m}
                for a, k, m in self.summands
            ]
        }


def _collect_summands(ea: EAlphaTable, drop) -> EquivariantDecomposition:
    summands = []
    for k in range(ea.max_level + 1):
        for alpha in ea.positive_at(k):
            mult = ea.get(alpha, k) - drop(k)
            if mult > 0:
                summands.append((alpha, k, mult))
    summands.sort(key=lambda s: (s[1], s[0]))
    return EquivariantDecomposition(ea.group, tuple(summands))


def equivariant_fine(ea: EAlphaTable) -> EquivariantDecomposition:
    """Fine equivariant summands: multiplicity e_{alpha,k} - 1 where positive."""
    return _collect_summands(ea, lambda k: 1)


def equivariant_pm(ea: EAlphaTable, sign: Sign) -> EquivariantDecomposition:
    """Signed equivariant summands: multiplicity e_{alpha,k} - t_k^sign."""
    return _collect_summands(ea, lambda k: sign_shift(sign, k))


# -- target ideals ------------------------------------------------------------


def greenberg_rhs(p: int, e: Sequence[int]) -> CharIdeal:
    """Product over jump levels of the level factor to the power e_n - 1."""
    exps = {n: en - 1 for n, en in enumerate(e) if en > 0}
    return char_ideal_from_exponents(p, 0, exps)


def kp_rhs(p: int, e: Sequence[int]) -> CharIdeal:
    """x^{e_0} times the positive-level jump factors to the power e_n - 1."""
    exps = {n: en - 1 for n, en in enumerate(e) if n > 0 and en > 0}
    if e and e[0] > 0:
        exps[0] = e[0]
    return char_ideal_from_exponents(p, 0, exps)


def selmer_gcd(p: int, e: Sequence[int], t: int) -> CharIdeal:
    """x^t times the factors at positive levels with e_n > 1, exponent e_n - 1.

    Requires t >= e_0; equality t = e_0 holds under the extra finiteness
    hypothesis on the signed Tate-Shafarevich invariants.
    """
    e0 = e[0] if e else 0
    if t < e0:
        raise ValueError(f"t = {t} must be >= e_0 = {e0}")
    exps = {n: en - 1 for n, en in enumerate(e) if n > 0 and en > 1}
    if t > 0:
        exps[0] = t
    return char_ideal_from_exponents(p, 0, exps)


def rational_base_summary(p: int, e: Sequence[int]) -> GrowthSummary:
    """Growth summary for a trivial Galois group: theta_n = [e_n > 0]."""
    theta = tuple(1 if en > 0 else 0 for en in e)
    return GrowthSummary(
        p, tuple(e), theta, tuple(en - tn for en, tn in zip(e, theta))
    )


# -- Selmer shape validation --------------------------------------------------


@dataclass(frozen=True)
class GenericFactor:
    """Non-cyclotomic elementary summand: label, total degree, exponent."""

    label: str
    degree: int
    exponent: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generic factor degree must be >= 1, got {self.degree}")
        if self.exponent < 1:
            raise ValueError(f"generic factor exponent must be >= 1, got {self.exponent}")


@dataclass(frozen=True)
class SelmerShape:
    """Candidate elementary decomposition of a dual Selmer group.

    ``cyclo_multi`` lists (level a_j, exponent f_j) with f_j >= 2;
    ``cyclo_simple`` lists levels b_k occurring with exponent one; the
    generic part is opaque apart from degree bookkeeping.
    """

    reduction: str
    generic: tuple[GenericFactor, ...] = ()
    cyclo_multi: tuple[tuple[int, int], ...] = ()
    cyclo_simple: tuple[int, ...] = ()

    def __post_init__(self):
        if self.reduction not in _SHAPE_KINDS:
            raise ValueError(
                f"reduction must be one of {_SHAPE_KINDS}, got {self.reduction!r}"
            )
        for a, f in self.cyclo_multi:
            if a < 0:
                raise ValueError(f"cyclotomic level {a} must be >= 0")
            if f < 2:
                raise ValueError(f"repeated factor at level {a} needs exponent >= 2")
        if any(b < 0 for b in self.cyclo_simple):
            raise ValueError("simple factor levels must be >= 0")

    def fine_exponents(self) -> dict[int, int]:
        """Level exponents of the induced fine part: (f_j - 1) plus simples."""
        out: dict[int, int] = {}
        for a, f in self.cyclo_multi:
            out[a] = out.get(a, 0) + (f - 1)
        for b in self.cyclo_simple:
            out[b] = out.get(b, 0) + 1
        return out


_SHAPE_KEYS = {"reduction", "generic", "cyclo_multi", "cyclo_simple"}


def parse_shape(document: str) -> SelmerShape:
    """Parse a shape document (JSON text).

    Schema:
        {"reduction": "ordinary" | "supersingular+" | "supersingular-",
         "generic": [["label", degree, exponent], ...],
         "cyclo_multi": [[level, exponent >= 2], ...],
         "cyclo_simple": [level, ...]}

    The generic and cyclotomic lists default to empty; unknown fields are
    rejected.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ValueError(f"shape document is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ValueError("shape document must be an object")
    unknown = set(raw) - _SHAPE_KEYS
    if unknown:
        raise ValueError(f"unknown shape fields {sorted(unknown)}")
    if "reduction" not in raw:
        raise ValueError("shape document needs a 'reduction' field")
    generic = []
    for item in raw.get("generic", []):
        if not (isinstance(item, list) and len(item) == 3 and isinstance(item[0], str)):
            raise ValueError(f"malformed generic factor {item!r}")
        generic.append(GenericFactor(item[0], int(item[1]), int(item[2])))
    multi = []
    for item in raw.get("cyclo_multi", []):
        if not (isinstance(item, list) and len(item) == 2):
            raise ValueError(f"malformed repeated factor {item!r}")
        multi.append((int(item[0]), int(item[1])))
    simple = [int(b) for b in raw.get("cyclo_simple", [])]
    return SelmerShape(
        raw["reduction"], tuple(generic), tuple(multi), tuple(simple)
    )


@dataclass(frozen=True)
class ConstraintVerdict:
    name: str
    passed: bool
    witness: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class ShaShape:
    """Derived dual Tate-Shafarevich shape: generic part carried over,
    cyclotomic exponents dropped by one."""

    generic: tuple[GenericFactor, ...]
    cyclo: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "generic": [
                {"label": g.label, "degree": g.degree, "exponent": g.exponent}
                for g in self.generic
            ],
            "cyclo": [list(c) for c in self.cyclo],
        }


@dataclass(frozen=True)
class ValidationReport:
    shape: SelmerShape
    verdicts: tuple[ConstraintVerdict, ...]
    sha_shape: ShaShape
    cyclic: bool
    growth_checked: bool = False

    @property
    def accepted(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "sha_shape": self.sha_shape.to_dict(),
            "cyclic": self.cyclic,
            "growth_checked": self.growth_checked,
        }


def validate_selmer_shape(
    shape: SelmerShape, gs: GrowthSummary | None = None
) -> ValidationReport:
    """Check the structural constraints on a candidate Selmer shape.

    Enforced for every reduction type: the levels carrying a repeated factor
    are pairwise distinct.  Under the signed theory the repeated-factor
    levels must be even (plus) or odd-or-zero (minus).  The derived dual
    Tate-Shafarevich shape keeps the generic part and drops each repeated
    cyclotomic exponent by one; its cyclotomic part is cyclic exactly when
    no level repeats.  When a growth summary is supplied, the shape's
    induced fine exponents must match e_n - theta_n levelwise.
    """
    verdicts = []

    levels = [a for a, _ in shape.cyclo_multi]
    dupes = sorted({a for a in levels if levels.count(a) > 1})
    verdicts.append(
        ConstraintVerdict(
            "distinct_repeated_levels",
            not dupes,
            f"duplicate levels {dupes}" if dupes else "all repeated levels distinct",
        )
    )

    if shape.reduction == PLUS_SHAPE:
        bad = sorted(a for a in levels if a % 2 == 1)
        verdicts.append(
            ConstraintVerdict(
                "plus_levels_even",
                not bad,
                f"odd levels {bad} under plus" if bad else "all repeated levels even",
            )
        )
    elif shape.reduction == MINUS_SHAPE:
        bad = sorted(a for a in levels if a % 2 == 0 and a != 0)
        verdicts.append(
            ConstraintVerdict(
                "minus_levels_odd_or_zero",
                not bad,
                f"positive even levels {bad} under minus"
                if bad
                else "all repeated levels odd or zero",
            )
        )

    sha = ShaShape(
        shape.generic,
        tuple(sorted((a, f - 1) for a, f in shape.cyclo_multi)),
    )
    cyclic = not dupes

    growth_checked = False
    if gs is not None:
        growth_checked = True
        want = {n: gs.e[n] - gs.theta[n] for n in range(len(gs.e))}
        got = shape.fine_exponents()
        beyond = sorted(n for n in got if n > gs.max_level)
        mismatches = sorted(
            n
            for n in set(want) | set(got)
            if n <= gs.max_level and want.get(n, 0) != got.get(n, 0)
        )
        ok = not beyond and not mismatches
        detail = []
        if beyond:
            detail.append(f"levels {beyond} beyond the summary range")
        if mismatches:
            detail.append(
                "level exponent mismatches at "
                + ", ".join(
                    f"{n} (shape {got.get(n, 0)}, growth {want.get(n, 0)})"
                    for n in mismatches
                )
            )
        verdicts.append(
            ConstraintVerdict(
                "fine_part_matches_growth",
                ok,
                "; ".join(detail) if detail else "fine exponents agree",
            )
        )

    return ValidationReport(shape, tuple(verdicts), sha, cyclic, growth_checked)
