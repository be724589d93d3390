"""Exact structure invariants of fine and signed Mordell-Weil growth.

The package turns finite-group data and rank-growth tables into
characteristic ideals and module decompositions over the one-variable
Iwasawa algebra, all in exact integer arithmetic, and cross-checks its
closed forms against brute-force linear-algebra oracles.
"""

from .groups import FiniteAbelianGroup
from .hypotheses import CurveData, FieldDescriptor
from .iwasawa import CharIdeal, char_gcd, cyclotomic_poly, omega_poly
from .polyarith import IntPoly
from .rank_data import (
    EAlphaTable,
    GrowthSummary,
    ProblemInstance,
    RankTable,
    growth_summary,
    parse_input,
    solve_e_alpha,
    synthesize_rank_table,
)
from .structure import (
    EquivariantDecomposition,
    PMStructure,
    SelmerShape,
    fine_mw_structure,
    pm_mw_structure,
)

__version__ = "0.1.0"

__all__ = [
    "CharIdeal",
    "CurveData",
    "EAlphaTable",
    "EquivariantDecomposition",
    "FieldDescriptor",
    "FiniteAbelianGroup",
    "GrowthSummary",
    "IntPoly",
    "PMStructure",
    "ProblemInstance",
    "RankTable",
    "SelmerShape",
    "char_gcd",
    "cyclotomic_poly",
    "fine_mw_structure",
    "growth_summary",
    "omega_poly",
    "parse_input",
    "pm_mw_structure",
    "solve_e_alpha",
    "synthesize_rank_table",
    "__version__",
]
