"""Exact integer linear algebra: rank, nullity, and integer kernel bases.

Forward elimination is fraction-free (Bareiss), so every intermediate entry
is an integer minor of the input.  Two interchangeable backends compute the
echelon form: a compiled 64-bit core (finemw._ffelim) and a pure-Python
arbitrary-precision fallback.  The compiled core bails out with OverflowError
on any entry beyond 64 bits and the dispatcher reruns the matrix in pure
mode, so results never depend on the backend.

Set FINEMW_PURE=1 (or call set_backend("pure")) to disable the compiled core.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

try:
    from . import _ffelim
except ImportError:  # pragma: no cover - build without the extension
    _ffelim = None

_BACKEND = "auto"
if os.environ.get("FINEMW_PURE"):
    _BACKEND = "pure"


def set_backend(name: str) -> None:
    """Select "fast", "pure", or "auto" (fast when compiled, else pure)."""
    global _BACKEND
    if name not in ("fast", "pure", "auto"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "fast" and _ffelim is None:
        raise RuntimeError("compiled backend is not available")
    _BACKEND = name


def active_backend() -> str:
    if _BACKEND == "pure" or (_BACKEND == "auto" and _ffelim is None):
        return "pure"
    return "fast"


@dataclass(frozen=True)
class EchelonForm:
    rank: int
    pivots: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]


def _echelon_pure(rows: Sequence[Sequence[int]], ncols: int):
    m = [list(r) for r in rows]
    nrows = len(m)
    rank = 0
    prev = 1
    pivots = []
    col = 0
    while col < ncols and rank < nrows:
        piv = -1
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv < 0:
            col += 1
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        pv = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col, ncols):
                    row[c] = (row[c] * pv - f * prow[c]) // prev
            elif pv != prev:
                for c in range(col, ncols):
                    row[c] = row[c] * pv // prev
        prev = pv
        pivots.append(col)
        rank += 1
        col += 1
    return rank, pivots, m[:rank]


def echelon(rows: Sequence[Sequence[int]], ncols: int) -> EchelonForm:
    """Fraction-free row echelon form of an integer matrix."""
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    if active_backend() == "fast":
        try:
            rank, pivots, ech = _ffelim.echelon_i64(rows, ncols)
        except OverflowError:
            rank, pivots, ech = _echelon_pure(rows, ncols)
    else:
        rank, pivots, ech = _echelon_pure(rows, ncols)
    return EchelonForm(rank, tuple(pivots), tuple(tuple(r) for r in ech))


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return echelon(rows, ncols).rank


def nullity(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return ncols - echelon(rows, ncols).rank


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer basis of the right kernel {v : M v = 0}.

    One basis vector per free column, by exact back-substitution; each vector
    is primitive (content 1) with a positive entry at its free coordinate.
    Deterministic for a fixed input.
    """
    form = echelon(rows, ncols)
    pivset = set(form.pivots)
    free_cols = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r in range(form.rank - 1, -1, -1):
            row = form.rows[r]
            pc = form.pivots[r]
            s = Fraction(0)
            for c in range(pc + 1, ncols):
                if row[c] and v[c]:
                    s += row[c] * v[c]
            v[pc] = -s / row[pc]
        den = 1
        for x in v:
            den = lcm(den, x.denominator)
        iv = [int(x * den) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, x)
        if g > 1:
            iv = [x // g for x in iv]
        basis.append(iv)
    return basis


def solve_exact_multi(
    columns: Sequence[Sequence[int]], targets: Sequence[Sequence[int]]
) -> list[list[Fraction]]:
    """Rational solutions x with sum_j x[j] * columns[j] = target, per target.

    The columns must be linearly independent and every target must lie in
    their span; both conditions are verified.  One elimination pass serves
    all targets.
    """
    ncols = len(columns)
    ntargets = len(targets)
    nrows = len(targets[0]) if targets else len(columns[0])
    width = ncols + ntargets
    aug = [
        [Fraction(columns[c][r]) for c in range(ncols)]
        + [Fraction(t[r]) for t in targets]
        for r in range(nrows)
    ]
    rank_ = 0
    piv_of_col = []
    for col in range(ncols):
        piv = None
        for r in range(rank_, nrows):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("columns are linearly dependent")
        aug[rank_], aug[piv] = aug[piv], aug[rank_]
        pr = aug[rank_]
        inv = 1 / pr[col]
        aug[rank_] = [x * inv for x in pr]
        for r in range(nrows):
            if r != rank_ and aug[r][col]:
                f = aug[r][col]
                row = aug[r]
                prow = aug[rank_]
                aug[r] = [a - f * b for a, b in zip(row, prow)]
        piv_of_col.append(rank_)
        rank_ += 1
    for r in range(rank_, nrows):
        for t in range(ncols, width):
            if aug[r][t] != 0:
                raise ValueError("target is outside the column span")
    return [
        [aug[piv_of_col[c]][ncols + t] for c in range(ncols)]
        for t in range(ntargets)
    ]


def solve_exact(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction]:
    """Unique rational solution of sum_j x_j * columns[j] = target."""
    return solve_exact_multi(columns, [target])[0]
