"""Brute-force rational group-algebra oracle.

The model realizes the regular representation of Q[G] on the |G| group
elements; each cyclic factor's generator becomes an explicit permutation.
Isotypic components are cut out as exact kernels of the per-factor minimal
polynomial actions, and fixed subspaces as kernels of stacked
(generator - identity) blocks restricted to those components.  Nothing here
uses the closed-form dimension formulas, so agreement with finemw.groups is
a genuine cross-check.

The reducibility probe computes the commutant of the group action on each
component by exact linear algebra and then decides whether that commutative
algebra is a field, via the minimal polynomial of a primitive element.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import sympy

from . import linalg
from .groups import FiniteAbelianGroup, index_tuples, irrep_dim, validate_tuple


class RepeatedPrimeSupportError(ValueError):
    """Oracle invoked on a repeated-prime group without the override."""


class GroupAlgebraModel:
    """Permutation model of the regular representation of Q[G].

    ``generator_perms[i][j]`` is the index of sigma_i * (element j); every
    permutation has order p_i^{n_i} and the permutations commute.
    """

    __slots__ = ("group", "elements", "generator_perms", "_isotypic_cache", "_lock")

    def __init__(self, group: FiniteAbelianGroup, generator_perms):
        self.group = group
        ranges = [range(p**n) for p, n in group.factors]
        self.elements = list(itertools.product(*ranges))
        self.generator_perms = tuple(tuple(p) for p in generator_perms)
        # memo for isotypic bases; guarded so concurrent readers stay safe
        self._isotypic_cache: dict[tuple[int, ...], list[list[int]]] = {}
        self._lock = threading.Lock()
        self._validate()

    def _validate(self):
        order = self.group.order
        if len(self.elements) != order:
            raise AssertionError("element count mismatch")
        for (p, n), perm in zip(self.group.factors, self.generator_perms):
            if sorted(perm) != list(range(order)):
                raise ValueError("generator action is not a permutation")
            if _perm_order(perm) != p**n:
                raise ValueError(f"generator action must have order {p}^{n}")
        for pa, pb in itertools.combinations(self.generator_perms, 2):
            if any(pa[pb[j]] != pb[pa[j]] for j in range(order)):
                raise ValueError("generator actions must commute")

    @property
    def dimension(self) -> int:
        return self.group.order


def _perm_order(perm) -> int:
    n = len(perm)
    seen = [False] * n
    out = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out = lcm(out, length)
    return out


def build_group_algebra_model(
    g: FiniteAbelianGroup, *, allow_repeated_primes: bool = False
) -> GroupAlgebraModel:
    """Model the regular representation; distinct factor primes by default."""
    if not g.distinct_support and not allow_repeated_primes:
        raise RepeatedPrimeSupportError(
            "group has repeated factor primes; the indexed representations "
            "need not be irreducible (pass allow_repeated_primes=True to "
            "build the model anyway)"
        )
    ranges = [range(p**n) for p, n in g.factors]
    elements = list(itertools.product(*ranges))
    index = {e: i for i, e in enumerate(elements)}
    perms = []
    for fi, (p, n) in enumerate(g.factors):
        pe = p**n
        perm = [0] * len(elements)
        for e in elements:
            moved = list(e)
            moved[fi] = (moved[fi] + 1) % pe
            perm[index[e]] = index[tuple(moved)]
        perms.append(perm)
    return GroupAlgebraModel(g, perms)


def _perm_power(perm, k: int):
    out = list(range(len(perm)))
    for _ in range(k):
        out = [perm[j] for j in out]
    return out


def _generator_poly_matrix(model: GroupAlgebraModel, fi: int, coeffs: dict[int, int]):
    """Matrix of sum_t c_t * sigma_fi^t on the group-element basis."""
    n = model.dimension
    perm = model.generator_perms[fi]
    m = [[0] * n for _ in range(n)]
    cur = list(range(n))
    for t in range(max(coeffs) + 1):
        c = coeffs.get(t, 0)
        if c:
            for j in range(n):
                m[cur[j]][j] += c
        cur = [perm[j] for j in cur]
    return m


def _minimal_poly_coeffs(p: int, beta_i: int) -> dict[int, int]:
    # level 0 kills sigma - 1; level b kills 1 + sigma^q + ... + sigma^{(p-1)q}
    if beta_i == 0:
        return {0: -1, 1: 1}
    q = p ** (beta_i - 1)
    return {t * q: 1 for t in range(p)}


def isotypic_basis(model: GroupAlgebraModel, beta) -> list[list[int]]:
    """Integer column basis of the beta-isotypic component of Q[G]."""
    beta = validate_tuple(model.group, beta)
    with model._lock:
        cached = model._isotypic_cache.get(beta)
    if cached is not None:
        return cached
    rows: list[list[int]] = []
    for fi, (p, _) in enumerate(model.group.factors):
        rows += _generator_poly_matrix(model, fi, _minimal_poly_coeffs(p, beta[fi]))
    basis = linalg.kernel_basis(rows, model.dimension)
    with model._lock:
        model._isotypic_cache[beta] = basis
    return basis


def oracle_fixed_subspace_dim(model: GroupAlgebraModel, beta, alpha) -> int:
    """Dimension of the alpha-fixed subspace of the beta component.

    Exact kernels only; no closed-form dimension formula is consulted.
    """
    alpha = validate_tuple(model.group, alpha)
    basis = isotypic_basis(model, beta)
    d = len(basis)
    if d == 0:
        return 0
    n = model.dimension
    rows: list[list[int]] = []
    for fi, (p, nf) in enumerate(model.group.factors):
        shift = p ** alpha[fi]
        if shift == p**nf:
            continue  # that power of the generator is the identity
        power = _perm_power(model.generator_perms[fi], shift)
        inverse = [0] * n
        for j, t in enumerate(power):
            inverse[t] = j
        for j in range(n):
            rows.append([basis[c][inverse[j]] - basis[c][j] for c in range(d)])
    if not rows:
        return d
    return d - linalg.rank(rows, d)


# -- reducibility probe ------------------------------------------------------


@dataclass(frozen=True)
class ComponentVerdict:
    alpha: tuple[int, ...]
    dimension: int
    formula_dimension: int
    commutant_dimension: int
    commutant_is_field: bool

    @property
    def irreducible(self) -> bool:
        return (
            self.dimension == self.formula_dimension
            and self.commutant_dimension == self.dimension
            and self.commutant_is_field
        )


@dataclass(frozen=True)
class RegularDecompositionReport:
    group: FiniteAbelianGroup
    order: int
    dimension_sum: int
    components: tuple[ComponentVerdict, ...]

    @property
    def dimensions_match(self) -> bool:
        return self.dimension_sum == self.order

    @property
    def reducible(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.alpha for c in self.components if not c.irreducible)

    @property
    def all_irreducible(self) -> bool:
        return not self.reducible

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "dimension_sum": self.dimension_sum,
            "dimensions_match": self.dimensions_match,
            "all_irreducible": self.all_irreducible,
            "components": [
                {
                    "alpha": list(c.alpha),
                    "dimension": c.dimension,
                    "commutant_dimension": c.commutant_dimension,
                    "commutant_is_field": c.commutant_is_field,
                    "irreducible": c.irreducible,
                }
                for c in self.components
            ],
        }


def _restricted_actions(model: GroupAlgebraModel, basis) -> list[list[list[int]]]:
    """Integer matrices of the generator actions on a component.

    sigma_i maps the component to itself, so sigma_i * basis = basis * A_i
    for a rational matrix A_i; the returned matrices are the A_i scaled by
    a common denominator (scaling preserves the commutant and the algebra).
    """
    n = model.dimension
    d = len(basis)
    actions = []
    for perm in model.generator_perms:
        images = []
        for c in range(d):
            image = [0] * n
            for j in range(n):
                image[perm[j]] = basis[c][j]
            images.append(image)
        cols = linalg.solve_exact_multi(basis, images)
        den = 1
        for col in cols:
            for x in col:
                den = lcm(den, x.denominator)
        actions.append(
            [[int(cols[c][r] * den) for c in range(d)] for r in range(d)]
        )
    return actions


def _commutant_dimension(actions, d: int) -> int:
    rows = []
    for a in actions:
        for i in range(d):
            for j in range(d):
                row = [0] * (d * d)
                for k in range(d):
                    row[i * d + k] += a[k][j]
                    row[k * d + j] -= a[i][k]
                rows.append(row)
    if not rows:
        return d * d
    return d * d - linalg.rank(rows, d * d)


def _matmul(a, b, d):
    return [
        [sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d)]
        for i in range(d)
    ]


def _minimal_polynomial(u, d: int) -> list[Fraction]:
    """Monic minimal polynomial of the integer matrix u, ascending coeffs."""
    vecs = []
    cur = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for _ in range(d + 1):
        vecs.append([cur[i][j] for i in range(d) for j in range(d)])
        cur = _matmul(cur, u, d)
    # first power dependent on its predecessors gives the minimal polynomial
    for k in range(1, d + 1):
        try:
            combo = linalg.solve_exact(vecs[:k], vecs[k])
        except ValueError:
            continue
        return [-c for c in combo] + [Fraction(1)]
    raise AssertionError("minimal polynomial must have degree <= dimension")


def _is_field(actions, d: int) -> bool:
    """Whether the commutative algebra generated by the actions is a field.

    Searches small integer combinations of the generators for a primitive
    element (minimal polynomial of degree d), then tests that polynomial for
    irreducibility over the rationals.
    """
    if d == 1:
        return True
    x = sympy.Symbol("x")
    for weights in itertools.product(range(1, 6), repeat=len(actions)):
        u = [
            [sum(w * a[i][j] for w, a in zip(weights, actions)) for j in range(d)]
            for i in range(d)
        ]
        mp = _minimal_polynomial(u, d)
        if len(mp) - 1 != d:
            continue
        den = 1
        for c in mp:
            den = lcm(den, c.denominator)
        ic = [int(c * den) for c in mp]
        g = 0
        for c in ic:
            g = gcd(g, c)
        ic = [c // g for c in ic]
        poly = sympy.Poly(list(reversed(ic)), x, domain="QQ")
        return bool(poly.is_irreducible)
    raise ArithmeticError("no primitive element among small generator combinations")


def verify_regular_decomposition(g: FiniteAbelianGroup) -> RegularDecompositionReport:
    """Decompose Q[G] and probe each indexed component for irreducibility.

    The dimension bookkeeping (sum over components equals |G|) holds for any
    factorization; the per-component verdicts flag index tuples whose
    component splits further, which happens exactly in the repeated-prime
    situations the closed-form layer refuses by default.
    """
    model = build_group_algebra_model(g, allow_repeated_primes=True)
    components = []
    total = 0
    for alpha in index_tuples(g):
        basis = isotypic_basis(model, alpha)
        d = len(basis)
        total += d
        if d == 0:
            components.append(ComponentVerdict(alpha, 0, irrep_dim(g, alpha), 0, False))
            continue
        actions = _restricted_actions(model, basis)
        cdim = _commutant_dimension(actions, d)
        field = _is_field(actions, d)
        components.append(
            ComponentVerdict(alpha, d, irrep_dim(g, alpha), cdim, field)
        )
    return RegularDecompositionReport(g, g.order, total, tuple(components))
