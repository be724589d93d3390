"""The regular-representation oracle against the closed-form layer."""

import pytest

from finemw.group_algebra import (
    GroupAlgebraModel,
    RepeatedPrimeSupportError,
    build_group_algebra_model,
    isotypic_basis,
    oracle_fixed_subspace_dim,
    verify_regular_decomposition,
)
from finemw.groups import (
    FiniteAbelianGroup,
    fixed_subspace_dim,
    index_tuples,
    irrep_dim,
)


def test_model_permutation_invariants():
    g = FiniteAbelianGroup([(2, 2), (3, 1)])
    model = build_group_algebra_model(g)
    assert model.dimension == 12
    for (p, n), perm in zip(g.factors, model.generator_perms):
        assert sorted(perm) == list(range(12))
    # commutativity and orders are checked at construction; a broken action
    # must be rejected
    bad = [list(p) for p in model.generator_perms]
    bad[0][0], bad[0][1] = bad[0][1], bad[0][0]
    with pytest.raises(ValueError):
        GroupAlgebraModel(g, bad)


def test_two_element_group_all_pairs():
    g = FiniteAbelianGroup([(2, 1)])
    model = build_group_algebra_model(g)
    for beta in index_tuples(g):
        for alpha in index_tuples(g):
            assert oracle_fixed_subspace_dim(model, beta, alpha) == fixed_subspace_dim(
                g, beta, alpha
            )


def test_mixed_group_example():
    g = FiniteAbelianGroup([(2, 1), (3, 1)])
    model = build_group_algebra_model(g)
    assert oracle_fixed_subspace_dim(model, (1, 1), (1, 1)) == 2


def test_norm_kills_nontrivial_component():
    g = FiniteAbelianGroup([(5, 1)])
    model = build_group_algebra_model(g)
    assert oracle_fixed_subspace_dim(model, (1,), (0,)) == 0


@pytest.mark.parametrize(
    "factors",
    [[(2, 1)], [(3, 1)], [(2, 2)], [(2, 1), (3, 1)], [(3, 2)], [(2, 2), (5, 1)]],
)
def test_oracle_agrees_exhaustively(factors):
    g = FiniteAbelianGroup(factors)
    model = build_group_algebra_model(g)
    for beta in index_tuples(g):
        for alpha in index_tuples(g):
            assert oracle_fixed_subspace_dim(model, beta, alpha) == fixed_subspace_dim(
                g, beta, alpha
            )


def test_isotypic_dimensions_match_formula():
    g = FiniteAbelianGroup([(2, 2), (3, 1)])
    model = build_group_algebra_model(g)
    for alpha in index_tuples(g):
        assert len(isotypic_basis(model, alpha)) == irrep_dim(g, alpha)


def test_repeated_support_needs_override():
    g = FiniteAbelianGroup([(3, 1), (3, 1)], allow_repeated_primes=True)
    with pytest.raises(RepeatedPrimeSupportError):
        build_group_algebra_model(g)
    model = build_group_algebra_model(g, allow_repeated_primes=True)
    assert model.dimension == 9


def test_regular_decomposition_mixed_group():
    report = verify_regular_decomposition(FiniteAbelianGroup([(2, 1), (3, 1)]))
    assert report.dimension_sum == 6
    assert report.dimensions_match
    assert report.all_irreducible
    assert len(report.components) == 4


def test_regular_decomposition_trivial_group():
    report = verify_regular_decomposition(FiniteAbelianGroup([]))
    assert report.dimension_sum == 1
    assert report.all_irreducible


def test_regular_decomposition_flags_repeated_prime():
    g = FiniteAbelianGroup([(3, 1), (3, 1)], allow_repeated_primes=True)
    report = verify_regular_decomposition(g)
    assert report.dimensions_match
    assert report.reducible == ((1, 1),)
    bad = next(c for c in report.components if c.alpha == (1, 1))
    # the commutant has the full component dimension but is not a field
    assert bad.dimension == bad.commutant_dimension == 4
    assert not bad.commutant_is_field


def test_regular_decomposition_prime_squared():
    report = verify_regular_decomposition(FiniteAbelianGroup([(3, 2)]))
    assert report.all_irreducible
    top = next(c for c in report.components if c.alpha == (2,))
    assert top.dimension == 6
    assert top.commutant_dimension == 6
    assert top.commutant_is_field
