"""Structure theorems, target ideals, and shape validators."""

import random

import pytest

from finemw.groups import FiniteAbelianGroup
from finemw.iwasawa import char_gcd, char_ideal_from_exponents
from finemw.rank_data import EAlphaTable, GrowthSummary, growth_summary
from finemw.structure import (
    GenericFactor,
    ReductionTypeError,
    SelmerShape,
    equivariant_fine,
    equivariant_pm,
    fine_mw_structure,
    greenberg_rhs,
    kp_rhs,
    parse_shape,
    pm_mw_structure,
    rational_base_summary,
    selmer_gcd,
    sign_shift,
    validate_selmer_shape,
)

from helpers import random_distinct_group, random_ea_table

TRIVIAL = FiniteAbelianGroup([])


def gs_of(p, e, theta):
    e = tuple(e)
    theta = tuple(theta)
    return GrowthSummary(p, e, theta, tuple(a - b for a, b in zip(e, theta)))


# -- fine structure -----------------------------------------------------------


def test_fine_examples():
    assert fine_mw_structure(gs_of(3, [1, 1], [1, 1])).char_ideal.is_trivial()
    out = fine_mw_structure(gs_of(3, [0, 2], [0, 1]))
    assert out.char_ideal == char_ideal_from_exponents(3, 0, {1: 1})
    assert out.exponents == (0, 1)
    assert fine_mw_structure(gs_of(3, [0, 0], [0, 0])).char_ideal.is_trivial()


# -- signed structure ---------------------------------------------------------


def test_pm_example_level_one():
    pm = pm_mw_structure(gs_of(3, [1, 1], [1, 1]))
    assert pm.char_plus == char_ideal_from_exponents(3, 0, {0: 1})
    assert pm.char_minus == char_ideal_from_exponents(3, 0, {0: 1, 1: 1})
    assert pm.gcd == char_ideal_from_exponents(3, 0, {0: 1})
    assert pm.r_plus == (1, 0)
    assert pm.r_minus == (1, 1)


def test_pm_example_even_level_parity():
    pm = pm_mw_structure(gs_of(3, [0, 0, 2], [0, 0, 1]))
    assert pm.char_plus == char_ideal_from_exponents(3, 0, {2: 2})
    assert pm.char_minus == char_ideal_from_exponents(3, 0, {2: 1})
    assert pm.gcd == char_ideal_from_exponents(3, 0, {2: 1})


def test_pm_zero_summary():
    pm = pm_mw_structure(gs_of(3, [0], [0]))
    assert pm.char_plus.is_trivial()
    assert pm.char_minus.is_trivial()
    assert pm.gcd.is_trivial()


def test_pm_rejects_ordinary_reduction():
    with pytest.raises(ReductionTypeError):
        pm_mw_structure(gs_of(3, [1], [1]), reduction="ordinary")


def test_pm_identities_random():
    rng = random.Random(41)
    for _ in range(200):
        g = random_distinct_group(rng)
        ea = random_ea_table(rng, g, rng.randint(0, 4))
        p = rng.choice([3, 5, 7])
        gs = growth_summary(ea, p)
        pm = pm_mw_structure(gs)
        assert pm.r_plus[0] == pm.r_minus[0] == gs.e[0]
        for n in range(1, gs.max_level + 1):
            assert pm.r_plus[n] + pm.r_minus[n] == 2 * gs.e[n] - gs.theta[n]
        expected_gcd = char_ideal_from_exponents(
            p,
            0,
            {
                **({0: gs.e[0]} if gs.e[0] else {}),
                **{
                    n: gs.e[n] - gs.theta[n]
                    for n in range(1, gs.max_level + 1)
                },
            },
        )
        assert char_gcd(pm.char_plus, pm.char_minus) == expected_gcd
        assert pm.gcd == expected_gcd


# -- equivariant refinements --------------------------------------------------


def test_equivariant_fine_examples():
    g = FiniteAbelianGroup([(2, 1)])
    ea = EAlphaTable(g, 1, {((1,), 1): 2})
    assert equivariant_fine(ea).summands == (((1,), 1, 1),)

    ea = EAlphaTable(g, 1, {((1,), 1): 1})
    assert equivariant_fine(ea).summands == ()

    assert equivariant_fine(EAlphaTable(g, 1, {})).summands == ()


def test_equivariant_pm_examples():
    g = FiniteAbelianGroup([(2, 1)])
    ea = EAlphaTable(g, 2, {((1,), 2): 1})
    assert equivariant_pm(ea, "+").summands == (((1,), 2, 1),)
    assert equivariant_pm(ea, "-").summands == ()

    ea0 = EAlphaTable(g, 0, {((1,), 0): 1})
    assert equivariant_pm(ea0, "-").summands == (((1,), 0, 1),)


def test_sign_shift_table():
    assert [sign_shift("+", k) for k in range(5)] == [0, 1, 0, 1, 0]
    assert [sign_shift("-", k) for k in range(5)] == [0, 0, 1, 0, 1]
    with pytest.raises(ValueError):
        sign_shift("x", 0)


def test_contraction_identities_random():
    rng = random.Random(43)
    for _ in range(200):
        g = random_distinct_group(rng)
        ea = random_ea_table(rng, g, rng.randint(0, 4))
        p = rng.choice([3, 5, 7])
        gs = growth_summary(ea, p)
        pm = pm_mw_structure(gs)

        fine_sums = equivariant_fine(ea).contraction()
        for k in range(gs.max_level + 1):
            assert fine_sums.get(k, 0) == gs.e[k] - gs.theta[k]

        for sign, r in (("+", pm.r_plus), ("-", pm.r_minus)):
            sums = equivariant_pm(ea, sign).contraction()
            for k in range(gs.max_level + 1):
                assert sums.get(k, 0) == r[k]


# -- target ideals -------------------------------------------------------------


def test_greenberg_examples():
    assert greenberg_rhs(3, [1, 2]) == char_ideal_from_exponents(3, 0, {1: 1})
    assert greenberg_rhs(3, [2]) == char_ideal_from_exponents(3, 0, {0: 1})
    assert greenberg_rhs(3, [0, 0]).is_trivial()


def test_kp_examples():
    assert kp_rhs(3, [1, 2]) == char_ideal_from_exponents(3, 0, {0: 1, 1: 1})
    assert kp_rhs(3, [2, 1]) == char_ideal_from_exponents(3, 0, {0: 2})
    assert kp_rhs(3, [0]).is_trivial()


def test_selmer_gcd_examples():
    assert selmer_gcd(3, [1, 2], 1) == char_ideal_from_exponents(3, 0, {0: 1, 1: 1})
    with pytest.raises(ValueError):
        selmer_gcd(3, [1, 2], 0)
    assert selmer_gcd(3, [0], 0).is_trivial()


def test_rational_base_reductions_random():
    rng = random.Random(47)
    for _ in range(100):
        p = rng.choice([3, 5, 7])
        e = [rng.randint(0, 3) for _ in range(rng.randint(1, 5))]
        gs = rational_base_summary(p, e)
        assert fine_mw_structure(gs).char_ideal == greenberg_rhs(p, e)
        assert pm_mw_structure(gs).gcd == kp_rhs(p, e)


def test_rational_base_hand_checks():
    gs = rational_base_summary(3, [1, 2])
    assert fine_mw_structure(gs).char_ideal == char_ideal_from_exponents(3, 0, {1: 1})
    assert pm_mw_structure(gs).gcd == char_ideal_from_exponents(3, 0, {0: 1, 1: 1})


# -- shape validation -----------------------------------------------------------


def test_validator_rejects_duplicate_levels():
    shape = SelmerShape("ordinary", (), ((1, 2), (1, 3)), ())
    report = validate_selmer_shape(shape)
    assert not report.accepted
    assert not report.cyclic
    bad = report.verdicts[0]
    assert bad.name == "distinct_repeated_levels" and not bad.passed


def test_validator_rejects_odd_level_under_plus():
    shape = SelmerShape("supersingular+", (), ((3, 2),), ())
    report = validate_selmer_shape(shape)
    assert not report.accepted
    names = {v.name: v.passed for v in report.verdicts}
    assert names["distinct_repeated_levels"]
    assert not names["plus_levels_even"]


def test_validator_accepts_ordinary_shape_and_derives_sha():
    shape = SelmerShape("ordinary", (), ((1, 2), (2, 3)), (4,))
    report = validate_selmer_shape(shape)
    assert report.accepted
    assert report.sha_shape.cyclo == ((1, 1), (2, 2))
    assert report.cyclic


def test_validator_minus_parity():
    ok = SelmerShape("supersingular-", (), ((0, 2), (3, 2)), ())
    assert validate_selmer_shape(ok).accepted
    bad = SelmerShape("supersingular-", (), ((2, 2),), ())
    assert not validate_selmer_shape(bad).accepted


def test_validator_duplicate_always_flips():
    rng = random.Random(53)
    for _ in range(50):
        levels = rng.sample(range(0, 10), rng.randint(1, 4))
        multi = tuple((a, rng.randint(2, 4)) for a in levels)
        shape = SelmerShape("ordinary", (), multi, ())
        assert validate_selmer_shape(shape).accepted
        dup = multi + ((levels[0], 2),)
        assert not validate_selmer_shape(SelmerShape("ordinary", (), dup, ())).accepted


def test_validator_growth_cross_check():
    # fine exponents: level1 -> (2-1) + one simple = 2; level0 -> 1 simple
    shape = SelmerShape("ordinary", (), ((1, 2),), (0, 1))
    gs = gs_of(3, [2, 3], [1, 1])  # e - theta = [1, 2]
    report = validate_selmer_shape(shape, gs)
    assert report.growth_checked
    assert report.accepted

    off = gs_of(3, [2, 2], [1, 1])  # e - theta = [1, 1]
    report = validate_selmer_shape(shape, off)
    assert not report.accepted

    beyond = SelmerShape("ordinary", (), ((5, 2),), ())
    assert not validate_selmer_shape(beyond, gs).accepted


def test_shape_validation_errors():
    with pytest.raises(ValueError):
        SelmerShape("ordinary", (), ((1, 1),), ())  # exponent below 2
    with pytest.raises(ValueError):
        SelmerShape("weird", (), (), ())
    with pytest.raises(ValueError):
        GenericFactor("g", 0, 1)


def test_parse_shape_document():
    shape = parse_shape(
        '{"reduction": "ordinary", "generic": [["g1", 2, 1]],'
        ' "cyclo_multi": [[1, 2]], "cyclo_simple": [4]}'
    )
    assert shape.generic[0].label == "g1"
    assert shape.cyclo_multi == ((1, 2),)
    with pytest.raises(ValueError):
        parse_shape('{"reduction": "ordinary", "bogus": 1}')
    with pytest.raises(ValueError):
        parse_shape("not json")


def test_sha_carries_generic_part():
    gen = (GenericFactor("g1", 4, 2),)
    shape = SelmerShape("ordinary", gen, ((2, 3),), ())
    report = validate_selmer_shape(shape)
    assert report.sha_shape.generic == gen
    assert report.sha_shape.cyclo == ((2, 2),)


def test_fine_structure_group_case_matches_equivariant():
    # contraction of the equivariant fine summands reproduces the ideal
    rng = random.Random(59)
    for _ in range(50):
        g = random_distinct_group(rng)
        ea = random_ea_table(rng, g, rng.randint(0, 3))
        p = rng.choice([3, 5])
        gs = growth_summary(ea, p)
        fine = fine_mw_structure(gs)
        sums = equivariant_fine(ea).contraction()
        for n in range(gs.max_level + 1):
            assert fine.char_ideal.cyclo_exponent(n) == sums.get(n, 0)
