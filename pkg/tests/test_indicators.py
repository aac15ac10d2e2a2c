from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from imbalance import FunctionTable, build_inverse, build_power, make_field, make_group
from imbalance.ddt import ddt, spectrum
from imbalance.errors import CapacityError, InapplicableError
from imbalance.functable import random_bijection, random_function
from imbalance.indicators import (
    ambiguity,
    ambiguity_from_nb,
    derivative_imbalance,
    imbalance,
    indicator_report,
    is_optimum,
    nb_from_ambiguity,
    nb_from_pair_count,
    optimum_ambiguity_threshold,
    pair_count_oracle,
    per_row_ambiguity,
    three_value_relation,
)

shapes = st.sampled_from([([4], [2]), ([6], [3]), ([2, 2, 2], [2, 2]), ([5], [5]), ([5], [3]), ([3, 2], [2, 2])])


def test_imbalance_examples():
    assert imbalance(FunctionTable([4], [2], [0, 1, 0, 1])) == 0
    assert imbalance(FunctionTable([4], [2], [0, 0, 0, 0])) == 8
    F = random_function([5], [3], 1)
    assert (imbalance(F) * 3).denominator == 1


def test_derivative_imbalance_examples(inv16, square9):
    assert derivative_imbalance(FunctionTable([2], [2], [0, 1])) == 2
    assert derivative_imbalance(inv16) == (2**4 - 1) * (2**4 + 8)
    assert derivative_imbalance(square9) == 0


def test_ambiguity_examples(cube8):
    assert ambiguity(FunctionTable([2], [2], [0, 1])) == 1
    parity = FunctionTable([4], [2], [0, 1, 0, 1])
    assert ambiguity(parity) == 18
    assert ambiguity_from_nb(derivative_imbalance(parity), parity.domain, parity.codomain) == 18
    assert derivative_imbalance(parity) == 24
    assert ambiguity(cube8) == 28


@given(shapes, st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_indicators_match_oracle(shape, seed):
    o1, o2 = shape
    F = random_function(o1, o2, seed)
    v = F.values.tolist()
    assert derivative_imbalance(F) == oracles.nb(o1, o2, v)
    assert ambiguity(F) == oracles.ambiguity(o1, o2, v)


@given(shapes, st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_rescaling_roundtrip(shape, seed):
    o1, o2 = shape
    F = random_function(o1, o2, seed)
    nb = derivative_imbalance(F)
    amb = ambiguity(spectrum(ddt(F)))
    assert ambiguity_from_nb(nb, F.domain, F.codomain) == amb
    assert nb_from_ambiguity(amb, F.domain, F.codomain) == nb


def test_pair_count_oracle():
    ident = FunctionTable([2], [2], [0, 1])
    assert pair_count_oracle(ident) == 8
    assert nb_from_pair_count(ident) == 2
    for seed in range(10):
        F = random_function([6], [3], seed)
        assert nb_from_pair_count(F) == derivative_imbalance(F)
    with pytest.raises(CapacityError):
        pair_count_oracle(random_function([2] * 13, [2], 0))


def test_per_row_ambiguity_counts_unordered_pairs(cube8):
    rows = per_row_ambiguity(ddt(cube8))
    assert rows == [4] * 7
    d = ddt(cube8)
    assert rows == [sum(comb(int(c), 2) for c in d.counts[a]) for a in range(1, 8)]


def test_three_value_item_two(inv16):
    s = spectrum(ddt(inv16))
    assert (s[0], s[2], s[4]) == (135, 90, 15)
    rel = three_value_relation(s, inv16.domain, inv16.codomain)
    assert rel.item == 2 and rel.holds
    assert rel.lhs == 2 * 180 == 8 * 135 + 5 * 240 - 8 * 240


def test_three_value_item_one_uses_corrected_forms(cube8):
    s = spectrum(ddt(cube8))
    rel = three_value_relation(s, cube8.domain, cube8.codomain)
    assert rel.item == 1 and rel.holds
    assert rel.formulas["nb"] == 56 and rel.formulas["ambiguity"] == 28
    assert rel.discrepancy is not None


def test_three_value_inapplicable():
    F = random_function([6], [3], 2)
    s = spectrum(ddt(F))
    if len([v for v in s.values() if v]) > 2:
        with pytest.raises(InapplicableError):
            three_value_relation(s, F.domain, F.codomain)


def test_optimum_threshold_and_cube_mod_5():
    z5 = make_group([5])
    assert optimum_ambiguity_threshold(z5, z5) == 8
    cube5 = FunctionTable(z5, z5, [pow(x, 3, 5) for x in range(5)])
    assert ambiguity(cube5) == 8
    assert is_optimum(cube5)
    with pytest.raises(InapplicableError):
        is_optimum(FunctionTable(z5, z5, [0, 0, 1, 2, 3]))


def test_optimum_threshold_is_a_lower_bound_on_small_groups():
    for orders in ([3], [4], [5], [2, 2]):
        g = make_group(orders)
        thr = optimum_ambiguity_threshold(g, g)
        for seed in range(40):
            assert ambiguity(random_bijection(g, seed)) >= thr


def test_indicator_report_json(cube8):
    rep = indicator_report(cube8)
    js = rep.to_json()
    assert js["nb"] == {"num": 56, "den": 1}
    assert js["ambiguity"] == 28 and js["deficiency"] == 28
    assert isinstance(rep.nb, Fraction)


def test_x5_gf16_values():
    F = build_power(make_field(2, 4), 5)
    assert derivative_imbalance(F) == 720
    inv = build_inverse(make_field(2, 4))
    assert ambiguity(inv) == 180
