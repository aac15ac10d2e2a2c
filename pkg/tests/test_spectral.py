import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from imbalance import FunctionTable, build_gold, build_inverse, build_power, make_field
from imbalance.errors import CapacityError, IdentityViolation, InapplicableError
from imbalance.functable import random_function
from imbalance.indicators import ambiguity, derivative_imbalance
from imbalance.spectral import (
    ambiguity_from_plateaued,
    autocorrelation,
    cross_identities,
    fourier,
    fourth_moment,
    fwht,
    linearity,
    linearity_argmax,
    nb_from_autocorrelation,
    nb_from_fourth_moment,
    nb_from_plateaued,
    nb_from_second_derivative,
    nonlinearity,
    parseval_deviation,
    plateaued_profile,
    power_plateaued_test,
    nb_power_plateaued,
)

shapes = st.sampled_from([([6], [3]), ([2, 2, 2], [2, 2]), ([4], [4]), ([5], [3]), ([2, 3], [2, 2])])


def test_fwht_matches_definition():
    rng = np.random.default_rng(0)
    a = rng.integers(-3, 4, 16)
    expected = [sum(int(a[x]) * (-1) ** bin(u & x).count("1") for x in range(16)) for u in range(16)]
    assert fwht(a).tolist() == expected


def test_bent_function_flat_spectrum():
    F = FunctionTable([2, 2], [2], [0, 0, 0, 1])
    ft = fourier(F)
    assert ft.exact
    assert np.all(ft.magnitudes()[:, 1] == 2)


@given(shapes, st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_fourier_magnitudes_match_oracle(shape, seed):
    o1, o2 = shape
    F = random_function(o1, o2, seed)
    mags = fourier(F).magnitudes()
    for (alpha, beta), m in oracles.fourier_magnitudes(o1, o2, F.values.tolist()).items():
        assert math.isclose(mags[alpha, beta], m, rel_tol=1e-9, abs_tol=1e-9)


@given(shapes, st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_linearity_range_and_parseval(shape, seed):
    o1, o2 = shape
    F = random_function(o1, o2, seed)
    ft = fourier(F)
    n1 = F.domain.order
    lin = float(linearity(ft))
    assert math.sqrt(n1) - 1e-9 <= lin <= n1 + 1e-9
    assert parseval_deviation(ft) < 1e-9


def test_nonlinearity_conventions(cube8):
    ft = fourier(cube8)
    assert linearity(ft) == 4
    assert nonlinearity(ft, "classical") == 2
    assert nonlinearity(ft, "normalized") == pytest.approx((8 - 4) / 8)
    with pytest.raises(InapplicableError):
        nonlinearity(fourier(random_function([6], [3], 0)), "classical")
    with pytest.raises(ValueError):
        nonlinearity(ft, "other")


def test_classical_nonlinearity_matches_hamming_oracle():
    for seed in range(5):
        F = random_function([2] * 4, [2] * 2, seed)
        ft = fourier(F)
        assert nonlinearity(ft, "classical") == oracles.binary_nonlinearity(4, 2, F.values.tolist())


def test_linearity_argmax(cube8):
    pairs = linearity_argmax(fourier(cube8))
    assert pairs == sorted(pairs)
    mags = fourier(cube8).magnitudes()
    assert all(mags[alpha, beta] == 4 for beta, alpha in pairs)


def test_pn_square_gf9(square9):
    ft = fourier(square9)
    assert float(linearity(ft)) == pytest.approx(3.0, rel=1e-9)
    assert fourth_moment(ft) == pytest.approx(12393, rel=1e-6)
    assert nb_from_fourth_moment(ft).value == 0


@given(shapes, st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_four_way_agreement(shape, seed):
    o1, o2 = shape
    F = random_function(o1, o2, seed)
    nb = derivative_imbalance(F)
    rep = cross_identities(F)
    assert rep.max_relative_deviation <= 1e-6
    for est in rep.nb.values():
        assert est.value == nb
    if rep.exact:
        assert all(e.exact and e.rounding_distance == 0 for e in rep.nb.values())


def test_four_way_components(cube8):
    ft = fourier(cube8)
    assert nb_from_fourth_moment(ft).value == 56
    assert nb_from_autocorrelation(cube8).value == 56
    assert nb_from_second_derivative(cube8).value == 56
    C = autocorrelation(cube8)
    assert C.shape == (8, 8)


def test_cross_identities_raise_on_inconsistent_fourier(cube8):
    other = fourier(build_power(make_field(2, 3), 1))
    tampered = type(other)(cube8, other.values, other.exact)
    with pytest.raises(IdentityViolation):
        cross_identities(cube8, tampered)
    rep = cross_identities(cube8, tampered, raise_on_violation=False)
    assert rep.max_relative_deviation > 1e-6


def test_fourier_capacity():
    F = FunctionTable([2] * 14, [2] * 13, np.zeros(2**14, dtype=np.int64))
    with pytest.raises(CapacityError):
        fourier(F)


def test_plateaued_cube(cube8):
    prof = plateaued_profile(cube8)
    assert prof.vectorial
    assert set(prof.mu_squared.values()) == {16}
    assert nb_from_plateaued(prof) == 56
    assert ambiguity_from_plateaued(prof) == 28


def test_plateaued_refuses_non_plateaued():
    F = random_function([2] * 4, [2] * 4, 1)
    prof = plateaued_profile(F)
    if not prof.vectorial:
        with pytest.raises(InapplicableError):
            nb_from_plateaued(prof)


def test_power_plateaued_examples(cube8):
    res = power_plateaued_test(cube8)
    assert res.plateaued and res.delta_11 == 2
    assert res.ambiguity == 28 == ambiguity(cube8)
    assert res.nb == 56
    x5 = build_gold(make_field(2, 4), 2)
    res5 = power_plateaued_test(x5)
    assert res5.delta_11 == 4 and res5.ambiguity == 360 == ambiguity(x5)
    assert nb_power_plateaued(x5) == derivative_imbalance(x5) == 720
    ident = build_power(make_field(2, 4), 1)
    r1 = power_plateaued_test(ident)
    assert r1.delta_11 == 16
    assert r1.ambiguity == 8 * 15 * 15 == ambiguity(ident)


def test_power_plateaued_needs_power_map():
    with pytest.raises(InapplicableError):
        power_plateaued_test(random_function([2] * 3, [2] * 3, 0))
    with pytest.raises(InapplicableError):
        power_plateaued_test(build_power(make_field(3, 2), 2))


def test_inverse_aes_size_nonlinearity():
    inv = build_inverse(make_field(2, 8))
    ft = fourier(inv)
    assert nonlinearity(ft, "classical") == 112
    assert derivative_imbalance(inv) == Fraction(255 * 264)
