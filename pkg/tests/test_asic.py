import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdxsim.asic import AsicConfig, AsicFilter, configure_asic, quantize, residual
from fdxsim.errors import InvalidInputError
from fdxsim.numerics import make_rng


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_zero_bits_disables_canceller():
    h = crandn(np.random.default_rng(0), 2, 4)
    filt = configure_asic(h, 0)
    np.testing.assert_array_equal(filt.replica, 0)
    np.testing.assert_array_equal(residual(h, filt), h)


@pytest.mark.parametrize("bits", [1, 4, 12])
def test_zero_channel_gives_zero_replica(bits):
    np.testing.assert_array_equal(configure_asic(np.zeros((2, 2)), bits).replica, 0)


def test_one_bit_hand_example():
    # A = 1, step = 1: floor(1) + 1/2 = 1.5, clamped to A - step/2 = 0.5
    filt = configure_asic(np.array([[1 + 1j]]), 1)
    assert filt.amplitude == 1.0 and filt.step == 1.0
    np.testing.assert_allclose(filt.replica, [[0.5 + 0.5j]])
    np.testing.assert_allclose(residual([[1 + 1j]], filt), [[0.5 + 0.5j]])


def test_24_bit_error_bound():
    h = crandn(np.random.default_rng(5), 2, 2)
    filt = configure_asic(h, 24)
    err = h - filt.replica
    ulp = 4 * np.finfo(float).eps * filt.amplitude
    assert np.abs(err.real).max() <= filt.step / 2 + ulp
    assert np.abs(err.imag).max() <= filt.step / 2 + ulp
    assert np.isclose(filt.step / 2, filt.amplitude / 2**24)


def test_exact_replica_gives_zero_residual():
    h = crandn(np.random.default_rng(1), 2, 3)
    np.testing.assert_array_equal(residual(h, AsicFilter(h.copy(), 0.0, 0.0, 0)), 0)


def test_residual_shape_mismatch():
    with pytest.raises(InvalidInputError):
        residual(np.ones((2, 2)), configure_asic(np.ones((2, 3)), 2))


def test_nonfinite_rejected():
    with pytest.raises(InvalidInputError):
        configure_asic(np.array([[np.inf]]), 2)
    with pytest.raises(InvalidInputError):
        AsicConfig(bits=-1)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), bits=st.integers(1, 16),
       rows=st.integers(1, 4), cols=st.integers(1, 4))
def test_quantizer_grid_and_bounds(seed, bits, rows, cols):
    h = crandn(np.random.default_rng(seed), rows, cols)
    filt = configure_asic(h, bits)
    a, step = filt.amplitude, filt.step
    for comp in (filt.replica.real, filt.replica.imag):
        k = comp / (step / 2)
        np.testing.assert_allclose(k, np.round(k), atol=1e-6)
        assert np.all(np.round(k).astype(np.int64) % 2 == 1)
        assert np.all(np.abs(comp) <= a)
    res = residual(h, filt)
    ulp = 4 * np.finfo(float).eps * a
    assert np.all(np.abs(res) <= np.sqrt(2) * (step / 2 + ulp))
    np.testing.assert_allclose(res + filt.replica, h, rtol=0, atol=ulp)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), bits=st.integers(1, 15))
def test_refinement_bound(seed, bits):
    h = crandn(np.random.default_rng(seed), 2, 4)
    r_m = np.linalg.norm(residual(h, configure_asic(h, bits)))
    r_next = np.linalg.norm(residual(h, configure_asic(h, bits + 1)))
    step_next = 2 * np.abs(np.r_[h.real.ravel(), h.imag.ravel()]).max() / 2 ** (bits + 1)
    assert r_next <= r_m + np.sqrt(2) * step_next * np.sqrt(h.size) / 2


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), bits=st.integers(1, 12))
def test_requantizing_on_same_grid_is_identity(seed, bits):
    h = crandn(np.random.default_rng(seed), 2, 4)
    filt = configure_asic(h, bits)
    again = configure_asic(filt.replica, bits, amplitude=filt.amplitude)
    np.testing.assert_array_equal(again.replica, filt.replica)


def test_quantize_is_idempotent():
    x = np.linspace(-2, 2, 101)
    q = quantize(x, 0.25, 2.0)
    np.testing.assert_array_equal(quantize(q, 0.25, 2.0), q)


def test_configuration_error_hook():
    h = crandn(np.random.default_rng(3), 2, 2)
    clean = configure_asic(h, 6)
    noisy = configure_asic(h, AsicConfig(6, error_std=0.1), rng=make_rng(1))
    assert not np.array_equal(clean.replica, noisy.replica)
    with pytest.raises(InvalidInputError):
        configure_asic(h, AsicConfig(6, error_std=0.1))
