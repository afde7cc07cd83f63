import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdxsim.beamforming import mmse_precoder, normalize_streams, svd_combiner, svd_precoder
from fdxsim.beamtraining import dft_codebook
from fdxsim.errors import DegeneratePrecoderError, InvalidInputError


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def assert_equal_up_to_column_phase(a, b, atol=1e-10):
    for col_a, col_b in zip(a.T, b.T):
        phase = np.vdot(col_b, col_a)
        assert np.isclose(abs(phase), 1.0, atol=atol)
        np.testing.assert_allclose(col_a, phase * col_b, atol=atol)


@pytest.mark.parametrize("fn", [svd_combiner, svd_precoder])
def test_diagonal_channel_picks_first_axis(fn):
    w = fn(np.diag([3.0, 1.0]), 1)
    assert_equal_up_to_column_phase(w, np.array([[1.0], [0.0]]))


@pytest.mark.parametrize("fn", [svd_combiner, svd_precoder])
def test_full_rank_is_orthonormal(fn):
    w = fn(crandn(np.random.default_rng(0), 4, 4), 4)
    np.testing.assert_allclose(w.conj().T @ w, np.eye(4), atol=1e-12)


def test_svd_beamformers_match_oracle():
    h = crandn(np.random.default_rng(1), 4, 4)
    # independent oracle: eigenvectors of the Gram matrices, strongest first
    ev, vecs = np.linalg.eigh(h @ h.conj().T)
    assert_equal_up_to_column_phase(svd_combiner(h, 2), vecs[:, np.argsort(ev)[::-1][:2]])
    ev, vecs = np.linalg.eigh(h.conj().T @ h)
    assert_equal_up_to_column_phase(svd_precoder(h, 2), vecs[:, np.argsort(ev)[::-1][:2]])


def test_too_many_streams():
    with pytest.raises(InvalidInputError):
        svd_combiner(np.ones((2, 4)), 3)


def test_mmse_scalar_case():
    f = mmse_precoder(np.eye(2), np.zeros((2, 2)), 2.0, 10.0, 2)
    np.testing.assert_allclose(f, 0.5 * np.eye(2))


def test_mmse_without_interference_stays_in_desired_row_space():
    rng = np.random.default_rng(2)
    h_des = crandn(rng, 2, 4)
    f = mmse_precoder(h_des, np.zeros((2, 4)), 5.0, 100.0, 2)
    basis, _ = np.linalg.qr(h_des.conj().T)
    assert np.linalg.norm(f - basis @ (basis.conj().T @ f)) < 1e-9


def explicit_mmse(h_des, h_int, snr_ij, snr_ii, ns):
    gram = (h_des.conj().T @ h_des + snr_ii / snr_ij * h_int.conj().T @ h_int
            + ns / snr_ij * np.eye(h_des.shape[1]))
    return (np.linalg.inv(gram) @ h_des.conj().T)[:, :ns]


def test_mmse_matches_explicit_inverse():
    rng = np.random.default_rng(3)
    h_des, h_int = crandn(rng, 2, 4), crandn(rng, 2, 4)
    np.testing.assert_allclose(mmse_precoder(h_des, h_int, 10.0, 1e4, 2),
                               explicit_mmse(h_des, h_int, 10.0, 1e4, 2), atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.floats(0.1, 10.0),
       snr_ij=st.floats(0.1, 1e3), snr_ii=st.floats(1.0, 1e4))
def test_mmse_interference_scaling_identity(seed, c, snr_ij, snr_ii):
    rng = np.random.default_rng(seed)
    h_des, h_int = crandn(rng, 2, 4), crandn(rng, 2, 4)
    a = mmse_precoder(h_des, c * h_int, snr_ij, snr_ii, 2)
    b = mmse_precoder(h_des, h_int, snr_ij, c**2 * snr_ii, 2)
    np.testing.assert_allclose(a, b, atol=1e-9 * max(1.0, np.abs(b).max()))
    np.testing.assert_allclose(b, explicit_mmse(h_des, h_int, snr_ij, c**2 * snr_ii, 2),
                               atol=1e-9 * max(1.0, np.abs(b).max()))


def test_mmse_continuous_as_interference_weight_vanishes():
    rng = np.random.default_rng(4)
    h_des, h_int = crandn(rng, 2, 4), crandn(rng, 2, 4)
    clean = mmse_precoder(h_des, np.zeros((2, 4)), 10.0, 1.0, 2)
    errs = [np.abs(mmse_precoder(h_des, h_int, 10.0, w, 2) - clean).max()
            for w in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-8


def test_mmse_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        mmse_precoder(np.eye(2), np.zeros((2, 2)), 0.0, 1.0, 2)
    with pytest.raises(InvalidInputError):
        mmse_precoder(np.eye(2), np.zeros((2, 3)), 1.0, 1.0, 2)
    with pytest.raises(InvalidInputError):
        mmse_precoder(np.array([[np.nan, 0], [0, 1]]), np.zeros((2, 2)), 1.0, 1.0, 2)


def test_normalize_scalar_rescale():
    np.testing.assert_allclose(normalize_streams(np.eye(2), 2 * np.eye(2)), np.eye(2))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), ns=st.integers(1, 4))
def test_normalize_unit_streams_and_idempotent(seed, ns):
    rng = np.random.default_rng(seed)
    rf = dft_codebook(16).beams[:, rng.choice(16, 4, replace=False)]
    bb = normalize_streams(rf, crandn(rng, 4, ns))
    np.testing.assert_allclose(np.linalg.norm(rf @ bb, axis=0), 1.0, atol=1e-12)
    assert abs(np.linalg.norm(rf @ bb) ** 2 - ns) < 1e-9
    np.testing.assert_allclose(normalize_streams(rf, bb), bb, atol=1e-14)


def test_normalize_zero_column_raises():
    bb = np.array([[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(DegeneratePrecoderError):
        normalize_streams(np.eye(2), bb)
