import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdxsim.errors import DecompositionError, InvalidInputError
from fdxsim.numerics import make_rng, sample_cn, solve_hermitian, svd


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_svd_diagonal():
    u, s, v = svd(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(s, [3, 1])
    np.testing.assert_allclose(np.abs(u), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(np.abs(v), np.eye(2), atol=1e-15)


def test_svd_zero():
    _, s, _ = svd(np.zeros((2, 2)))
    np.testing.assert_array_equal(s, [0, 0])


def test_svd_reconstructs_random_4x2():
    a = crandn(np.random.default_rng(1), 4, 2)
    u, s, v = svd(a)
    np.testing.assert_allclose(u @ np.diag(s) @ v.conj().T, a, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(rows=st.integers(1, 64), cols=st.integers(1, 64), seed=st.integers(0, 2**32 - 1))
def test_svd_properties(rows, cols, seed):
    a = crandn(np.random.default_rng(seed), rows, cols)
    u, s, v = svd(a)
    assert np.linalg.norm(u @ np.diag(s) @ v.conj().T - a) <= 1e-9 * max(1.0, np.linalg.norm(a))
    k = min(rows, cols)
    assert np.linalg.norm(u.conj().T @ u - np.eye(k)) <= 1e-10
    assert np.linalg.norm(v.conj().T @ v - np.eye(k)) <= 1e-10
    assert np.all(np.diff(s) <= 0)


def test_svd_rejects_nan():
    with pytest.raises(InvalidInputError):
        svd(np.array([[np.nan, 1.0]]))


def test_solve_identity_and_scalar():
    b = crandn(np.random.default_rng(2), 3, 2)
    np.testing.assert_allclose(solve_hermitian(np.eye(3), b), b)
    np.testing.assert_allclose(solve_hermitian(2 * np.eye(2), np.eye(2)), 0.5 * np.eye(2))


def test_solve_random_spd_residual():
    rng = np.random.default_rng(3)
    m = crandn(rng, 4, 4)
    a = m @ m.conj().T + np.eye(4)
    b = crandn(rng, 4, 3)
    x = solve_hermitian(a, b)
    assert np.linalg.norm(a @ x - b) < 1e-9 * np.linalg.norm(b)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_solve_inverts_multiplication(n, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(crandn(rng, n, n))
    a = q @ np.diag(rng.uniform(1, 10, n)) @ q.conj().T
    x0 = crandn(rng, n, 2)
    np.testing.assert_allclose(solve_hermitian(a, a @ x0), x0, atol=1e-8)


def test_solve_rejects_non_hermitian_and_singular():
    with pytest.raises(DecompositionError):
        solve_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]), np.eye(2))
    with pytest.raises(DecompositionError):
        solve_hermitian(np.zeros((2, 2)), np.eye(2))


def test_sample_cn_deterministic_and_finite():
    a = sample_cn(make_rng(7), 5)
    b = sample_cn(make_rng(7), 5)
    np.testing.assert_array_equal(a, b)
    assert np.all(np.isfinite(a))


def test_sample_cn_moments():
    z = sample_cn(make_rng(11), 100_000)
    assert abs(z.mean()) < 0.02
    assert 0.98 <= np.mean(np.abs(z) ** 2) <= 1.02
    # real and imaginary parts each carry half the power
    assert abs(np.var(z.real) - 0.5) < 0.01 and abs(np.var(z.imag) - 0.5) < 0.01


def test_sample_cn_chunking_invariant():
    whole = sample_cn(make_rng(5, 3), 10)
    rng = make_rng(5, 3)
    parts = np.concatenate([sample_cn(rng, 3), sample_cn(rng, 1), sample_cn(rng, 6)])
    np.testing.assert_array_equal(whole, parts)


def test_substreams_differ():
    assert not np.array_equal(sample_cn(make_rng(1, 0), 4), sample_cn(make_rng(1, 1), 4))


def test_sample_cn_rejects_zero():
    with pytest.raises(InvalidInputError):
        sample_cn(make_rng(0), 0)
