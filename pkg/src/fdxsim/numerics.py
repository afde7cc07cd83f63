"""Complex-matrix primitives: SVD, Hermitian solve, seeded CN(0,1) sampling.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Random streams are
``numpy.random.Generator`` objects backed by the counter-based Philox bit
generator, so every Monte Carlo trial can own an independent substream keyed by
integers.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DecompositionError, InvalidInputError

__all__ = [
    "as_matrix",
    "make_rng",
    "sample_cn",
    "solve_hermitian",
    "svd",
]

HERMITIAN_TOL = 1e-10


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array or raise InvalidInputError."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or Inf")
    return arr


def make_rng(seed: int, *substream: int) -> np.random.Generator:
    """Build a reproducible generator for ``seed`` and an optional substream key.

    ``make_rng(s, t)`` and ``make_rng(s, u)`` are statistically independent
    for ``t != u``, and identical keys always give identical streams.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in substream))
    return np.random.Generator(np.random.Philox(ss))


def sample_cn(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` i.i.d. circularly-symmetric CN(0, 1) samples.

    Real and imaginary parts are consumed pairwise from the generator's
    normal stream, so splitting one call into several gives the same values.
    """
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"sample count must be >= 1, got {n}")
    z = rng.standard_normal((n, 2))
    return (z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``A = U @ diag(S) @ V^H`` with singular values descending.

    Returns ``(U, S, V)``; note ``V`` itself, not its conjugate transpose.
    """
    a = as_matrix(a, "A")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK convergence
        raise DecompositionError(str(exc)) from exc
    return u, s, vh.conj().T


def solve_hermitian(a, b) -> np.ndarray:
    """Solve ``A X = B`` for Hermitian positive-definite ``A`` via Cholesky.

    Hermitian symmetry is checked relative to ``max(1, ||A||_F)``; the solve
    uses the symmetrized matrix so rounding in Gram products does not leak in.
    """
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"A must be square, got {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise InvalidInputError(f"B has {b.shape[0]} rows, A is {a.shape[0]}x{a.shape[0]}")
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL * scale:
        raise DecompositionError("A is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    try:
        factor = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"A is not positive definite: {exc}") from exc
    return scipy.linalg.cho_solve(factor, b, check_finite=False)
