"""Baseband precoders and combiners for the full-duplex node and its peers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePrecoderError, InvalidInputError
from .numerics import as_matrix, solve_hermitian, svd

__all__ = [
    "HybridBeamformer",
    "mmse_precoder",
    "normalize_streams",
    "svd_combiner",
    "svd_precoder",
]


@dataclass(frozen=True)
class HybridBeamformer:
    rf: np.ndarray
    bb: np.ndarray

    @property
    def effective(self) -> np.ndarray:
        return self.rf @ self.bb


def _check_streams(h: np.ndarray, ns: int):
    if not 1 <= ns <= min(h.shape):
        raise InvalidInputError(f"ns={ns} outside [1, {min(h.shape)}] for channel {h.shape}")


def svd_combiner(h_tilde, ns: int) -> np.ndarray:
    """The ``ns`` strongest left singular vectors of the effective channel."""
    h = as_matrix(h_tilde, "H_tilde")
    _check_streams(h, ns)
    u, _, _ = svd(h)
    return u[:, :ns]


def svd_precoder(h_tilde, ns: int) -> np.ndarray:
    """The ``ns`` strongest right singular vectors of the effective channel."""
    h = as_matrix(h_tilde, "H_tilde")
    _check_streams(h, ns)
    _, _, v = svd(h)
    return v[:, :ns]


def mmse_precoder(h_des, h_int, snr_ij: float, snr_ii: float, ns_j: int) -> np.ndarray:
    """MMSE-style baseband precoder that trades desired gain against residual SI.

    Computes ``(Hd^H Hd + (snr_ii/snr_ij) Hi^H Hi + (ns_j/snr_ij) I)^-1 Hd^H``
    and keeps its first ``ns_j`` columns. The result is not power-normalized.

    Parameters
    ----------
    h_des : (Ns_j, Nrf_tx) array
        Desired channel after the receiver's full combiner.
    h_int : (Ns_i, Nrf_tx) array
        Residual self-interference channel after the full-duplex node's
        baseband combiner.
    snr_ij, snr_ii : float
        Linear SNRs of the downlink and of the self-interference path.
    ns_j : int
        Number of downlink streams.
    """
    h_des = as_matrix(h_des, "H_des")
    h_int = as_matrix(h_int, "H_int")
    if h_des.shape[1] != h_int.shape[1]:
        raise InvalidInputError(
            f"H_des {h_des.shape} and H_int {h_int.shape} must share the column count")
    snr_ij, snr_ii = float(snr_ij), float(snr_ii)
    if not (np.isfinite(snr_ij) and np.isfinite(snr_ii) and snr_ij > 0 and snr_ii >= 0):
        raise InvalidInputError(f"SNRs must be finite with snr_ij > 0, snr_ii >= 0; got {snr_ij}, {snr_ii}")
    if not 1 <= ns_j <= h_des.shape[0]:
        raise InvalidInputError(f"ns_j={ns_j} exceeds the {h_des.shape[0]} desired rows")

    n = h_des.shape[1]
    gram = (h_des.conj().T @ h_des
            + (snr_ii / snr_ij) * (h_int.conj().T @ h_int)
            + (ns_j / snr_ij) * np.eye(n))
    gram = 0.5 * (gram + gram.conj().T)
    return solve_hermitian(gram, h_des.conj().T)[:, :ns_j]


def normalize_streams(rf, bb) -> np.ndarray:
    """Scale each column of ``bb`` so that ``rf @ bb`` has unit-norm columns."""
    rf = as_matrix(rf, "RF")
    bb = as_matrix(bb, "BB")
    if rf.shape[1] != bb.shape[0]:
        raise InvalidInputError(f"RF {rf.shape} and BB {bb.shape} do not conform")
    norms = np.linalg.norm(rf @ bb, axis=0)
    if np.any(norms <= np.finfo(float).tiny):
        raise DegeneratePrecoderError("precoder has a stream with zero effective norm")
    return bb / norms
