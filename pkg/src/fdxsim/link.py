"""Spectral efficiency of the two links and the full-duplex reference baselines.

Rates are Gaussian mutual information ``log2 det(I + Q^-1 G)`` where ``G`` is
the post-combiner signal covariance and ``Q`` the noise plus residual
self-interference covariance. Noise variance is 1; the link SNRs carry all
scaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asic import AsicFilter
from .beamforming import normalize_streams, svd_combiner, svd_precoder
from .beamtraining import effective_channel
from .channel import db_to_linear
from .errors import InvalidInputError, NumericalError
from .numerics import as_matrix

__all__ = [
    "LinkBudget",
    "LinkChannels",
    "LinkRates",
    "half_duplex_sum",
    "ideal_fd_rates",
    "log_det_rate",
    "rate_downlink",
    "rate_uplink",
]


@dataclass(frozen=True)
class LinkBudget:
    """Link SNRs in dB. ``snr_ii_db = -inf`` removes self-interference entirely."""

    snr_ij_db: float
    snr_ki_db: float
    snr_ii_db: float

    def __post_init__(self):
        for name in ("snr_ij_db", "snr_ki_db"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if np.isnan(self.snr_ii_db) or self.snr_ii_db == np.inf:
            raise InvalidInputError("snr_ii_db must be finite or -inf")

    @property
    def snr_ij(self) -> float:
        return db_to_linear(self.snr_ij_db)

    @property
    def snr_ki(self) -> float:
        return db_to_linear(self.snr_ki_db)

    @property
    def snr_ii(self) -> float:
        return db_to_linear(self.snr_ii_db)


@dataclass(frozen=True)
class LinkRates:
    """Per-link spectral efficiencies in bits/s/Hz."""

    rate_ki: float
    rate_ij: float

    @property
    def sum(self) -> float:
        return self.rate_ki + self.rate_ij


@dataclass(frozen=True)
class LinkChannels:
    """Full channel matrices and the RF beamformers fixed by beamtraining.

    ``h_ij`` is node j's receive array by node i's transmit array, ``h_ki``
    node i's receive array by node k's transmit array, and ``h_ii`` node i's
    receive array by its own transmit array.
    """

    h_ij: np.ndarray
    h_ki: np.ndarray
    h_ii: np.ndarray
    f_rf_i: np.ndarray
    w_rf_j: np.ndarray
    f_rf_k: np.ndarray
    w_rf_i: np.ndarray

    @property
    def h_tilde_ij(self) -> np.ndarray:
        return effective_channel(self.w_rf_j, self.h_ij, self.f_rf_i)

    @property
    def h_tilde_ki(self) -> np.ndarray:
        return effective_channel(self.w_rf_i, self.h_ki, self.f_rf_k)

    @property
    def h_tilde_ii(self) -> np.ndarray:
        return effective_channel(self.w_rf_i, self.h_ii, self.f_rf_i)


def log_det_rate(signal_root: np.ndarray, noise_root: np.ndarray) -> float:
    """``log2 det(I + Q^-1 G)`` for ``G = S S^H`` and ``Q = A A^H``.

    Works on the square-root factors: ``det(Q + G) / det(Q)`` is read off the
    R diagonals of QR factorizations of ``[A, S]^H`` and ``A^H``, so the
    covariances are never formed and strong self-interference does not square
    the condition number.
    """
    n = noise_root.shape[0]
    r_noise = np.abs(np.diag(np.linalg.qr(noise_root.conj().T, mode="r")))
    if r_noise.size < n or np.any(r_noise <= np.finfo(float).tiny):
        raise NumericalError("interference-plus-noise covariance is singular")
    stacked = np.hstack([noise_root, signal_root])
    r_total = np.abs(np.diag(np.linalg.qr(stacked.conj().T, mode="r")))
    rate = float(2.0 * np.sum(np.log2(r_total[:n]) - np.log2(r_noise)))
    if not np.isfinite(rate):
        raise NumericalError("rate is not finite")
    return max(rate, 0.0)


def rate_uplink(w_bb, w_rf, h_ki, f_rf_k, f_bb_k, h_ii, f_rf_i, f_bb_i,
                asic: AsicFilter | None, budget: LinkBudget, ns_i: int, ns_j: int) -> float:
    """Rate of the k -> i link with residual SI from i's own transmission.

    The canceller output ``sqrt(SNR_ii) * replica * F_BB,i * s_j`` is
    subtracted after the RF combiner, so the SI seen at baseband goes through
    ``W_RF^H H_ii F_RF,i - replica``. ``asic=None`` means no canceller.
    """
    w_bb, w_rf = as_matrix(w_bb, "W_BB"), as_matrix(w_rf, "W_RF")
    h_ki, h_ii = as_matrix(h_ki, "H_ki"), as_matrix(h_ii, "H_ii")
    f_rf_k, f_bb_k = as_matrix(f_rf_k, "F_RF,k"), as_matrix(f_bb_k, "F_BB,k")
    f_rf_i, f_bb_i = as_matrix(f_rf_i, "F_RF,i"), as_matrix(f_bb_i, "F_BB,i")

    w = w_rf @ w_bb
    signal = np.sqrt(budget.snr_ki / ns_i) * (w.conj().T @ h_ki @ f_rf_k @ f_bb_k)

    h_delta = effective_channel(w_rf, h_ii, f_rf_i)
    if asic is not None:
        if asic.replica.shape != h_delta.shape:
            raise InvalidInputError(
                f"ASIC replica {asic.replica.shape} does not match effective SI {h_delta.shape}")
        h_delta = h_delta - asic.replica
    si = np.sqrt(budget.snr_ii / ns_j) * (w_bb.conj().T @ h_delta @ f_bb_i)
    # Q = W^H W + si si^H = [W^H, si] [W^H, si]^H
    return log_det_rate(signal, np.hstack([w.conj().T, si]))


def rate_downlink(w_bb_j, w_rf_j, h_ij, f_rf_i, f_bb_i, budget: LinkBudget, ns_j: int) -> float:
    """Rate of the i -> j link; node j is half-duplex so it sees noise only."""
    w = as_matrix(w_rf_j, "W_RF,j") @ as_matrix(w_bb_j, "W_BB,j")
    desired = w.conj().T @ as_matrix(h_ij, "H_ij") @ as_matrix(f_rf_i, "F_RF,i") @ as_matrix(f_bb_i, "F_BB,i")
    return log_det_rate(np.sqrt(budget.snr_ij / ns_j) * desired, w.conj().T)


def ideal_fd_rates(channels: LinkChannels, budget: LinkBudget, ns_i: int, ns_j: int) -> LinkRates:
    """Both links with SVD beamforming and perfect transmit/receive isolation."""
    ht_ij, ht_ki = channels.h_tilde_ij, channels.h_tilde_ki
    w_bb_j = svd_combiner(ht_ij, ns_j)
    f_bb_i = normalize_streams(channels.f_rf_i, svd_precoder(ht_ij, ns_j))
    w_bb_i = svd_combiner(ht_ki, ns_i)
    f_bb_k = normalize_streams(channels.f_rf_k, svd_precoder(ht_ki, ns_i))
    isolated = LinkBudget(budget.snr_ij_db, budget.snr_ki_db, -np.inf)
    r_ki = rate_uplink(w_bb_i, channels.w_rf_i, channels.h_ki, channels.f_rf_k, f_bb_k,
                       channels.h_ii, channels.f_rf_i, f_bb_i, None, isolated, ns_i, ns_j)
    r_ij = rate_downlink(w_bb_j, channels.w_rf_j, channels.h_ij, channels.f_rf_i, f_bb_i,
                         isolated, ns_j)
    return LinkRates(r_ki, r_ij)


def half_duplex_sum(ideal: LinkRates) -> float:
    """Half-duplex splits the resource, so it gets half of the ideal full-duplex sum."""
    return ideal.sum / 2
