"""DFT codebooks, exhaustive beam-pair search and effective channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .numerics import as_matrix

__all__ = ["Codebook", "RfSelection", "beam_search", "dft_codebook", "effective_channel"]

# gains closer than this (relative to the strongest pair) count as ties
_TIE_DIGITS = 12


@dataclass(frozen=True)
class Codebook:
    beams: np.ndarray

    @property
    def size(self) -> int:
        return self.beams.shape[1]


@dataclass(frozen=True)
class RfSelection:
    """Chosen RF beamformers and the gains of the matched beam pairs.

    ``tx_indices``/``rx_indices`` list the codebook columns in ``f_rf``/``w_rf``
    order; the first ``len(pair_gains)`` entries of each are the matched pairs.
    """

    f_rf: np.ndarray
    w_rf: np.ndarray
    pair_gains: np.ndarray
    tx_indices: tuple[int, ...]
    rx_indices: tuple[int, ...]


def dft_codebook(n: int) -> Codebook:
    """Orthonormal ``n``-beam DFT codebook; every entry has modulus ``1/sqrt(n)``."""
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"codebook size must be >= 1, got {n}")
    k = np.arange(n)
    return Codebook(np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n))


def _tie_key(gains: np.ndarray) -> np.ndarray:
    top = gains.max()
    if top <= 0:
        return np.zeros_like(gains)
    return np.round(gains / top, _TIE_DIGITS)


def beam_search(h, tx_cb: Codebook, rx_cb: Codebook, nrf_tx: int, nrf_rx: int) -> RfSelection:
    """Greedy strongest-pair search with distinct beams on each side.

    Every pair ``(m, n)`` is scored by ``|rx[:, m]^H H tx[:, n]|^2``. Pairs are
    taken in descending gain, skipping any that reuse a beam, until
    ``min(nrf_tx, nrf_rx)`` pairs are held. Surplus RF chains on the larger
    side get the unused beams with the best gain against any already-chosen
    beam on the other side. Ties go to the lowest ``(rx, tx)`` index.
    """
    h = as_matrix(getattr(h, "matrix", h), "H")
    nr, nt = h.shape
    if tx_cb.beams.shape[0] != nt or rx_cb.beams.shape[0] != nr:
        raise InvalidInputError(
            f"codebooks ({rx_cb.beams.shape[0]} rx, {tx_cb.beams.shape[0]} tx) "
            f"do not match channel {h.shape}")
    if not (1 <= nrf_tx <= min(nt, tx_cb.size) and 1 <= nrf_rx <= min(nr, rx_cb.size)):
        raise InvalidInputError(f"RF chain counts ({nrf_tx}, {nrf_rx}) exceed array or codebook size")

    gains = np.abs(rx_cb.beams.conj().T @ h @ tx_cb.beams) ** 2
    key = _tie_key(gains)
    n_rx, n_tx = gains.shape
    rx_idx, tx_idx = np.divmod(np.arange(gains.size), n_tx)
    # lexsort: last key is primary
    order = np.lexsort((tx_idx, rx_idx, -key.ravel()))

    n_pairs = min(nrf_tx, nrf_rx)
    sel_rx: list[int] = []
    sel_tx: list[int] = []
    pair_gains: list[float] = []
    for flat in order:
        m, n = int(rx_idx[flat]), int(tx_idx[flat])
        if m in sel_rx or n in sel_tx:
            continue
        sel_rx.append(m)
        sel_tx.append(n)
        pair_gains.append(float(gains[m, n]))
        if len(sel_rx) == n_pairs:
            break

    sel_tx += _fill(key[sel_rx, :].max(axis=0), sel_tx, nrf_tx - n_pairs)
    sel_rx += _fill(key[:, sel_tx[:n_pairs]].max(axis=1), sel_rx, nrf_rx - n_pairs)

    return RfSelection(
        f_rf=tx_cb.beams[:, sel_tx],
        w_rf=rx_cb.beams[:, sel_rx],
        pair_gains=np.asarray(pair_gains),
        tx_indices=tuple(sel_tx),
        rx_indices=tuple(sel_rx),
    )


def _fill(score: np.ndarray, taken: list[int], count: int) -> list[int]:
    if count <= 0:
        return []
    idx = np.arange(score.size)
    order = np.lexsort((idx, -score))
    return [int(i) for i in order if int(i) not in taken][:count]


def effective_channel(w_rf, h, f_rf) -> np.ndarray:
    """Channel seen through fixed RF beamformers, ``W_RF^H H F_RF``."""
    w_rf = as_matrix(w_rf, "W_RF")
    h = as_matrix(getattr(h, "matrix", h), "H")
    f_rf = as_matrix(f_rf, "F_RF")
    if w_rf.shape[0] != h.shape[0] or h.shape[1] != f_rf.shape[0]:
        raise InvalidInputError(
            f"cannot form W^H H F with shapes {w_rf.shape}, {h.shape}, {f_rf.shape}")
    return w_rf.conj().T @ h @ f_rf
