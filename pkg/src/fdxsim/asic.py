"""Finite-resolution analog self-interference canceller.

The canceller is a matrix of complex weights the size of the effective SI
channel. Each real and imaginary weight is set by a uniform midrise quantizer
with ``2**bits`` levels spanning ``[-A, A]``, where ``A`` is the largest
component magnitude of the matrix being replicated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .numerics import as_matrix, sample_cn

__all__ = ["AsicConfig", "AsicFilter", "configure_asic", "quantize", "residual"]


@dataclass(frozen=True)
class AsicConfig:
    """``bits = 0`` disables cancellation.

    ``error_std`` optionally adds CN(0, error_std**2) configuration error to
    each weight after quantization; it needs an ``rng`` at configure time.
    """

    bits: int = 8
    error_std: float = 0.0

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 0:
            raise InvalidInputError(f"bits must be a non-negative integer, got {self.bits}")
        if self.error_std < 0:
            raise InvalidInputError("error_std must be >= 0")


@dataclass(frozen=True)
class AsicFilter:
    replica: np.ndarray
    step: float
    amplitude: float
    bits: int


def quantize(x: np.ndarray, step: float, amplitude: float) -> np.ndarray:
    """Midrise quantizer on real input: odd multiples of ``step/2`` inside ``[-A, A]``."""
    q = step * (np.floor(x / step) + 0.5)
    return np.clip(q, -amplitude + step / 2, amplitude - step / 2)


def configure_asic(h_tilde_ii, cfg: AsicConfig | int, amplitude: float | None = None,
                   rng=None) -> AsicFilter:
    """Quantized replica of the effective SI channel.

    ``amplitude`` pins the quantizer range instead of deriving it from
    ``h_tilde_ii`` (e.g. a fixed hardware range, or re-quantizing an existing
    replica on its original grid).
    """
    if not isinstance(cfg, AsicConfig):
        cfg = AsicConfig(bits=cfg)
    h = as_matrix(h_tilde_ii, "H_tilde_ii")
    if amplitude is None:
        amp = float(max(np.abs(h.real).max(), np.abs(h.imag).max()))
    else:
        amp = float(amplitude)
        if not np.isfinite(amp) or amp < 0:
            raise InvalidInputError("amplitude must be finite and >= 0")
    if cfg.bits == 0 or amp == 0.0:
        return AsicFilter(np.zeros_like(h), 0.0, amp, cfg.bits)

    step = 2.0 * amp / 2.0**cfg.bits
    replica = quantize(h.real, step, amp) + 1j * quantize(h.imag, step, amp)
    if cfg.error_std > 0:
        if rng is None:
            raise InvalidInputError("error_std > 0 requires an rng")
        replica = replica + cfg.error_std * sample_cn(rng, h.size).reshape(h.shape)
    return AsicFilter(replica, step, amp, cfg.bits)


def residual(h_tilde_ii, filt: AsicFilter) -> np.ndarray:
    """What the canceller leaves behind: ``H_tilde_ii - replica``."""
    h = as_matrix(h_tilde_ii, "H_tilde_ii")
    if filt.replica.shape != h.shape:
        raise InvalidInputError(f"replica shape {filt.replica.shape} != channel shape {h.shape}")
    return h - filt.replica
