"""Channel generators for the desired links and the self-interference link.

Desired channels follow a clustered (Saleh-Valenzuela) ray sum over uniform
linear arrays. The self-interference channel mixes a deterministic near-field
line-of-sight matrix with a clustered NLOS part through a Rician factor.

All distances are in carrier wavelengths, so the carrier frequency only enters
through the geometry.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, InvalidInputError
from .numerics import sample_cn

__all__ = [
    "ArrayGeometry",
    "ChannelKind",
    "ChannelRealization",
    "ClusterSpec",
    "SiChannelConfig",
    "db_to_linear",
    "gen_los_si",
    "gen_si_channel",
    "gen_sv_channel",
    "rician_weights",
    "stacked_arrays",
    "steering_vector",
    "sv_channel_from_rays",
]


def db_to_linear(x_db: float) -> float:
    """Power ratio from decibels; ``-inf`` maps to 0."""
    return float(10.0 ** (float(x_db) / 10.0))


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array; element ``n`` sits at ``origin + n * spacing * axis``."""

    num_elements: int
    spacing_wavelengths: float = 0.5
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)
    axis: tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if int(self.num_elements) < 1:
            raise InvalidInputError("num_elements must be >= 1")
        if not self.spacing_wavelengths > 0:
            raise InvalidInputError("spacing_wavelengths must be > 0")
        if abs(np.linalg.norm(self.axis) - 1.0) > 1e-12:
            raise InvalidInputError("axis must be a unit vector")

    def positions(self) -> np.ndarray:
        """Element coordinates in wavelengths, shape ``(N, 3)``."""
        n = np.arange(self.num_elements)[:, np.newaxis]
        return np.asarray(self.origin) + n * self.spacing_wavelengths * np.asarray(self.axis)


@dataclass(frozen=True)
class ClusterSpec:
    """Ranges for the number of clusters/rays and the angular support (radians)."""

    clusters_range: tuple[int, int] = (1, 6)
    rays_range: tuple[int, int] = (1, 10)
    angle_support: tuple[float, float] = (0.0, np.pi)

    def __post_init__(self):
        for name in ("clusters_range", "rays_range"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise InvalidInputError(f"{name} must satisfy 1 <= lo <= hi, got {(lo, hi)}")
        lo, hi = self.angle_support
        if not 0.0 <= lo <= hi <= np.pi:
            raise InvalidInputError(f"angle_support must lie in [0, pi], got {(lo, hi)}")


@dataclass(frozen=True)
class SiChannelConfig:
    rician_factor_db: float = 20.0
    array_separation_wavelengths: float = 10.0
    nlos_spec: ClusterSpec = field(
        default_factory=lambda: ClusterSpec(clusters_range=(1, 3), rays_range=(1, 6))
    )

    def __post_init__(self):
        if not self.array_separation_wavelengths > 0:
            raise InvalidInputError("array_separation_wavelengths must be > 0")


class ChannelKind(enum.Enum):
    DESIRED = "desired"
    SELF_INTERFERENCE = "self_interference"


@dataclass(frozen=True)
class ChannelRealization:
    """One channel draw, ``matrix`` is ``Nr x Nt``."""

    matrix: np.ndarray
    kind: ChannelKind
    meta: dict = field(default_factory=dict, compare=False)


def steering_vector(geom: ArrayGeometry, angle: float) -> np.ndarray:
    """Unit-norm ULA response, shape ``(N, 1)``, angle measured from the array axis."""
    angle = float(angle)
    if not 0.0 <= angle <= np.pi:
        raise InvalidInputError(f"angle must lie in [0, pi], got {angle}")
    return _steering_matrix(geom, np.array([angle]))


def _steering_matrix(geom: ArrayGeometry, angles: np.ndarray) -> np.ndarray:
    # one column per angle
    n = np.arange(geom.num_elements)[:, np.newaxis]
    phase = 2 * np.pi * geom.spacing_wavelengths * n * np.cos(angles)[np.newaxis, :]
    return np.exp(1j * phase) / np.sqrt(geom.num_elements)


def sv_channel_from_rays(tx, rx, gains, aoas, aods, num_clusters=None, num_rays=None):
    """Clustered channel for explicitly given ray gains and angles.

    ``gains``, ``aoas`` and ``aods`` are flat arrays over all
    ``num_clusters * num_rays`` rays. When the counts are omitted the rays are
    treated as a single cluster.
    """
    gains = np.atleast_1d(np.asarray(gains, dtype=np.complex128))
    aoas = np.atleast_1d(np.asarray(aoas, dtype=float))
    aods = np.atleast_1d(np.asarray(aods, dtype=float))
    if not gains.shape == aoas.shape == aods.shape:
        raise InvalidInputError("gains, aoas and aods must have the same length")
    if num_clusters is None or num_rays is None:
        num_clusters, num_rays = 1, gains.size
    if num_clusters * num_rays != gains.size:
        raise InvalidInputError("gain count does not match num_clusters * num_rays")
    scale = np.sqrt(tx.num_elements * rx.num_elements / (num_clusters * num_rays))
    a_r = _steering_matrix(rx, aoas)
    a_t = _steering_matrix(tx, aods)
    return scale * (a_r * gains) @ a_t.conj().T


def gen_sv_channel(rng, tx: ArrayGeometry, rx: ArrayGeometry, spec: ClusterSpec) -> ChannelRealization:
    """Draw a clustered channel ``Nr x Nt`` with ``E||H||_F^2 = Nt * Nr``.

    The cluster and ray counts are drawn once per realization; every ray gets
    its own uniformly drawn AoA and AoD and a CN(0, 1) gain.
    """
    n_clust = int(rng.integers(spec.clusters_range[0], spec.clusters_range[1], endpoint=True))
    n_rays = int(rng.integers(spec.rays_range[0], spec.rays_range[1], endpoint=True))
    n_paths = n_clust * n_rays
    lo, hi = spec.angle_support
    aoas = rng.uniform(lo, hi, n_paths)
    aods = rng.uniform(lo, hi, n_paths)
    gains = sample_cn(rng, n_paths)
    h = sv_channel_from_rays(tx, rx, gains, aoas, aods, n_clust, n_rays)
    meta = {"num_clusters": n_clust, "num_rays": n_rays, "aoa": aoas, "aod": aods, "gains": gains}
    return ChannelRealization(h, ChannelKind.DESIRED, meta)


def stacked_arrays(num_tx: int, num_rx: int, separation_wavelengths: float,
                   spacing_wavelengths: float = 0.5):
    """Transmit and receive ULAs along x, the receive array lifted along z.

    Both arrays start at the same x coordinate (flush alignment).
    """
    tx = ArrayGeometry(num_tx, spacing_wavelengths)
    rx = ArrayGeometry(num_rx, spacing_wavelengths, origin=(0.0, 0.0, float(separation_wavelengths)))
    return tx, rx


def gen_los_si(tx: ArrayGeometry, rx: ArrayGeometry) -> np.ndarray:
    """Near-field spherical-wave LOS matrix, scaled so ``||H||_F^2 = Nt * Nr`` exactly."""
    diff = rx.positions()[:, np.newaxis, :] - tx.positions()[np.newaxis, :, :]
    r = np.linalg.norm(diff, axis=-1)
    if np.any(r <= 0):
        raise GeometryError("transmit and receive elements coincide")
    rho = np.sqrt(tx.num_elements * rx.num_elements / np.sum(1.0 / r**2))
    return (rho / r) * np.exp(-2j * np.pi * r)


def rician_weights(rician_factor_db: float) -> tuple[float, float]:
    """Amplitude weights ``(sqrt(k/(k+1)), sqrt(1/(k+1)))`` for the LOS and NLOS parts."""
    k = db_to_linear(rician_factor_db)
    if np.isinf(k):
        return 1.0, 0.0
    return float(np.sqrt(k / (k + 1.0))), float(np.sqrt(1.0 / (k + 1.0)))


def gen_si_channel(rng, cfg: SiChannelConfig, tx: ArrayGeometry, rx: ArrayGeometry) -> ChannelRealization:
    """Self-interference channel: Rician mix of near-field LOS and clustered NLOS.

    The LOS part uses the element positions of ``tx`` and ``rx`` as given;
    build them with :func:`stacked_arrays` to apply ``cfg``'s separation.
    The NLOS part is always drawn, so the generator advances identically
    whatever the Rician factor.
    """
    h_los = gen_los_si(tx, rx)
    nlos = gen_sv_channel(rng, tx, rx, cfg.nlos_spec)
    w_los, w_nlos = rician_weights(cfg.rician_factor_db)
    h = w_los * h_los + w_nlos * nlos.matrix
    meta = dict(nlos.meta, los=h_los, nlos=nlos.matrix, weights=(w_los, w_nlos))
    return ChannelRealization(h, ChannelKind.SELF_INTERFERENCE, meta)
