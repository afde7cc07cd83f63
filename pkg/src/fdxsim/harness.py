"""Monte Carlo driver: one trial is a full beamtraining -> ASIC -> beamforming pass.

Channel draws for a trial depend only on ``(seed, trial_index)``, so every
SNR point and every ASIC bit depth sees the same channels (paired curves).
"""

from __future__ import annotations

import csv
import dataclasses
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asic import AsicConfig, AsicFilter, configure_asic, residual
from .beamforming import mmse_precoder, normalize_streams, svd_combiner, svd_precoder
from .beamtraining import beam_search, dft_codebook
from .channel import ArrayGeometry, ClusterSpec, SiChannelConfig, gen_si_channel, gen_sv_channel, stacked_arrays
from .errors import ConfigError, DecompositionError, DegeneratePrecoderError, NumericalError
from .link import LinkBudget, LinkChannels, LinkRates, half_duplex_sum, ideal_fd_rates, rate_downlink, rate_uplink
from .numerics import make_rng

log = logging.getLogger(__name__)

__all__ = [
    "RAW_HEADER",
    "SUMMARY_HEADER",
    "SimConfig",
    "SweepResult",
    "TrialDetails",
    "TrialResult",
    "draw_channels",
    "run_sweep",
    "run_trial",
    "simulate_trial",
    "summarize",
    "write_raw_csv",
    "write_summary_csv",
]

RAW_HEADER = ["trial", "snr_db", "asic_bits", "rate_ki", "rate_ij", "sum_rate", "ideal_sum", "half_duplex_sum"]
SUMMARY_HEADER = ["snr_db", "asic_bits", "mean_sum", "stderr_sum", "mean_ideal", "mean_half_duplex"]

# failures that only invalidate a single channel draw
TRIAL_ERRORS = (DegeneratePrecoderError, NumericalError, DecompositionError)


@dataclass(frozen=True)
class SimConfig:
    num_antennas: int = 32
    element_spacing_wavelengths: float = 0.5
    rf_chains: int = 2
    extra_tx_rf_chains_i: int = 2
    streams: int = 2
    kappa_db: float = 20.0
    snr_ii_db: float = 40.0
    si_separation_wavelengths: float = 10.0
    carrier_ghz: float = 28.0
    desired_rays: tuple[int, int] = (1, 10)
    desired_clusters: tuple[int, int] = (1, 6)
    si_rays: tuple[int, int] = (1, 6)
    si_clusters: tuple[int, int] = (1, 3)
    snr_grid_db: tuple[float, ...] = tuple(float(s) for s in range(-10, 31, 5))
    asic_bits: tuple[int, ...] = (0, 1, 2, 4, 8)
    trials: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.num_antennas < 1 or self.rf_chains < 1 or self.extra_tx_rf_chains_i < 0:
            raise ConfigError("antenna and RF chain counts must be positive")
        if self.nrf_tx_i > self.num_antennas:
            raise ConfigError("more RF chains than antennas")
        if not 1 <= self.streams <= self.rf_chains:
            raise ConfigError("streams must lie in [1, rf_chains]")
        if not self.snr_grid_db or not self.asic_bits:
            raise ConfigError("snr_grid_db and asic_bits must be non-empty")
        if any(b < 0 for b in self.asic_bits):
            raise ConfigError("asic_bits must be >= 0")
        try:
            self.desired_spec
            self.si_config
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def nrf_tx_i(self) -> int:
        return self.rf_chains + self.extra_tx_rf_chains_i

    @property
    def wavelength_m(self) -> float:
        return 299_792_458.0 / (self.carrier_ghz * 1e9)

    @property
    def desired_spec(self) -> ClusterSpec:
        return ClusterSpec(clusters_range=tuple(self.desired_clusters), rays_range=tuple(self.desired_rays))

    @property
    def si_config(self) -> SiChannelConfig:
        return SiChannelConfig(
            rician_factor_db=self.kappa_db,
            array_separation_wavelengths=self.si_separation_wavelengths,
            nlos_spec=ClusterSpec(clusters_range=tuple(self.si_clusters), rays_range=tuple(self.si_rays)),
        )


@dataclass(frozen=True)
class TrialResult:
    trial: int
    snr_db: float
    asic_bits: int
    rate_ki: float
    rate_ij: float
    sum_rate: float
    ideal_sum: float
    half_duplex_sum: float


@dataclass(frozen=True)
class TrialDetails:
    """Everything one trial produced, for inspection and tests."""

    result: TrialResult
    channels: LinkChannels
    asic: AsicFilter
    w_bb_i: np.ndarray
    w_bb_j: np.ndarray
    f_bb_i: np.ndarray
    f_bb_k: np.ndarray
    rates: LinkRates
    ideal: LinkRates


@dataclass
class SweepResult:
    rows: list[TrialResult]
    skipped: list[tuple[int, str]] = field(default_factory=list)


def draw_channels(cfg: SimConfig, trial_index: int) -> LinkChannels:
    """Channel draws and RF beam search for one trial."""
    rng = make_rng(cfg.seed, trial_index)
    n, d = cfg.num_antennas, cfg.element_spacing_wavelengths
    ula = ArrayGeometry(n, d)
    h_ij = gen_sv_channel(rng, ula, ula, cfg.desired_spec).matrix
    h_ki = gen_sv_channel(rng, ula, ula, cfg.desired_spec).matrix
    tx_i, rx_i = stacked_arrays(n, n, cfg.si_separation_wavelengths, d)
    h_ii = gen_si_channel(rng, cfg.si_config, tx_i, rx_i).matrix

    cb = dft_codebook(n)
    sel_ij = beam_search(h_ij, cb, cb, cfg.nrf_tx_i, cfg.rf_chains)
    sel_ki = beam_search(h_ki, cb, cb, cfg.rf_chains, cfg.rf_chains)
    return LinkChannels(h_ij=h_ij, h_ki=h_ki, h_ii=h_ii,
                        f_rf_i=sel_ij.f_rf, w_rf_j=sel_ij.w_rf,
                        f_rf_k=sel_ki.f_rf, w_rf_i=sel_ki.w_rf)


def _evaluate(cfg: SimConfig, ch: LinkChannels, trial_index: int, snr_db: float, bits: int) -> TrialDetails:
    ns = cfg.streams
    budget = LinkBudget(snr_db, snr_db, cfg.snr_ii_db)
    ht_ij, ht_ki, ht_ii = ch.h_tilde_ij, ch.h_tilde_ki, ch.h_tilde_ii

    asic = configure_asic(ht_ii, AsicConfig(bits))
    h_delta = residual(ht_ii, asic)

    w_bb_j = svd_combiner(ht_ij, ns)
    w_bb_i = svd_combiner(ht_ki, ns)
    f_bb_k = normalize_streams(ch.f_rf_k, svd_precoder(ht_ki, ns))
    h_des = w_bb_j.conj().T @ ht_ij
    h_int = w_bb_i.conj().T @ h_delta
    f_bb_i = normalize_streams(ch.f_rf_i, mmse_precoder(h_des, h_int, budget.snr_ij, budget.snr_ii, ns))

    rates = LinkRates(
        rate_uplink(w_bb_i, ch.w_rf_i, ch.h_ki, ch.f_rf_k, f_bb_k, ch.h_ii, ch.f_rf_i, f_bb_i,
                    asic, budget, ns, ns),
        rate_downlink(w_bb_j, ch.w_rf_j, ch.h_ij, ch.f_rf_i, f_bb_i, budget, ns),
    )
    ideal = ideal_fd_rates(ch, budget, ns, ns)
    result = TrialResult(trial=trial_index, snr_db=float(snr_db), asic_bits=int(bits),
                         rate_ki=rates.rate_ki, rate_ij=rates.rate_ij, sum_rate=rates.sum,
                         ideal_sum=ideal.sum, half_duplex_sum=half_duplex_sum(ideal))
    return TrialDetails(result, ch, asic, w_bb_i, w_bb_j, f_bb_i, f_bb_k, rates, ideal)


def simulate_trial(cfg: SimConfig, snr_db: float, bits: int, trial_index: int) -> TrialDetails:
    return _evaluate(cfg, draw_channels(cfg, trial_index), trial_index, snr_db, bits)


def run_trial(cfg: SimConfig, snr_db: float, bits: int, trial_index: int) -> TrialResult:
    """Run the full pipeline for one channel draw at one SNR and ASIC bit depth."""
    return simulate_trial(cfg, snr_db, bits, trial_index).result


def _trial_rows(cfg: SimConfig, trial_index: int):
    try:
        ch = draw_channels(cfg, trial_index)
        return [_evaluate(cfg, ch, trial_index, snr, bits).result
                for snr in cfg.snr_grid_db for bits in cfg.asic_bits], None
    except TRIAL_ERRORS as exc:
        log.warning("trial %d skipped: %s", trial_index, exc)
        return [], f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: SimConfig, threads: int = 1) -> SweepResult:
    """All (SNR, bits, trial) cells, ordered by SNR, then bits, then trial.

    A trial that hits a degenerate draw is dropped from every cell and listed
    in ``skipped``. Output does not depend on ``threads``.
    """
    indices = range(cfg.trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda t: _trial_rows(cfg, t), indices))
    else:
        outcomes = [_trial_rows(cfg, t) for t in indices]

    rows, skipped = [], []
    for t, (trial_rows, err) in zip(indices, outcomes):
        rows.extend(trial_rows)
        if err is not None:
            skipped.append((t, err))
    rows.sort(key=lambda r: (r.snr_db, r.asic_bits, r.trial))
    return SweepResult(rows, skipped)


def summarize(rows) -> list[dict]:
    """Per-(SNR, bits) means; ``stderr_sum`` is the sample std over sqrt(n)."""
    groups: dict[tuple[float, int], list[TrialResult]] = {}
    for r in rows:
        groups.setdefault((r.snr_db, r.asic_bits), []).append(r)
    out = []
    for (snr, bits), grp in sorted(groups.items()):
        sums = np.array([r.sum_rate for r in grp])
        stderr = float(np.std(sums, ddof=1) / math.sqrt(len(sums))) if len(sums) > 1 else 0.0
        out.append({
            "snr_db": snr,
            "asic_bits": bits,
            "mean_sum": float(np.mean(sums)),
            "stderr_sum": stderr,
            "mean_ideal": float(np.mean([r.ideal_sum for r in grp])),
            "mean_half_duplex": float(np.mean([r.half_duplex_sum for r in grp])),
        })
    return out


def _fmt_snr(x: float) -> str:
    return f"{x:g}"


def write_raw_csv(result: SweepResult, fh: io.TextIOBase) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RAW_HEADER)
    for r in result.rows:
        writer.writerow([r.trial, _fmt_snr(r.snr_db), r.asic_bits,
                         *(f"{getattr(r, k):.6f}" for k in RAW_HEADER[3:])])
    if result.skipped:
        fh.write(f"# skipped {len(result.skipped)} trial(s): "
                 + "; ".join(f"{t} ({why})" for t, why in result.skipped) + "\n")


def write_summary_csv(summary: list[dict], fh: io.TextIOBase) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for s in summary:
        writer.writerow([_fmt_snr(s["snr_db"]), s["asic_bits"],
                         *(f"{s[k]:.6f}" for k in SUMMARY_HEADER[2:])])


def config_fields() -> dict[str, dataclasses.Field]:
    return {f.name: f for f in dataclasses.fields(SimConfig)}
