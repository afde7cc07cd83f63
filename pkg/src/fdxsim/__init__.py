"""Link-level simulator for full-duplex mmWave MIMO with finite-resolution analog SIC.

One full-duplex node i transmits to j while receiving from k on the same band.
RF beams come from a DFT codebook search, a quantized analog canceller removes
part of the effective self-interference, and the baseband precoder at i
steers around what is left.
"""

from .asic import AsicConfig, AsicFilter, configure_asic, residual
from .beamforming import mmse_precoder, normalize_streams, svd_combiner, svd_precoder
from .beamtraining import beam_search, dft_codebook, effective_channel
from .channel import (
    ArrayGeometry,
    ClusterSpec,
    SiChannelConfig,
    gen_los_si,
    gen_si_channel,
    gen_sv_channel,
    stacked_arrays,
    steering_vector,
)
from .harness import SimConfig, TrialResult, run_sweep, run_trial, simulate_trial, summarize
from .link import LinkBudget, LinkRates, half_duplex_sum, ideal_fd_rates, rate_downlink, rate_uplink
from .numerics import make_rng, sample_cn, solve_hermitian, svd

__version__ = "0.1.0"
