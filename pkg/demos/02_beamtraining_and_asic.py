# %% [markdown]
# # Beam training, effective channels and the quantized canceller
#
# One trial with the default setup: DFT beam search fixes every RF beamformer,
# which shrinks each channel to an RF-chain-sized effective matrix. The analog
# canceller then replicates the 2x4 effective self-interference channel with
# M-bit weights.

# %%
import numpy as np

from fdxsim.asic import configure_asic, residual
from fdxsim.harness import SimConfig, draw_channels

cfg = SimConfig()
ch = draw_channels(cfg, trial_index=0)
print("H_ij", ch.h_ij.shape, "->", ch.h_tilde_ij.shape)
print("H_ki", ch.h_ki.shape, "->", ch.h_tilde_ki.shape)
print("H_ii", ch.h_ii.shape, "->", ch.h_tilde_ii.shape)

# %% [markdown]
# Residual self-interference energy, relative to the uncancelled effective
# channel, for a range of canceller resolutions. Each extra bit roughly halves
# the worst-case per-entry error.

# %%
h = ch.h_tilde_ii
for bits in (0, 1, 2, 4, 6, 8, 10):
    res = residual(h, configure_asic(h, bits))
    ratio_db = 20 * np.log10(np.linalg.norm(res) / np.linalg.norm(h))
    print(f"{bits:2d} bits: residual {ratio_db:7.2f} dB")

# %% [markdown]
# With 1 bit every weight is `(+-A/2) + j(+-A/2)`. Entries much smaller than
# the peak then pick up error instead of losing it, so the 1-bit canceller
# barely changes the residual on average.
