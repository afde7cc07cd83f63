# %% [markdown]
# # Channels seen by a full-duplex mmWave node
#
# Node i has a 32-element transmit array and a 32-element receive array,
# stacked 10 wavelengths apart. The desired links use a clustered ray model;
# the self-interference link mixes a near-field LOS matrix with a weak
# clustered NLOS part (Rician factor 20 dB).

# %%
import numpy as np

from fdxsim.channel import (
    ArrayGeometry,
    ClusterSpec,
    SiChannelConfig,
    gen_los_si,
    gen_si_channel,
    gen_sv_channel,
    stacked_arrays,
    steering_vector,
)
from fdxsim.numerics import make_rng

# %% [markdown]
# Steering vectors are unit norm, with phase progressing by
# `2*pi*d*cos(theta)` per element.

# %%
ula = ArrayGeometry(32)
a = steering_vector(ula, np.pi / 3)
print("norm:", np.linalg.norm(a).round(12), " first phases:", np.angle(a[:4, 0]).round(3))

# %% [markdown]
# A clustered channel has `E||H||_F^2 = Nt*Nr`. Check it on a few hundred draws.

# %%
rng = make_rng(0)
energies = [np.linalg.norm(gen_sv_channel(rng, ula, ula, ClusterSpec()).matrix) ** 2
            for _ in range(500)]
print(f"mean ||H||^2 / (Nt*Nr) = {np.mean(energies) / 32**2:.3f}")

# %% [markdown]
# The LOS self-interference matrix is deterministic. Its magnitude falls off
# with element distance, which ranges from 10 to about 18.8 wavelengths here.

# %%
tx, rx = stacked_arrays(32, 32, 10.0)
h_los = gen_los_si(tx, rx)
print("||H_LOS||^2 =", round(float(np.linalg.norm(h_los) ** 2), 6))
print("entry magnitude range:", np.abs(h_los).min().round(3), "-", np.abs(h_los).max().round(3))

h_ii = gen_si_channel(make_rng(1), SiChannelConfig(), tx, rx)
print("LOS share of SI energy:",
      round(float(np.linalg.norm(h_ii.meta["weights"][0] * h_los) ** 2 / np.linalg.norm(h_ii.matrix) ** 2), 3))
