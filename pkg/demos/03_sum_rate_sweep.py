# %% [markdown]
# # Sum spectral efficiency versus SNR
#
# Monte Carlo sweep over SNR and canceller resolution, compared against ideal
# (perfectly isolated) full-duplex and half-duplex. Channel draws are shared
# across all curves, so differences between curves are paired.
#
# Run with `python demos/03_sum_rate_sweep.py`; a plot is saved when
# matplotlib is available.

# %%
import numpy as np

from fdxsim.harness import SimConfig, run_sweep, summarize

cfg = SimConfig(snr_grid_db=tuple(float(s) for s in range(-10, 31, 5)),
                asic_bits=(0, 1, 2, 4, 8), trials=200)
summary = summarize(run_sweep(cfg, threads=4).rows)

# %%
snrs = sorted({s["snr_db"] for s in summary})
table = {(s["snr_db"], s["asic_bits"]): s for s in summary}
header = "SNR dB | HD     | " + " | ".join(f"{b}-bit " for b in cfg.asic_bits) + " | ideal"
print(header)
for snr in snrs:
    first = table[snr, cfg.asic_bits[0]]
    row = " | ".join(f"{table[snr, b]['mean_sum']:6.2f}" for b in cfg.asic_bits)
    print(f"{snr:6g} | {first['mean_half_duplex']:6.2f} | {row} | {first['mean_ideal']:6.2f}")

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(snrs, [table[s, 0]["mean_ideal"] for s in snrs], "k-", label="ideal FD")
    for b in cfg.asic_bits:
        ax.plot(snrs, [table[s, b]["mean_sum"] for s in snrs], "o-" if b else "b--",
                label=f"FD, {b}-bit ASIC" if b else "FD, beamforming only")
    ax.plot(snrs, [table[s, 0]["mean_half_duplex"] for s in snrs], "k:", label="half-duplex")
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("sum spectral efficiency (bps/Hz)")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig("sum_rate_vs_snr.png", dpi=120)
    print("saved sum_rate_vs_snr.png")
