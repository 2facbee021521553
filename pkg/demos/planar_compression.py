"""Two-channel planar transform with matrix-norm thresholding.

Analyzes a synthetic 2-channel 64x64 image, sweeps the threshold, and
reports how reconstruction error trades against zeroed coefficients.
"""

import numpy as np

from vecwave import (
    VectorSignal,
    analyze_vector,
    build_basis_nd,
    filter_by_name,
    synthesize_vector,
    threshold_matrix,
)

n = 64
yy, xx = np.meshgrid(np.arange(n) / n, np.arange(n) / n)
channel0 = np.sin(6.0 * np.pi * xx) * np.cos(4.0 * np.pi * yy)
channel1 = np.where((xx - 0.4) ** 2 + (yy - 0.55) ** 2 < 0.05, 1.0, -0.2)
sig = VectorSignal(np.stack([channel0, channel1]))

basis = build_basis_nd(filter_by_name("db3"), 2, 2)
dec = analyze_vector(sig, basis, 2)
print(f"db3 d=2 m=2 decomposition: {len(dec.bands)} bands, census {dec.census()}")
print(f"energy: signal {sig.energy():.6f}, coefficients {dec.energy():.6f}")

rec = synthesize_vector(dec, basis)
print(f"round-trip max error: {np.max(np.abs(rec.values - sig.values)):.2e}\n")

total = dec.census()
print("tau      kept    err(max)   err(l2 rel)")
for tau in (0.0, 0.01, 0.05, 0.2, 1.0):
    kept_dec = threshold_matrix(dec, tau)
    kept = sum(int(np.count_nonzero(band.values)) for band in kept_dec.bands)
    rec = synthesize_vector(kept_dec, basis)
    err = rec.values - sig.values
    rel = np.linalg.norm(err) / np.linalg.norm(sig.values)
    print(f"{tau:5.2f}  {kept:6d}/{total}  {np.max(np.abs(err)):.3e}  {rel:.3e}")
print("\ntau=0 keeps everything; large tau leaves only the approximation band")
