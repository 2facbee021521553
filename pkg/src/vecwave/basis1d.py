"""Vector-valued wavelet bases of m-channel functions on the line.

A scalar orthonormal wavelet (phi, psi) yields an m-channel basis by
stacking phi with the first m-1 dyadic dilates of psi into one vector
scaling function Phi, and each later run of m consecutive psi scales into
one vector wavelet level.  The stacked family is orthonormal under the
matrix pairing because distinct channels live at distinct scalar scales and
equal channels reduce to scalar orthonormality.

Scale bookkeeping: channel r of the scaling atom sits at scalar scale
``r - 1`` (channel 1 is phi at scale 0), and channel r of wavelet level t
sits at scalar scale ``m t + m - 1 + (r - 1)``.  Together these cover every
scalar scale exactly once, so no detail information is dropped or
duplicated.  The translation index lands inside the dilated argument
(``psi(2^s x - k)``), matching the scalar basis atom at that scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotOrthonormalError, ResolutionError
from .scalar import ScalarFilter, quad_inner, scaled_atom_sample
from .star import MatrixM, VectorSampledFunction, stack_channels


class Component(NamedTuple):
    """One scalar factor: which atom and at what dyadic scale."""

    kind: str
    scale: int


@dataclass(frozen=True)
class VectorBasis1D:
    """Descriptor of the stacked m-channel basis for one scalar filter."""

    filter: ScalarFilter
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"channel count must be >= 1, got {self.m}")

    @property
    def dilation(self) -> int:
        return 2**self.m

    def scaling_components(self) -> tuple:
        return (Component("scaling", 0),) + tuple(
            Component("wavelet", s) for s in range(self.m - 1)
        )

    def wavelet_components(self, t: int) -> tuple:
        if t < 0:
            raise ValueError(f"wavelet level must be >= 0, got {t}")
        base = self.m * t + self.m - 1
        return tuple(Component("wavelet", base + r) for r in range(self.m))


def build_vector_basis(filt: ScalarFilter, m: int) -> VectorBasis1D:
    """Stack a scalar wavelet into an m-channel vector basis descriptor."""
    if not isinstance(filt, ScalarFilter):
        raise TypeError(f"filt must be a ScalarFilter, got {type(filt).__name__}")
    return VectorBasis1D(filt, m)


def _components_for(basis: VectorBasis1D, which) -> tuple:
    if which == "scaling":
        return basis.scaling_components()
    if isinstance(which, int) and not isinstance(which, bool):
        return basis.wavelet_components(which)
    raise ValueError(
        f"which must be 'scaling' or a wavelet level integer, got {which!r}"
    )


def sample_vector_atom(
    basis: VectorBasis1D, which, k: int, J: int
) -> VectorSampledFunction:
    """Sample one vector atom on the level-J grid.

    ``which`` is ``"scaling"`` or an integer wavelet level t >= 0.  Channel
    r holds ``2**(s_r/2) atom_r(2**s_r x - k)``; channels are padded onto
    their union support window.
    """
    comps = _components_for(basis, which)
    channels = [
        scaled_atom_sample(basis.filter, c.kind, c.scale, k, J) for c in comps
    ]
    return stack_channels(channels)


@dataclass(frozen=True)
class MatrixFilter:
    """Matrix taps of the vector two-scale relation at dilation 2^m.

    ``taps[i]`` is the m x m coefficient of the dilate translated by
    ``start + i``; the identity reads Phi(x) = sum_k P_k Phi(2^m x - k)
    with the right side's atoms taken L2-normalized (amplitude 2^(m/2)).
    """

    taps: np.ndarray
    start: int
    dilation: int

    def __post_init__(self):
        t = np.array(self.taps, dtype=float)
        if t.ndim != 3 or t.shape[1] != t.shape[2]:
            raise ValueError(f"taps must have shape (K, m, m), got {t.shape}")
        t.flags.writeable = False
        object.__setattr__(self, "taps", t)

    @property
    def m(self) -> int:
        return self.taps.shape[1]

    def coefficient(self, k: int) -> MatrixM:
        i = k - self.start
        if 0 <= i < len(self.taps):
            return MatrixM(self.taps[i])
        return MatrixM.zero(self.m)


def _compose_step(c: np.ndarray, c_start: int, h: np.ndarray, h_start: int) -> tuple:
    """One two-scale composition: new_k = sum_n c_n h_{k - 2n}."""
    L = len(h)
    out = np.zeros(2 * (len(c) - 1) + L)
    for n, cn in enumerate(c):
        out[2 * n : 2 * n + L] += cn * h
    return out, 2 * c_start + h_start


def matrix_refinement_filter(basis: VectorBasis1D) -> MatrixFilter:
    """Taps P_k expressing each channel through the dilation-2^m relation.

    Channel r at scale s expands through m - s two-scale steps down to
    scale-m translates of phi, so only the first tap column is nonzero.
    The first step uses the channel's own filter (h or g), every further
    step uses h.
    """
    filt = basis.filter
    m = basis.m
    rows = []
    for c in basis.scaling_components():
        if c.kind == "scaling":
            seq, start = filt.h.copy(), filt.h_start
            extra = m - 1
        else:
            seq, start = filt.g.copy(), filt.g_start
            extra = m - c.scale - 1
        for _ in range(extra):
            seq, start = _compose_step(seq, start, filt.h, filt.h_start)
        rows.append((seq, start))
    lo = min(s for _, s in rows)
    hi = max(s + len(q) for q, s in rows)
    taps = np.zeros((hi - lo, m, m))
    for r, (seq, start) in enumerate(rows):
        taps[start - lo : start - lo + len(seq), r, 0] = seq
    return MatrixFilter(taps, lo, basis.dilation)


def refine_residual(basis: VectorBasis1D, mf: MatrixFilter, J: int) -> float:
    """Largest pointwise vector 1-norm gap in the two-scale identity.

    Evaluates Phi and sum_k P_k times the L2-normalized dilated atoms on
    the level-J grid and returns max over grid points of the channelwise
    absolute sum of the difference.
    """
    m = basis.m
    if J < m:
        raise ResolutionError(f"need J >= {m} to sample the dilated side, got {J}")
    target = sample_vector_atom(basis, "scaling", 0, J)
    comps = basis.scaling_components()
    # Union window of every term on the right side.
    lo = target.start[0]
    hi = lo + target.values.shape[1]
    pieces = []
    for i in range(len(mf.taps)):
        k = mf.start + i
        for c_idx, comp in enumerate(comps):
            coeffs = mf.taps[i, :, c_idx]
            if not np.any(coeffs):
                continue
            atom = scaled_atom_sample(
                basis.filter, comp.kind, m + comp.scale, (2**comp.scale) * k, J
            )
            pieces.append((coeffs, atom))
            lo = min(lo, atom.start)
            hi = max(hi, atom.start + len(atom.values))
    rhs = np.zeros((m, hi - lo))
    for coeffs, atom in pieces:
        seg = slice(atom.start - lo, atom.start - lo + len(atom.values))
        rhs[:, seg] += np.outer(coeffs, atom.values)
    full = np.zeros((m, hi - lo))
    t0 = target.start[0] - lo
    full[:, t0 : t0 + target.values.shape[1]] = target.values
    return float(np.max(np.sum(np.abs(full - rhs), axis=0)))


@dataclass(frozen=True)
class Multiwavelet:
    """m scaling functions and m mother wavelets over one scalar filter."""

    filter: ScalarFilter
    scaling: tuple
    wavelets: tuple

    @property
    def m(self) -> int:
        return len(self.scaling)


def _sample_component(filt: ScalarFilter, comp: Component, k: int, J: int):
    """Sample comp translated by k in function argument: comp(x - k)."""
    return scaled_atom_sample(filt, comp.kind, comp.scale, k * 2**comp.scale, J)


def to_multiwavelet(basis: VectorBasis1D) -> Multiwavelet:
    """Unstack the vector basis into 2m scalar generator functions.

    The m channels of the scaling atom become the m scaling functions and
    the m channels of the level-0 wavelet atom become the m mother
    wavelets.  The dilation-2 ladder spanned by integer translates of the
    scaling functions is nested: each generator expands exactly through the
    scalar filter into the next-finer ladder rung, which is verified
    numerically here before returning.
    """
    mw = Multiwavelet(
        basis.filter, basis.scaling_components(), basis.wavelet_components(0)
    )
    dev = _nesting_deviation(mw)
    if dev > 1e-10:
        raise RuntimeError(f"two-scale nesting residual {dev:.3e} exceeds 1e-10")
    return mw


def _nesting_deviation(mw: Multiwavelet) -> float:
    """Max sampled residual of expanding each scaling generator one level up.

    phi expands through h, psi through g, and every higher dilate of psi
    equals sqrt(2) times the previous generator compressed by 2, so each
    expansion is finite and exact on dyadic grids.
    """
    filt = mw.filter
    J = max(c.scale for c in mw.scaling) + 2
    worst = 0.0
    for i, comp in enumerate(mw.scaling):
        target = _sample_component(filt, comp, 0, J)
        if comp.kind == "scaling" or comp.scale == 0:
            coeffs = filt.h if comp.kind == "scaling" else filt.g
            c_start = filt.h_start if comp.kind == "scaling" else filt.g_start
            terms = [
                (c, scaled_atom_sample(filt, "scaling", 1, c_start + n, J))
                for n, c in enumerate(coeffs)
            ]
        else:
            prev = mw.scaling[i - 1]
            dilate = scaled_atom_sample(
                filt, prev.kind, prev.scale + 1, 0, J
            )
            terms = [(1.0, dilate)]
        lo = min([target.start] + [a.start for _, a in terms])
        hi = max(
            [target.start + len(target.values)]
            + [a.start + len(a.values) for _, a in terms]
        )
        acc = np.zeros(hi - lo)
        for c, a in terms:
            acc[a.start - lo : a.start - lo + len(a.values)] += c * a.values
        full = np.zeros(hi - lo)
        full[target.start - lo : target.start - lo + len(target.values)] = target.values
        worst = max(worst, float(np.max(np.abs(full - acc))))
    return worst


def translate_gram_deviation(mw: Multiwavelet, J: int = 8, k_range: int = 2) -> float:
    """How far the 2m generators are from translate-orthonormality.

    Every pair of generator translates with |k| <= k_range is measured
    by quadrature on a grid J levels finer than the coarser-featured of
    the two components, so J is a resolution margin and fine-scale
    generators are never undersampled.  Returns the largest deviation
    from the identity pairing.
    """
    if J < 1:
        raise ValueError(f"need a resolution margin J >= 1, got {J}")
    filt = mw.filter
    comps = tuple(mw.scaling) + tuple(mw.wavelets)
    samples = {}

    def sampled(slot: int, k: int, grid: int):
        key = (slot, k, grid)
        if key not in samples:
            samples[key] = _sample_component(filt, comps[slot], k, grid)
        return samples[key]

    # Label by slot, not by descriptor: duplicated generators must pair to
    # zero, so they may not alias each other here.
    labels = [
        (slot, k)
        for slot in range(len(comps))
        for k in range(-k_range, k_range + 1)
    ]
    worst = 0.0
    for a_idx in range(len(labels)):
        for b_idx in range(a_idx, len(labels)):
            (sa, ka), (sb, kb) = labels[a_idx], labels[b_idx]
            grid = max(comps[sa].scale, comps[sb].scale) + J
            v = quad_inner(sampled(sa, ka, grid), sampled(sb, kb, grid))
            want = 1.0 if labels[a_idx] == labels[b_idx] else 0.0
            worst = max(worst, abs(v - want))
    return worst


def from_multiwavelet(mw: Multiwavelet, J: int = 8, tol: float = 1e-10) -> VectorBasis1D:
    """Reassemble a vector basis from multiwavelet generators.

    The generators are Gram-checked under integer translation first; a
    deviation above ``tol`` raises NotOrthonormalError.  The descriptor
    lists must form the laddered scale layout produced by
    :func:`to_multiwavelet`, which pins down the basis uniquely.
    """
    if len(mw.scaling) != len(mw.wavelets):
        raise ValueError(
            f"need equal generator counts, got {len(mw.scaling)} scaling and "
            f"{len(mw.wavelets)} wavelets"
        )
    dev = translate_gram_deviation(mw, J=J)
    if dev > tol:
        raise NotOrthonormalError(
            f"generator translates deviate from orthonormality by {dev:.3e}"
        )
    m = len(mw.scaling)
    basis = VectorBasis1D(mw.filter, m)
    if tuple(mw.scaling) != basis.scaling_components() or tuple(
        mw.wavelets
    ) != basis.wavelet_components(0):
        raise ValueError("generator scales do not form the laddered layout")
    return basis
