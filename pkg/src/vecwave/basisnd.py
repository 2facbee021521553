"""Multivariate vector-valued wavelet families over a block partition.

Stacking m separable scalar atoms per vector atom requires splitting
{1..m}^d into m^(d-1) blocks of m distinct index tuples.  Any valid
partition yields star-orthonormal families; the cyclic Latin-square
partition is the deterministic default.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .basis1d import Multiwavelet, build_vector_basis, to_multiwavelet
from .errors import SizeGuardError
from .scalar import ScalarFilter, quad_inner, scaled_atom_sample
from .star import MatrixM, VectorSampledFunction
from .tensor import MAX_ENUM_D, MAX_ENUM_M, MAX_SAMPLE_D, factor_component


@dataclass(frozen=True)
class Partition:
    """m^(d-1) disjoint blocks of m distinct tuples covering {1..m}^d."""

    d: int
    m: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(tuple(a) for a in block) for block in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        full = set(product(range(1, self.m + 1), repeat=self.d))
        if len(blocks) != self.m ** (self.d - 1):
            raise ValueError(
                f"need {self.m ** (self.d - 1)} blocks, got {len(blocks)}"
            )
        seen = set()
        for block in blocks:
            if len(block) != self.m or len(set(block)) != self.m:
                raise ValueError(f"block {block} must hold m={self.m} distinct rows")
            if seen & set(block):
                raise ValueError("blocks must be pairwise disjoint")
            seen |= set(block)
        if seen != full:
            raise ValueError("blocks must cover {1..m}^d exactly")


def cyclic_partition(d: int, m: int) -> Partition:
    """The deterministic partition: row r of block beta shifts beta by r-1.

    Block indexed by beta in {1..m}^(d-1) holds rows
    alpha = (r, ((beta_i + r - 2) mod m) + 1, ...) for r = 1..m, a Latin
    square in each trailing coordinate.
    """
    if d < 1 or m < 1:
        raise ValueError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    blocks = []
    for beta in product(range(1, m + 1), repeat=d - 1):
        rows = tuple(
            (r,) + tuple(((b + r - 2) % m) + 1 for b in beta)
            for r in range(1, m + 1)
        )
        blocks.append(rows)
    return Partition(d, m, tuple(blocks))


def random_partition(d: int, m: int, seed: int) -> Partition:
    """A uniformly shuffled valid partition, reproducible from the seed."""
    if d < 1 or m < 1:
        raise ValueError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    rng = np.random.default_rng(seed)
    tuples = sorted(product(range(1, m + 1), repeat=d))
    order = rng.permutation(len(tuples))
    shuffled = [tuples[i] for i in order]
    blocks = tuple(
        tuple(shuffled[i * m : (i + 1) * m]) for i in range(m ** (d - 1))
    )
    return Partition(d, m, blocks)


@dataclass(frozen=True)
class FamilyND:
    """One vector-atom family: a wavelet-bit pattern paired with a block."""

    name: str
    eps: tuple
    block: int
    rows: tuple


@dataclass(frozen=True)
class VectorAtomND:
    """A concrete catalog atom: family shape plus level j and translation k."""

    eps: tuple
    block: int
    j: int
    k: tuple
    rows: tuple

    def __post_init__(self):
        if len(self.k) != len(self.eps):
            raise ValueError(
                f"k has {len(self.k)} coordinates, eps has {len(self.eps)}"
            )
        if self.j < 0:
            raise ValueError(f"level must be >= 0, got {self.j}")
        if any(len(row) != len(self.eps) for row in self.rows):
            raise ValueError("every row must have one index per coordinate")

    @property
    def d(self) -> int:
        return len(self.eps)

    @property
    def m(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class BasisND:
    """Catalog of d-variate m-channel families over one scalar filter."""

    mw: Multiwavelet
    d: int
    m: int
    partition: Partition
    families: tuple

    def scaling_families(self) -> tuple:
        return self.families[0]

    def wavelet_families(self) -> tuple:
        out = []
        for e in range(1, self.d + 1):
            out.extend(self.families[e])
        return tuple(out)

    def family_by_name(self, name: str) -> FamilyND:
        for fams in self.families:
            for fam in fams:
                if fam.name == name:
                    return fam
        raise KeyError(f"no family named {name!r}")


def build_basis_nd(
    filt: ScalarFilter, d: int, m: int, partition: Partition | None = None
) -> BasisND:
    """Assemble the family catalog from a scalar filter.

    Scaling families number m^(d-1) and live at the coarsest layer only;
    wavelet families number sum_e C(d,e) * m^(d-1) per level.
    """
    if d < 1 or m < 1:
        raise ValueError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    if d > MAX_ENUM_D or m > MAX_ENUM_M:
        raise SizeGuardError(
            f"basis guard is d <= {MAX_ENUM_D}, m <= {MAX_ENUM_M}; "
            f"got d={d}, m={m}"
        )
    mw = to_multiwavelet(build_vector_basis(filt, m))
    if partition is None:
        partition = cyclic_partition(d, m)
    if partition.d != d or partition.m != m:
        raise ValueError(
            f"partition is for d={partition.d}, m={partition.m}, "
            f"need d={d}, m={m}"
        )
    families = []
    n_psi = 0
    for e in range(d + 1):
        fams = []
        for eps in product((0, 1), repeat=d):
            if sum(eps) != e:
                continue
            for l, rows in enumerate(partition.blocks):
                if e == 0:
                    name = f"Phi{l + 1}"
                else:
                    n_psi += 1
                    name = f"Psi{n_psi}"
                fams.append(FamilyND(name, eps, l, tuple(rows)))
        families.append(tuple(fams))
    return BasisND(mw, d, m, partition, tuple(families))


def make_atom(family: FamilyND, j: int, k: tuple) -> VectorAtomND:
    """Instantiate a family at level j and translation k."""
    return VectorAtomND(family.eps, family.block, j, tuple(k), family.rows)


def catalog_2x2(basis: BasisND) -> list:
    """The eight explicit bivariate two-channel families, in order.

    Only defined for d = m = 2: two scaling families then six wavelet
    families, ordered by (e, eps, block).
    """
    if basis.d != 2 or basis.m != 2:
        raise ValueError(f"catalog needs d=m=2, got d={basis.d}, m={basis.m}")
    return [fam for fams in basis.families for fam in fams]


def sample_vector_atom_nd(
    atom: VectorAtomND, basis: BasisND, J: int
) -> VectorSampledFunction:
    """Sample all m channels of one atom densely on the level-J grid."""
    if atom.d > MAX_SAMPLE_D:
        raise SizeGuardError(
            f"dense sampling is limited to d <= {MAX_SAMPLE_D}, got d={atom.d}"
        )
    mw = basis.mw
    channels = []
    for row in atom.rows:
        factors = []
        for i in range(atom.d):
            comp = factor_component(mw, atom.eps[i], row[i], atom.j)
            factors.append(
                scaled_atom_sample(mw.filter, comp.kind, comp.scale, atom.k[i], J)
            )
        channels.append(factors)
    # Union window over all channels, then embed each separable product.
    lo = [min(ch[i].start for ch in channels) for i in range(atom.d)]
    hi = [
        max(ch[i].start + len(ch[i].values) for ch in channels)
        for i in range(atom.d)
    ]
    values = np.zeros((atom.m, *[hi[i] - lo[i] for i in range(atom.d)]))
    for r, factors in enumerate(channels):
        prod = factors[0].values
        for f in factors[1:]:
            prod = np.multiply.outer(prod, f.values)
        sl = tuple(
            slice(f.start - lo[i], f.start - lo[i] + len(f.values))
            for i, f in enumerate(factors)
        )
        values[(r, *sl)] = prod
    return VectorSampledFunction(tuple(lo), J, values)


class FactorInnerCache:
    """Memoized quadrature inner products of 1D scalar factors.

    Keys are (kind, scale, k) descriptors.  Each pair is measured on a
    grid J levels finer than the larger of the two scales, so J is a
    resolution margin and fine-scale factors are never undersampled.
    """

    def __init__(self, filt: ScalarFilter, J: int):
        if J < 1:
            raise ValueError(f"need a resolution margin J >= 1, got {J}")
        self.filt = filt
        self.J = J
        self._samples = {}
        self._inners = {}

    def _sample(self, key, grid: int):
        skey = key + (grid,)
        if skey not in self._samples:
            kind, scale, k = key
            self._samples[skey] = scaled_atom_sample(self.filt, kind, scale, k, grid)
        return self._samples[skey]

    def inner(self, key_a, key_b) -> float:
        if key_b < key_a:
            key_a, key_b = key_b, key_a
        pair = (key_a, key_b)
        if pair not in self._inners:
            grid = max(key_a[1], key_b[1]) + self.J
            self._inners[pair] = quad_inner(
                self._sample(key_a, grid), self._sample(key_b, grid)
            )
        return self._inners[pair]


def _factor_keys(atom: VectorAtomND, mw: Multiwavelet) -> list:
    keys = []
    for row in atom.rows:
        row_keys = []
        for i in range(atom.d):
            comp = factor_component(mw, atom.eps[i], row[i], atom.j)
            row_keys.append((comp.kind, comp.scale, atom.k[i]))
        keys.append(row_keys)
    return keys


def star_nd_separable(
    atom_a: VectorAtomND,
    atom_b: VectorAtomND,
    basis: BasisND,
    cache: FactorInnerCache,
) -> MatrixM:
    """The star pairing of two atoms via per-coordinate factorization.

    Entry (r, r') is the product over coordinates of scalar inner
    products, so the full matrix costs m^2 * d cached lookups instead of
    a dense d-dimensional quadrature.
    """
    keys_a = _factor_keys(atom_a, basis.mw)
    keys_b = _factor_keys(atom_b, basis.mw)
    m = atom_a.m
    out = np.empty((m, m))
    for r in range(m):
        for rp in range(m):
            v = 1.0
            for i in range(atom_a.d):
                v *= cache.inner(keys_a[r][i], keys_b[rp][i])
                if v == 0.0:
                    break
            out[r, rp] = v
    return MatrixM(out)


def catalog_atoms(basis: BasisND, max_level: int, k_range: int) -> list:
    """All catalog atoms: scaling at the base layer, wavelets per level.

    Translations run over {-k_range..k_range}^d; wavelet levels run over
    0..max_level.
    """
    ks = list(product(range(-k_range, k_range + 1), repeat=basis.d))
    atoms = []
    for fam in basis.scaling_families():
        atoms.extend(make_atom(fam, 0, k) for k in ks)
    for fam in basis.wavelet_families():
        for j in range(max_level + 1):
            atoms.extend(make_atom(fam, j, k) for k in ks)
    return atoms


def catalog_star_deviation(
    basis: BasisND, max_level: int, k_range: int, J: int
) -> float:
    """Largest deviation of pairwise star products from delta * identity.

    Runs over every ordered catalog pair using the separable fast path;
    distinct atoms must pair to the zero matrix, each atom to identity.
    J is the per-factor resolution margin (see FactorInnerCache).
    """
    atoms = catalog_atoms(basis, max_level, k_range)
    cache = FactorInnerCache(basis.mw.filter, J)
    keys = [_factor_keys(a, basis.mw) for a in atoms]
    m, d = basis.m, basis.d
    worst = 0.0
    for ia in range(len(atoms)):
        for ib in range(ia, len(atoms)):
            same = ia == ib
            for r in range(m):
                for rp in range(m):
                    v = 1.0
                    for i in range(d):
                        v *= cache.inner(keys[ia][r][i], keys[ib][rp][i])
                        if v == 0.0:
                            break
                    want = 1.0 if same and r == rp else 0.0
                    dev = abs(v - want)
                    if dev > worst:
                        worst = dev
    return worst


def catalog_manifest(basis: BasisND) -> str:
    """Plain-text family listing, one line per family.

    Block indices are 0-based positions into the partition's block list;
    rows are semicolon-separated index tuples in row order.
    """
    lines = [
        f"filter={basis.mw.filter.name} d={basis.d} m={basis.m} "
        f"dilation={2**basis.m} blocks={len(basis.partition.blocks)}"
    ]
    for fams in basis.families:
        for fam in fams:
            eps = "".join(str(b) for b in fam.eps)
            rows = ";".join(",".join(str(a) for a in row) for row in fam.rows)
            lines.append(
                f"family={fam.name} eps={eps} block={fam.block} rows={rows}"
            )
    return "\n".join(lines) + "\n"
