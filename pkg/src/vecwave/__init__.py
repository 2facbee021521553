"""Orthonormal vector-valued wavelet bases built from scalar wavelets."""

from .errors import (
    CorruptionError,
    DimensionError,
    FileFormatError,
    NotOrthonormalError,
    ResolutionError,
    SizeGuardError,
    VecwaveError,
)
from .scalar import (
    SampledFunction,
    ScalarFilter,
    daubechies_filter,
    filter_by_name,
    filter_deviations,
    haar_filter,
    moment,
    quad_inner,
    refine_sample,
    sampled_from_csv,
    sampled_to_csv,
)
from .star import (
    MatrixM,
    VectorSampledFunction,
    apply_matrix,
    from_channels,
    hadamard,
    l2_norm,
    matrix_to_csv,
    norm1,
    separable_channels,
    stack_channels,
    star,
    star_with_matrix,
)
from .basis1d import (
    Component,
    MatrixFilter,
    Multiwavelet,
    VectorBasis1D,
    build_vector_basis,
    from_multiwavelet,
    matrix_refinement_filter,
    refine_residual,
    sample_vector_atom,
    to_multiwavelet,
    translate_gram_deviation,
)
from .tensor import (
    SampledField,
    SubbandFamily,
    TensorAtom,
    enumerate_families,
    factor_component,
    families_to_csv,
    field_inner,
    gram_matrix,
    sample_tensor_atom,
)
from .basisnd import (
    BasisND,
    FactorInnerCache,
    FamilyND,
    Partition,
    VectorAtomND,
    build_basis_nd,
    catalog_atoms,
    catalog_manifest,
    catalog_star_deviation,
    catalog_2x2,
    cyclic_partition,
    make_atom,
    random_partition,
    sample_vector_atom_nd,
    star_nd_separable,
)
from .transform import (
    Band,
    VectorDecomposition,
    VectorSignal,
    analyze_vector,
    decomposition_from_bytes,
    decomposition_manifest,
    decomposition_to_bytes,
    dwt2_channel,
    dwt_channel,
    idwt2_channel,
    idwt_channel,
    signal_from_bytes,
    signal_to_bytes,
    synthesize_vector,
    threshold_matrix,
)

__all__ = [
    "CorruptionError",
    "DimensionError",
    "FileFormatError",
    "NotOrthonormalError",
    "ResolutionError",
    "SizeGuardError",
    "VecwaveError",
    "SampledFunction",
    "ScalarFilter",
    "daubechies_filter",
    "filter_by_name",
    "filter_deviations",
    "haar_filter",
    "moment",
    "quad_inner",
    "refine_sample",
    "sampled_from_csv",
    "sampled_to_csv",
    "MatrixM",
    "VectorSampledFunction",
    "apply_matrix",
    "from_channels",
    "hadamard",
    "l2_norm",
    "matrix_to_csv",
    "norm1",
    "separable_channels",
    "stack_channels",
    "star",
    "star_with_matrix",
    "Component",
    "MatrixFilter",
    "Multiwavelet",
    "VectorBasis1D",
    "build_vector_basis",
    "from_multiwavelet",
    "matrix_refinement_filter",
    "refine_residual",
    "sample_vector_atom",
    "to_multiwavelet",
    "translate_gram_deviation",
    "SampledField",
    "SubbandFamily",
    "TensorAtom",
    "enumerate_families",
    "factor_component",
    "families_to_csv",
    "field_inner",
    "gram_matrix",
    "sample_tensor_atom",
    "BasisND",
    "FactorInnerCache",
    "FamilyND",
    "Partition",
    "VectorAtomND",
    "build_basis_nd",
    "catalog_atoms",
    "catalog_manifest",
    "catalog_star_deviation",
    "catalog_2x2",
    "cyclic_partition",
    "make_atom",
    "random_partition",
    "sample_vector_atom_nd",
    "star_nd_separable",
    "Band",
    "VectorDecomposition",
    "VectorSignal",
    "analyze_vector",
    "decomposition_from_bytes",
    "decomposition_manifest",
    "decomposition_to_bytes",
    "dwt2_channel",
    "dwt_channel",
    "idwt2_channel",
    "idwt_channel",
    "signal_from_bytes",
    "signal_to_bytes",
    "synthesize_vector",
    "threshold_matrix",
]

__version__ = "0.1.0"
