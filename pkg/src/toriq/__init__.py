"""toriq: exact lattice-combinatorial invariants of complete toric
varieties.

Everything is computed over arbitrary-precision integers and rationals:
Gale duals, polar duals, universal and unitary 1-coverings, multiplicity,
weight groups and moduli, Gorenstein indices, degrees, classification
families and the multiplicity bounds with their certificates.
"""

from .bounds import (
    BoundCertificate,
    akln_bound,
    certify,
    conjecture_bound,
    fake_wps_bound,
    fano_bound,
    mcmullen,
    qgorenstein_bound,
    sylvester,
    t_sequence,
)
from .classify import (
    QGorensteinFamily,
    SubgroupHandle,
    TorsionMatrix,
    enumerate_fano_family,
    enumerate_qgorenstein_family,
    quotient_by_subgroup,
    subgroups,
    torsion_matrix,
    unitary_cover,
)
from .covering import (
    CoveringData,
    WeightGroupData,
    analyze,
    degree,
    factor,
    fano_splitting,
    h_extension,
    mds_multiplicity,
    multiplicity,
    polar_weight,
    scaled_degree,
    universal_cover,
    weight_group,
    weight_modulus,
)
from .errors import ToriqError
from .fans import (
    FanData,
    GkzCone,
    eff_cone,
    face_fan,
    fan_from_point,
    is_complete,
    is_gorenstein_weight,
    is_qfano_weight,
    is_simplicial,
    mov_cone,
    nef_cone,
    qfano_representative,
)
from .gale import MatrixClassReport, classify_matrix, gale_dual, gl_equivalent
from .intmat import (
    FiniteAbelianGroup,
    IntMatrix,
    RatMatrix,
    SnfDecomposition,
    cokernel,
    hnf,
    kernel_basis,
    quotient_matrix,
    snf,
    transverse,
)
from .polytope import (
    HPolytope,
    VPolytope,
    facet_enumeration,
    fmatrix_index,
    interior_lattice_points,
    is_reflexive,
    normalized_volume,
    polar_dual,
    polar_vertex_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "CoveringData",
    "FanData",
    "FiniteAbelianGroup",
    "GkzCone",
    "HPolytope",
    "IntMatrix",
    "MatrixClassReport",
    "QGorensteinFamily",
    "RatMatrix",
    "SnfDecomposition",
    "SubgroupHandle",
    "TorsionMatrix",
    "ToriqError",
    "VPolytope",
    "WeightGroupData",
    "akln_bound",
    "analyze",
    "certify",
    "classify_matrix",
    "cokernel",
    "conjecture_bound",
    "degree",
    "eff_cone",
    "enumerate_fano_family",
    "enumerate_qgorenstein_family",
    "face_fan",
    "facet_enumeration",
    "factor",
    "fake_wps_bound",
    "fan_from_point",
    "fano_bound",
    "fano_splitting",
    "fmatrix_index",
    "gale_dual",
    "gl_equivalent",
    "h_extension",
    "hnf",
    "interior_lattice_points",
    "is_complete",
    "is_gorenstein_weight",
    "is_qfano_weight",
    "is_reflexive",
    "is_simplicial",
    "kernel_basis",
    "mcmullen",
    "mds_multiplicity",
    "mov_cone",
    "multiplicity",
    "nef_cone",
    "normalized_volume",
    "polar_dual",
    "polar_vertex_matrix",
    "polar_weight",
    "qfano_representative",
    "qgorenstein_bound",
    "quotient_by_subgroup",
    "quotient_matrix",
    "scaled_degree",
    "snf",
    "subgroups",
    "sylvester",
    "t_sequence",
    "torsion_matrix",
    "transverse",
    "universal_cover",
    "unitary_cover",
    "weight_group",
    "weight_modulus",
]
