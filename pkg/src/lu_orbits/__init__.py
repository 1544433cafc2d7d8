"""Local-unitary orbit dimensions of multipartite mixed states."""

from .numerics import (
    RankReport,
    TolerancePolicy,
    antihermitian_basis,
    hermitian_to_real_coords,
    kernel,
    kron,
    real_coords_to_hermitian,
)
from .stabilizer import (
    Classification,
    LocalAlgebraElement,
    StabilizerReport,
    action_matrix,
    center_subspace,
    check_group_element,
    orbit_dimension,
    stabilize,
)
from .states import (
    DensityMatrix,
    GeneratorSet,
    PartyDims,
    build_generators,
    build_witness,
    build_witness_multipartite,
    joint_centralizer_dim,
    random_density,
    special_state,
    to_state,
)

__version__ = "0.1.0"
