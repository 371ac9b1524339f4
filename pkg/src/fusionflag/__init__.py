"""Fusion products and fusion flags for the Lie superalgebra osp(1,2n).

Everything is computed over exact rationals: root data, a matrix Chevalley
basis, the irreducible modules V(m delta_1), fusion filtrations of tensor
products of evaluation modules, Garland relation families and the
combinatorics of fusion flags.
"""

from .errors import ConsistencyError, DomainError, FusionFlagError, ParameterError
from .flags import (
    FlagPiece,
    check_main_theorem,
    dimension_identity,
    equivalent,
    flag_pieces,
    monomial_cmp,
    monotonicity_scan,
    pbw_basis_osp12,
    phi,
    preceq,
    predicted_qcharacter,
    r_beta_ell,
)
from .fusion import (
    EvalParams,
    FusionFiltration,
    QCharacter,
    check_parameter_independence,
    fusion_filtration,
    fusion_product,
    graded_character,
)
from .garland import (
    GarlandElement,
    RelationSet,
    check_relations,
    check_surjection_order,
    composition_set,
    even_fusion,
    garland_element,
    relation_set,
    super_fusion,
)
from .modcon import ModuleRep, defining_rep, highest_weight_module, sym_power_even
from .rootdata import (
    Root,
    RootSystem,
    Weight,
    bilinear,
    build_root_system,
    check_half_integer,
    coroot,
    even_dimension,
    kac_dimension,
)
from .superalg import ChevalleyBasis, SuperMatrix, bracket, matrix_realization, root_vector, verify_chevalley

__version__ = "0.1.0"
