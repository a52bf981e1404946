"""Exact classical and quantum Schubert calculus on minuscule and
cominuscule homogeneous spaces, in the Schubert basis over the integers."""

from .root_system import (
    MarkedSpace,
    RootSystem,
    UnsupportedSpaceError,
    build_marked_space,
    build_root_system,
    classify_marked_node,
)
from .weyl import (
    CosetSystem,
    HasseDiagram,
    SchubertIndex,
    bruhat_leq,
    enumerate_cosets,
    longest_element,
    poincare_dual,
    reduce_word,
)
from .quiver import IdealSubquiver, Quiver, QuiverContext, build_quiver
from .schubert_algebra import (
    CompletionStallError,
    ContradictionError,
    GradedElement,
    StructureTable,
    chevalley_multiply,
    complete_table,
    giambelli_expand,
    schubert_degree,
)
from .quantum import (
    QuantumTable,
    complete_quantum_table,
    dmax_identities,
    fano_point_degree,
    higher_duality_check,
    hyperplane_power_identity,
    min_power_consistency,
    quantum_chevalley,
)
from .graded_presentation import (
    DegreeSlice,
    GradedPresentation,
    degree_slice,
    exceptional_presentation,
    rank_sequence,
    verify_isomorphism,
    verify_quantum_presentation,
)
from .spaces import Space, parse_space_label, space

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
