"""Combinatorics of decorated trivalent graphs.

Half-edge graphs with alpha/beta decorations, trivial modifications and IH
moves with exact decoration transport, congruence invariants, a normal-form
reducer, brute-force orbit oracles, and a text-file CLI.
"""

from .decoration import (
    AlphaMismatch,
    BadTarget,
    ConditionFails,
    Decoration,
    DecorationError,
    ExternalEdge,
    NotAtVertex,
    OddAlpha,
    Residue,
    TrivialMod,
    WeakDecoration,
    apply_trivial_mod,
    canonical_beta_planar,
    cycle_b,
    delta_edge,
    gamma,
    gcd_all,
    make_decoration,
    reduce_lift,
    trivial_mod_equivalent,
    validate_decoration,
    weak_class,
    weaken,
    zero_beta,
)
from .graph import (
    BadBoundaryMap,
    DanglingPair,
    DuplicateHalfEdge,
    GraphError,
    GraphStats,
    HalfEdgeInTwoVertices,
    InvalidCycle,
    NotConnected,
    OrientedCycle,
    SelfPairing,
    TrivalentGraph,
    boundary_isomorphism,
    build_graph,
    cycle_basis,
    graph_stats,
    is_connected,
)
from .invariants import (
    ConditionsFail,
    InvariantError,
    InvariantReport,
    LoopTuple,
    NormalForm,
    ReductionStuck,
    WrongGenus,
    a_tilde,
    arf,
    classify,
    decoration_class,
    equivalent,
    frak_C,
    normal_form,
    tuple_reduce,
)
from .moves import (
    GenusMismatch,
    IhMove,
    IhTrace,
    InvalidMove,
    LocalB,
    ModuliMismatch,
    MoveError,
    MoveScript,
    ScriptError,
    apply_script,
    ih_apply,
    ih_plan,
    local_B,
    local_B_prime,
    local_equivalent,
    refined_epsilon,
)
from .oracle import (
    ClassificationReport,
    FrontierExceeded,
    OrbitBounds,
    check_classification,
    move_orbit,
    sl2_orbit,
)
from .textio import (
    FileSyntaxError,
    SemanticError,
    TextError,
    dot_export,
    parse_decorated_graph,
    parse_script,
    serialize_decorated_graph,
    serialize_script,
)
from .cli import run_command

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
