"""Parity-based invariants of virtual knots on Gauss diagrams.

The package models a virtual knot as a Gauss diagram (a clockwise circle
with signed, oriented chords), assigns every chord an integer parity from
signed intersection numbers, and derives from it families of numerical
invariants, flat-diagram formal sums of Vassiliev type, and a chord-move
rewriting system used to certify invariance empirically.
"""

from .catalog import CATALOG, KISHINO, MIYAZAWA, PRETZEL, VIRTUAL_TREFOIL, example
from .diagram import (
    Chord,
    DiagramSeedSpec,
    Endpoint,
    GaussDiagram,
    canonical_form,
    parse_gauss_code,
    random_diagram,
    serialize,
    validate,
)
from .errors import (
    BadIndex,
    BadModulus,
    BadTuple,
    GaussError,
    InapplicableMove,
    IncompleteResolution,
    InternalCheckError,
    NoSingularChords,
    NotIntersecting,
    ParseError,
    SingularChord,
    UnknownLabel,
    ValidationError,
    ZeroIndex,
)
from .flat import (
    DEFAULT_R3_BUDGET,
    FlatDiagram,
    FormalSum,
    LinkGaussDiagram,
    canonical_flat,
    flat_code,
    flatten,
    greedy_reduce,
    parse_flat,
    smooth,
    sum_add,
    sum_compare,
    sum_is_zero,
    sum_scale,
)
from .invariants import (
    InvariantProfile,
    a_set,
    a_signed,
    a_tuple_signed,
    invariant_profile,
    v_set,
    v_signed,
    v_tuple_signed,
    v_tuples,
)
from .moves import (
    MoveInstance,
    apply_move,
    enumerate_moves,
    inverse_move,
    random_walk,
)
from .parity import (
    DEFAULT_CONVENTION,
    IntConvention,
    crossing_change,
    int_of,
    intersects,
    orient_virtualize,
    parity,
    parity_map,
    parity_mod,
    sign_virtualize,
)
from .vassiliev import (
    degree_check,
    expand_singular,
    resolve,
    s_index,
    s_tuple,
    singular_labels,
    singularize,
)

__version__ = "0.1.0"
