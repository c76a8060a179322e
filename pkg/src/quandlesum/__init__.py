"""Quandle colorings, cocycle state-sums and partition functions of knot diagrams."""

from .cohomology import (
    INTEGER,
    RATIONAL,
    CoefficientGroup,
    Cochain,
    boundary,
    chain,
    coboundary,
    cochain,
    cochain_from_json,
    cocycle_space,
    cohomologous,
    is_quandle_cocycle,
    quandle_homology,
    zero_cochain,
    zmod,
)
from .coloring import brute_force_colorings, count_colorings, enumerate_colorings, is_coloring
from .diagram import (
    Diagram,
    braid_closure,
    crossing_sign,
    faces,
    fundamental_presentation,
    load_diagram,
    parse_gauss,
    parse_pd,
)
from .errors import QuandleSumError
from .invariants import (
    boltzmann_weight,
    partition_function,
    state_sum,
    symmetric_function,
    weight_multiset,
)
from .moves import MoveSpec, apply_move, orbit_explore, transport_coloring
from .quandle import (
    FiniteQuandle,
    conjugation_quandle,
    dihedral_quandle,
    is_rack,
    make_quandle,
    trivial_quandle,
)

__version__ = "0.1.0"
