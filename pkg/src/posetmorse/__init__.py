"""Discrete Morse theory of Bestvina-Brady type on finite posets."""

from .core import Poset, antichain, chain, from_relations, join
from .errors import PosetMorseError
from .filtration import build_filtration, cw_summary, morse_filtration, removal_trace, verify_filtration
from .fileformat import PosetDocument, load_fixture, parse, serialize
from .morse import (
    Matching,
    MorseFunction,
    check_path_property,
    edge_admissible,
    functions_equivalent,
    height_function,
    induced_join_morse,
    is_acyclic,
    reversed_digraph,
    synthesize_function,
    validate_function,
    validate_matching,
)
from .search import exhaustive_min, greedy_matching, minimize_critical
from .simplicial import (
    HomologySummary,
    SimplicialComplex,
    Triviality,
    boundary_matrix,
    cone,
    euler_characteristic,
    face_poset,
    greedy_collapse,
    h_regular_check,
    order_complex,
    reduced_homology,
    sphere_check,
    triviality_verdict,
)

__version__ = "0.1.0"
