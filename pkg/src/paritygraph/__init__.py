"""Orientations of multigraphs with prescribed clockwise parities on even circuits."""

from .circuits import (
    Circuit,
    Parity,
    circuit_from_edges,
    clockwise_parity,
    cycle_space_basis,
    enumerate_circuits,
    even_circuits,
    is_even_circuit_connected,
)
from .graphs import (
    ContractionMap,
    Edge,
    Multigraph,
    Orientation,
    find_isomorphism,
    is_bipartite,
    is_two_connected,
    isomorphic,
)
from .solver import (
    IntractableCertificate,
    ParityAssignment,
    build_system,
    decide,
    is_intractable_set,
    verify_orientation,
)

__all__ = [
    "Circuit",
    "ContractionMap",
    "Edge",
    "IntractableCertificate",
    "Multigraph",
    "Orientation",
    "Parity",
    "ParityAssignment",
    "build_system",
    "circuit_from_edges",
    "clockwise_parity",
    "cycle_space_basis",
    "decide",
    "enumerate_circuits",
    "even_circuits",
    "find_isomorphism",
    "is_bipartite",
    "is_even_circuit_connected",
    "is_intractable_set",
    "is_two_connected",
    "isomorphic",
    "verify_orientation",
]
