from .gadget import GadgetGraph
from .multicover import (
    MulticoverInstance,
    multicover_to_graph,
    multicover_witness,
    solve_multicover,
    verify_multicover_reduction,
)
from .planar import (
    assignment_from_shattered_set,
    build_clause_gadget,
    build_connector,
    build_variable_gadget,
    check_removed_structure,
    default_p,
    miniature_probe,
    monotone1in3_to_planar_graph,
    removed_set,
    shattered_set_from_assignment,
)

__all__ = [
    "GadgetGraph",
    "MulticoverInstance",
    "assignment_from_shattered_set",
    "build_clause_gadget",
    "build_connector",
    "build_variable_gadget",
    "check_removed_structure",
    "default_p",
    "miniature_probe",
    "monotone1in3_to_planar_graph",
    "multicover_to_graph",
    "multicover_witness",
    "removed_set",
    "shattered_set_from_assignment",
    "solve_multicover",
    "verify_multicover_reduction",
]
