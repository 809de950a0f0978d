"""Multigraph decomposition by vertex fusion and loopless splitting.

Build certified Hamiltonian decompositions, factorizations and
embeddings of complete, complete multipartite and two-multiplicity
graphs. The central engine (``detach``) splits a fused graph back into
many vertices while preserving exact per-vertex, per-color and
per-pair quotas; every construction is re-checked by an independent
certificate verifier before it is returned.
"""

from .certify import (
    CertifyReport,
    ClassClaim,
    ClassVerdict,
    DecompositionCertificate,
    ROLE_FAIR_HAMILTONIAN,
    ROLE_HAMILTONIAN,
    ROLE_ONE_FACTOR,
    ROLE_R_FACTOR,
    certificate_from_json,
    certificate_to_json,
    certify,
)
from .coloring import (
    ColoringContractError,
    bee_coloring,
    evenly_equitable_coloring,
    verify_bee,
    verify_evenly_equitable,
)
from .constructions import (
    DecompositionRequest,
    FeasibilityReport,
    InfeasibleError,
    check_feasibility,
    decompose_two_class,
    embed_complete_paths,
    embed_factorization,
    factorize_complete,
    factorize_multipartite,
    ham_decompose_complete,
    ham_decompose_multipartite,
    ham_decompose_two_class,
    ham_plus_one_factor_two_class,
    walecki_direct,
)
from .detachment import (
    DetachmentContractError,
    DetachmentError,
    DetachmentReport,
    DetachmentResult,
    detach,
    qualifying_colors,
    verify_detachment,
)
from .laminar import LaminarContractError, LaminarFamily, select_subset, verify_laminar
from .multigraph import (
    AmalgamationSpec,
    EdgeColoring,
    GraphUsageError,
    Multigraph,
    amalgamate,
    coloring_from_json,
    coloring_to_json,
    complete_graph,
    graph_from_json,
    graph_to_json,
    two_class_graph,
    two_class_parts,
)

__all__ = [
    "AmalgamationSpec",
    "CertifyReport",
    "ClassClaim",
    "ClassVerdict",
    "ColoringContractError",
    "DecompositionCertificate",
    "DecompositionRequest",
    "DetachmentContractError",
    "DetachmentError",
    "DetachmentReport",
    "DetachmentResult",
    "EdgeColoring",
    "FeasibilityReport",
    "GraphUsageError",
    "InfeasibleError",
    "LaminarContractError",
    "LaminarFamily",
    "Multigraph",
    "ROLE_FAIR_HAMILTONIAN",
    "ROLE_HAMILTONIAN",
    "ROLE_ONE_FACTOR",
    "ROLE_R_FACTOR",
    "amalgamate",
    "bee_coloring",
    "certificate_from_json",
    "certificate_to_json",
    "certify",
    "check_feasibility",
    "coloring_from_json",
    "coloring_to_json",
    "complete_graph",
    "decompose_two_class",
    "detach",
    "embed_complete_paths",
    "embed_factorization",
    "evenly_equitable_coloring",
    "factorize_complete",
    "factorize_multipartite",
    "graph_from_json",
    "graph_to_json",
    "ham_decompose_complete",
    "ham_decompose_multipartite",
    "ham_decompose_two_class",
    "ham_plus_one_factor_two_class",
    "qualifying_colors",
    "select_subset",
    "two_class_graph",
    "two_class_parts",
    "verify_bee",
    "verify_detachment",
    "verify_evenly_equitable",
    "verify_laminar",
    "walecki_direct",
]

__version__ = "0.1.0"
