"""VC dimension of graph set systems defined by k-connected induced subgraphs."""
from .bounds import (
    BoundReport,
    SpanningTreeResult,
    bound_report,
    leaf_count_upper_bound,
    lower_bound_thm5,
    lower_bound_turan,
    max_leaf_spanning_tree,
    upper_bound_kcon,
)
from .config import DEFAULT_LIMITS, Limits
from .estimators import KConnectedVC, MaxLeafSpanningTree, VCBounds
from .exceptions import InputFormatError, KVCError, ScaleGuardError, VerificationError
from .graph import Graph
from .shatter import (
    ShatterCertificate,
    certify_shattered,
    is_shattered_bruteforce,
    is_shattered_poly,
    realizable,
    validate_certificate,
    vc_at_least,
    vc_dimension,
)

__all__ = [
    "BoundReport",
    "DEFAULT_LIMITS",
    "Graph",
    "InputFormatError",
    "KConnectedVC",
    "KVCError",
    "Limits",
    "MaxLeafSpanningTree",
    "ScaleGuardError",
    "ShatterCertificate",
    "SpanningTreeResult",
    "VCBounds",
    "VerificationError",
    "bound_report",
    "certify_shattered",
    "is_shattered_bruteforce",
    "is_shattered_poly",
    "leaf_count_upper_bound",
    "lower_bound_thm5",
    "lower_bound_turan",
    "max_leaf_spanning_tree",
    "realizable",
    "upper_bound_kcon",
    "validate_certificate",
    "vc_at_least",
    "vc_dimension",
]
