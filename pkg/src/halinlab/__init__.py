"""Build, search for, and certify homeomorphically irreducible spanning
trees (HISTs) and spanning generalized Halin subgraphs (SGHGs)."""

from .certify import (
    HalinCertificate,
    StarPack,
    TreeCertificate,
    is_generalized_halin,
    is_hist,
    sghg_invariants,
    verify_star_pack,
    wheel_minor,
)
from .errors import (
    BudgetExhausted,
    FalsificationError,
    HalinLabError,
    ParseError,
    PreconditionError,
)
from .graph import (
    Graph,
    VertexSetPair,
    bipartition,
    degree_between,
    vertex_connectivity,
    vertex_connectivity_at_least,
)
from .io_formats import (
    CertificateDocument,
    emit_certificate,
    emit_edge_list,
    emit_graph6,
    parse_certificate,
    parse_edge_list,
    parse_graph6,
)
from .search import (
    SearchBudget,
    SearchResult,
    balanced_leaf_hist_exists,
    find_hist,
    find_sghg,
    ham_path_oracle,
)

__version__ = "0.1.0"
