"""3-regular edge-colored graphs, cut-and-glue moves, and surface classification."""

from .core import (
    COLORS,
    Bipartition,
    BicoloredCycles,
    ColoredGraph,
    GemError,
    Seam,
    SeamError,
    ValidationError,
    are_isomorphic,
    bicolored_cycles,
    connected_sum,
    cycle_counts,
    extract_summands,
    find_seams,
    is_bipartite,
    is_connected,
    is_contracted,
    relabel,
    validate,
)
from .moves import (
    Cut,
    CutGlue,
    CutSpec,
    Glue,
    GlueSpec,
    Interchange,
    Move,
    MoveError,
    MoveTrace,
    TraceError,
    apply_move,
    canonical_graph,
    cut_and_glue,
    cut_spec,
    fingerprint,
    interchange,
    record_trace,
    simple_cut,
    simple_glue,
    verify_trace,
)
from .reduction import (
    CanonicalForm,
    CertificateError,
    IsoCert,
    RecombineCert,
    ReductionCertificate,
    ReductionError,
    TraceCert,
    canonical_of,
    form_L,
    form_P,
    form_T,
    make_L,
    make_P,
    make_P1,
    make_P2,
    make_T,
    make_T1,
    realize,
    reduce,
    rewrite_TP1_to_P3,
    split_off_P1,
    split_off_T1,
    verify_certificate,
)
from .surfaces import (
    ComplexStats,
    SurfaceClass,
    SurfaceError,
    classify_surface,
    complex_stats,
    crystallization_of,
    nonorientable,
    orientable,
    sphere,
)
from .catalog import (
    Catalog,
    CatalogEntry,
    CatalogError,
    ParityCertificate,
    count_bipartite_contracted,
    enumerate_contracted,
    parity_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
