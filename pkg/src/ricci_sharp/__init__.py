"""Exact Ollivier-Ricci curvature of finite graphs and the graphs that meet the Bonnet-Myers bound."""

__version__ = "0.1.0"

from .antitree import (
    AntitreeSequence,
    EdgeLocus,
    RadialInner,
    RadialRoot,
    ScanResult,
    Spherical,
    antitree_graph,
    antitree_sharpness,
    closed_form_curvature,
    closed_form_curvatures,
    cross_validate,
    iter_even_range,
    scan_even_diameter,
    scan_even_range,
    scan_odd_small,
    verify_family_lemmas,
)
from .curvature import CurvatureReport, EdgeCurvature, curvature_sweep, kappa_lly, kappa_p, lly_idleness
from .exact import AffineForm, IntegralityResult, affine_eval, affine_integer_solutions, rat
from .graphs import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    all_pairs_distances,
    build_graph,
    cartesian_product,
    complement,
    cycle_graph,
    diameter,
    gab_graph,
    generate,
    matching_complement_decompose,
)
from .sharpness import (
    ClassificationReport,
    SharpnessVerdict,
    check_sharp_diameter2_lemmas,
    is_bm_sharp,
    verify_diameter2_classification,
)
from .transport import (
    DualCertificate,
    ProbabilityMeasure,
    TransportPlan,
    TransportResult,
    vertex_measure,
    verify_transport,
    wasserstein1,
)
