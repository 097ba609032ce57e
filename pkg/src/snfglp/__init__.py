"""Exact-arithmetic toolkit for good labelings of planar nested fractals."""

from .cyclotomic import (
    CycInt,
    IntPolynomial,
    cyc_add,
    cyc_div_int,
    cyc_eq,
    cyc_is_zero,
    cyc_mul,
    cyc_neg,
    cyc_reflect,
    cyc_rotate,
    cyc_sub,
    cyclotomic_polynomial,
    euler_phi,
    from_coeffs,
    to_cartesian,
    zero,
    zeta,
)
from .model import (
    CATALOG_NAMES,
    Cell,
    FractalSpec,
    ParseError,
    ScalingError,
    SpecError,
    ValidationReport,
    catalog,
    cells_conflict,
    derive_scaling,
    find_adjacencies,
    global_barycenter,
    make_spec,
    parse,
    serialize,
    shared_vertices,
    validate,
    vertices,
)
from .glp import (
    ConstraintGraph,
    DisconnectedSpec,
    KClassification,
    Labeling,
    LabelingError,
    SliceAssignment,
    Verdict,
    build_constraint_graph,
    check_labeling,
    classify_k,
    closed_slices,
    cycle_weight,
    decide_glp,
    decide_glp_even,
    decide_glp_odd,
    fundamental_cycles,
    glp_via_slices,
    odd_cycle_scan,
    slice_subspec,
    slices,
)
from .construct import (
    GenerationError,
    expand,
    generate_counterexample,
    generate_glp_example,
    random_valid_spec,
)
from .render import RenderOptions, render_svg

__version__ = "0.1.0"
