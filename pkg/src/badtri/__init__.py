"""Exact verification and tiling toolkit for badly approximable triangles."""

from .quadfield import Rat, QuadRat, sqrt2, sqrt3
from .cf import (
    FiniteCF,
    PeriodicCF,
    Cylinder,
    cylinder_interval,
    expand_quadratic,
    gauss_map,
    one_minus,
    cf_compare,
    bad_class,
    in_bad_class,
    expand_real,
    parse_cf,
    format_cf,
)
from .theorems import (
    ForbiddenPattern,
    forbidden_interval,
    excludes_b2,
    CaseRow,
    table_rows,
    verify_case_row,
    verify_case21_symbolic,
    verify_tables,
    SolutionTriple,
    MAIN_SOLUTIONS,
    MAIN2_SOLUTIONS,
    B22_SOLUTIONS,
    check_sum,
    insertion,
    extra_identity,
    generate_solutions,
    scalene_family,
    search_triples,
)
from .gifs import (
    Angles,
    PRESETS,
    DerivedConstants,
    Similitude,
    Prototile,
    TileInstance,
    Patch,
    Gifs,
    derive_constants,
    build_prototiles,
    build_gifs,
    closure_report,
    subdivide,
    epsilon_rule,
    point_set,
    stationary_sequence,
    stationary_nesting_ok,
    orientation_angles,
    patch_to_json,
)
from .delone import (
    PointSet,
    DiskRegion,
    TriangleUnionRegion,
    patch_region,
    delone_radii,
    check_uniform_discrete,
    check_relatively_dense,
    chabauty_fell_distance,
    restricted_convergence_check,
    star_discrepancy,
    orientation_discrepancy,
    analysis_report,
)

__version__ = "0.1.0"
