"""Exact A-infinity coalgebra structures on polygon chains and closed surfaces."""

from .chains import (
    Cell,
    ChainElement,
    DiagonalComplex,
    GradedOperation,
    TensorElement,
    TensorWord,
    apply_at,
    extend_sum,
    hom_differential,
)
from .polygon import PolygonComplex, Split, build_polygon, split_defect, split_polygons
from .relation import (
    RelationReport,
    check_relation,
    coassociativity_defect,
    reduced_defect,
    relation_defect,
    verify_all,
)
from .surface import (
    IllDefinedProjection,
    SchemeError,
    SurfaceComplex,
    SurfaceScheme,
    agreement,
    build_scheme,
    build_special,
    build_surface,
    closed_form_diagonal,
    closed_form_surface,
    cup_matrix,
    has_higher_structure,
    mod2_homology,
    parse_word,
    project,
    scheme_from_word,
)

__version__ = "0.1.0"
