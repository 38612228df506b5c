"""sctk: saddle connections, Z-expansions and arithmetic checks on translation surfaces."""

from .exactfield import (
    QQ,
    FieldElement,
    Matrix2,
    golden_ratio,
    mahler_measure,
    minimal_polynomial,
    naive_height,
    parse_field_element,
    quadratic_field,
    weil_height,
)
from .interval import Interval
from .reals import PrecisionExhausted, Real, compare
from .surface import (
    GroupOrbitModel,
    Origami,
    SaddleVector,
    golden_l_model,
    l_shaped_origami,
    orbit_vectors,
    primitive_lattice,
    shortest_vector_check,
    theta_group_model,
    torus,
    trace_saddle_connections,
    validate_origami,
    volume,
)
from .zexp import (
    lattice_stream,
    origami_tree_stream,
    parse_theta,
    sandwich_check,
    tessellation_stream,
    z_expansion,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "FieldElement",
    "Matrix2",
    "golden_ratio",
    "mahler_measure",
    "minimal_polynomial",
    "naive_height",
    "parse_field_element",
    "quadratic_field",
    "weil_height",
    "Interval",
    "PrecisionExhausted",
    "Real",
    "compare",
    "GroupOrbitModel",
    "Origami",
    "SaddleVector",
    "golden_l_model",
    "l_shaped_origami",
    "orbit_vectors",
    "primitive_lattice",
    "shortest_vector_check",
    "theta_group_model",
    "torus",
    "trace_saddle_connections",
    "validate_origami",
    "volume",
    "lattice_stream",
    "origami_tree_stream",
    "parse_theta",
    "sandwich_check",
    "tessellation_stream",
    "z_expansion",
]
