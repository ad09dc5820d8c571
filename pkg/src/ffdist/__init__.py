"""Exact harmonic analysis and distance-set experiments over F_q^d."""

from .errors import FFDistError
from .field import FieldSpec, field_from_order, is_prime, make_field
from .fourier import (
    ComplexGrid,
    fourier_transform,
    indicator_grid,
    inverse_transform,
    plancherel_residual,
    zeros_grid,
)
from .varieties import (
    DecayEntry,
    ExceptionalReport,
    PhaseSweep,
    PointSet,
    Polynomial,
    WeilSumResult,
    decay_spectrum,
    diagonal_polynomial,
    evaluate,
    exceptional_set,
    full_grid,
    make_polynomial,
    parse_polynomial,
    phase_sum,
    phase_sweep,
    points_from_coords,
    value_grid,
    variety,
    weil_sum,
)
from .distances import (
    CountingHistogram,
    DistanceReport,
    ErdosVerdict,
    FalconerVerdict,
    PinnedReport,
    ProductExperimentReport,
    counting_function,
    distance_set,
    paraboloid_lift,
    pinned_distances,
    product_set,
    product_set_experiment,
    verify_erdos,
    verify_falconer,
    verify_square_identity,
)

__all__ = [
    "FFDistError",
    "FieldSpec",
    "field_from_order",
    "is_prime",
    "make_field",
    "ComplexGrid",
    "fourier_transform",
    "indicator_grid",
    "inverse_transform",
    "plancherel_residual",
    "zeros_grid",
    "DecayEntry",
    "ExceptionalReport",
    "PhaseSweep",
    "PointSet",
    "Polynomial",
    "WeilSumResult",
    "decay_spectrum",
    "diagonal_polynomial",
    "evaluate",
    "exceptional_set",
    "full_grid",
    "make_polynomial",
    "parse_polynomial",
    "phase_sum",
    "phase_sweep",
    "points_from_coords",
    "value_grid",
    "variety",
    "weil_sum",
    "CountingHistogram",
    "DistanceReport",
    "ErdosVerdict",
    "FalconerVerdict",
    "PinnedReport",
    "ProductExperimentReport",
    "counting_function",
    "distance_set",
    "paraboloid_lift",
    "pinned_distances",
    "product_set",
    "product_set_experiment",
    "verify_erdos",
    "verify_falconer",
    "verify_square_identity",
]

__version__ = "0.1.0"
