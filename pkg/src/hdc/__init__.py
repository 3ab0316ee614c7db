"""Exact and log-domain computations for high-dimensional Euclidean geometry."""

from .ball import (
    asymptotic_volume,
    ball_volume,
    ball_volume_radius,
    prop5_bound,
    shell_fraction,
    sphere_area,
    sphere_area_radius,
)
from .centroids import (
    centroid_coefficient,
    coincident_pairs,
    skeleton_centroid_oracle,
    triangle_centroids,
)
from .diophantine import enumerate_coincidences, no_triple, q_form, verify_theorem10
from .errors import DomainError, FieldMismatchError, RangeWarning, ResourceLimitError
from .exact import QuadraticNumber, quad_to_decimal, sqrt_canonical
from .leakage import (
    first_leak_dimension,
    first_ratio_exceeding,
    growth_envelope,
    inner_radius,
    leakage_ratio,
)
from .scaled import LogScaled, lgamma_half, stirling_gamma

__version__ = "0.1.0"
