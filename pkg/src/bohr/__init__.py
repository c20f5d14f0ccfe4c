"""Bounds and brute-force checks for multidimensional Bohr radii."""

from .bounds import (
    RadiusBound,
    asymptotics,
    ball_lower,
    general_lower,
    hypercone_upper,
    l1_bounds,
    monomial_domain_radius,
    polydisk_bounds,
    refined_cone_upper,
)
from .domains import DomainSpec
from .rootfind import CertifiedRoot, SeriesEquation, bisect_increasing
from .series import TruncatedSeries

__version__ = "0.1.0"
