"""Zeros of high derivatives of rational functions and their Voronoi limit measure."""

from ._voronoizeros import (
    VoronoiDiagram,
    VZError,
    derivative_zeros,
    lemniscate_roots,
    numerator_degree,
    partial_fractions,
    potential_l1,
    run_cli,
    twopole_zeros,
)

__all__ = [
    "VoronoiDiagram",
    "VZError",
    "derivative_zeros",
    "lemniscate_roots",
    "numerator_degree",
    "partial_fractions",
    "potential_l1",
    "run_cli",
    "twopole_zeros",
]
