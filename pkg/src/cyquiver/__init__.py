"""Exact computer algebra for superpotentials on quivers.

Decides, up to a degree bound, whether the Jacobi algebra of a superpotential
is graded Calabi-Yau of dimension 3, and builds the known good families.
"""

from .cycheck import (
    Verdict,
    check,
    condsup_check,
    exactness_check,
    hilbert_check,
    sample_superpotentials,
    structural_precheck,
)
from .dsl import ProblemFile, emit, parse
from .families import FamilySpec, build, test_matrix
from .groebner import RewriteSystem, complete, normal_form
from .hilbert import MatSeries, check_inequalities, expected_cy_series
from .pathalg import CyclicPoly, Path, PathPoly
from .quiver import Quiver, incidence_matrix

__all__ = [
    "CyclicPoly",
    "FamilySpec",
    "MatSeries",
    "Path",
    "PathPoly",
    "ProblemFile",
    "Quiver",
    "RewriteSystem",
    "Verdict",
    "build",
    "check",
    "check_inequalities",
    "complete",
    "condsup_check",
    "emit",
    "exactness_check",
    "expected_cy_series",
    "hilbert_check",
    "incidence_matrix",
    "normal_form",
    "parse",
    "sample_superpotentials",
    "structural_precheck",
    "test_matrix",
]
