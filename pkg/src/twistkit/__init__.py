"""Twisted Alexander invariants of links from planar diagrams."""

from .algebra import LaurentPoly, PolyMatrix, normalize_unit, smith_normal_form
from .diagram import LinkDiagram, parse_pd, read_pd, wirtinger
from .fox import GroupPresentation, Word
from .invariants import InvariantReport, build_complex, report
from .reps import MatrixRep, enumerate_perm_reps, perm_to_matrix, trivial_rep

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "normalize_unit",
    "smith_normal_form",
    "LinkDiagram",
    "parse_pd",
    "read_pd",
    "wirtinger",
    "GroupPresentation",
    "Word",
    "InvariantReport",
    "build_complex",
    "report",
    "MatrixRep",
    "enumerate_perm_reps",
    "perm_to_matrix",
    "trivial_rep",
]
