"""Mahler measures of t(x^m - 1)y - (x^n - 1) via dilogarithms and polygon volumes."""

from .apoly import (ExponentSystem, IdentitySolution, build_system, canonical_alpha_beta,
                    check_neumann_zagier, identity_solutions, tilde_measure,
                    tilde_measure_check)
from .dilog import bloch_wigner, clausen_volume, orthoscheme_volume
from .errors import (AccuracyError, CertificationError, ConsistencyError, DomainError,
                     MahlerError, MalformedPolygonError, ResolutionError)
from .mahler import (Arc, ArcDecomposition, MeasureReport, arc_decomposition,
                     cassaigne_maillot, closed_form_measure, quadrature_measure)
from .polygons import (AdmissiblePolygon, alpha_to_polygon, enumerate_polygons,
                       polygon_to_alpha, polygon_vertices, polygon_volume,
                       verify_main_theorem)
from .spectrum import (FamilyParams, RootList, ThresholdEvent, UnitRoot, case_indices,
                       find_unit_roots, reciprocal_reduction, threshold_scan)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "AdmissiblePolygon", "Arc", "ArcDecomposition", "CertificationError",
    "ConsistencyError", "DomainError", "ExponentSystem", "FamilyParams", "IdentitySolution",
    "MahlerError", "MalformedPolygonError", "MeasureReport", "ResolutionError", "RootList",
    "ThresholdEvent", "UnitRoot", "alpha_to_polygon", "arc_decomposition", "bloch_wigner",
    "build_system", "canonical_alpha_beta", "case_indices", "cassaigne_maillot",
    "check_neumann_zagier", "clausen_volume", "closed_form_measure", "enumerate_polygons",
    "find_unit_roots", "identity_solutions", "orthoscheme_volume", "polygon_to_alpha",
    "polygon_vertices", "polygon_volume", "quadrature_measure", "reciprocal_reduction",
    "threshold_scan", "tilde_measure", "tilde_measure_check", "verify_main_theorem",
]
