"""Exact verification of a family of rational surfaces with many real forms.

Everything here computes over the Gaussian rationals with exact arithmetic:
polynomial identities are decided by Groebner-basis membership, equivalence
verdicts by solving for integer/rational witnesses, and each claim is packaged
into a pass/fail report a test suite or the command line can consume.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    ConjugationUndefined,
    FNotInIdeal,
    ForbiddenParameter,
    IdenticalPoints,
    NotACurveClass,
    NotAntiInvolution,
    NotAutomorphism,
    NotConjugationStable,
    NotIsomorphism,
    PointNotOnVariety,
)
from .gaussian import GaussianRational
from .ring import Poly, RatFunc, RingMap, VarTable, compose
from .groebner import (
    Ideal,
    MonomialOrder,
    buchberger,
    certified_unit,
    exact_quotient,
    member_with_denominators,
    normal_form,
)
from .reports import CertifiedReport, CheckItem, SuiteEntry, SuiteReport
from .surfaces import (
    AntiRegularMap,
    Center,
    PointConfiguration,
    RealStructure,
    SurfacePresentation,
    are_equivalent_structures,
    blowup_plane_config,
    is_cocycle,
    make_surface,
    modified_plane_config,
    real_locus_report,
    standard_conjugation,
    swap_real_structure,
    verify_coordinate_change,
    verify_swap_isomorphism,
)
from .intersection import (
    DivisorClass,
    EnumerationResult,
    NegativeCurveRecord,
    enumerate_negative_classes,
    exceptional_class,
    intersection_matrix,
    line_class,
)
from .classification import (
    ClassificationResult,
    CurveIncidenceGraph,
    IsoWitness,
    admissible_matchings,
    classify,
    equivalence_criterion,
    incidence_graph,
)
from .modification import (
    FiberPresentation,
    ModificationSpec,
    ReesPresentation,
    fiber_presentation,
    jacobian_rank_at,
    match_fiber_to_surface,
    rees_presentation,
    standard_modification,
)
from .checks import available_checks, resolve_check_id, run_check, run_suite

__all__ = [
    "__version__",
    # errors
    "BudgetExceeded", "ConjugationUndefined", "FNotInIdeal",
    "ForbiddenParameter", "IdenticalPoints", "NotACurveClass",
    "NotAntiInvolution", "NotAutomorphism", "NotConjugationStable",
    "NotIsomorphism", "PointNotOnVariety",
    # arithmetic and algebra
    "GaussianRational", "Poly", "RatFunc", "RingMap", "VarTable", "compose",
    "Ideal", "MonomialOrder", "buchberger", "certified_unit",
    "exact_quotient", "member_with_denominators", "normal_form",
    # reports
    "CertifiedReport", "CheckItem", "SuiteEntry", "SuiteReport",
    # surfaces
    "AntiRegularMap", "Center", "PointConfiguration", "RealStructure",
    "SurfacePresentation", "are_equivalent_structures", "blowup_plane_config",
    "is_cocycle", "make_surface", "modified_plane_config",
    "real_locus_report", "standard_conjugation", "swap_real_structure",
    "verify_coordinate_change", "verify_swap_isomorphism",
    # intersection theory
    "DivisorClass", "EnumerationResult", "NegativeCurveRecord",
    "enumerate_negative_classes", "exceptional_class", "intersection_matrix",
    "line_class",
    # classification
    "ClassificationResult", "CurveIncidenceGraph", "IsoWitness",
    "admissible_matchings", "classify", "equivalence_criterion",
    "incidence_graph",
    # modification
    "FiberPresentation", "ModificationSpec", "ReesPresentation",
    "fiber_presentation", "jacobian_rank_at", "match_fiber_to_surface",
    "rees_presentation", "standard_modification",
    # check registry
    "available_checks", "resolve_check_id", "run_check", "run_suite",
]
