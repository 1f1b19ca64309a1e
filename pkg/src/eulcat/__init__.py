"""eulcat: exact Euler characteristics of finite categories, homotopy
colimits via the Grothendieck construction, and complexes of groups."""

from .eulerchar import (
    EulerVector,
    HypothesisNotMet,
    chi2_free_EI,
    chi_f_scwol,
    chi_scwol,
    groupoid_chi2,
)
from .fincat import (
    CatFunctor,
    FinCat,
    Morphism,
    NatIso,
    PredicateReport,
    classify,
    iso_classes,
    lower_link,
    opposite,
    path_counts,
    product,
    skeleton,
    validate,
)
from .groupact import (
    ComplexOfGroups,
    ScwolAction,
    chi_theorems,
    complex_of_groups,
    developability_check,
    equivariant_skeleton,
    haefliger_chi,
    hocolim_groups,
    quotient,
    skeletal_reduction,
    stabilizer,
    transport_groupoid,
    validate_action,
)
from .groups import FinGroup, GroupHom
from .hocolim import (
    CellSpectrum,
    PseudoDiagram,
    StrictDiagram,
    bar_spectrum,
    builtin_spectrum,
    check_hocolim_formula,
    formula_value,
    grothendieck,
    grothendieck_pseudo,
)
from .ratlin import RatMatrix, Rational, Weighting, chi_L, coweighting, solve_linear, weighting

__version__ = "0.1.0"

__all__ = [
    "CatFunctor",
    "CellSpectrum",
    "ComplexOfGroups",
    "EulerVector",
    "FinCat",
    "FinGroup",
    "GroupHom",
    "HypothesisNotMet",
    "Morphism",
    "NatIso",
    "PredicateReport",
    "PseudoDiagram",
    "RatMatrix",
    "Rational",
    "ScwolAction",
    "StrictDiagram",
    "Weighting",
    "bar_spectrum",
    "builtin_spectrum",
    "check_hocolim_formula",
    "chi2_free_EI",
    "chi_L",
    "chi_f_scwol",
    "chi_scwol",
    "chi_theorems",
    "classify",
    "complex_of_groups",
    "coweighting",
    "developability_check",
    "equivariant_skeleton",
    "formula_value",
    "groupoid_chi2",
    "grothendieck",
    "grothendieck_pseudo",
    "haefliger_chi",
    "hocolim_groups",
    "iso_classes",
    "lower_link",
    "opposite",
    "path_counts",
    "product",
    "quotient",
    "skeletal_reduction",
    "skeleton",
    "solve_linear",
    "stabilizer",
    "transport_groupoid",
    "validate",
    "validate_action",
    "weighting",
]
