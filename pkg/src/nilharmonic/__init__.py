"""
Nilharmonic

Exact computation of symplectically harmonic cohomology for nilmanifolds
given in Salamon notation, flexibility certificates along segments of
symplectic forms, and verification of the six-dimensional catalog.
"""

from .catalog import CatalogEntry, EntryReport, SweepReport, load_catalog, sweep, verify_entry
from .cohomology import CohomologySpace, NotClosedError, cohomology, cup_matrix, euler_check
from .config import Budget, Settings, load_settings
from .exterior import Form, MixedForm, Multivector, contract, parse_form, wedge
from .flexibility import (
    FlexibilityCertificate,
    PerturbationError,
    SturmProof,
    UnivariatePolynomial,
    ValueSetReport,
    certify_flexible,
    find_certificate,
    rank_perturbation,
    sturm_proof,
    value_sets,
)
from .harmonic import (
    HarmonicProfile,
    chain_level_h,
    harmonic_subspaces,
    primitive,
    theorem_iso_check,
    yamada_check,
)
from .liespec import LieAlgebraSpec, SalamonParseError, differential, lower_central_series, parse_salamon
from .symplectic import (
    DegenerateFormError,
    SymplecticForm,
    delta,
    lefschetz,
    lefschetz_dual,
    moduli_dimension,
    star,
    symplectic_cone,
    symplectic_existence,
)

__version__ = "1.0.0"
__author__ = "Nilharmonic Team"

__all__ = [
    "Budget",
    "CatalogEntry",
    "CohomologySpace",
    "DegenerateFormError",
    "EntryReport",
    "FlexibilityCertificate",
    "Form",
    "HarmonicProfile",
    "LieAlgebraSpec",
    "MixedForm",
    "Multivector",
    "NotClosedError",
    "PerturbationError",
    "SalamonParseError",
    "Settings",
    "SturmProof",
    "SweepReport",
    "SymplecticForm",
    "UnivariatePolynomial",
    "ValueSetReport",
    "certify_flexible",
    "chain_level_h",
    "cohomology",
    "contract",
    "cup_matrix",
    "delta",
    "differential",
    "euler_check",
    "find_certificate",
    "harmonic_subspaces",
    "lefschetz",
    "lefschetz_dual",
    "load_catalog",
    "load_settings",
    "lower_central_series",
    "moduli_dimension",
    "parse_form",
    "parse_salamon",
    "primitive",
    "rank_perturbation",
    "star",
    "sturm_proof",
    "symplectic_cone",
    "symplectic_existence",
    "sweep",
    "theorem_iso_check",
    "value_sets",
    "verify_entry",
    "wedge",
    "yamada_check",
]
