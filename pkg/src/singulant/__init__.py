"""Singularity invariants of finitely presented commutative rings.

Compute Jacobian ideals, singular-locus certificates, depth, Loewy
length, minimal free resolutions, Ext-annihilation witnesses, and the
generation-time bound for the singularity category, with certificates
for every claim.
"""

from .errors import (
    Budget,
    BudgetExceededError,
    DEFAULT_BUDGET,
    ParseError,
    PreconditionError,
    SingulantError,
    StructuralError,
    UnsupportedInputError,
)
from .poly import GREVLEX, LEX, Monomial, MonomialOrder, Polynomial, PolynomialRing, PrimeField, QQ
from .groebner import GroebnerBasis, buchberger, normal_form
from .ideal_ops import (
    IdealHandle,
    RingPresentation,
    height,
    ideal_quotient,
    intersection,
    is_equidimensional,
    is_m_primary,
    krull_dimension,
    loewy_length,
    minimal_generators,
    minimal_primes_monomial,
    radical_membership,
    ring_dimension,
    socle,
)
from .jacobian import (
    IsolatedVerdict,
    JacobianData,
    SingularLocusCertificate,
    is_isolated_singularity,
    jacobian_data,
    jacobian_ideal,
    jacobian_matrix,
    singular_locus_certificate,
)
from .resolve import (
    FinitelyPresentedModule,
    FreeResolution,
    INFINITE,
    check_complex,
    check_exactness,
    depth,
    free_resolution,
    minimal_presentation,
    projective_dimension_over_ambient,
    ring_depth,
    syzygy_module,
)
from .homalg import (
    CaWitnessReport,
    ExtModule,
    annihilates_ext,
    ca_witness,
    default_corpus,
    ext_module,
    koszul_complex,
    koszul_cohomology,
    koszul_support_check,
    module_annihilator,
    stable_annihilation_test,
)
from .report import (
    AnnihilatorBounds,
    Certificate,
    Exclusion,
    GenerationTimeBound,
    LedgerEntry,
    RadicalComparison,
    annihilator_bounds,
    build_report,
    format_ledger,
    generation_time_bound,
    ledger_passed,
    radical_comparison_report,
    report_json,
    verify_paper_examples,
)
from .cli import main, parse_element, parse_ideal, parse_module, parse_ring

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorBounds",
    "Budget",
    "BudgetExceededError",
    "CaWitnessReport",
    "Certificate",
    "DEFAULT_BUDGET",
    "Exclusion",
    "ExtModule",
    "FinitelyPresentedModule",
    "FreeResolution",
    "GREVLEX",
    "GenerationTimeBound",
    "GroebnerBasis",
    "INFINITE",
    "IdealHandle",
    "IsolatedVerdict",
    "JacobianData",
    "LEX",
    "LedgerEntry",
    "Monomial",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "PolynomialRing",
    "PreconditionError",
    "PrimeField",
    "QQ",
    "RadicalComparison",
    "RingPresentation",
    "SingularLocusCertificate",
    "SingulantError",
    "StructuralError",
    "UnsupportedInputError",
    "annihilates_ext",
    "annihilator_bounds",
    "buchberger",
    "build_report",
    "ca_witness",
    "check_complex",
    "check_exactness",
    "default_corpus",
    "depth",
    "ext_module",
    "format_ledger",
    "free_resolution",
    "generation_time_bound",
    "height",
    "ideal_quotient",
    "intersection",
    "is_equidimensional",
    "is_isolated_singularity",
    "is_m_primary",
    "jacobian_data",
    "jacobian_ideal",
    "jacobian_matrix",
    "koszul_cohomology",
    "koszul_complex",
    "koszul_support_check",
    "krull_dimension",
    "ledger_passed",
    "loewy_length",
    "main",
    "minimal_generators",
    "minimal_presentation",
    "minimal_primes_monomial",
    "module_annihilator",
    "normal_form",
    "parse_element",
    "parse_ideal",
    "parse_module",
    "parse_ring",
    "projective_dimension_over_ambient",
    "radical_comparison_report",
    "radical_membership",
    "report_json",
    "ring_depth",
    "ring_dimension",
    "singular_locus_certificate",
    "socle",
    "stable_annihilation_test",
    "syzygy_module",
    "verify_paper_examples",
]
