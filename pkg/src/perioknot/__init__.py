"""Periodicity certificates for virtual knot diagrams.

The package is organized as a pipeline over signed Gauss codes:

* :mod:`perioknot.gauss` parses and renders the codes;
* :mod:`perioknot.periodic` detects rotational symmetry, labels it,
  and converts between a periodic diagram and its voltage quotient;
* :mod:`perioknot.wirtinger` builds the diagram group presentations,
  peripheral words, the quotient projection, and the induced
  automorphism;
* :mod:`perioknot.groupcore` supplies the exact algebra: finite-quotient
  enumeration, abelianization, Alexander polynomials;
* :mod:`perioknot.periods` assembles everything into a certification
  report and decides torus-knot periods;
* :mod:`perioknot.cli` is the command-line front end.
"""

from .gauss import (
    GaussCode,
    GaussCodeError,
    Pass,
    diagram_key,
    parse_gauss,
    render,
    render_raw,
    validate,
    writhe,
)
from .groupcore import (
    AbelianStructure,
    ConjugacyCheck,
    LaurentPoly,
    OracleBudgetError,
    OracleLimits,
    OrderCertificate,
    Witness,
    abelianization,
    alexander_polynomial,
    cycle_notation,
    endo_order_bound,
    enumerate_homs,
    nontriviality_witness,
    peripheral_conjugacy_check,
    smith_normal_form,
    word_image,
)
from .periodic import (
    PeriodicGaussCode,
    PeriodicStructure,
    VoltageGaussCode,
    canonical_labeling,
    detect_periodicity,
    enumerate_voltage_codes,
    quotient,
    random_voltage_code,
    symmetrize,
    validate_voltage_code,
)
from .periods import (
    CertificationReport,
    CheckResult,
    certify,
    torus_periods,
    torus_presentation,
)
from .wirtinger import (
    GeneratorMap,
    PeripheralPair,
    Presentation,
    Word,
    induced_automorphism,
    periodic_presentation,
    peripheral_pair,
    presentation,
    quotient_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianStructure",
    "CertificationReport",
    "CheckResult",
    "ConjugacyCheck",
    "GaussCode",
    "GaussCodeError",
    "GeneratorMap",
    "LaurentPoly",
    "OracleBudgetError",
    "OracleLimits",
    "OrderCertificate",
    "Pass",
    "PeripheralPair",
    "PeriodicGaussCode",
    "PeriodicStructure",
    "Presentation",
    "VoltageGaussCode",
    "Witness",
    "Word",
    "abelianization",
    "alexander_polynomial",
    "canonical_labeling",
    "certify",
    "cycle_notation",
    "detect_periodicity",
    "diagram_key",
    "endo_order_bound",
    "enumerate_homs",
    "enumerate_voltage_codes",
    "induced_automorphism",
    "nontriviality_witness",
    "parse_gauss",
    "periodic_presentation",
    "peripheral_conjugacy_check",
    "peripheral_pair",
    "presentation",
    "quotient",
    "quotient_presentation",
    "random_voltage_code",
    "render",
    "render_raw",
    "smith_normal_form",
    "symmetrize",
    "torus_periods",
    "torus_presentation",
    "validate",
    "validate_voltage_code",
    "word_image",
    "writhe",
    "__version__",
]
