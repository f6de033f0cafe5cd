"""Exact Nörlund summation: means, comparison coefficients, inclusion
matrices and the Riesz inclusion conditions at finite horizon."""
from .comparison import ComparisonCoefficients, comparison_coefficients, convolve, deconvolve, verify_Q_identity
from .families import FamilySpec, cesaro, delta, generate, geometric, harmonic, parse_family
from .kernel import (
    ConvergenceDiagnostic,
    Evidence,
    SequencePrefix,
    Verdict,
    WeightError,
    WeightSequence,
    limit_probe,
    to_scalar,
    validate_weights,
)
from .matrix import InclusionMatrixRow, SSTReport, apply_matrix, inclusion_matrix_row, inclusion_rows, sst_diagnostics
from .means import MethodRegistry, NorlundMethod, norlund_means, partial_sums, summability_report, unmean
from .riesz import RieszReport, inclusion_report, r1_profile, r2_profile, regularity_report

__version__ = "0.1.0"
