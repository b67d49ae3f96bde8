"""Exact distributions and moments of sums of randomly chosen roots of unity."""

from .bernoulli import MaskPMF, pmf_tilde, tilde_moments
from .coherence import CoherenceReport, partial_fourier_coherence, welch_bound
from .cyclotomic import CycElem, CycRat, CyclotomicContext, cyclotomic_polynomial, new_context
from .distribution import (
    ComponentPMF,
    ExactPMF,
    UniformityReport,
    abs_squared,
    pmf_components,
    pmf_transform,
    pmf_X,
    uniformity_report,
)
from .exceptions import BudgetExceededError, ContextMismatchError, UsageError
from .identities import IdentityCase, check_identity
from .moments import (
    MomentReport,
    component_moments,
    elementary_symmetric,
    moment,
    paper_square_expectation,
    power_sum,
    variance,
)
from .montecarlo import SampleEstimate, cross_check, sample_estimate
from .verify import (
    CaseReport,
    SweepReport,
    SweepSpec,
    closed_form_check,
    conjecture_scan,
    run_sweep,
    trig_sum_check,
    verify_case,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CaseReport",
    "CoherenceReport",
    "ComponentPMF",
    "ContextMismatchError",
    "CycElem",
    "CycRat",
    "CyclotomicContext",
    "ExactPMF",
    "IdentityCase",
    "MaskPMF",
    "MomentReport",
    "SampleEstimate",
    "SweepReport",
    "SweepSpec",
    "UniformityReport",
    "UsageError",
    "abs_squared",
    "check_identity",
    "closed_form_check",
    "component_moments",
    "conjecture_scan",
    "cross_check",
    "cyclotomic_polynomial",
    "elementary_symmetric",
    "moment",
    "new_context",
    "paper_square_expectation",
    "partial_fourier_coherence",
    "pmf_X",
    "pmf_components",
    "pmf_tilde",
    "pmf_transform",
    "power_sum",
    "run_sweep",
    "sample_estimate",
    "tilde_moments",
    "trig_sum_check",
    "uniformity_report",
    "variance",
    "verify_case",
    "welch_bound",
]
