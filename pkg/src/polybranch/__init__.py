"""Branch-counted polynomial root finding.

A small laboratory for root-finding algorithms whose control flow is
instrumented: every data-dependent branch a solver takes is recorded on a
trace, so the topological cost of an algorithm is a measured quantity that
can be compared against the (log2 d)^(2/3) - 1 lower bound.  Alongside the
branch-counted solvers live a branch-free power-iteration solver, an
escape-time renderer for Newton convergence fractals, and the cup-length
counting that produces the lower bound itself.
"""

from .complexity import (
    CupLengthCertificate,
    GeneratorPair,
    max_cup_length,
    pairs_within_weight,
    smale_bound,
    verify_lemma_claim,
)
from .closedform import (
    QuarticResolvent,
    quartic_resolvent,
    solve_cubic,
    solve_quadratic,
    solve_quartic,
)
from .fractal import (
    FractalGrid,
    convergence_duration,
    escape_times,
    render,
    rotated_frame,
    sector_duration,
    sector_statistics,
    write_image,
    write_pgm,
)
from .newton import (
    NewtonConfig,
    NewtonOutcome,
    NoConvergenceError,
    newton_root,
    sector_index,
    sector_seed,
    select_seed,
    solve_pure_power,
)
from .poly import (
    MonicPolynomial,
    RootTuple,
    default_coefficient_bound,
    deflate,
    evaluate,
    has_repeated_roots,
    in_coefficient_box,
    roots_to_poly,
)
from .powiter import (
    CompanionMatrix,
    PowerIterResult,
    ZeroEigenvalueError,
    companion,
    detect_equal_magnitude,
    power_iterate,
    solve_by_power_iteration,
)
from .report import RootReport
from .tracing import (
    BranchTrace,
    ComplexityReport,
    distinct_decision_labels,
    make_report,
    record_decision,
    worst_case_branches,
)

__version__ = "0.1.0"

__all__ = [
    "BranchTrace",
    "CompanionMatrix",
    "ComplexityReport",
    "CupLengthCertificate",
    "FractalGrid",
    "GeneratorPair",
    "MonicPolynomial",
    "NewtonConfig",
    "NewtonOutcome",
    "NoConvergenceError",
    "PowerIterResult",
    "QuarticResolvent",
    "RootReport",
    "RootTuple",
    "ZeroEigenvalueError",
    "companion",
    "convergence_duration",
    "default_coefficient_bound",
    "deflate",
    "detect_equal_magnitude",
    "distinct_decision_labels",
    "escape_times",
    "evaluate",
    "has_repeated_roots",
    "in_coefficient_box",
    "make_report",
    "max_cup_length",
    "newton_root",
    "pairs_within_weight",
    "power_iterate",
    "quartic_resolvent",
    "record_decision",
    "render",
    "roots_to_poly",
    "rotated_frame",
    "sector_duration",
    "sector_index",
    "sector_seed",
    "sector_statistics",
    "select_seed",
    "smale_bound",
    "solve_by_power_iteration",
    "solve_cubic",
    "solve_pure_power",
    "solve_quadratic",
    "solve_quartic",
    "verify_lemma_claim",
    "worst_case_branches",
    "write_image",
    "write_pgm",
]
