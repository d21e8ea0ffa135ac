"""Seeded Newton iteration for t**d = S, with branch-counted seed selection.

The plane of right-hand sides S splits into d angular sectors of width
2*pi/d; sector k (centered at angle 2*pi*k/d) is served by the seed
exp(2j*pi*k/d**2).  Rotating S by exp(-2j*pi*k/d) conjugates the Newton map
exactly onto the seed-1 iteration, which is why one calibrated sector -- the
one around the positive real axis, forced by conjugation symmetry and by
monotone convergence on that axis -- determines all the others.

Choosing the sector is the only data-dependent branching in the solver: a
chain of at most d - 1 membership tests, recorded on the trace.  Iteration
counts and convergence checks are not decisions.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from .tracing import BranchTrace, record_decision

_EPS = sys.float_info.epsilon
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NewtonConfig:
    """Stopping parameters shared by every Newton-driven routine."""

    threshold_r: float = 0.1
    max_iters: int = 100
    divergence_bailout: float = 1e8

    def __post_init__(self) -> None:
        if not (self.threshold_r > 0):
            raise ValueError("threshold_r must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not (self.divergence_bailout > 1):
            raise ValueError("divergence_bailout must exceed 1")


DEFAULT_CONFIG = NewtonConfig()


@dataclass(frozen=True)
class NewtonOutcome:
    converged: bool
    value: complex
    iterations: int
    reason: str | None = None


class NoConvergenceError(RuntimeError):
    """Raised when a solver needed a radical that failed to converge."""

    def __init__(self, outcome: NewtonOutcome, what: str = "newton iteration"):
        super().__init__(f"no convergence: {what} stopped ({outcome.reason})")
        self.outcome = outcome


def residual_tolerance(d: int, magnitude: float, threshold_r: float) -> float:
    """Residual bound |x**d - S| equivalent to landing within threshold_r.

    The nominal scale threshold_r**d * d * max(1, |S|) is floored at the
    double-precision noise of evaluating x**d - S itself, without which tight
    thresholds or large degrees could never be declared converged.
    """
    return d * max(1.0, magnitude) * max(threshold_r ** d, 64.0 * d * _EPS)


def newton_root(
    d: int,
    radicand: complex,
    seed: complex,
    config: NewtonConfig | None = None,
    trace: BranchTrace | None = None,
) -> NewtonOutcome:
    """Iterate x <- x - (x**d - S)/(d x**(d-1)) from ``seed``.

    Converged means the step shrank below threshold_r while the residual
    dropped below ``residual_tolerance``; the value is then within about
    threshold_r of a true d-th root of S.  The iteration itself is branch
    free -- each pass through the loop is noted as computation, not decision.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    cfg = config or DEFAULT_CONFIG
    x = complex(seed)
    if x == 0:
        raise ValueError("seed at the critical point 0 of the iteration map")
    S = complex(radicand)
    tol = residual_tolerance(d, abs(S), cfg.threshold_r)
    xp = x ** (d - 1)
    if abs(xp * x - S) < tol:
        return NewtonOutcome(True, x, 0)
    for n in range(1, cfg.max_iters + 1):
        x_new = x - (xp * x - S) / (d * xp)
        if trace is not None:
            trace.note_computation()
        if abs(x_new) > cfg.divergence_bailout:
            return NewtonOutcome(False, x_new, n, "divergence")
        xp_new = x_new ** (d - 1)
        if abs(x_new - x) < cfg.threshold_r and abs(xp_new * x_new - S) < tol:
            return NewtonOutcome(True, x_new, n)
        if x_new == 0:
            return NewtonOutcome(False, x_new, n, "critical point")
        x, xp = x_new, xp_new
    return NewtonOutcome(False, x, cfg.max_iters, "max iterations")


def sector_seed(d: int, k: int) -> complex:
    """Seed serving sector k: exp(2j*pi*k/d**2)."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    if not 0 <= k < d:
        raise ValueError("sector index out of range")
    if k == 0:
        return 1 + 0j
    # Quarter-turn seeds come out exact (the quadratic's second seed is the
    # literal i, not a floating approximation of it).
    if (4 * k) % (d * d) == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * k) // (d * d) % 4]
    return cmath.exp(2j * math.pi * k / (d * d))


def _normalized_phase(z: complex) -> float:
    """Argument in [-pi, pi) -- the boundary pi is folded to -pi."""
    phi = cmath.phase(z)
    return -math.pi if phi == math.pi else phi


def in_sector(d: int, S: complex, k: int) -> bool:
    """Membership test: arg(S * exp(-2j*pi*k/d)) in [-pi/d, pi/d).

    Half-open intervals make the d sectors a partition of the punctured
    plane, boundary rays going to the sector they open.
    """
    if S == 0:
        raise ValueError("zero has only the trivial root")
    if k == 0:
        w = S
    else:
        w = S * cmath.exp(-2j * math.pi * k / d)
    phi = _normalized_phase(w)
    edge = math.pi / d
    return -edge <= phi < edge


def sector_index(d: int, S: complex) -> int:
    """Index of the sector containing S, via the same chain select_seed walks."""
    for k in range(d - 1):
        if in_sector(d, S, k):
            return k
    return d - 1


def select_seed(
    d: int,
    S: complex,
    trace: BranchTrace | None = None,
) -> tuple[complex, int]:
    """Pick the Newton seed for t**d = S by walking the sector chain.

    Records between 1 and d - 1 membership decisions (exactly 1 when d = 2);
    landing in the last sector is the fall-through, costing no extra test.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    S = complex(S)
    if S == 0:
        raise ValueError("zero has only the trivial root")
    sector = d - 1
    for k in range(d - 1):
        if record_decision(trace, f"seed_sector_{k}", in_sector(d, S, k)):
            sector = k
            break
    return sector_seed(d, sector), sector


def scaled_root(
    d: int,
    S: complex,
    config: NewtonConfig | None = None,
    trace: BranchTrace | None = None,
) -> complex:
    """One d-th root of S != 0: sector-seeded Newton on a range-reduced input.

    S is divided by an exact power of 2**d chosen to put the magnitude in
    (2**-(d+1), 1]; the root scales back by the matching power of 2, also
    exactly.  Scaling by a positive real leaves arg S -- and with it every
    sector decision -- untouched.  The sub-unit window matters: a magnitude
    above 1 makes the first step overshoot to about |S|/d (losing the seed's
    angular alignment, and at extreme magnitudes tripping the divergence
    bailout), while below 1 the orbit stays inside the unit disk and walks
    down to the root, whose modulus then sits in (0.46, 1).

    That walk takes O(d) steps, so the iteration budget given to the kernel
    is raised to at least ~4d; the caller's max_iters still applies whenever
    it is larger.  The power-of-two bookkeeping and the budget are plain
    computation, not recorded decisions.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    S = complex(S)
    if S == 0:
        raise ValueError("zero has only the trivial root")
    cfg = config or DEFAULT_CONFIG
    floor_iters = 4 * d + 50
    if cfg.max_iters < floor_iters:
        cfg = NewtonConfig(
            threshold_r=cfg.threshold_r,
            max_iters=floor_iters,
            divergence_bailout=cfg.divergence_bailout,
        )
    exponent = math.frexp(abs(S))[1]  # |S| in [2**(e-1), 2**e)
    m = -((-exponent) // d)  # ceil(e / d)
    scaled = S * math.ldexp(1.0, -d * m)
    seed, _ = select_seed(d, scaled, trace)
    out = newton_root(d, scaled, seed, cfg, trace)
    if not out.converged:
        raise NoConvergenceError(out, f"t**{d} = {S!r}")
    return out.value * math.ldexp(1.0, m)


def solve_pure_power(
    d: int,
    S: complex,
    config: NewtonConfig | None = None,
    trace: BranchTrace | None = None,
) -> tuple[complex, ...]:
    """All d roots of t**d - S using at most d recorded branches.

    One branch tests S = 0 (all roots collapse to 0); otherwise the sector
    chain spends at most d - 1 more picking the seed, a single Newton run
    finds one root, and the rest are its exact rotations.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    S = complex(S)
    if record_decision(trace, "radicand_zero", S == 0):
        return (0j,) * d
    principal = scaled_root(d, S, config, trace)
    return tuple(
        principal if j == 0 else principal * cmath.exp(2j * math.pi * j / d)
        for j in range(d)
    )
