"""Branch-free root finding: power iteration on the companion matrix.

The alternative to branch-counted solving trades decisions for iteration:
a fixed starting vector (the last basis vector), a fixed update, deflation,
and a fixed 3-step Newton polish.  No quantity of the input ever selects a
code path, so the decision count of this method is 0 by construction.  The
price is a genuine failure mode: dominant eigenvalues of equal magnitude
never settle, and are detected and flagged rather than resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poly import MonicPolynomial, deflate, evaluate
from .report import RootReport

_POLISH_STEPS = 3


@dataclass(frozen=True)
class CompanionMatrix:
    """Companion matrix of a monic polynomial: subdiagonal ones, last column
    the negated low-to-high coefficients.  Stored implicitly; ``apply`` is the
    O(d) structured product (shift + last-column combination)."""

    coeffs: tuple[complex, ...]

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    def to_array(self) -> np.ndarray:
        d = self.dimension
        F = np.zeros((d, d), dtype=np.complex128)
        for i in range(1, d):
            F[i, i - 1] = 1.0
        F[:, d - 1] = -np.asarray(self.coeffs, dtype=np.complex128)
        return F

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.complex128)
        if v.shape != (self.dimension,):
            raise ValueError("vector length must match the dimension")
        out = np.empty_like(v)
        last = v[-1]
        out[0] = -self.coeffs[0] * last
        if self.dimension > 1:
            out[1:] = v[:-1]
            out[1:] -= np.asarray(self.coeffs[1:], dtype=np.complex128) * last
        return out


def companion(p: MonicPolynomial) -> CompanionMatrix:
    """Companion matrix whose eigenvalues are the roots of ``p``."""
    return CompanionMatrix(tuple(p.coeffs))


class ZeroEigenvalueError(RuntimeError):
    """The iterate was annihilated: zero eigenvalue present; deflate t first."""

    def __init__(self) -> None:
        super().__init__("zero eigenvalue present; deflate t first")


@dataclass(frozen=True)
class PowerIterResult:
    eigenvalue: complex
    eigenvector: np.ndarray
    iterations: int
    converged: bool
    rate_estimate: float | None
    residual_history: tuple[float, ...]


def _fit_ratio(history: tuple[float, ...] | list[float]) -> float | None:
    """Geometric decay ratio fitted to a residual sequence (log-linear LSQ)."""
    usable = [r for r in history if r > 1e-14]
    if len(usable) < 4:
        return None
    logs = np.log(np.asarray(usable))
    n = np.arange(len(usable), dtype=float)
    slope = np.polyfit(n, logs, 1)[0]
    return float(math.exp(slope))


def power_iterate(
    F: CompanionMatrix,
    max_iters: int = 500,
    tol: float = 1e-10,
) -> PowerIterResult:
    """Power iteration from the last basis vector, Rayleigh-quotient readout.

    The per-step residual is the phase-aligned displacement
    ||b_n - exp(i phi) b_{n-1}|| (phi chosen to cancel the rotating phase of a
    complex dominant eigenvalue).  Converged requires both that displacement
    and the eigen-residual ||F v - lambda v|| (relative to ||F||) under tol.
    """
    d = F.dimension
    if d < 1:
        raise ValueError("empty matrix")
    fro = math.sqrt(float(np.sum(np.abs(F.to_array()) ** 2)))
    b = np.zeros(d, dtype=np.complex128)
    b[-1] = 1.0
    w = F.apply(b)
    history: list[float] = []
    lam = 0j
    for n in range(1, max_iters + 1):
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            raise ZeroEigenvalueError()
        b_new = w / norm_w
        inner = complex(np.vdot(b, b_new))
        phase = inner / abs(inner) if abs(inner) > 0 else 1.0 + 0j
        step = float(np.linalg.norm(b_new - phase * b))
        w_new = F.apply(b_new)
        lam = complex(np.vdot(b_new, w_new))  # b_new is unit
        eig_res = float(np.linalg.norm(w_new - lam * b_new))
        history.append(step)
        if step < tol and eig_res <= tol * max(fro, 1.0):
            return PowerIterResult(
                eigenvalue=lam,
                eigenvector=b_new,
                iterations=n,
                converged=True,
                rate_estimate=_fit_ratio(history[2:]) if len(history) >= 10 else None,
                residual_history=tuple(history),
            )
        b, w = b_new, w_new
    return PowerIterResult(
        eigenvalue=lam,
        eigenvector=b,
        iterations=max_iters,
        converged=False,
        rate_estimate=_fit_ratio(history[2:]) if len(history) >= 10 else None,
        residual_history=tuple(history),
    )


def detect_equal_magnitude(
    residual_history: tuple[float, ...] | list[float],
    window: int = 8,
    *,
    floor: float = 1e-8,
    ratio_tol: float = 0.05,
) -> bool:
    """True when the trailing residuals oscillate without geometric decay.

    Looks at the last ``window`` entries: all must sit above ``floor`` and
    their fitted decay ratio must be at least 1 - ratio_tol.  That is the
    signature of two dominant eigenvalues of equal magnitude; a strictly
    dominant eigenvalue leaves a visibly decaying trail instead.
    """
    if window < 4:
        raise ValueError("window must be at least 4")
    tail = list(residual_history)[-window:]
    if len(tail) < window:
        return False
    if min(tail) <= floor:
        return False
    ratio = _fit_ratio(tail)
    return ratio is not None and ratio >= 1.0 - ratio_tol


def _polish(p: MonicPolynomial, z: complex) -> complex:
    """Fixed 3-step Newton polish on the current polynomial (no branching)."""
    for _ in range(_POLISH_STEPS):
        dp = p.derivative_at(z)
        if dp == 0:
            break
        z = z - evaluate(p, z) / dp
    return z


def solve_by_power_iteration(
    p: MonicPolynomial,
    max_iters: int = 500,
    tol: float = 1e-10,
) -> RootReport:
    """All roots by repeated power iteration + deflation; 0 recorded branches.

    Roots come out in the dominance order the iteration discovers them.  When
    a stage fails to converge, the remaining slots are filled with the last
    eigenvalue estimate and flagged in ``warnings`` -- never silently -- with
    equal-magnitude oscillation distinguished from a plain iteration cap.
    """
    degree = p.degree
    roots: list[complex] = []
    iters: list[int] = []
    warnings: list[str] = []
    current = p
    while True:
        remaining = degree - len(roots)
        if remaining == 0:
            break
        if remaining == 1:
            roots.append(-current.coeffs[0])
            iters.append(0)
            break
        try:
            res = power_iterate(companion(current), max_iters=max_iters, tol=tol)
        except ZeroEigenvalueError:
            # exact zero eigenvalue: 0 is a root, deflating by t is exact
            roots.append(0j)
            iters.append(0)
            current = deflate(current, 0j)[0]
            continue
        if not res.converged:
            stage = len(roots)
            if detect_equal_magnitude(res.residual_history):
                warnings.append(
                    "equal-magnitude dominant eigenvalues at the "
                    f"degree-{remaining} stage; roots[{stage}:{degree}] unconverged"
                )
            else:
                warnings.append(
                    f"iteration cap reached at the degree-{remaining} stage; "
                    f"roots[{stage}:{degree}] unconverged"
                )
            for _ in range(remaining):
                roots.append(res.eigenvalue)
                iters.append(res.iterations)
            break
        z = _polish(current, res.eigenvalue)
        roots.append(z)
        iters.append(res.iterations)
        current = deflate(current, z)[0]
    residuals = tuple(abs(evaluate(p, z)) for z in roots)
    return RootReport(
        roots=tuple(roots),
        residuals=residuals,
        branch_count=0,
        method="power-iteration",
        per_root_iterations=tuple(iters),
        warnings=tuple(warnings),
    )
