"""Principal-value Hilbert transform on the circle and the continuity study.

The PV limit is discretized with a symmetric exclusion window on the
staggered offsets t = k * spacing, k odd: those nodes satisfy |t| >=
spacing, the odd kernel cancels in pairs, and this particular offset choice
reproduces the Fourier multiplier -i sgn(n) exactly (to rounding) on every
mode below Nyquist. Including the even offsets as well loses the multiplier
to an O(n/N) defect, which fails the multiplier acceptance check.
"""

from dataclasses import dataclass

import numpy as np

from . import atoms as at
from .grids import CircleGrid

TWO_PI = 2.0 * np.pi


@dataclass(eq=False)
class CircleSample:
    grid: CircleGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).ravel()
        if vals.size != self.grid.n:
            raise ValueError("sample length does not match circle grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample contains non-finite entries")
        self.values = vals


def gamma_for(q):
    """Circle-norm exponent for a source with L^q label.

    For q below 2 the admissible interval is (1, q/(2-q)); this picks a point
    strictly inside it, capped at 2; from q = 2 up the interval is unbounded
    and 2 is used.
    """
    if q <= 1.0:
        raise ValueError(f"source label q must exceed 1, got {q}")
    if q >= 2.0:
        return 2.0
    return min(2.0, 0.5 * (1.0 + q / (2.0 - q)))


def hilbert_pv(sample):
    """Discrete PV transform (1/pi) sum u(theta - t) / (2 tan(t/2)) dt."""
    n = sample.grid.n
    if n % 2:
        raise ValueError(f"hilbert_pv needs an even node count, got {n}")
    dt = sample.grid.spacing
    out = np.zeros(n, dtype=complex)
    for k in range(1, n, 2):
        out += (1.0 / np.tan(0.5 * k * dt)) * np.roll(sample.values, k)
    return CircleSample(sample.grid, out * (dt / np.pi))


def lgamma_circle_norm(values, grid, gamma):
    """(integral |u|^gamma d theta)^(1/gamma) on the circle grid."""
    return float((grid.spacing * np.sum(np.abs(values) ** gamma)) ** (1.0 / gamma))


@dataclass(frozen=True)
class BoundaryValueDecomposition:
    """Boundary data split into an atomic sum plus a circle-function error."""

    atomic_part: at.AtomicDistribution
    error_part: CircleSample
    p: float
    gamma: float

    def __post_init__(self):
        if self.gamma <= 1.0:
            raise ValueError(f"decomposition exponent gamma must exceed 1, "
                             f"got {self.gamma}")


def composite_quasinorm(decomp):
    """Atomic coefficient quasi-norm plus the L^gamma norm of the error part.

    The atomic term is the representation-specific upper bound from
    quasinorm_upper, not an infimum over equivalent decompositions.
    """
    if decomp.gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    atomic = at.quasinorm_upper(decomp.atomic_part, decomp.p)
    error = lgamma_circle_norm(decomp.error_part.values,
                               decomp.error_part.grid, decomp.gamma)
    return atomic + error


@dataclass(frozen=True)
class ContinuityResult:
    ratios: tuple            # per-sample ratio or None when skipped
    max_ratio: float
    skipped: int
    note: str


CONTINUITY_NOTE = (
    "input size uses the representation-specific atomic upper bound; "
    "transformed parts are measured in L^gamma since no atomic decomposition "
    "of the output is constructed")


def continuity_experiment(samples):
    """Measured operator-norm ratios for the transform on decompositions.

    The transform is applied to the pointwise realization of the atomic part
    and to the error part separately, mirroring the linearity split; each
    ratio compares output size to the composite quasi-norm of the input.
    """
    ratios = []
    skipped = 0
    for d in samples:
        grid = d.error_part.grid
        denom = composite_quasinorm(d)
        if denom < 1e-14:
            ratios.append(None)
            skipped += 1
            continue
        atomic_vals = at.eval_atomic(d.atomic_part, grid.angles)
        h_atomic = hilbert_pv(CircleSample(grid, atomic_vals))
        h_error = hilbert_pv(d.error_part)
        numer = (lgamma_circle_norm(h_atomic.values, grid, d.gamma)
                 + lgamma_circle_norm(h_error.values, grid, d.gamma))
        ratios.append(numer / denom)
    finite = [r for r in ratios if r is not None]
    return ContinuityResult(tuple(ratios), max(finite) if finite else 0.0,
                            skipped, CONTINUITY_NOTE)
