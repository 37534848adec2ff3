"""Quadrature grids on the unit disk and circle.

All disk-type grids use midpoint rules in polar coordinates, so no node ever
sits at r = 0, on the boundary, or on a kernel singularity. Grids are
immutable after construction and safe to share between workers.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DiskGrid:
    """Tensor-product midpoint grid in polar coordinates on the unit disk.

    ``weights`` carry the full area element r dr dtheta; summing them gives
    the disk area pi exactly (up to rounding) at every resolution.
    """

    n_radial: int
    n_angular: int
    radial_nodes: np.ndarray
    angular_nodes: np.ndarray
    nodes: np.ndarray          # flat complex nodes, radial index slow
    weights: np.ndarray        # flat positive area weights

    @property
    def shape(self):
        return (self.n_radial, self.n_angular)

    def values2d(self, values):
        return np.asarray(values).reshape(self.shape)

    def integrate(self, values):
        """Area integral of node values (fixed summation order)."""
        return np.dot(np.asarray(values).ravel(), self.weights)


@dataclass(frozen=True)
class CircleGrid:
    """Equispaced angular grid; the rectangle sum is the periodic trapezoid rule."""

    n: int
    angles: np.ndarray
    spacing: float

    def integrate(self, values):
        return self.spacing * np.sum(np.asarray(values))

    def nodes(self, radius=1.0):
        return radius * np.exp(1j * self.angles)


@dataclass(frozen=True)
class KernelCenteredGrid:
    """Polar quadrature about an interior point, covering the whole disk.

    Each angular ray extends exactly to the boundary, so every node is
    strictly interior and no cell clipping is needed. ``ray_lengths[j]`` is
    the distance from the center to the boundary along ``phi_nodes[j]``;
    radial nodes along a ray are midpoints of ``ray_lengths[j]/n_rho`` cells.
    """

    center: complex
    n_rho: int
    n_phi: int
    phi_nodes: np.ndarray      # (n_phi,)
    ray_lengths: np.ndarray    # (n_phi,)
    rho_nodes: np.ndarray      # (n_rho, n_phi)
    weights: np.ndarray        # (n_rho, n_phi) area weights rho drho dphi

    @property
    def nodes(self):
        return self.center + self.rho_nodes * np.exp(1j * self.phi_nodes)[None, :]

    def integrate(self, values):
        return float(np.sum(np.asarray(values) * self.weights).real) if np.isrealobj(values) \
            else np.sum(np.asarray(values) * self.weights)


def build_disk_grid(n_r, n_theta):
    if n_r < 4 or n_theta < 8:
        raise ResolutionError(f"disk grid needs n_r >= 4 and n_theta >= 8, got ({n_r}, {n_theta})")
    r = (np.arange(n_r) + 0.5) / n_r
    theta = (np.arange(n_theta) + 0.5) * TWO_PI / n_theta
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    nodes = (rr * np.exp(1j * tt)).ravel()
    weights = (rr * (1.0 / n_r) * (TWO_PI / n_theta)).ravel()
    return DiskGrid(n_r, n_theta, r, theta, nodes, weights)


def build_circle_grid(n):
    if n < 8:
        raise ResolutionError(f"circle grid needs n >= 8, got {n}")
    angles = np.arange(n) * TWO_PI / n
    return CircleGrid(n, angles, TWO_PI / n)


def boundary_distance(z, phi):
    """Distance from z to the unit circle along direction e^{i phi}.

    Root of |z + t e^{i phi}| = 1 with t >= 0; vectorized over phi.
    """
    s = np.real(np.conj(z) * np.exp(1j * phi))
    gap = max(0.0, 1.0 - abs(z) ** 2)
    return -s + np.sqrt(s * s + gap)


def build_kernel_centered_grid(z, n_rho, n_phi):
    if abs(z) >= 1.0:
        raise DomainError(f"kernel center must lie inside the disk, got |z| = {abs(z)}")
    if abs(z) >= 1.0 - 1e-9:
        raise DomainError("kernel center too close to the boundary (|z| >= 1 - 1e-9)")
    if n_rho < 4 or n_phi < 8:
        raise ResolutionError(f"kernel grid needs n_rho >= 4 and n_phi >= 8, got ({n_rho}, {n_phi})")
    phi = (np.arange(n_phi) + 0.5) * TWO_PI / n_phi
    lengths = boundary_distance(z, phi)
    drho = lengths / n_rho
    rho = (np.arange(n_rho) + 0.5)[:, None] * drho[None, :]
    weights = rho * drho[None, :] * (TWO_PI / n_phi)
    return KernelCenteredGrid(complex(z), n_rho, n_phi, phi, lengths, rho, weights)
