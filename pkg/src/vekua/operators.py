"""The area Cauchy transform, its reflection-corrected variant, and iterates.

Both operators are right inverses of the Wirtinger derivative d/dzbar:

    T(f)(z)  = -(1/pi) iint_D f(zeta) / (zeta - z) dA
    Tt(f)(z) = -(1/pi) iint_D [ f(zeta)/(zeta - z)
                                + z conj(f(zeta)) / (1 - conj(zeta) z) ] dA

and the second one has purely imaginary boundary values, which is what the
Schwarz solvers rely on.

Quadrature strategy
-------------------
For pointwise-evaluable inputs (catalog sources, callables) the Cauchy term
is integrated on a polar grid centered at the evaluation point whose rays
extend exactly to the boundary: the polar Jacobian rho cancels the kernel
singularity 1/rho, leaving a smooth integrand. The reflection term has its
pole at the mirror point 1/conj(z) outside the disk; recentering the polar
grid there cancels that kernel the same way, and a cosine map in the angle
absorbs the square-root behavior of the chord lengths at the tangent rays.
Both rules are exact on polynomial sources to rounding, uniformly in |z|.

Sampled fields cannot be re-evaluated off their grid, so for them the
Cauchy term uses a smooth near/far partition of unity: the far part sums
grid values against the kernel directly, the near part integrates a
bilinear interpolant on a small boundary-clipped polar patch. The
reflection term for fields is summed as a truncated geometric series in z
against quadrature moments of the field, which only needs on-grid values.
"""

import numpy as np
from dataclasses import dataclass, field

from . import sources as src
from .errors import DomainError, NumericalFailure, UnsupportedOrderError
from .grids import DiskGrid, boundary_distance, build_disk_grid, TWO_PI

_BOUNDARY_SLACK = 1e-9        # |z| <= 1 + slack is accepted as "on the disk"
_SERIES_SWITCH = 0.999 + 1e-12  # beyond this, fields use the conjugate identity


@dataclass(frozen=True)
class OperatorConfig:
    """Resolution knobs shared by every operator evaluation."""

    far_grid: DiskGrid
    near_field_radius: float = 0.1
    n_rho: int = 64
    n_phi: int = 128
    near_n_rho: int = 24
    near_n_phi: int = 48
    series_terms: int = 16384
    series_tol: float = 1e-8
    singular_exclusion: float = 1e-3
    z_chunk: int = 64

    def __post_init__(self):
        if not 0.0 < self.near_field_radius < 1.0:
            raise ValueError("near_field_radius must lie in (0, 1)")
        if self.n_rho < 4 or self.n_phi < 8 or self.near_n_rho < 4 or self.near_n_phi < 8:
            raise ValueError("operator quadrature resolutions below minimum")

    @classmethod
    def default(cls, resolution=1.0):
        s = float(resolution)
        return cls(
            far_grid=build_disk_grid(max(4, round(96 * s)), max(8, round(192 * s))),
            n_rho=max(4, round(64 * s)),
            n_phi=max(8, round(128 * s)),
            near_n_rho=max(4, round(24 * s)),
            near_n_phi=max(8, round(48 * s)),
        )


@dataclass(eq=False)
class FieldSample:
    """Complex values attached to the nodes of a disk grid."""

    grid: DiskGrid
    values: np.ndarray
    _moments: np.ndarray = field(default=None, repr=False)
    _moment_power: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).ravel()
        if vals.size != self.grid.nodes.size:
            raise ValueError("field length does not match grid node count")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field contains non-finite entries")
        self.values = vals

    def values2d(self):
        return self.values.reshape(self.grid.shape)

    def reflection_moments(self, count):
        """Quadrature moments iint conj(u) conj(zeta)^k dA for k < count, cached."""
        if self._moments is None:
            self._moments = np.empty(0, dtype=complex)
            self._moment_power = np.conj(self.values) * self.grid.weights
        have = self._moments.size
        if count > have:
            cz = np.conj(self.grid.nodes)
            extra = np.empty(count - have, dtype=complex)
            p = self._moment_power
            for k in range(count - have):
                extra[k] = p.sum()
                p = p * cz
            self._moment_power = p
            self._moments = np.concatenate([self._moments, extra])
        return self._moments[:count]


def materialize(f, grid):
    """Sample a source or callable on a disk grid."""
    if isinstance(f, FieldSample):
        return f
    if isinstance(f, src.SourceTerm):
        vals = src.eval_source_clipped(f, grid.nodes)
    else:
        vals = np.asarray(f(grid.nodes), dtype=complex)
    return FieldSample(grid, vals)


def interpolate(sample, points):
    """Bilinear interpolation of a field sample in (r, theta), periodic in theta.

    Radii outside the node range clamp to the nearest ring.
    """
    points = np.asarray(points, dtype=complex)
    n_r, n_t = sample.grid.shape
    vals = sample.values2d()
    r0 = sample.grid.radial_nodes[0]
    t0 = sample.grid.angular_nodes[0]
    dr = 1.0 / n_r
    dt = TWO_PI / n_t
    fr = np.clip((np.abs(points) - r0) / dr, 0.0, n_r - 1.0)
    ft = ((np.angle(points) - t0) % TWO_PI) / dt
    i0 = np.floor(fr).astype(int)
    i1 = np.minimum(i0 + 1, n_r - 1)
    a = fr - i0
    j0 = np.floor(ft).astype(int) % n_t
    j1 = (j0 + 1) % n_t
    b = ft - np.floor(ft)
    return ((1 - a) * (1 - b) * vals[i0, j0] + a * (1 - b) * vals[i1, j0]
            + (1 - a) * b * vals[i0, j1] + a * b * vals[i1, j1])


def _point_values(f, nodes, cfg):
    if isinstance(f, src.SourceTerm):
        return src.eval_source_clipped(f, nodes, cfg.singular_exclusion)
    return np.asarray(f(nodes), dtype=complex)


def _check_points(z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    bad = np.abs(z) > 1.0 + _BOUNDARY_SLACK
    if np.any(bad):
        raise DomainError(f"evaluation point outside the closed disk: {z[bad][0]}")
    return z


def _guard_finite(out, what, f):
    if not np.all(np.isfinite(out)):
        raise NumericalFailure(
            f"{what} produced a non-finite quadrature sum",
            info={"operator": what, "input": type(f).__name__,
                  "finite_fraction": float(np.mean(np.isfinite(out)))})


# --- Cauchy term -------------------------------------------------------------

def _radial_rule(n_nodes):
    """Composite two-point Gauss layout on the unit interval.

    Positions and weights for n_nodes points (n_nodes/2 cells); fourth-order
    in the radial direction, which the source flanks need, at the same node
    count as a midpoint rule.
    """
    cells = max(1, n_nodes // 2)
    centers = (np.arange(cells) + 0.5) / cells
    off = 0.5 / (np.sqrt(3.0) * cells)
    pos = np.empty(2 * cells)
    pos[0::2] = centers - off
    pos[1::2] = centers + off
    wts = np.full(2 * cells, 0.5 / cells)
    return pos, wts


def _t_pointwise_chunk(f, z, cfg):
    """Boundary-fitted polar quadrature about each z; exact kernel cancellation."""
    phi = (np.arange(cfg.n_phi) + 0.5) * TWO_PI / cfg.n_phi
    e = np.exp(1j * phi)
    s = np.real(np.conj(z)[:, None] * e[None, :])
    gap = np.maximum(0.0, 1.0 - np.abs(z) ** 2)[:, None]
    lengths = -s + np.sqrt(s * s + gap)
    pos, wts = _radial_rule(cfg.n_rho)
    rho = pos[None, :, None] * lengths[:, None, :]
    nodes = z[:, None, None] + rho * e[None, None, :]
    vals = _point_values(f, nodes, cfg)
    acc = np.sum(vals * np.conj(e)[None, None, :]
                 * (wts[None, :, None] * lengths[:, None, :]), axis=(1, 2))
    return -(acc * (TWO_PI / cfg.n_phi)) / np.pi


def _smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


def _near_cutoff(dist, radius):
    # 1 inside radius/2, smoothly down to 0 at radius
    return 1.0 - _smoothstep((dist - 0.5 * radius) / (0.5 * radius))


def _t_field_chunk(u, z, cfg):
    grid = u.grid
    radius = cfg.near_field_radius
    # far part: grid values against the kernel, faded out near z
    diff = grid.nodes[None, :] - z[:, None]
    dist = np.abs(diff)
    fade = 1.0 - _near_cutoff(dist, radius)
    # fade vanishes identically inside radius/2, so masking the (possible)
    # exact node hit cannot change the sum
    diff = np.where(dist < 1e-14, 1.0, diff)
    far = np.sum((u.values * grid.weights)[None, :] * fade / diff, axis=1)
    # near part: boundary-clipped polar patch around z on the interpolant
    phi = (np.arange(cfg.near_n_phi) + 0.5) * TWO_PI / cfg.near_n_phi
    e = np.exp(1j * phi)
    s = np.real(np.conj(z)[:, None] * e[None, :])
    gap = np.maximum(0.0, 1.0 - np.abs(z) ** 2)[:, None]
    reach = np.minimum(radius, -s + np.sqrt(s * s + gap))
    pos, wts = _radial_rule(cfg.near_n_rho)
    rho = pos[None, :, None] * reach[:, None, :]
    pts = z[:, None, None] + rho * e[None, None, :]
    vals = interpolate(u, pts) * _near_cutoff(rho, radius)
    near = np.sum(vals * np.conj(e)[None, None, :]
                  * (wts[None, :, None] * reach[:, None, :]), axis=(1, 2)) \
        * (TWO_PI / cfg.near_n_phi)
    return -(far + near) / np.pi


# --- reflection term ---------------------------------------------------------

def _reflection_pointwise_chunk(f, z, cfg):
    """Mirror-centered polar quadrature of -(z/pi) iint conj(f)/(1 - conj(zeta) z).

    Recentered at 1/conj(z) the kernel is -conj(f) e^{i phi}/rho, so the
    Jacobian cancels it; the angle runs over the tangent cone with a cosine
    map so the chord-length square roots stay smooth.
    """
    out = np.zeros(z.shape, dtype=complex)
    live = np.abs(z) > 1e-12
    if not np.any(live):
        return out
    zl = z[live]
    zstar = 1.0 / np.conj(zl)
    d = np.abs(zstar)
    half = np.arcsin(np.minimum(1.0, 1.0 / d))
    axis = np.angle(-zstar)
    u = ((np.arange(cfg.n_phi) + 0.5) / cfg.n_phi) * 2.0 - 1.0
    psi = 0.5 * np.pi * u
    phi = axis[:, None] + half[:, None] * np.sin(psi)[None, :]
    jac = half[:, None] * (0.5 * np.pi) * np.cos(psi)[None, :] * (2.0 / cfg.n_phi)
    e = np.exp(1j * phi)
    s = np.real(np.conj(zstar)[:, None] * e)
    disc = np.maximum(0.0, s * s - (d * d - 1.0)[:, None])
    root = np.sqrt(disc)
    lo = np.maximum(0.0, -s - root)
    hi = np.maximum(lo, -s + root)
    pos, wts = _radial_rule(cfg.n_rho)
    span = hi - lo
    rho = lo[:, None, :] + pos[None, :, None] * span[:, None, :]
    nodes = zstar[:, None, None] + rho * e[:, None, :]
    vals = np.conj(_point_values(f, nodes, cfg))
    acc = np.sum(vals * (e * jac)[:, None, :]
                 * (wts[None, :, None] * span[:, None, :]), axis=(1, 2))
    out[live] = acc / np.pi
    return out


def _reflection_field(u, z, cfg, t_values):
    """Geometric-series reflection term for sampled fields.

    For 1 - |z| below the series reach, falls back on the boundary identity
    Tt = T - conj(T), which is exact at |z| = 1 and O(1 - |z|) inside.
    """
    out = np.zeros(z.shape, dtype=complex)
    az = np.abs(z)
    near_boundary = az > _SERIES_SWITCH
    out[near_boundary] = -np.conj(t_values[near_boundary])
    sel = ~near_boundary & (az > 1e-12)
    if np.any(sel):
        zs = z[sel]
        top = float(np.max(np.abs(zs)))
        need = cfg.series_terms
        if top < 1.0:
            est = np.log(cfg.series_tol * (1.0 - top)) / np.log(max(top, 1e-6))
            need = int(min(cfg.series_terms, max(8.0, np.ceil(est))))
        m = u.reflection_moments(need)
        acc = np.zeros_like(zs)
        for k in range(need - 1, -1, -1):
            acc = acc * zs + m[k]
        out[sel] = -(zs / np.pi) * acc
    return out


# --- public operators --------------------------------------------------------

def eval_T(f, z, cfg):
    """Cauchy-transform a source, callable, or field sample at point(s) z."""
    zs = _check_points(z)
    flat = zs.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for lo in range(0, flat.size, cfg.z_chunk):
        chunk = flat[lo:lo + cfg.z_chunk]
        if isinstance(f, FieldSample):
            out[lo:lo + cfg.z_chunk] = _t_field_chunk(f, chunk, cfg)
        else:
            out[lo:lo + cfg.z_chunk] = _t_pointwise_chunk(f, chunk, cfg)
    _guard_finite(out, "T", f)
    out = out.reshape(zs.shape)
    return complex(out[0]) if np.isscalar(z) or np.asarray(z).ndim == 0 else out


def eval_T_tilde(f, z, cfg):
    """T plus the reflection correction; boundary values are purely imaginary."""
    zs = _check_points(z)
    flat = zs.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for lo in range(0, flat.size, cfg.z_chunk):
        chunk = flat[lo:lo + cfg.z_chunk]
        if isinstance(f, FieldSample):
            t_part = _t_field_chunk(f, chunk, cfg)
            out[lo:lo + cfg.z_chunk] = t_part + _reflection_field(f, chunk, cfg, t_part)
        else:
            on_rim = np.abs(chunk) >= 1.0 - 1e-12
            t_part = _t_pointwise_chunk(f, chunk, cfg)
            corr = np.where(on_rim, -np.conj(t_part),
                            _reflection_pointwise_chunk(f, chunk, cfg))
            out[lo:lo + cfg.z_chunk] = t_part + corr
    _guard_finite(out, "T~", f)
    out = out.reshape(zs.shape)
    return complex(out[0]) if np.isscalar(z) or np.asarray(z).ndim == 0 else out


def eval_T_iterated(f, k, z, cfg):
    """k-fold application of T; intermediates live on cfg.far_grid."""
    if k < 1:
        raise UnsupportedOrderError(f"iteration count must be >= 1, got {k}")
    if k > 8:
        raise UnsupportedOrderError(f"iteration count {k} beyond supported maximum 8")
    current = f
    for _ in range(k - 1):
        vals = eval_T(current, current.grid.nodes if isinstance(current, FieldSample)
                      else cfg.far_grid.nodes, cfg)
        current = FieldSample(cfg.far_grid, vals)
    return eval_T(current, z, cfg)


def wirtinger_dzbar(w, z, h=1e-3):
    """Central-difference d/dzbar = (d/dx + i d/dy)/2 of a field at z."""
    if not 1e-6 <= h <= 1e-2:
        raise ValueError(f"stencil width must lie in [1e-6, 1e-2], got {h}")
    z = complex(z)
    stencil = (z + h, z - h, z + 1j * h, z - 1j * h)
    if max(abs(p) for p in stencil) >= 1.0:
        raise DomainError(f"stencil around {z} leaves the open disk")
    fun = _as_callable(w)
    vals = fun(np.array(stencil))
    return complex((vals[0] - vals[1] + 1j * (vals[2] - vals[3])) / (4.0 * h))


def wirtinger_dzbar_iterated(w, z, order, h=1e-3):
    """Nested dzbar stencils; unreliable past order 3, so that is the cap."""
    if not 1 <= order <= 3:
        raise UnsupportedOrderError("nested Wirtinger stencils support orders 1..3")
    fun = _as_callable(w)
    for _ in range(order - 1):
        inner = fun

        def fun(pts, inner=inner):
            pts = np.atleast_1d(np.asarray(pts, dtype=complex))
            step = np.array([h, -h, 1j * h, -1j * h])
            stencil = pts[:, None] + step[None, :]
            v = inner(stencil.ravel()).reshape(stencil.shape)
            return (v[:, 0] - v[:, 1] + 1j * (v[:, 2] - v[:, 3])) / (4.0 * h)

    z = complex(z)
    if abs(z) + order * h >= 1.0:
        raise DomainError(f"order-{order} stencil around {z} leaves the open disk")
    step = np.array([h, -h, 1j * h, -1j * h])
    vals = fun(z + step)
    return complex((vals[0] - vals[1] + 1j * (vals[2] - vals[3])) / (4.0 * h))


def _as_callable(w):
    if isinstance(w, FieldSample):
        return lambda pts: interpolate(w, pts)
    if isinstance(w, src.SourceTerm):
        return lambda pts: src.eval_source_clipped(w, pts)
    return w
