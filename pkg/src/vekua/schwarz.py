"""Constructive solvers for the Schwarz-type boundary problems.

First order: given a source f and boundary data h, the function

    w = H + Tt(f),    H = holomorphic extension of h,

satisfies dw/dzbar = f, and Re(w) recovers h on the boundary because the
corrected transform Tt has purely imaginary boundary values.

Order n iterates the same construction from the inside out: the innermost
stage is u_{n-1} = H_{n-1} + Tt(f), and each outer stage wraps the previous
one, u_k = H_k + Tt(u_{k+1}), down to u_0 = w. Stages feeding a further Tt
are materialized on the shared disk grid, so per-stage error stays visible
instead of hiding inside a nested four-dimensional quadrature; the outermost
field is materialized on first use.
"""

from dataclasses import dataclass

import numpy as np

from . import hardy
from .errors import UnsupportedOrderError
from .operators import (FieldSample, eval_T, eval_T_tilde, interpolate,
                        materialize, wirtinger_dzbar)
from .report import digest_of, make_report
from .sources import SourceTerm, eval_source_clipped, source_to_json

DELIMITER_NOTE = (
    "atomic-decomposition hypothesis read as: the boundary value of "
    "i * (conjugate-kernel part of the extension of h) + Tt(f) vanishes")


@dataclass(frozen=True)
class SchwarzProblem:
    """Order-n problem: dzbar^n w = f with Re of each stage prescribed."""

    order: int
    source: SourceTerm
    q: float
    boundary_data: tuple     # AtomicDistribution per stage, g_0 ... g_{n-1}

    def __post_init__(self):
        if not 1 <= self.order <= 8:
            raise UnsupportedOrderError(f"order must lie in [1, 8], got {self.order}")
        if self.q <= 1.0:
            raise ValueError(f"source label q must exceed 1, got {self.q}")
        if len(self.boundary_data) != self.order:
            raise ValueError(f"order {self.order} needs {self.order} boundary "
                             f"data entries, got {len(self.boundary_data)}")
        low = 0.0 if self.order == 1 else 0.5
        for k, g in enumerate(self.boundary_data):
            p = g.p
            if p is not None and not low < p <= 1.0:
                raise ValueError(
                    f"boundary data {k} has exponent {p} outside ({low}, 1]")

    @property
    def p(self):
        ps = [g.p for g in self.boundary_data if g.p is not None]
        return min(ps) if ps else 1.0


class SchwarzSolution:
    """Composite evaluator with one materialized field per stage."""

    def __init__(self, problem, cfg, fields):
        self.problem = problem
        self.cfg = cfg
        self._fields = list(fields)

    def stage_input(self, k):
        """What Tt is applied to at stage k: the next stage, or the source."""
        if k == self.problem.order - 1:
            return self.problem.source
        return self.stage_field(k + 1)

    def stage_field(self, k):
        if self._fields[k] is None:
            grid = self.cfg.far_grid
            vals = (hardy.hardy_extension(self.problem.boundary_data[k], grid.nodes)
                    + eval_T_tilde(self.stage_input(k), grid.nodes, self.cfg))
            self._fields[k] = FieldSample(grid, vals)
        return self._fields[k]

    @property
    def stage_fields(self):
        return tuple(self.stage_field(k) for k in range(self.problem.order))

    def eval_stage(self, k, z):
        """u_k(z) = H_k(z) + Tt(stage input)(z), evaluated fresh."""
        ext = hardy.hardy_extension(self.problem.boundary_data[k], z)
        return ext + eval_T_tilde(self.stage_input(k), z, self.cfg)

    def __call__(self, z):
        return self.eval_stage(0, z)


def solve_first(f, h, q, cfg):
    """Solve order 1: dzbar w = f with Re(w_b) = h."""
    problem = SchwarzProblem(1, f, q, (h,))
    return solve_higher(problem, cfg)


def solve_higher(problem, cfg):
    """Iterate the first-order construction from the innermost stage out."""
    grid = cfg.far_grid
    fields = [None] * problem.order
    for k in range(problem.order - 1, 0, -1):
        inner = problem.source if k == problem.order - 1 else fields[k + 1]
        vals = (hardy.hardy_extension(problem.boundary_data[k], grid.nodes)
                + eval_T_tilde(inner, grid.nodes, cfg))
        fields[k] = FieldSample(grid, vals)
    return SchwarzSolution(problem, cfg, fields)


@dataclass(frozen=True)
class SecondKindSplit:
    phi: FieldSample         # holomorphic remainder w - variant(f)
    report: object


def decompose_second_kind(w, f, variant, cfg, ladder=None, rng=None):
    """Split w into holomorphic part plus the transform of its source.

    ``variant`` selects "T" or "Ttilde". The report measures how holomorphic
    the remainder actually is (dzbar residual at sampled interior points)
    and its circle-norm profile; failure is reported, never raised.
    """
    if variant not in ("T", "Ttilde"):
        raise ValueError(f"variant must be 'T' or 'Ttilde', got {variant!r}")
    op = eval_T if variant == "T" else eval_T_tilde
    grid = cfg.far_grid
    w_field = w if isinstance(w, FieldSample) else materialize(w, grid)
    phi = FieldSample(grid, w_field.values - op(f, grid.nodes, cfg))

    rng = rng or np.random.default_rng(0)
    pts = _interior_points(rng, 24, 0.75)
    if callable(w) and not isinstance(w, FieldSample):
        def phi_fun(zs, w=w):
            zs = np.atleast_1d(np.asarray(zs, dtype=complex))
            return np.asarray(w(zs), dtype=complex) - op(f, zs, cfg)
    else:
        phi_fun = phi
    residual = max(abs(wirtinger_dzbar(phi_fun, z)) for z in pts)

    ladder = ladder or hardy.RadialLadder()
    usable = tuple(r for r in ladder.radii if r <= grid.radial_nodes[-1]) or (0.5,)
    norm = hardy.hp_norm(lambda zs: _field_eval(phi_fun, zs),
                         1.0, hardy.RadialLadder(usable, ladder.circle))
    report = make_report(
        "schwarz/second-kind-split", "representation of the second kind",
        digest_of({"variant": variant, "source": source_to_json(f)}),
        {"dzbar_residual": residual}, 1e-2,
        info={"h1_norm_profile": list(norm.profile), "h1_norm": norm.value},
        notes="holomorphy failure is reported as a residual, not raised")
    return SecondKindSplit(phi, report)


def _field_eval(field, zs):
    if isinstance(field, FieldSample):
        return interpolate(field, zs)
    return field(zs)


def _interior_points(rng, count, radius):
    pts = []
    while len(pts) < count:
        cand = rng.uniform(-radius, radius) + 1j * rng.uniform(-radius, radius)
        if abs(cand) < radius:
            pts.append(cand)
    return pts


def _paired_limits(field, battery, ladder):
    """Pair a field against every test function, sharing circle evaluations."""
    grid = ladder.circle
    rows = np.empty((len(ladder.radii), len(battery)), dtype=complex)
    for i, r in enumerate(ladder.radii):
        vals = field(grid.nodes(r))
        for j, phi in enumerate(battery):
            rows[i, j] = grid.spacing * np.sum(vals * phi(grid.angles))
    limits = []
    for j in range(len(battery)):
        limits.append(hardy._aitken(list(rows[:, j])))
    return limits


def verify_solution(sol, rng, battery=None, ladder=None, pde_tol=1e-2,
                    pairing_tol=5e-2, stage_tol=1e-2, check_stages=True):
    """PDE residual, stage identities on-grid, and boundary recovery reports."""
    problem, cfg = sol.problem, sol.cfg
    digest = digest_of({"order": problem.order, "q": problem.q,
                        "source": source_to_json(problem.source)})
    battery = battery or hardy.test_battery(4)
    ladder = ladder or hardy.RadialLadder()
    reports = []

    # each stage is a right inverse: dzbar u_k = u_{k+1}, innermost hits f
    pts = _interior_points(rng, 12, 0.7)
    pde = {}
    for k in range(problem.order):
        worst = 0.0
        for z in pts:
            lhs = wirtinger_dzbar(lambda zs, k=k: sol.eval_stage(k, zs), z)
            if k == problem.order - 1:
                rhs = complex(eval_source_clipped(problem.source,
                                                  np.asarray([z]))[0])
            else:
                rhs = complex(sol.eval_stage(k + 1, z))
            worst = max(worst, abs(lhs - rhs))
        pde[f"stage_{k}_dzbar_residual"] = worst
    reports.append(make_report("schwarz/pde-residual", "stagewise right inverse",
                               digest, pde, pde_tol))

    # materialized stages agree with fresh evaluation at grid nodes
    if check_stages:
        sel = rng.choice(cfg.far_grid.nodes.size,
                         size=min(128, cfg.far_grid.nodes.size), replace=False)
        stage_res = {}
        for k in range(problem.order):
            nodes = cfg.far_grid.nodes[sel]
            fresh = sol.eval_stage(k, nodes)
            stage_res[f"stage_{k}_identity"] = float(
                np.max(np.abs(fresh - sol.stage_field(k).values[sel])))
        reports.append(make_report("schwarz/stage-identity",
                                   "nested corrected-transform construction",
                                   digest, stage_res, stage_tol))

    # Re of each stage pairs back to its boundary datum along the ladder
    recov = {}
    for k in range(problem.order):
        g = problem.boundary_data[k]
        limits = _paired_limits(lambda zs, k=k: np.real(sol.eval_stage(k, zs)),
                                battery, ladder)
        worst = max(abs(lim - hardy.pair_distribution(g, phi))
                    for lim, phi in zip(limits, battery))
        recov[f"stage_{k}_recovery"] = worst
    reports.append(make_report("schwarz/boundary-recovery",
                               "boundary data recovered as distributions",
                               digest, recov, pairing_tol))
    return reports


def atomic_condition_check(h, f, cfg, ladder=None, battery=None, tol=5e-2):
    """Predicate behind the atomic-decomposition corollary for order 1.

    Measures whether i * (conjugate part of the extension of h) + Tt(f)
    pairs to zero against the test battery in the boundary limit; when it
    does, the boundary value of the solved problem is h itself and inherits
    h's atomic decomposition. The verdict states whether the hypothesis
    held, never asserting anything beyond the measurement.
    """
    ladder = ladder or hardy.RadialLadder()
    battery = battery or hardy.test_battery(4)

    def field(zs):
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        conj_piece = np.array([1j * hardy.conjugate_part(h, z) for z in zs.ravel()])
        return conj_piece.reshape(zs.shape) + eval_T_tilde(f, zs, cfg)

    limits = _paired_limits(field, battery, ladder)
    residuals = {f"pairing_{j}": abs(lim) for j, lim in enumerate(limits)}
    digest = digest_of({"source": source_to_json(f), "tol": tol})
    return make_report("schwarz/atomic-condition",
                       "hypothesis for an atomic boundary decomposition",
                       digest, residuals, tol, notes=DELIMITER_NOTE)
