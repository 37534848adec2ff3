"""Singular integral transforms, circle atoms, and Schwarz-type solvers on
the unit disk, with a verification engine that turns the governing
identities into seeded, machine-checkable reports."""

from .atoms import (AtomicDistribution, PAtom, eval_atomic, make_constant_atom,
                    make_haar_atom, make_moment_atom, quasinorm_upper,
                    validate_atom)
from .grids import (CircleGrid, DiskGrid, KernelCenteredGrid, build_circle_grid,
                    build_disk_grid, build_kernel_centered_grid)
from .hardy import (BoundaryPairing, HpNorm, KernelPair, RadialLadder,
                    TrigPolynomial, boundary_pair, conjugate_poisson_kernel,
                    hardy_extension, hp_norm, pair_distribution, poisson_kernel,
                    poisson_kernels, radial_maximal_lp, test_battery, trig_cos,
                    trig_one, trig_sin)
from .hilbert import (BoundaryValueDecomposition, CircleSample, ContinuityResult,
                      composite_quasinorm, continuity_experiment, gamma_for,
                      hilbert_pv, lgamma_circle_norm)
from .operators import (FieldSample, OperatorConfig, eval_T, eval_T_iterated,
                        eval_T_tilde, interpolate, materialize, wirtinger_dzbar,
                        wirtinger_dzbar_iterated)
from .report import VerificationReport, reports_to_json
from .schwarz import (SchwarzProblem, SchwarzSolution, atomic_condition_check,
                      decompose_second_kind, solve_first, solve_higher,
                      verify_solution)
from .sources import (SourceTerm, arc_bump, eval_source, linear_combination,
                      lq_norm, monomial, radial_power, source_from_json,
                      source_to_json, zero)
from .verify import VerifyConfig, default_catalog, run_suite

__version__ = "0.1.0"
