"""Command-line front door: problem configs in, traces and reports out.

Subcommands: solve, verify, hilbert, atoms, trace. Every emitted file starts
with the sha256 digest of the effective config, so numbers are traceable to
the run that produced them. Exit codes: 0 success, 1 failed verification
checks, 2 malformed input, 3 numerical failure.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import atoms as at
from . import schwarz as sw
from . import sources as src
from . import verify as vf
from .errors import NumericalFailure
from .grids import build_circle_grid
from .hardy import RadialLadder
from .hilbert import CircleSample, hilbert_pv
from .operators import OperatorConfig, eval_T, eval_T_tilde
from .report import digest_of, reports_to_json

CSV_COLUMNS = "r,theta,re,im"


def _load_config(path):
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_csv(path, digest, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# config_digest={digest}\n")
        fh.write(header + "\n")
        writer = csv.writer(fh)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])


def _trace_rows(field, radii, circle):
    rows = []
    for r in radii:
        vals = field(circle.nodes(r))
        for theta, v in zip(circle.angles, vals):
            rows.append((r, theta, v.real, v.imag))
    return rows


def cmd_solve(args):
    config = _load_config(args.config)
    problem_cfg = config.get("problem", {})
    order = int(problem_cfg.get("order", 1))
    q = float(problem_cfg.get("q", 2.0))
    source = src.source_from_json(problem_cfg.get("source", {"kind": "zero"}))
    boundary = tuple(at.distribution_from_json(d)
                     for d in problem_cfg.get("boundary",
                                              [{"terms": []}] * order))
    problem = sw.SchwarzProblem(order, source, q, boundary)
    digest = digest_of({"problem": problem_cfg, "seed": args.seed,
                        "resolution": args.resolution})
    op = OperatorConfig.default(args.resolution)
    circle = build_circle_grid(int(config.get("circle_n", 256)))
    ladder = RadialLadder(tuple(config.get("ladder",
                                           (0.5, 0.75, 0.9, 0.99, 0.999))), circle)

    sol = sw.solve_higher(problem, op)
    rng = np.random.default_rng(args.seed)
    reports = sw.verify_solution(sol, rng, ladder=ladder,
                                 check_stages=order > 1)

    os.makedirs(args.out, exist_ok=True)
    trace_path = os.path.join(args.out, "solution_trace.csv")
    _write_csv(trace_path, digest, CSV_COLUMNS,
               _trace_rows(sol, ladder.radii, circle))
    manifest = {
        "config_digest": digest,
        "problem": {"order": order, "q": q,
                    "p": problem.p,
                    "source": src.source_to_json(source)},
        "verification": [r.to_dict() for r in reports],
        "trace": os.path.basename(trace_path),
    }
    with open(os.path.join(args.out, "solution_manifest.json"), "w",
              encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
    return 0


def cmd_verify(args):
    config = _load_config(args.config)
    suite = config.get("suite", args.suite or "all")
    overrides = {k: v for k, v in config.items()
                 if k in ("circle_n", "tol_closed_form", "tol_fd", "tol_pairing",
                          "tol_exact", "tol_atom", "holder_cap")}
    if "ladder" in config:
        overrides["ladder_radii"] = tuple(config["ladder"])
    cfg = vf.VerifyConfig(seed=args.seed, resolution=args.resolution, **overrides)
    reports = vf.run_suite(suite, cfg)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "verify_report.json"), "w",
              encoding="utf-8") as fh:
        fh.write(reports_to_json(reports))
    failed = [r for r in reports if r.verdict == "fail"]
    for r in reports:
        print(f"{r.verdict:10s} {r.check_id} (worst {r.worst:.3g} "
              f"tol {r.tolerance:.3g})")
    return 1 if failed else 0


def cmd_hilbert(args):
    with open(args.input, "r", encoding="utf-8") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    reader = csv.reader(rows)
    header = next(reader)
    if [c.strip() for c in header[:3]] != ["theta", "re", "im"]:
        raise ValueError(f"expected columns theta,re,im, got {header}")
    data = np.array([[float(v) for v in row[:3]] for row in reader])
    n = data.shape[0]
    grid = build_circle_grid(n)
    if not np.allclose(np.sort(data[:, 0]), grid.angles, atol=1e-9):
        raise ValueError("input angles are not an equispaced grid from 0")
    order = np.argsort(data[:, 0])
    values = data[order, 1] + 1j * data[order, 2]
    out = hilbert_pv(CircleSample(grid, values))
    os.makedirs(args.out, exist_ok=True)
    digest = digest_of({"input_rows": n, "seed": args.seed})
    path = os.path.join(args.out, "hilbert.csv")
    _write_csv(path, digest, "theta,re,im",
               [(t, v.real, v.imag) for t, v in zip(grid.angles, out.values)])
    return 0


def cmd_atoms(args):
    config = _load_config(args.config)
    specs = config.get("atoms", [])
    tol = float(config.get("tolerance", 1e-12))
    digest = digest_of({"atoms": specs, "tolerance": tol})
    built = []
    for spec in specs:
        atom = at.atom_from_json(spec)
        report = at.validate_atom(atom, tol)
        built.append({"requested": spec, "atom": at.atom_to_json(atom),
                      "validation": report.to_dict()})
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "atoms.json"), "w", encoding="utf-8") as fh:
        json.dump({"config_digest": digest, "atoms": built}, fh,
                  sort_keys=True, indent=2)
    bad = [b for b in built if b["validation"]["verdict"] != "pass"]
    return 1 if bad else 0


def cmd_trace(args):
    config = _load_config(args.config)
    source = src.source_from_json(config.get("source", {"kind": "zero"}))
    operator = config.get("operator", "T")
    if operator not in ("T", "Ttilde"):
        raise ValueError(f"operator must be 'T' or 'Ttilde', got {operator!r}")
    radii = tuple(config.get("radii", (0.5, 0.9, 0.999, 1.0)))
    circle = build_circle_grid(int(config.get("circle_n", 256)))
    op = OperatorConfig.default(args.resolution)
    fn = eval_T if operator == "T" else eval_T_tilde
    digest = digest_of({"source": config.get("source"), "operator": operator,
                        "radii": list(radii), "resolution": args.resolution})
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "trace.csv")
    _write_csv(path, digest, CSV_COLUMNS,
               _trace_rows(lambda zs: fn(source, zs, op), radii, circle))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vekua",
        description="disk transforms, circle atoms, and boundary value solvers")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("solve", cmd_solve), ("verify", cmd_verify),
                     ("hilbert", cmd_hilbert), ("atoms", cmd_atoms),
                     ("trace", cmd_trace)):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON config path")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--resolution", type=float, default=1.0,
                       help="grid resolution multiplier")
        p.set_defaults(handler=fn)
        if name == "verify":
            p.add_argument("--suite", default=None,
                           choices=list(vf.SUITES))
        if name == "hilbert":
            p.add_argument("input", help="CSV with columns theta,re,im")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc} {exc.info}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
