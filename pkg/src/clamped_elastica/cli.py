"""Command-line interface.

    clamped-elastica solve PROBLEM [--n 40 | --schedule 8,16,32]
    clamped-elastica seed PROBLEM
    clamped-elastica reference PARAMS
    clamped-elastica compare PROBLEM [--baseline-n 100]
    clamped-elastica validate PROBLEM

PROBLEM / PARAMS are JSON files; a bare name such as ``example2`` picks a
bundled file.  Exit status: 0 success, 1 solver failure (diagnostics written),
2 input error.  Errors are printed as one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import standard_discretisation
from .closed_form import ClosedFormParams, sample_reference
from .core import BoundaryProblem, PlanarIsometry, Status, apply_isometry, canonical_pose, validate_problem
from .errors import ElasticaError, EndpointMiss, ProblemError
from .optimizer import OptimizerSettings
from .output import curve_rows, write_curve_csv, write_json, write_svg
from .quadrature import integrate_heading
from .seed import interior_tangent_estimates, seed_profile
from .solver import DEFAULT_N, DEFAULT_SAMPLES, continuation_solve, solve_clamped_elastica

FORMATS = ("csv", "svg", "json")
BASELINE_N = 100


class InputError(Exception):
    def __init__(self, code, message, **context):
        super().__init__(message)
        self.code = code
        self.context = context


def bundled_problems() -> list[str]:
    root = resources.files("clamped_elastica") / "problems"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _load_json(source: str) -> tuple[dict, str]:
    path = Path(source)
    if path.is_file():
        text, label = path.read_text(), str(path)
    else:
        name = path.name[:-5] if path.name.endswith(".json") else path.name
        if name not in bundled_problems():
            raise InputError("file_not_found", f"no such file or bundled problem: {source}", path=source)
        res = resources.files("clamped_elastica") / "problems" / f"{name}.json"
        text, label = res.read_text(), f"bundled:{name}"
    try:
        return json.loads(text), label
    except json.JSONDecodeError as e:
        raise InputError("parse_error", e.msg, path=label, line=e.lineno, column=e.colno) from None


def load_problem(source: str) -> BoundaryProblem:
    data, label = _load_json(source)
    try:
        return validate_problem(BoundaryProblem.from_dict(data))
    except ProblemError as e:
        raise InputError(e.code, str(e), path=label) from None


def load_reference(source: str) -> tuple[ClosedFormParams, float, float, np.ndarray]:
    data, label = _load_json(source)
    if not isinstance(data, dict):
        raise InputError("invalid_reference", "reference JSON must be an object", path=label)
    if data.get("schema", 1) != 1:
        raise InputError("invalid_reference", f"field 'schema': unsupported version {data['schema']!r}", path=label)
    missing = [k for k in ("family", "kappa0", "a", "b") if k not in data]
    if missing:
        raise InputError("invalid_reference", f"missing field(s): {', '.join(missing)}", path=label)
    try:
        cp = ClosedFormParams(data["family"], data["kappa0"], data.get("p", 1.0), data.get("t0", 0.0))
        a, b = float(data["a"]), float(data["b"])
        x_a = np.array(data.get("xa", (0.0, 0.0)), dtype=float).reshape(2)
    except (TypeError, ValueError) as e:
        raise InputError("invalid_reference", str(e), path=label) from None
    if not b > a:
        raise InputError("degenerate_interval", f"need b > a, got a={a}, b={b}", path=label)
    return cp, a, b, x_a


def _schedule(text):
    try:
        return [int(k) for k in text.split(",") if k.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _formats(text):
    fmts = [f.strip() for f in text.split(",") if f.strip()]
    bad = [f for f in fmts if f not in FORMATS]
    if not fmts or bad:
        raise argparse.ArgumentTypeError(f"formats must be a nonempty subset of {','.join(FORMATS)}")
    return fmts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory (ELASTICA_OUT overrides)")
    common.add_argument("--format", dest="formats", type=_formats, default=list(FORMATS), help="csv,svg,json")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="curve samples written")
    common.add_argument("--quiet", action="store_true")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--n", type=int, default=DEFAULT_N, help="subdivision count (rounded up to even)")
    solver.add_argument("--schedule", type=_schedule, help="continuation grid, e.g. 8,16,32")
    solver.add_argument("--tol-constraint", type=float, default=OptimizerSettings.constraint_tol)
    solver.add_argument("--tol-grad", type=float, default=OptimizerSettings.gradient_tol)
    solver.add_argument("--max-iter", type=int, default=OptimizerSettings.max_inner, help="BFGS iterations per outer step")

    ap = argparse.ArgumentParser(prog="clamped-elastica", description="Clamped planar elastica.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common, solver], help="seed-then-optimize solve")
    p.add_argument("problem")
    p = sub.add_parser("seed", parents=[common], help="boundary-data seed only")
    p.add_argument("problem")
    p = sub.add_parser("reference", parents=[common], help="sample a closed-form elastica")
    p.add_argument("params")
    p = sub.add_parser("compare", parents=[common, solver], help="solver against the polyline baseline")
    p.add_argument("problem")
    p.add_argument("--baseline-n", type=int, default=BASELINE_N)
    p = sub.add_parser("validate", parents=[common, solver], help="check invariants on a problem")
    p.add_argument("problem")
    return ap


def _settings(args) -> OptimizerSettings:
    try:
        return OptimizerSettings(
            constraint_tol=args.tol_constraint, gradient_tol=args.tol_grad, max_inner=args.max_iter
        )
    except ValueError as e:
        raise InputError("invalid_option", str(e)) from None


def _outdir(args) -> Path:
    out = Path(os.environ.get("ELASTICA_OUT") or args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _say(args, msg):
    if not args.quiet:
        print(msg)


def _solve(args, p):
    s = _settings(args)
    if args.samples < 2:
        raise InputError("invalid_option", "--samples must be at least 2")
    try:
        if args.schedule:
            return continuation_solve(p, args.schedule, s, args.samples)
        return solve_clamped_elastica(p, args.n, s, args.samples)
    except ValueError as e:
        if isinstance(e, ElasticaError):
            raise
        raise InputError("invalid_option", str(e)) from None


def _endpoint_miss(sol) -> float:
    return float(np.linalg.norm(sol.curve.position[-1] - sol.problem.x_b))


def solution_record(sol, timing=False) -> dict:
    return {
        "problem": sol.problem.to_dict(),
        "n": sol.n,
        "endpoint_miss": _endpoint_miss(sol),
        "report": sol.report.to_dict(timing=timing),
    }


def cmd_solve(args) -> int:
    p = load_problem(args.problem)
    out = _outdir(args)
    try:
        sol = _solve(args, p)
        code, note = 0, None
    except EndpointMiss as e:
        sol, code, note = e.solution, 1, {"error": e.code, "message": str(e)}
    if not sol.report.converged:
        code = 1
        note = {"error": "solver_failed", "status": sol.report.status.value, "message": sol.report.message}
    record = solution_record(sol)
    if note:
        record["diagnostics"] = note
    if "csv" in args.formats:
        write_curve_csv(out / "curve.csv", sol.curve)
    if "svg" in args.formats:
        write_svg(out / "curve.svg", {"solution": sol.curve.position})
    if "json" in args.formats or code:
        write_json(out / "report.json", record)
    if note:
        print(json.dumps(note))
    _say(args, f"{sol.report.status.value}: energy {sol.energy:.6g}, residual {sol.report.constraint_residual:.3g}, n {sol.n}")
    return code


def cmd_seed(args) -> int:
    p = load_problem(args.problem)
    out = _outdir(args)
    try:
        profile, iso = seed_profile(p)
    except ElasticaError as e:
        print(json.dumps({"error": e.code, "message": str(e)}))
        return 1
    canon, _ = canonical_pose(p)
    est = interior_tangent_estimates(canon)
    curve = apply_isometry(integrate_heading(profile, (0.0, 0.0), args.samples), iso)
    if "csv" in args.formats:
        write_curve_csv(out / "seed.csv", curve)
    if "svg" in args.formats:
        write_svg(out / "seed.svg", {"seed": curve.position})
    if "json" in args.formats:
        write_json(
            out / "seed.json",
            {
                "problem": p.to_dict(),
                "knots_t": profile.knots_t.tolist(),
                "theta": (est.theta_tilde + iso.rotation).tolist(),
                "w_tilde": iso.apply_vector(est.w_tilde).tolist(),
                "endpoint_miss": float(np.linalg.norm(curve.position[-1] - p.x_b)),
            },
        )
    _say(args, f"seed headings {np.round(est.theta_tilde + iso.rotation, 6).tolist()}")
    return 0


def cmd_reference(args) -> int:
    cp, a, b, x_a = load_reference(args.params)
    out = _outdir(args)
    if args.samples < 2:
        raise InputError("invalid_option", "--samples must be at least 2")
    curve = sample_reference(cp, a, b, args.samples - 1, x_a)
    if "csv" in args.formats:
        write_curve_csv(out / "curve.csv", curve)
    if "svg" in args.formats:
        write_svg(out / "curve.svg", {"reference": curve.position})
    th = curve.heading[-1]
    problem = BoundaryProblem(a, b, curve.position[0], curve.position[-1], (1.0, 0.0), (math.cos(th), math.sin(th)))
    if "json" in args.formats:
        write_json(out / "reference.json", {"params": cp.to_dict(), "c": cp.c, "problem": problem.to_dict()})
    x, y = curve.position[-1]
    _say(args, f"x(b) = ({x:.6f}, {y:.6f}), tangent ({math.cos(th):.6f}, {math.sin(th):.6f})")
    return 0


def _run_method(fn):
    t0 = time.perf_counter()
    try:
        sol = fn()
        err = None
    except EndpointMiss as e:
        sol, err = e.solution, {"error": e.code, "message": str(e)}
    except ElasticaError as e:
        sol, err = None, {"error": e.code, "message": str(e)}
    return sol, err, time.perf_counter() - t0


def cmd_compare(args) -> int:
    p = load_problem(args.problem)
    out = _outdir(args)
    s = _settings(args)
    if args.baseline_n < 4:
        raise InputError("invalid_option", "--baseline-n must be at least 4")
    runs = {
        "solver": _run_method(lambda: _solve(args, p)),
        "baseline": _run_method(lambda: standard_discretisation(p, args.baseline_n, s)),
    }
    table = []
    curves = {}
    for name, (sol, err, wall) in runs.items():
        row = {"method": name, "wall_time": wall}
        if sol is None:
            row.update(status=Status.FAILED.value, energy=None, iterations=None, n=None, constraint_residual=None)
        else:
            r = sol.report
            row.update(
                status=r.status.value if err is None else Status.FAILED.value,
                energy=r.energy,
                iterations=r.iterations,
                n=sol.n,
                constraint_residual=r.constraint_residual,
            )
            curves["solution" if name == "solver" else "baseline"] = sol.curve.position
            if "csv" in args.formats:
                write_curve_csv(out / f"{name}.csv", sol.curve)
        if err:
            row["diagnostics"] = err
        table.append(row)
    if "json" in args.formats:
        write_json(out / "compare.json", {"problem": p.to_dict(), "methods": table})
    if "csv" in args.formats:
        cols = ("method", "status", "energy", "iterations", "n", "constraint_residual", "wall_time")
        lines = [",".join(cols)]
        for row in table:
            lines.append(",".join("" if row[c] is None else str(row[c]) for c in cols))
        (out / "compare.csv").write_text("\n".join(lines) + "\n")
    if "svg" in args.formats and curves:
        write_svg(out / "compare.svg", curves)
    for row in table:
        e = "-" if row["energy"] is None else f"{row['energy']:.6g}"
        _say(args, f"{row['method']:8s} {row['status']:15s} energy {e:>10s}  {row['wall_time']:.3g} s")
    return 0 if table[0]["status"] == Status.CONVERGED.value else 1


def validation_checks(p: BoundaryProblem, args) -> list[tuple[str, bool, str]]:
    """Invariant checks on one problem; each entry is (name, passed, detail)."""
    checks = []

    def check(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    canon, iso = canonical_pose(p)
    back = iso.apply_point(canon.x_b)
    check("canonical_pose_round_trip", np.allclose(back, p.x_b, atol=1e-12), f"{np.linalg.norm(back - p.x_b):.3g}")
    est = interior_tangent_estimates(canon)
    norms = np.linalg.norm(est.v_tilde, axis=1)
    check("seed_unit_tangents", np.all(np.abs(norms - 1) < 1e-12), str(norms.tolist()))
    ends = est.tangents[[0, -1]]
    check("seed_end_tangents", np.allclose(ends, [canon.v_a, canon.v_b], atol=1e-12))
    try:
        sol = _solve(args, p)
    except EndpointMiss as e:
        sol = e.solution
        check("endpoint_miss", False, str(e))
    r = sol.report
    check("solver_converged", r.converged, r.message)
    check("constraint_residual", r.constraint_residual <= args.tol_constraint, f"{r.constraint_residual:.3g}")
    miss = _endpoint_miss(sol)
    check("curve_starts_at_x_a", np.allclose(sol.curve.position[0], p.x_a, atol=1e-12))
    check("curve_reaches_x_b", miss <= 1e-2 * max(1.0, p.length), f"{miss:.3g}")
    th = sol.curve.heading[[0, -1]]
    tang = np.column_stack((np.cos(th), np.sin(th)))
    check("end_tangents", np.allclose(tang, [p.v_a, p.v_b], atol=1e-9))
    check("energy_nonnegative", r.energy >= 0.0, f"{r.energy:.6g}")
    moved = PlanarIsometry(0.7, (1.5, -2.0))
    q = BoundaryProblem(
        p.a, p.b, moved.apply_point(p.x_a), moved.apply_point(p.x_b), moved.apply_vector(p.v_a), moved.apply_vector(p.v_b)
    )
    try:
        other = _solve(args, q)
        de = abs(other.energy - r.energy)
    except EndpointMiss as e:
        de = abs(e.solution.energy - r.energy)
    check("isometry_invariant_energy", de <= 1e-8 * max(1.0, r.energy), f"{de:.3g}")
    again = _solve(args, p)
    check("deterministic", np.array_equal(curve_rows(again.curve), curve_rows(sol.curve)))
    return checks


def cmd_validate(args) -> int:
    p = load_problem(args.problem)
    out = _outdir(args)
    checks = validation_checks(p, args)
    for name, ok, detail in checks:
        _say(args, f"{'PASS' if ok else 'FAIL'} {name}" + (f"  ({detail})" if detail else ""))
    if "json" in args.formats:
        write_json(
            out / "validate.json",
            {"problem": p.to_dict(), "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks]},
        )
    return 0 if all(ok for _, ok, _ in checks) else 1


COMMANDS = {
    "solve": cmd_solve,
    "seed": cmd_seed,
    "reference": cmd_reference,
    "compare": cmd_compare,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as e:
        print(json.dumps({"error": e.code, "message": str(e), **e.context}))
        return 2
    except ProblemError as e:
        print(json.dumps({"error": e.code, "message": str(e)}))
        return 2
    except ElasticaError as e:
        print(json.dumps({"error": e.code, "message": str(e)}))
        return 1
    except OSError as e:
        print(json.dumps({"error": "io_error", "message": str(e)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
