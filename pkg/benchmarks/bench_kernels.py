"""Time the hot kernels and a full solve on the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 20] [--json out.json]

Each entry is the median of ``--repeat`` runs after one warmup call, so numba
compilation time is excluded.
"""

import argparse
import json
import statistics
import time

import numpy as np

from clamped_elastica import BoundaryProblem, kernels, solve_clamped_elastica, standard_discretisation
from clamped_elastica.closed_form import ClosedFormParams, sample_reference


def _cases():
    rng = np.random.default_rng(0)
    u = np.linspace(-20, 20, 20_000)
    edges = np.linspace(0, 20, 201)
    knots = np.linspace(0, 10, 41)
    coeffs = rng.normal(size=(40, 4))
    t = rng.uniform(0, 10, 20_000)
    n = 2000
    diag, off, rhs = 4 + rng.random(n), rng.random(n - 1), rng.normal(size=n)
    phi, q = rng.uniform(-3, 3, 401), rng.random(401)
    pts = np.cumsum(rng.normal(size=(101, 2)), axis=0)
    v = np.array([0.911711, -0.410832])
    ex2 = BoundaryProblem(0, 10, (0, 0), (3.75605, 2.35942), (1, 0), v / np.linalg.norm(v))
    wave = ClosedFormParams("wavelike", 1.0, 0.5)
    return {
        "agm_amplitude (20k points)": lambda: kernels.agm_amplitude(u, 0.7),
        "adaptive_simpson (200 panels)": lambda: kernels.adaptive_simpson_curvature(0, 1.0, 0.5, 0.0, edges[:-1], edges[1:], 1e-10),
        "tridiag_solve (n=2000)": lambda: kernels.tridiag_solve(off, diag, off, rhs),
        "spline_eval (20k points)": lambda: kernels.spline_eval(knots, coeffs, t, 1),
        "closure_and_jacobian (n=400)": lambda: kernels.closure_and_jacobian(phi, q),
        "polyline_objective (100 segs)": lambda: kernels.polyline_objective(pts),
        "sample_reference wavelike": lambda: sample_reference(wave, 0.0, 20.0, 400),
        "solve example2 n=40": lambda: solve_clamped_elastica(ex2, 40),
        "baseline example2 n=20": lambda: standard_discretisation(ex2, 20),
    }


def bench(repeat):
    rows = {}
    backends = ["numpy"] + (["numba"] if kernels.numba_available() else [])
    for backend in backends:
        with kernels.use_backend(backend):
            kernels.warmup()
            for name, fn in _cases().items():
                fn()
                times = []
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    fn()
                    times.append(time.perf_counter() - t0)
                rows.setdefault(name, {})[backend] = statistics.median(times)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--json", help="also write the timings here")
    args = ap.parse_args()
    rows = bench(args.repeat)
    print(f"{'case':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, r in rows.items():
        nb = r.get("numba")
        speed = f"{r['numpy'] / nb:8.1f}" if nb else "       -"
        nbs = f"{nb * 1e3:10.3f}" if nb else "         -"
        print(f"{name:34s} {r['numpy'] * 1e3:10.3f} {nbs} {speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
