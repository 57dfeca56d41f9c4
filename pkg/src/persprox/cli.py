"""Command line front end.

``persprox prox`` streams JSON lines (one query per line) from stdin to
stdout; ``persprox verify`` runs the randomized verification suites;
``persprox bench`` reports per-entry prox latencies and compares the kernel
backends when the compiled one is available.

Exit codes: 0 success, 1 verification failure, 2 partial batch failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time

import numpy as np

from . import engine, kernels, verify
from .functions import Quadratic
from .numerics import SolverConfig
from .verify import CATALOG

USAGE_ERROR = 2  # argparse default; remapped to 64 below
EXIT_USAGE = 64


def _build_cfg(args, record=None) -> SolverConfig:
    kwargs = {}
    if getattr(args, "tol", None) is not None:
        kwargs["abs_tol"] = args.tol
    if getattr(args, "max_iter", None) is not None:
        kwargs["max_iter"] = args.max_iter
    if record:
        if "tol" in record:
            kwargs["abs_tol"] = float(record["tol"])
        if "max_iter" in record:
            kwargs["max_iter"] = int(record["max_iter"])
    return SolverConfig(**kwargs)


def _run_query(record, args):
    name = record.get("function")
    if name not in CATALOG:
        raise ValueError(f"unknown function {name!r}")
    gamma = float(record["gamma"])
    x = np.asarray(record["x"], dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("x must be a non-empty flat array")
    eta = float(record["eta"])
    if "n" in record and int(record["n"]) != x.size:
        raise ValueError(f"n={record['n']} does not match len(x)={x.size}")
    cfg = _build_cfg(args, record)

    if name == "nested_quadratic":
        if "delta" not in record:
            raise ValueError("nested queries require a delta field")
        delta = float(record["delta"])
        return engine.nested_perspective_prox(gamma, x, eta, delta,
                                              Quadratic(x.size), cfg)
    if name == "capped_burg" and x.size != 1:
        raise ValueError("capped_burg is one-dimensional")
    if name == "log_sum_exp" and x.size < 2:
        raise ValueError("log_sum_exp needs at least two coordinates")
    f = verify.make_entry(name, x.size, cfg)
    return engine.prox_perspective(engine.ProxQuery(f, gamma, x, eta), cfg)


def _result_record(res, elapsed_us) -> dict:
    thr = res.threshold
    return {
        "p": [float(v) for v in res.p],
        "mu": float(res.mu),
        "case": res.case_tag,
        "threshold": "inf" if math.isinf(thr) else float(thr),
        "iterations": int(res.iterations),
        "feasibility_residual": float(res.feasibility_residual),
        "equality_residual": float(res.equality_residual),
        "elapsed_us": int(elapsed_us),
    }


def cmd_prox(args) -> int:
    had_error = False
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            start = time.perf_counter_ns()
            res = _run_query(record, args)
            elapsed = (time.perf_counter_ns() - start) // 1000
            out = _result_record(res, elapsed)
        except Exception as exc:  # report per line, never abort the batch
            out = {"error": str(exc)}
            had_error = True
        sys.stdout.write(json.dumps(out) + "\n")
        sys.stdout.flush()
    return 2 if had_error else 0


def cmd_verify(args) -> int:
    names = _parse_function_list(args.functions)
    cfg = _build_cfg(args)
    reports = verify.run_all(names, args.samples, args.seed,
                             grid_step=args.grid_step, cfg=cfg)
    width = max(len(r.suite) for r in reports)
    ok = True
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.entry:<16} {r.suite:<{width}}  {status}  "
              f"checked={r.checked}  failures={r.failures}  max_err={r.max_err:.3e}")
        ok = ok and r.passed
    print("verification:", "pass" if ok else "FAIL")
    return 0 if ok else 1


def _parse_function_list(raw: str):
    names = [n.strip() for n in raw.split(",") if n.strip()]
    bad = [n for n in names if n not in CATALOG]
    if bad or not names:
        raise _UsageError(
            f"unknown functions {bad!r}; choose from {', '.join(CATALOG)}"
        )
    return names


class _UsageError(Exception):
    pass


def _bench_queries(name, samples):
    rng = np.random.default_rng(12345)
    dim = {"quadratic": 3, "capped_burg": 1, "exp_sum": 3,
           "log_sum_exp": 3, "nested_quadratic": 2}[name]
    f = verify.make_entry(name, dim)
    for _ in range(samples):
        x = rng.uniform(-5.0, 5.0, size=dim)
        eta = float(rng.uniform(-5.0, 5.0))
        yield f, x, eta


def cmd_bench(args) -> int:
    cfg = SolverConfig()
    print(f"active kernel backend: {kernels.BACKEND}")
    for name in CATALOG:
        times = []
        iters = []
        lam_iters = []
        for f, x, eta in _bench_queries(name, args.samples):
            start = time.perf_counter_ns()
            res = engine.prox_perspective(engine.ProxQuery(f, 1.0, x, eta), cfg)
            times.append((time.perf_counter_ns() - start) / 1000.0)
            iters.append(res.iterations)
            if name == "log_sum_exp":
                _, _, evals = kernels.simplex_neg_entropy_prox(1.0, x, 2.0, 200)
                lam_iters.append(evals)
        times.sort()
        p99 = times[min(len(times) - 1, int(0.99 * len(times)))]
        row = (f"{name:<16} median={statistics.median(times):8.1f}us  "
               f"p99={p99:8.1f}us  median_root_evals={statistics.median(iters):.0f}")
        if lam_iters:
            row += f"  median_multiplier_evals={statistics.median(lam_iters):.0f}"
        print(row)

    _bench_kernels(args.samples)
    return 0


def _bench_kernels(samples):
    """Kernel-level comparison of the compiled and pure backends."""
    from . import _kernels_py

    backends = [("python", _kernels_py)]
    try:
        from . import _kernels_c

        backends.insert(0, ("c", _kernels_c))
    except ImportError:
        print("compiled backend not built; kernel comparison skipped")

    rng = np.random.default_rng(999)
    z = rng.uniform(-30.0, 700.0, size=max(1000, samples))
    y3 = rng.uniform(-5.0, 5.0, size=3)
    print("kernel comparison (lambert log-domain over "
          f"{z.size} points; simplex entropy prox, n=3):")
    for label, impl in backends:
        start = time.perf_counter_ns()
        impl.lambert_w0_exp_many(z)
        t_w = (time.perf_counter_ns() - start) / 1000.0
        start = time.perf_counter_ns()
        _, _, lam_iters = impl.simplex_neg_entropy_prox(1.0, y3, 2.0, 200)
        t_s = (time.perf_counter_ns() - start) / 1000.0
        print(f"  {label:<8} lambert_batch={t_w:9.1f}us  "
              f"simplex_prox={t_s:7.1f}us  lambda_evals={lam_iters}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persprox",
        description="Proximity operators of perspective functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_prox = sub.add_parser("prox", help="JSON lines on stdin -> results on stdout")
    p_prox.add_argument("--tol", type=float, default=None,
                        help="absolute residual tolerance for the scalar solves")
    p_prox.add_argument("--max-iter", type=int, default=None)

    p_verify = sub.add_parser("verify", help="run the randomized verification suites")
    p_verify.add_argument("--samples", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.add_argument("--functions", type=str, default=",".join(CATALOG))
    p_verify.add_argument("--grid-step", type=float, default=1e-4)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--max-iter", type=int, default=None)

    p_bench = sub.add_parser("bench", help="prox latency and kernel backend timings")
    p_bench.add_argument("--samples", type=int, default=1000)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # remap argparse usage failures onto the documented usage exit code
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "prox":
            return cmd_prox(args)
        if args.command == "verify":
            if args.samples < 1:
                raise _UsageError("--samples must be at least 1")
            return cmd_verify(args)
        if args.command == "bench":
            return cmd_bench(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
