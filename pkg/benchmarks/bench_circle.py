"""Time the compiled and pure-Python circle kernels on a contour-sized workload.

    python benchmarks/bench_circle.py [--family "H 1 1"] [--n 100] [--repeat 3]
"""
import argparse
import time

import mpmath

from wrightturan import _kernels
from wrightturan.contour import ContourConfig, _Integrator, _root_tables
from wrightturan.series import ProductSpec


def workload(family: str, n: int):
    cfg = ContourConfig.for_family(ProductSpec.parse(family, 0), n)
    with mpmath.workdps(40):
        integ = _Integrator(cfg)
        cos, sin = _root_tables(cfg.nodes)
    ks = list(range(cfg.nodes // 2 + 1))
    return cfg, integ.coeffs, cos, sin, ks


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="H 1 1")
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    cfg, coeffs, cos, sin, ks = workload(args.family, args.n)
    print(f"family {args.family}, n = {args.n}: {cfg.nodes} nodes, {len(coeffs) - 1} series terms, {len(ks)} sums")
    results = {}
    for backend in _kernels.available_backends():
        with mpmath.workdps(40):
            secs, vals = best_of(args.repeat, lambda: _kernels.log_series_on_circle(coeffs, cos, sin, ks, backend))
        results[backend] = (secs, vals)
        print(f"  {backend:9s} {secs * 1e3:9.2f} ms")
    if len(results) == 2:
        (tc, vc), (tp, vp) = results["compiled"], results["python"]
        with mpmath.workdps(40):
            gap = max(abs(a - b) for a, b in zip(vc, vp))
        print(f"  speedup   {tp / tc:9.1f}x   max |compiled - python| = {mpmath.nstr(gap, 3)}")
    else:
        print("  compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
