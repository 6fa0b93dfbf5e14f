"""Benchmark the compiled term-map kernels against the pure-Python fallback.

The hot loop of every identity check is the sparse Laurent product (tuple
exponent addition + dict accumulation).  Run

    python benchmarks/bench_kernels.py

to time representative workloads under both backends; the pure path is
selected by re-importing with CLUSTERLAB_PURE=1 in a subprocess, so one
invocation prints both columns.
"""

import json
import os
import subprocess
import sys
import time

WORKLOADS = ("product", "square", "eq1", "genus3")


def run_workloads():
    from clusterlab import KERNEL_BACKEND
    from clusterlab.mutation import initial_seed, mutate_seq
    from clusterlab.snake import build_band, expand_band
    from clusterlab.surface import builtin_genus2
    from clusterlab.verify import check_eq1, check_genusg

    timings = {"backend": KERNEL_BACKEND}

    T2 = builtin_genus2()
    s0 = initial_seed(T2.exchange_matrix())
    big = mutate_seq(s0, (1, 3, 5, 7, 9, 2, 4, 6, 8, 10)).cluster
    p = big[8] * big[9]
    t0 = time.perf_counter()
    for _ in range(20):
        _ = p * big[7]
    timings["product"] = time.perf_counter() - t0

    L2 = expand_band(build_band(T2, T2.boundary_loop()))
    t0 = time.perf_counter()
    for _ in range(50):
        _ = L2 * L2
    timings["square"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(20):
        check_eq1()
    timings["eq1"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    check_genusg(3)
    timings["genus3"] = time.perf_counter() - t0
    return timings


def main():
    if os.environ.get("_BENCH_CHILD"):
        print(json.dumps(run_workloads()))
        return
    rows = []
    for pure in ("0", "1"):
        env = dict(os.environ, CLUSTERLAB_PURE=pure, _BENCH_CHILD="1")
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        rows.append(json.loads(out.stdout.strip().splitlines()[-1]))
    print(f"{'workload':10s} {rows[0]['backend']:>10s} {rows[1]['backend']:>10s}  speedup")
    for key in WORKLOADS:
        a, b = rows[0][key], rows[1][key]
        print(f"{key:10s} {a:9.3f}s {b:9.3f}s  {b / a:6.2f}x")


if __name__ == "__main__":
    main()
