#!/usr/bin/env python3
"""Benchmark the play-oracle kernel: numba JIT vs pure-numpy fallback.

Runs the same seeded workload in two subprocesses, one per backend
(selected with PTAKKIT_NUMBA=1/0), so each process pays its own import and
JIT cost.  The iteration budget is hit in full: epsilon is set far below
reach, which makes the wall times directly comparable.

Usage:
    python benchmarks/bench_fictitious_play.py [--iters 100000] [--families 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def worker(iters: int, families: int) -> None:
    from ptakkit import accel
    from ptakkit.families import random_family
    from ptakkit.game import incidence_matrix

    fams = [random_family(seed, n=10, max_sets=30) for seed in range(families)]
    mats = [incidence_matrix(f) for f in fams]
    eps = -1.0  # unreachable width: the kernel must spend the whole budget

    # warm-up triggers JIT compilation outside the timed region
    t0 = time.perf_counter()
    accel.fp_bracket(mats[0], 16, eps)
    warm = time.perf_counter() - t0

    t0 = time.perf_counter()
    checks = []
    for M in mats:
        lo_n, lo_d, up_n, up_d, k = accel.fp_bracket(M, iters, eps)
        checks.append([int(lo_n), int(lo_d), int(up_n), int(up_d), int(k)])
    elapsed = time.perf_counter() - t0

    print(json.dumps({
        "backend": accel.backend_name(),
        "warmup_s": warm,
        "elapsed_s": elapsed,
        "iters": iters,
        "families": families,
        "results": checks,
    }))


def run_backend(flag: str, iters: int, families: int) -> dict:
    env = dict(os.environ, PTAKKIT_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--iters", str(iters), "--families", str(families)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iters", type=int, default=100_000)
    ap.add_argument("--families", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        worker(args.iters, args.families)
        return 0

    jit = run_backend("1", args.iters, args.families)
    plain = run_backend("0", args.iters, args.families)
    if jit["results"] != plain["results"]:
        print("ERROR: backends disagree on results", file=sys.stderr)
        return 1

    total_iters = args.iters * args.families
    print(f"workload: {args.families} families x {args.iters} iterations")
    print(f"{'backend':<8} {'warmup':>9} {'elapsed':>9} {'iters/s':>12}")
    for rec in (jit, plain):
        rate = total_iters / rec["elapsed_s"]
        print(f"{rec['backend']:<8} {rec['warmup_s']:>8.2f}s {rec['elapsed_s']:>8.2f}s"
              f" {rate:>12.0f}")
    print(f"speedup (numba over numpy): {plain['elapsed_s'] / jit['elapsed_s']:.1f}x")
    print("results identical across backends: yes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
