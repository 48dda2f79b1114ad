#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 200000] [--dim 8] [--repeat 5]

Runs each batched kernel on identical inputs through both paths, checks the
outputs agree, and reports best-of-N wall times.  The numba path is skipped
when NORDENHS_NO_NUMBA=1 or numba is unavailable.
"""

import argparse
import time

import numpy as np

from nordenhs import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    X = _kernels._ascontig(rng.standard_normal((args.n, args.dim)))
    Y = _kernels._ascontig(rng.standard_normal((args.n, args.dim)))
    AX = _kernels._ascontig(0.4 * X + 0.1 * Y)
    AY = _kernels._ascontig(0.4 * Y - 0.2 * X)

    cases = [
        ("pair_g", lambda: _kernels.pair_g(X, Y), lambda: _kernels.pair_g_np(X, Y)),
        ("pair_gt", lambda: _kernels.pair_gt(X, Y), lambda: _kernels.pair_gt_np(X, Y)),
        (
            "sectional_batch",
            lambda: _kernels.sectional_batch(X, Y, AX, AY, 0.12, -0.16),
            lambda: _kernels.sectional_batch_np(X, Y, AX, AY, 0.12, -0.16),
        ),
        (
            "pi_batch",
            lambda: _kernels.pi_batch(X, Y, AX, AY),
            lambda: _kernels.pi_batch_np(X, Y, AX, AY),
        ),
    ]

    print(f"batch size {args.n}, dim {args.dim}, numba={_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<18} {'fast path':>12} {'numpy':>12} {'speedup':>9}")
    for name, fast, ref in cases:
        if _kernels.HAVE_NUMBA:
            fast()  # trigger compilation outside the timed region
        t_fast, out_fast = best_of(fast, args.repeat)
        t_np, out_np = best_of(ref, args.repeat)
        a = np.atleast_2d(out_fast)
        b = np.atleast_2d(out_np)
        assert all(np.allclose(u, v, atol=1e-10) for u, v in zip(a, b)), name
        print(
            f"{name:<18} {t_fast * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms "
            f"{t_np / t_fast:>8.2f}x"
        )


if __name__ == "__main__":
    main()
