"""Timing comparison: compiled kernels vs the pure-numpy fallback.

Runs each kernel on batches typical of quadrature inner loops (15-point
Gauss-Kronrod panels and ~100-point tails) and on large batches where
vectorization amortizes, printing per-call times and the speedup ratio.

Usage:  python benchmarks/bench_kernels.py [--sizes 15,105,4096] [--repeat 7]

The numbers motivate the dual-backend layout: adaptive quadrature calls
kernels thousands of times on *small* arrays, where numpy's per-call
dispatch overhead dominates and the compiled loop wins by the largest
factor.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from zetalab._kernels import _fallback

try:
    from zetalab._kernels import _core
except ImportError:
    _core = None


def _time_call(fn, args, repeat: int, inner: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def _cases(n: int, rng: np.random.Generator):
    t = rng.uniform(1e-6, 40.0, n)
    u = rng.uniform(1e-9, 1.0 - 1e-9, n)
    s = rng.uniform(0.01, 25.0, n) * np.exp(1j * rng.uniform(-0.6, 0.6, n))
    return [
        ("envelope_values(fermi)", (t, 0), (t, 0)),
        ("complex_envelope_values(fermi)", (s, 0), (s, 0)),
        ("wave_integrand", (t, 0.6, 3.0, 0.4, 1.2, 0.7, 0), None),
        ("rotated_wave_integrand", (t, 0.5, 14.1, 0.5, 8.0, 1.0, 0.9, 0), None),
        ("rotated_fermi_integrand", (t, 0.5, 14.1, 0.8, 0.6), None),
        ("lerch_integrand", (t, 1.2, 0.8, 0.35 + 0.2j, 0.7 + 0.1j), None),
        ("scale_factor_integrand", (t, 0.6, 3.0, 1.0, 1.0), None),
        ("interval_integrand(v0)", (u, 0.4, 0.2, 1.3, 2.0, 0.5, 0, 0), None),
        ("interval_integrand(v2)", (u, 0.4, 0.2, 1.3, 2.0, 0.5, 0, 2), None),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="15,105,4096",
                    help="comma-separated batch sizes")
    ap.add_argument("--repeat", type=int, default=7,
                    help="timing repetitions (best is kept)")
    args = ap.parse_args(argv)

    if _core is None:
        print("compiled kernels are not built; install the package first "
              "(pip install -e . --no-build-isolation)", file=sys.stderr)
        return 1

    rng = np.random.default_rng(42)
    sizes = [int(x) for x in args.sizes.split(",")]

    # eta_terms is scalar-in scalar-out; bench separately.
    n_eta = 120
    inner = 2000
    f_t = _time_call(_fallback.eta_terms, (0.5 + 14.13j, n_eta), args.repeat, inner)
    c_t = _time_call(_core.eta_terms, (0.5 + 14.13j, n_eta), args.repeat, inner)
    print(f"{'kernel':28s} {'n':>6s} {'fallback':>12s} {'core':>12s} {'speedup':>8s}")
    print(f"{'eta_terms':28s} {n_eta:6d} {f_t * 1e6:10.2f}us {c_t * 1e6:10.2f}us "
          f"{f_t / c_t:7.1f}x")

    for n in sizes:
        inner = max(1, 20000 // max(n, 1))
        for name, fargs, _ in _cases(n, rng):
            fn_f = getattr(_fallback, name.split("(")[0])
            fn_c = getattr(_core, name.split("(")[0])
            f_t = _time_call(fn_f, fargs, args.repeat, inner)
            c_t = _time_call(fn_c, fargs, args.repeat, inner)
            print(f"{name:28s} {n:6d} {f_t * 1e6:10.2f}us {c_t * 1e6:10.2f}us "
                  f"{f_t / c_t:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
