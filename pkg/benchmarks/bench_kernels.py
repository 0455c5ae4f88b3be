"""Time the numba and numpy kernel backends on N=225 workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from nearfield.kernels import _numba, _numpy


def best_of(fn, repeat):
    fn()  # warm-up (JIT compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    k = 2 * np.pi / 0.1
    pos = (np.arange(225) - 112.0) * 0.05
    c = rng.uniform(-1, 1, 20000)
    u = rng.uniform(1 / 2610, 1 / 3, 20000)
    b = np.exp(1j * rng.uniform(0, 2 * np.pi, 225))
    dirs = (113 - np.arange(1, 226)) / 225 * 2.0
    v = np.linspace(-40, 40, 1_000_000)

    cases = {
        "phase_matrix 225x20000": lambda m: m.phase_matrix(pos, c, u, k, False),
        "phase_matrix exact 225x20000": lambda m: m.phase_matrix(pos, c, u, k, True),
        "dft_gains 225 beams": lambda m: m.dft_gains(pos, b, dirs, k),
        "fresnel 1e6 points": lambda m: np.stack(m.fresnel_cs(v)),
    }
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, fn in cases.items():
        t_np, out_np = best_of(lambda: fn(_numpy), args.repeat)
        t_nb, out_nb = best_of(lambda: fn(_numba), args.repeat)
        diff = float(np.max(np.abs(out_np - out_nb)))
        print(f"{name:32s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {t_np / t_nb:8.1f} {diff:11.2e}")


if __name__ == "__main__":
    main()
