#!/usr/bin/env python3
"""Time the compiled scan kernel against the numpy fallback.

Runs the same candidate-stream scans through diophlab._scanext and
diophlab._scan_py on a few classical targets, checks that both emit the
same candidates, and prints median wall times.  The extension has to be
built for this to show a comparison; without it only the fallback rows
appear.
"""

import argparse
import math
import statistics
import time

import numpy as np

from diophlab import _scan_py

try:
    from diophlab import _scanext
except ImportError:
    _scanext = None

PHI_FRAC = (math.sqrt(5) - 1) / 2


def cases(scale):
    # (label, theta rows as floats, n, m, T)
    return [
        ("golden line      n=1 m=1", [[PHI_FRAC]], 1, 1, scale * 10**6),
        ("surd row         n=2 m=1", [[2**0.5 - 1, 3**0.5 - 1]], 2, 1, scale * 1500),
        ("surd column      n=1 m=2", [[2**0.5 - 1], [3**0.5 - 1]], 1, 2, scale * 10**6),
        ("cubic traces     n=3 m=1", [[0.3247179572447460, 0.5436890126920763, 0.7548776662466927]], 3, 1, scale * 60),
    ]


def run_once(kernel, theta, T, n, m):
    t0 = time.perf_counter()
    rec, prod, runmin, prodmin, scanned = kernel.scan_stream(
        np.array(theta, dtype=np.float64), T, 1e-9, 1e-9, n, m, 1, T
    )
    return time.perf_counter() - t0, (tuple(map(tuple, rec)), tuple(map(tuple, prod)), scanned)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timed runs per case")
    ap.add_argument("--scale", type=int, default=1, help="multiplier on the per-case T")
    args = ap.parse_args()

    kernels = [("python", _scan_py)]
    if _scanext is not None:
        kernels.insert(0, ("cython", _scanext))
    else:
        print("extension not built; timing the fallback only")

    header = f"{'case':28s}" + "".join(f"{name:>12s}" for name, _ in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))

    for label, theta, n, m, T in cases(args.scale):
        medians = []
        streams = []
        for _, kernel in kernels:
            times = []
            out = None
            for _ in range(args.repeat):
                dt, out = run_once(kernel, theta, T, n, m)
                times.append(dt)
            medians.append(statistics.median(times))
            streams.append(out)
        if len(streams) == 2 and streams[0] != streams[1]:
            raise SystemExit(f"kernel outputs differ on {label!r}")
        row = f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in medians)
        if len(medians) == 2:
            row += f"{medians[1] / medians[0]:9.1f}x"
        print(row)

    if len(kernels) == 2:
        print("\ncandidate streams agree on every case")


if __name__ == "__main__":
    main()
