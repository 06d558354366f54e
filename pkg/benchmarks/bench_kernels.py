"""Compare the compiled grid kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends run the same workloads; results are checked for equality
before timings are reported.
"""

import argparse
import time
from math import gcd

from recsign.unitlattice import _pykernels

try:
    from recsign.unitlattice import _kernels
except ImportError:
    _kernels = None


def _workloads():
    orbit = [(a1, 97, a2, 89) for a1 in (1, 13, 40) for a2 in (2, 31)]
    grids = [(g, a1, a2, 2 * g, g) for g in (61, 97, 131) for a1, a2 in ((1, 3), (5, 7))]
    disks = [(g, 2, 3, 4 * g) for g in (101, 211, 401)]
    return orbit, grids, disks


def run(mod, orbit, grids, disks):
    out = []
    for a1, b1, a2, b2 in orbit:
        occ = mod.orbit_grid(a1, b1, a2, b2)
        out.append(mod.empty_windows(occ, b1, b2, b1 // 2 - 1, b2 // 2 - 1, False))
    for g, a1, a2, p1, p2 in grids:
        occ = mod.lattice_grid(g, a1, a2, p1, p2)
        out.append(mod.empty_windows(occ, p1, p2, g // 2, g // 2, False))
    for g, a1, a2, r2 in disks:
        if gcd(a1, g) == 1 and gcd(a2, g) == 1:
            out.append(mod.lattice_points_in_disk(g, a1, a2, r2))
    return out


def best_of(mod, repeat, *work):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run(mod, *work)
        best = min(best, time.perf_counter() - t0)
    return best, result


def _canon(results):
    return [[tuple(p) for p in r] for r in results]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    work = _workloads()
    t_py, r_py = best_of(_pykernels, args.repeat, *work)
    print(f"python  {t_py * 1e3:9.2f} ms")
    if _kernels is None:
        print("cython  not built (run: pip install -e . --no-build-isolation)")
        return
    t_cy, r_cy = best_of(_kernels, args.repeat, *work)
    if _canon(r_cy) != _canon(r_py):
        raise SystemExit("backends disagree")
    print(f"cython  {t_cy * 1e3:9.2f} ms")
    print(f"speedup {t_py / t_cy:9.1f}x")


if __name__ == "__main__":
    main()
