#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the P1 assembly loops and the (p, q) quotient energy evaluation on
meshes/grids of increasing size and prints the per-call timings with the
compiled-over-fallback speedup.

Usage: python benchmarks/bench_kernels.py [--repeats 7]
"""

import argparse
import time

import numpy as np

from sharpconst import _kernels_py, catalog, fem2d

try:
    from sharpconst import _core
except ImportError:
    _core = None


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_row(label, make_args, kernel_name, repeats):
    args = make_args()
    py_fn = getattr(_kernels_py, kernel_name)
    t_py = best_of(lambda: py_fn(*args), repeats)
    if _core is None:
        print(f"{label:34s} fallback {t_py * 1e3:9.3f} ms   compiled      n/a")
        return
    c_fn = getattr(_core, kernel_name)
    t_c = best_of(lambda: c_fn(*args), repeats)
    print(
        f"{label:34s} fallback {t_py * 1e3:9.3f} ms   compiled {t_c * 1e3:9.3f} ms   "
        f"speedup {t_py / t_c:6.2f}x"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7, help="repeats per timing (best-of)")
    args = parser.parse_args()
    if _core is None:
        print("note: compiled extension not available; only the fallback is timed")

    print("== P1 triangle assembly (stiffness + mass triplets) ==")
    for h in (0.02, 0.01, 0.005):
        mesh = fem2d.build_mesh(catalog.Rectangle(1.0, 1.0), h)
        xy = np.ascontiguousarray(mesh.vertices)
        tris = np.ascontiguousarray(mesh.triangles)
        bench_row(
            f"square h={h:g} ({len(tris)} triangles)",
            lambda xy=xy, tris=tris: (xy, tris),
            "tri_assembly_arrays",
            args.repeats,
        )

    print("== boundary-edge mass triplets ==")
    mesh = fem2d.build_mesh(catalog.Disk(1.0), 0.005)
    xy = np.ascontiguousarray(mesh.vertices)
    edges = np.ascontiguousarray(mesh.boundary_edges)
    bench_row(
        f"disk rim ({len(edges)} edges)",
        lambda: (xy, edges),
        "edge_mass_arrays",
        args.repeats,
    )

    print("== quotient energy + gradient, p=1.5 q=4.5 ==")
    rng = np.random.default_rng(1)
    for n in (2048, 8192, 32768):
        u = np.ascontiguousarray(rng.standard_normal(n + 1))
        gw = np.full(n, 1.0 / n)
        nw = np.full(n + 1, 1.0 / n)
        bench_row(
            f"grid N={n}",
            lambda u=u, gw=gw, nw=nw, n=n: (u, gw, nw, float(n), 1.5, 4.5),
            "pq_energy",
            args.repeats,
        )
    print(
        "\ndispatch: assembly kernels run compiled when available; pq_energy "
        "always runs the NumPy twin (SIMD power loops win there)."
    )


if __name__ == "__main__":
    main()
