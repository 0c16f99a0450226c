"""Compare the compiled and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times the see-saw (the inner loop of every POPT check) and the product-state
grid evaluation on both backends, and checks that they agree numerically.
"""
import argparse
import timeit

import numpy as np

from choilab.kernels import compiled_available, get_backend
from choilab.linalg import max_entangled, random_hermitian, swap
from choilab.predicates import qubit_grid


def cases():
    phi = max_entangled(2)
    yield "seesaw Phi-0.6I (2,2) x24", "seesaw", np.outer(phi, phi.conj()) - 0.6 * np.eye(4), 2, 2, 24
    yield "seesaw SWAP (2,2) x24", "seesaw", swap(2).astype(complex), 2, 2, 24
    yield "seesaw Hermitian (3,3) x24", "seesaw", random_hermitian(9, 1), 3, 3, 24
    yield "seesaw Hermitian (4,4) x24", "seesaw", random_hermitian(16, 2), 4, 4, 24
    yield "grid 100x100 product pts (2,2)", "grid", swap(2).astype(complex), 2, 2, None


def run(backend, kind, rho, d_a, d_b, n):
    if kind == "seesaw":
        y0 = np.random.default_rng(0).standard_normal((n, d_b)) + 0j
        return backend.seesaw(rho, d_a, d_b, y0, 200, 1e-11)[0]
    pts = qubit_grid(10, 10)
    return backend.product_expectations(rho, d_a, d_b, pts, pts)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    names = ["python"] + (["cython"] if compiled_available() else [])
    if len(names) == 1:
        print("compiled extension not built; timing the python backend only")
    print(f"{'case':32s}" + "".join(f"{n:>14s}" for n in names) + ("   speedup  max|diff|" if len(names) == 2 else ""))
    for label, kind, rho, d_a, d_b, n in cases():
        times, outs = [], []
        for name in names:
            be = get_backend(name)
            outs.append(run(be, kind, rho, d_a, d_b, n))
            t = min(timeit.repeat(lambda: run(be, kind, rho, d_a, d_b, n), number=1, repeat=args.repeat))
            times.append(t)
        row = f"{label:32s}" + "".join(f"{t * 1e3:11.3f} ms" for t in times)
        if len(names) == 2:
            row += f"   {times[0] / times[1]:6.1f}x  {np.abs(outs[0] - outs[1]).max():.1e}"
        print(row)


if __name__ == "__main__":
    main()
