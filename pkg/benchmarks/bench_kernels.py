"""Compare the compiled and pure-Python kernels on identity scans and Smith elimination.

Run:  python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import time

from hocolim import _pykernels
from hocolim import constructions as cons
from hocolim.category import cyclic_group
from hocolim.homology import chain_complex

try:
    from hocolim import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def identity_cases():
    P = cons.product(cons.standard_simplex(3, 5), cons.standard_simplex(2, 5)).obj
    G = cyclic_group(3).nerve(6)
    return [("Delta^3 x Delta^2, N=5", P), ("N(Z/3), N=6", G)]


def dense_cases(seed=0):
    rng = random.Random(seed)
    out = []
    G = cyclic_group(3).nerve(6)
    C = chain_complex(G, 6)
    for q in (5, 6):
        out.append((f"normalized bar complex of Z/3, d_{q}", C.dense(q)))
    P = cons.product(cons.standard_simplex(2, 4), cons.standard_simplex(2, 4)).obj
    C = chain_complex(P, 4)
    for q in (3, 4):
        out.append((f"Delta^2 x Delta^2, d_{q}", C.dense(q)))
    for size in (60, 120):
        out.append((f"sparse random {size}x{size}, entries +-1",
                    [[rng.choice((-1, 1)) if rng.random() < 0.05 else 0 for _ in range(size)]
                     for _ in range(size)]))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'case':44s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, X in identity_cases():
        tables = (X.sizes(), X.faces, X.degeneracies)
        tp, rp = best_of(lambda: _pykernels.check_identities(*tables), args.repeat)
        line = f"{'identities: ' + name:44s} {tp:10.4f}"
        if _ckernels is not None:
            tc, rc = best_of(lambda: _ckernels.check_identities(*tables), args.repeat)
            assert rp == rc
            line += f" {tc:10.4f} {tp / tc:8.1f}"
        print(line)
    for name, M in dense_cases():
        tp, rp = best_of(lambda: _pykernels.smith_invariants_dense(M), args.repeat)
        line = f"{'smith: ' + name:44s} {tp:10.4f}"
        if _ckernels is not None:
            try:
                tc, rc = best_of(lambda: _pykernels._normalise(_ckernels.dense_diagonal([r[:] for r in M])),
                                 args.repeat)
                assert rp == rc
                line += f" {tc:10.4f} {tp / tc:8.1f}"
            except OverflowError:
                line += "   overflow (exact path used)"
        print(line)


if __name__ == "__main__":
    main()
