"""Compare the compiled and pure-Python modular rank kernels.

    python3 benchmarks/bench_kernels.py [--size N] [--density P] [--repeat R]

Matrices are random sparse integer matrices, plus the evaluation matrices of
normal terms in the degree-7 components for two letters and one label.
"""

import argparse
import random
import time

from mnov import kernels, magnov
from mnov.exactalg import _index_vectors, _integer_rows
from mnov.genidx import GeneralIndices


def random_rows(rng, n, density):
    rows = []
    for _ in range(n):
        row = {c: rng.randint(-50, 50) for c in range(n) if rng.random() < density}
        rows.append({c: v for c, v in row.items() if v})
    return rows


def evaluation_rows(degree):
    ctx = GeneralIndices(["a", "b"], ["x"])
    groups = {}
    for t in magnov.enumerate_normal(degree, ctx=ctx):
        groups.setdefault(magnov.content(t), []).append(magnov.eval_canonical(t, ctx))
    out = []
    for vs in groups.values():
        rows, index = _index_vectors(vs)
        out.append((_integer_rows(rows), len(index)))
    return out


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--density", type=float, default=0.1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--degree", type=int, default=7)
    args = ap.parse_args()

    rng = random.Random(0)
    rows = random_rows(rng, args.size, args.density)
    cases = [(f"random {args.size}x{args.size}", [(rows, args.size)])]
    cases.append((f"normal terms, degree {args.degree}", evaluation_rows(args.degree)))

    impls = [("python", kernels.python_impl)]
    if kernels.compiled_impl is not None:
        impls.append(("compiled", kernels.compiled_impl))
    else:
        print("compiled kernel not built; timing the Python fallback only")

    for name, mats in cases:
        results = {}
        for impl_name, impl in impls:
            ranks = [impl.rank_mod_p(r, n, kernels.PRIME) for r, n in mats]
            results[impl_name] = (ranks, timeit(lambda: [impl.rank_mod_p(r, n, kernels.PRIME)
                                                         for r, n in mats], args.repeat))
        line = [f"{name}:"]
        for impl_name, (ranks, t) in results.items():
            line.append(f"{impl_name} {t * 1000:.2f} ms")
        if len(results) == 2:
            (r1, t1), (r2, t2) = results["python"], results["compiled"]
            assert r1 == r2, "kernels disagree"
            line.append(f"speedup {t1 / t2:.1f}x")
        print("  ".join(line))


if __name__ == "__main__":
    main()
