"""Compare the compiled and pure-Python row-reduction kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Reports the best of N runs for each kernel on two matrix classes: dense
random integers (entries outgrow int64, so the compiled integer kernel falls
back to Python ints) and sparse 0/+-1 matrices like the graded pieces of a
resolution (which stay in int64).  An end-to-end resolution build is also
timed with each kernel forced.
"""
import argparse
import random
import subprocess
import sys
import timeit

from lqres import _kernels_py

try:
    from lqres import _kernels
except ImportError:
    _kernels = None

P = 32003
SHAPES = [(20, 30), (60, 80), (120, 160)]

E2E = (
    "from lqres.corpus import power_ideal, squarefree_veronese;"
    "from lqres.ideals import certify_linear_quotients;"
    "from lqres.resolution import build_resolution;"
    "from lqres.verify import check_exactness_degreewise;"
    "I = power_ideal(4, 3); res = build_resolution(I, certify_linear_quotients(I));"
    "check_exactness_degreewise(res, 6)"
)


def random_matrix(rows, cols, bound, seed, density=0.4):
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_kernels(repeat):
    impls = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'kernel':<8} {'matrix':<8} {'op':<10} {'shape':<10} {'seconds':>10}")
    for rows, cols in SHAPES:
        classes = [("dense", random_matrix(rows, cols, 5, rows)),
                   ("sparse", random_matrix(rows, cols, 1, rows, density=0.05))]
        for kind, mat in classes:
            modp = [[x % P for x in r] for r in mat]
            for name, mod in impls:
                t_int = best(lambda: mod.rref_int([r[:] for r in mat], cols), repeat)
                t_p = best(lambda: mod.rref_modp([r[:] for r in modp], cols, P), repeat)
                shape = f"{rows}x{cols}"
                print(f"{name:<8} {kind:<8} {'rref_int':<10} {shape:<10} {t_int:>10.4f}")
                print(f"{name:<8} {kind:<8} {'rref_modp':<10} {shape:<10} {t_p:>10.4f}")


def bench_end_to_end(repeat):
    for label, env in [("default", {}), ("python", {"LQRES_PURE_PYTHON": "1"})]:
        code = f"import timeit; print(min(timeit.repeat({E2E!r}, number=1, repeat={repeat})))"
        out = subprocess.run([sys.executable, "-c", code], env={**_environ(), **env},
                             capture_output=True, text=True, check=True)
        print(f"end-to-end power(4,3) build + exactness [{label}]: {float(out.stdout):.3f}s")


def _environ():
    import os
    env = dict(os.environ)
    env.pop("LQRES_PURE_PYTHON", None)
    return env


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; only the fallback is timed")
    bench_kernels(args.repeat)
    bench_end_to_end(args.repeat)


if __name__ == "__main__":
    main()
