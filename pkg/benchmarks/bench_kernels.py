"""Compare the compiled and pure-Python modular kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Workloads: the graded and ungraded span closure for the tensor square of
the h=1, N=6 Witt window (49x49), and the graded closure for the tensor
of the h=1 and h=3/2 windows, which reaches full dimension.
"""
import argparse
import time

from wittcomp import kernels
from wittcomp.burnside import algebra_dimension_mod
from wittcomp.composite import tensor_rep, witt_window_rep
from wittcomp.witt import WeightParam


def workloads():
    a = witt_window_rep(WeightParam.parse("1"), 6, 2)
    b = witt_window_rep(WeightParam.parse("3/2"), 6, 2)
    same, mixed = tensor_rep(a, a), tensor_rep(a, b)
    return {
        "tensor h=1 x h=1, graded": (same.matrices(), same.grading),
        "tensor h=1 x h=1, ungraded": (same.matrices(), None),
        "tensor h=1 x h=3/2, graded": (mixed.matrices(), mixed.grading),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python-ungraded", action="store_true",
                    help="the pure-Python ungraded closure takes minutes")
    args = ap.parse_args()
    backends = [n for n in ("cython", "python") if n in kernels.BACKENDS]
    print(f"{'workload':32} {'backend':8} {'dim':>5} {'best s':>9}")
    for name, (ops, grading) in workloads().items():
        for backend in backends:
            if backend == "python" and grading is None and args.skip_python_ungraded:
                continue
            best, dim = float("inf"), None
            for _ in range(args.repeat):
                t = time.perf_counter()
                dim = algebra_dimension_mod(ops, grading=grading, backend=backend)
                best = min(best, time.perf_counter() - t)
            print(f"{name:32} {backend:8} {dim:>5} {best:>9.3f}")


if __name__ == "__main__":
    main()
