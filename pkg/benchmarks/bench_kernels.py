"""Time the compiled kernels against the pure-Python ones on real inputs.

    python benchmarks/bench_kernels.py "1/30(25,2,3)" "1/35(1,3,31)" --repeat 3
"""

import argparse
import sys
import time

from gigsaw import _pykernels
from gigsaw.chamber import chamber, divisor_adjacency
from gigsaw.groups import parse_group_spec
from gigsaw.recipe import reids_recipe
from gigsaw.triangulation import triangulate

try:
    from gigsaw import _ckernels
except ImportError:
    _ckernels = None


def summand_problems(report):
    """The exact calls the summand engine makes while reducing this report."""
    vectors = [v.vector for v in report.vectors]
    out = []
    for key, target in enumerate(vectors):
        cand = [
            i for i, b in enumerate(vectors)
            if i != key and any(b) and all(x <= a for x, a in zip(b, target))
        ]
        out.append((target, [vectors[i] for i in cand], cand))
    return out


def best_of(repeat, fn):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("groups", nargs="*", default=["1/30(25,2,3)", "1/35(1,3,31)"])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run pip install -e . first", file=sys.stderr)
        return 1
    print(f"{'group':<16} {'kernel':<18} {'calls':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for spec in args.groups:
        rec = reids_recipe(triangulate(parse_group_spec(spec)))
        report = chamber(rec)
        _, adj = divisor_adjacency(rec)
        cap = len(adj)
        t_py, r_py = best_of(args.repeat, lambda: _pykernels.connected_subsets(adj, cap))
        t_c, r_c = best_of(args.repeat, lambda: _ckernels.connected_subsets(adj, cap))
        assert r_py == r_c, "backends disagree on connected_subsets"
        print(f"{spec:<16} {'connected_subsets':<18} {1:>6} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.1f}x")
        problems = summand_problems(report)
        t_py, r_py = best_of(args.repeat, lambda: [_pykernels.summand_search(*p) for p in problems])
        t_c, r_c = best_of(args.repeat, lambda: [_ckernels.summand_search(*p) for p in problems])
        assert r_py == r_c, "backends disagree on summand_search"
        print(f"{spec:<16} {'summand_search':<18} {len(problems):>6} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
