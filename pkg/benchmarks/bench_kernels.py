"""Time the Cython kernels against the pure-Python ones on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from orthosps import _kernels_py as py

try:
    from orthosps import _ckernels as cy
except ImportError:
    cy = None


def boolean_lattice(k):
    """All subsets of a k-set: meet table and top index."""
    n = 1 << k
    return [i & j for i in range(n) for j in range(n)], n - 1


def disjoint_relation(k):
    n = 1 << k
    return [sum(1 << j for j in range(n) if i & j == 0) for i in range(n)]


def random_adjacency(rng, n, density=0.4):
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def cases():
    rng = random.Random(1)
    adj = random_adjacency(rng, 18)
    meet, top = boolean_lattice(4)
    rows = disjoint_relation(4)
    thin = [r & ~(1 << 3) if i == 12 else r for i, r in enumerate(rows)]
    thin[3] &= ~(1 << 12)
    return [
        ("subset_perps n=18", lambda m: m.subset_perps(adj, 18)),
        ("biorthogonal_family n=18", lambda m: m.biorthogonal_family(adj, 18)),
        ("family_law_witness |L|=16", lambda m: m.family_law_witness(rows, meet, 16, top)),
        ("close_family_law |L|=16", lambda m: m.close_family_law(thin, meet, 16, top)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if cy is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'kernel':28} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, call in cases():
        t_py = min(timeit.repeat(lambda: call(py), number=1, repeat=args.repeat)) * 1000
        if cy is None:
            print(f"{name:28} {t_py:10.2f} {'-':>10} {'-':>8}")
            continue
        assert call(cy) == call(py) or list(call(cy)) == list(call(py)), name
        t_cy = min(timeit.repeat(lambda: call(cy), number=1, repeat=args.repeat)) * 1000
        print(f"{name:28} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
