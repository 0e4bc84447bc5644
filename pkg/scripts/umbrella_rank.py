"""Rank of the stacked coefficient matrix B on umbrella graphs.

With anchors at the pendant vertex (radius 2) and the hub (radius 1) the rows
of B are linearly dependent for every 3-sparse support, because the pendant
eigen-relation ties the hub value to the pendant value. Anchors on the rim
with the same radii are shown for comparison.
"""

import argparse
from itertools import combinations

import numpy as np

from graphprony import SnapshotPlan, coefficient_matrix_B, eigendecompose, umbrella_graph
from graphprony.spectral import SparseSpectralSignal


def full_rank_count(graph, plan, s, tol=1e-10):
    basis = eigendecompose(graph)
    hits = total = 0
    for S in combinations(range(1, graph.n + 1), s):
        B = coefficient_matrix_B(basis, SparseSpectralSignal(S, (1.0,) * s), plan)
        hits += int(np.linalg.svd(B, compute_uv=False)[-1] > tol)
        total += 1
    return hits, total


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="6,8,10,12")
    args = ap.parse_args()
    print(f"{'n':>4} {'pendant+hub full rank':>22} {'rim anchors full rank':>22}")
    for n in (int(x) for x in args.sizes.split(",")):
        g = umbrella_graph(n)
        a, total = full_rank_count(g, SnapshotPlan.of((n, 2), (n - 1, 1)), 3)
        b, _ = full_rank_count(g, SnapshotPlan.of((1, 2), (n // 2, 1)), 3)
        print(f"{n:>4} {f'{a}/{total}':>22} {f'{b}/{total}':>22}")


if __name__ == "__main__":
    main()
