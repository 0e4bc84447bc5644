"""Recover a 2-sparse signal on the path graph P_20 from four samples at one end."""

import argparse
import math

import numpy as np

from graphprony import (SparseSpectralSignal, eigendecompose, neighbourhood, path_graph,
                        recover_one_neighbourhood, synthesize)
from graphprony.prony import companion_matrix, hankel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--support", default="3,15")
    ap.add_argument("--coeffs", default="1,0.2")
    ap.add_argument("--vertex", type=int, default=1)
    args = ap.parse_args()

    S = tuple(int(x) for x in args.support.split(","))
    beta = tuple(float(x) for x in args.coeffs.split(","))
    s = len(S)
    g = path_graph(args.n)
    basis = eigendecompose(g)
    f = synthesize(basis, SparseSpectralSignal(S, beta))
    W = sorted(neighbourhood(g, args.vertex, 2 * s - 1))
    res = recover_one_neighbourhood(g, args.vertex, s, {w: float(f[w - 1]) for w in W}, basis)

    np.set_printoptions(precision=4, suppress=True)
    m = res.diagnostics["moments"]
    print(f"samples on {W}: {f[np.array(W) - 1]}")
    print(f"moments: {np.array(m)}")
    print(f"hankel:\n{hankel(m, s)}")
    print(f"companion:\n{companion_matrix(res.diagnostics['polynomial'])}")
    for lam, idx in zip(res.eigenvalues, res.matched_support):
        j = idx[0]
        exact = 2 - 2 * math.cos(math.pi * (j - 1) / args.n)
        comp = res.components[lam]
        err = max(abs(comp[w] - beta[S.index(j)] * basis.vector(j)[w - 1]) for w in comp)
        print(f"lambda={lam:.10f} index={j} |lambda-exact|={abs(lam - exact):.1e} component error={err:.1e}")


if __name__ == "__main__":
    main()
