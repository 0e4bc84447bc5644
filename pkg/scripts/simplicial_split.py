"""Split an edge signal on a triangle strip into its UP and DN parts from local samples."""

import argparse
import warnings

import numpy as np

from graphprony import build_complex
from graphprony.simplicial import Chain, hodge_decomposition, split_recover, triangle_strip


def report(name, cx, f, sigma, s):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = split_recover(cx, 1, sigma, s, Chain(cx, 1, f).samples())
    print(f"{name}: UP {np.round(res.up.eigenvalues, 6)} DN {np.round(res.dn.eigenvalues, 6)} "
          f"budgets {res.budgets} residual {res.harmonic_norm:.2e} flagged {res.harmonic_detected}")
    for w in caught:
        print(f"  warning: {w.message}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--triangles", type=int, default=10)
    args = ap.parse_args()
    cx = triangle_strip(args.triangles)
    hd = hodge_decomposition(cx, 1)
    f = hd.up_vectors[:, 2] + 0.5 * hd.up_vectors[:, 6] + 0.8 * hd.dn_vectors[:, 4]
    print(f"true UP {np.round(hd.up_values[[2, 6]], 6)} DN {np.round(hd.dn_values[[4]], 6)}")
    report("strip", cx, f, (5, 6), 3)

    loop = build_complex(list(cx.faces[2]) + [(1, args.triangles + 2)])
    hl = hodge_decomposition(loop, 1)
    report("strip closed by an edge", loop, hl.up_vectors[:, 1] + 0.7 * hl.harmonic[:, 0], (5, 6), 2)


if __name__ == "__main__":
    main()
