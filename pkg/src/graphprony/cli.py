"""Command-line interface.

JSON goes to stdout. Exit codes: 0 success, 1 model violation (rank or
root failure), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .config import DEFAULT, Tolerances
from .errors import GraphPronyError, InputError, ModelViolation
from .graph import generate, neighbourhood
from .multisnapshot import SnapshotPlan, recover_multi, required_samples
from .prony import companion_matrix, hankel, local_moments, prony_polynomial, recover_one_neighbourhood
from .sampling import colliding_signals, is_chebotarev, l0_decode_basis, uniqueness_check
from .simplicial import (Chain, build_complex, recover_simplicial_multi,
                         recover_simplicial_one, split_recover, triangle_strip)
from .spectral import SparseSpectralSignal, dft_matrix, eigendecompose, path_eigenpair, synthesize, vandermonde


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None


def _tol(args) -> Tolerances:
    return DEFAULT.scaled(args.tol_scale)


def _say(args, text: str) -> None:
    if args.verbose:
        print(text, file=sys.stderr)


def _graph_samples(args, g, required):
    if args.samples:
        return io.samples_from_list(args.samples)
    if args.signal:
        values = io.signal_from_dict(args.signal, g.n)
        return {v: float(values[v - 1]) for v in sorted(required)}
    raise InputError("either --samples or --signal is required")


# -- subcommands -------------------------------------------------------------

def cmd_gen(args):
    if args.kind == "strip":
        return triangle_strip(args.n).to_dict()
    return io.graph_to_dict(generate(args.kind, args.n, args.p, args.seed))


def cmd_synth(args):
    g = io.graph_from_dict(args.graph)
    sig = SparseSpectralSignal(tuple(_ints(args.support)), tuple(_floats(args.coeffs)))
    values = synthesize(eigendecompose(g, _tol(args)), sig)
    _say(args, "\n".join(f"{v:4d} {x: .6f}" for v, x in enumerate(values, 1)))
    return io.signal_to_dict(values)


def cmd_recover_one(args):
    g = io.graph_from_dict(args.graph)
    samples = _graph_samples(args, g, neighbourhood(g, args.vertex, 2 * args.sparsity - 1))
    basis = eigendecompose(g) if args.match else None
    res = recover_one_neighbourhood(g, args.vertex, args.sparsity, samples, basis, _tol(args))
    _say(args, "eigenvalues: " + " ".join(f"{x:.12g}" for x in res.eigenvalues))
    return res.to_dict()


def cmd_recover_multi(args):
    g = io.graph_from_dict(args.graph)
    plan = SnapshotPlan.from_dict(io.read_json(args.plan))
    samples = _graph_samples(args, g, required_samples(g, plan, args.sparsity))
    res = recover_multi(g, plan, args.sparsity, samples, _tol(args))
    _say(args, "eigenvalues: " + " ".join(f"{x:.12g}" for x in res.eigenvalues))
    return res.to_dict()


def cmd_recover_simplicial(args):
    cx = build_complex(io.read_json(args.complex)["facets"])
    chain = Chain.from_dict(cx, io.read_json(args.chain))
    if chain.k != args.k:
        raise InputError(f"chain has dimension {chain.k}, --k is {args.k}")
    samples = chain.samples()
    sigma = tuple(_ints(args.face)) if args.face else None
    tol = _tol(args)
    if args.mode == "split":
        res = split_recover(cx, args.k, sigma, args.sparsity, samples, tol)
        return res.to_dict()
    T = args.mode.upper()
    if args.plan:
        plan = SnapshotPlan.from_dict(io.read_json(args.plan))
        return recover_simplicial_multi(cx, args.k, T, plan, args.sparsity, samples, tol).to_dict()
    if sigma is None:
        raise InputError("--face is required without --plan")
    return recover_simplicial_one(cx, args.k, T, sigma, args.sparsity, samples, tol).to_dict()


def _basis_from_args(args):
    if getattr(args, "dft", None):
        return dft_matrix(args.dft)
    return eigendecompose(io.graph_from_dict(args.graph), _tol(args))


def cmd_decode(args):
    U = _basis_from_args(args)
    if args.samples:
        samples = io.samples_from_list(args.samples)
        W = sorted(samples)
    else:
        if not (args.signal and args.W):
            raise InputError("decode needs --samples, or --signal with --W")
        values = io.signal_from_dict(args.signal)
        W = _ints(args.W)
        samples = {w: float(values[w - 1]) for w in W}
    sig = l0_decode_basis(U, W, samples, args.s_max, _tol(args))
    return {"sparsity": sig.sparsity, **sig.to_dict()}


def cmd_collide(args):
    c = colliding_signals(_basis_from_args(args), _ints(args.W), _ints(args.support), _tol(args))
    return {
        "W": list(c.W),
        "f": c.f.to_dict(), "g": c.g.to_dict(),
        "f_values": np.column_stack([np.real(c.f_values), np.imag(c.f_values)]).tolist(),
        "g_values": np.column_stack([np.real(c.g_values), np.imag(c.g_values)]).tolist(),
        "max_sample_gap": float(max(abs(c.f_values[w - 1] - c.g_values[w - 1]) for w in c.W)),
    }


def cmd_chebotarev(args):
    if args.dft:
        M = dft_matrix(args.dft)
    elif args.vandermonde:
        M = vandermonde(_floats(args.vandermonde))
    elif args.matrix:
        M = np.asarray(io.read_json(args.matrix), dtype=float)
    else:
        raise InputError("one of --dft, --vandermonde, --matrix is required")
    ok, witness = is_chebotarev(M, _tol(args))
    out = {"chebotarev": ok}
    if witness is not None:
        out["witness"] = {"rows": list(witness[0]), "cols": list(witness[1])}
    return out


def cmd_uniqueness(args):
    return {"unique": uniqueness_check(_basis_from_args(args), _ints(args.W), args.sparsity, _tol(args))}


def _repro(tol: Tolerances):
    """Path graph n=20, f = u_3 + u_15 / 5, vertex 1, sparsity 2."""
    from .graph import path_graph
    n, s, v = 20, 2, 1
    support, coeffs = (3, 15), (1.0, 0.2)
    t0 = time.perf_counter()
    g = path_graph(n)
    basis = eigendecompose(g, tol)
    f = synthesize(basis, SparseSpectralSignal(support, coeffs))
    W = sorted(neighbourhood(g, v, 2 * s - 1))
    samples = {w: float(f[w - 1]) for w in W}
    m = local_moments(g, samples, v, 2 * s - 1)
    H = hankel(m, s)
    P = companion_matrix(prony_polynomial(H, tol))
    res = recover_one_neighbourhood(g, v, s, samples, basis, tol)
    elapsed = time.perf_counter() - t0
    exact = [path_eigenpair(n, j)[0] for j in support]
    eig_err = max(abs(a - b) for a, b in zip(res.eigenvalues, exact))
    comp_err = 0.0
    comp_rows = []
    for lam, j, beta in zip(res.eigenvalues, support, coeffs):
        truth = beta * path_eigenpair(n, j)[1]
        for w, val in res.components[lam].items():
            comp_err = max(comp_err, abs(val - truth[w - 1]))
            comp_rows.append((w, j, val, truth[w - 1]))
    return {
        "samples": [samples[w] for w in W],
        "moments": m.values.tolist(),
        "hankel": H.tolist(),
        "companion": P.tolist(),
        "eigenvalues": list(res.eigenvalues),
        "matched_support": [list(c) for c in res.matched_support],
        "max_eigenvalue_error": eig_err,
        "max_component_error": comp_err,
        "runtime_seconds": elapsed,
    }, (basis, f, W, comp_rows, support, coeffs)


def cmd_repro(args):
    out, (basis, f, W, comp_rows, support, coeffs) = _repro(_tol(args))
    if args.csv:
        d = Path(args.csv)
        d.mkdir(parents=True, exist_ok=True)
        beta = dict(zip(support, coeffs))
        with open(d / "coefficients.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["eigenvalue_index", "eigenvalue", "coefficient"])
            for j in range(1, basis.n + 1):
                w.writerow([j, repr(basis.value(j)), repr(beta.get(j, 0.0))])
        with open(d / "signal.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", "value", "sampled"])
            for v in range(1, len(f) + 1):
                w.writerow([v, repr(float(f[v - 1])), int(v in W)])
        with open(d / "components.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", "eigenvalue_index", "value", "true_value"])
            for row in comp_rows:
                w.writerow([row[0], row[1], repr(float(row[2])), repr(float(row[3]))])
    if args.verbose:
        print("g(k):", np.round(out["moments"], 2), file=sys.stderr)
        print("H:\n", np.round(out["hankel"], 2), file=sys.stderr)
        print("P:\n", np.round(out["companion"], 2), file=sys.stderr)
        print(f"max eigenvalue error {out['max_eigenvalue_error']:.2e}, "
              f"max component error {out['max_component_error']:.2e}", file=sys.stderr)
    out.pop("runtime_seconds")  # keep stdout byte-stable
    return out


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-scale", type=float, default=1.0,
                        help="multiply every numerical tolerance by this factor")
    common.add_argument("--verbose", action="store_true", help="human-readable tables on stderr")

    parser = argparse.ArgumentParser(prog="graphprony", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph or triangle strip as JSON")
    p.add_argument("kind", choices=["path", "circle", "umbrella", "er", "erdos_renyi", "strip"])
    p.add_argument("n", type=int, help="vertex count (triangle count for strip)")
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("synth", parents=[common], help="synthesize a sparse spectral signal")
    p.add_argument("--graph", default="-", help="graph JSON path (default stdin)")
    p.add_argument("--support", required=True, help="1-based eigen-indices, e.g. 3,15")
    p.add_argument("--coeffs", required=True, help="coefficients, e.g. 1,0.2")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("recover", help="recovery algorithms")
    rsub = p.add_subparsers(dest="method", required=True)

    def graph_input(q):
        q.add_argument("--graph", required=True)
        q.add_argument("--sparsity", type=int, required=True)
        q.add_argument("--samples", help="partial samples JSON [{vertex, value}, ...]")
        q.add_argument("--signal", help="full signal JSON; only the required vertices are read")

    q = rsub.add_parser("one", parents=[common], help="samples in one (2s-1)-neighbourhood")
    graph_input(q)
    q.add_argument("--vertex", type=int, required=True)
    q.add_argument("--match", action="store_true", help="match eigenvalues to eigen-indices")
    q.set_defaults(func=cmd_recover_one)

    q = rsub.add_parser("multi", parents=[common], help="stacked Hankel over a snapshot plan")
    graph_input(q)
    q.add_argument("--plan", required=True, help='{"anchors": [{"vertex": v, "radius": r}]}')
    q.set_defaults(func=cmd_recover_multi)

    q = rsub.add_parser("simplicial", parents=[common], help="UP/DN recovery on k-chains")
    q.add_argument("--complex", required=True)
    q.add_argument("--chain", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--mode", choices=["up", "dn", "split"], required=True)
    q.add_argument("--face", help="anchor face, e.g. 5,6")
    q.add_argument("--sparsity", type=int, required=True)
    q.add_argument("--plan", help="face anchors; radii must sum to the sparsity")
    q.set_defaults(func=cmd_recover_simplicial)

    def basis_input(q):
        g = q.add_mutually_exclusive_group(required=True)
        g.add_argument("--graph")
        g.add_argument("--dft", type=int, help="use the n x n Fourier matrix as basis")

    p = sub.add_parser("decode", parents=[common], help="exhaustive l0 decoding")
    basis_input(p)
    p.add_argument("--samples")
    p.add_argument("--signal")
    p.add_argument("--W", help="sample vertices when reading --signal")
    p.add_argument("--s-max", type=int, required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("collide", parents=[common], help="two sparse signals agreeing on W")
    basis_input(p)
    p.add_argument("--W", required=True)
    p.add_argument("--support", required=True)
    p.set_defaults(func=cmd_collide)

    p = sub.add_parser("chebotarev", parents=[common], help="check that no minor vanishes")
    p.add_argument("--dft", type=int)
    p.add_argument("--vandermonde", help="comma-separated nodes")
    p.add_argument("--matrix", help="JSON list of rows")
    p.set_defaults(func=cmd_chebotarev)

    p = sub.add_parser("uniqueness", parents=[common], help="do samples on W fix every s-sparse signal")
    basis_input(p)
    p.add_argument("--W", required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.set_defaults(func=cmd_uniqueness)

    p = sub.add_parser(
        "repro-example", parents=[common],
        help="path graph worked example; --csv DIR writes coefficients.csv "
             "(eigenvalue_index, eigenvalue, coefficient), signal.csv (vertex, value, sampled) "
             "and components.csv (vertex, eigenvalue_index, value, true_value)")
    p.add_argument("--csv", metavar="DIR")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except ModelViolation as exc:
        print(io.dumps(exc.to_dict()))
        return 1
    except InputError as exc:
        print(io.dumps(exc.to_dict()))
        return 2
    except GraphPronyError as exc:
        print(io.dumps(exc.to_dict()))
        return 1
    print(io.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
