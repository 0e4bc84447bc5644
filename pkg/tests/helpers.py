"""Random instance generation and dense oracles shared by the tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from graphprony.graph import circle_graph, erdos_renyi_graph, laplacian_dense, neighbourhood, path_graph
from graphprony.spectral import SparseSpectralSignal, eigendecompose, synthesize


@dataclass
class Instance:
    graph: object
    basis: object
    sig: SparseSpectralSignal
    f: np.ndarray
    v: int
    s: int

    def samples(self, radius: int) -> dict:
        return {w: float(self.f[w - 1]) for w in neighbourhood(self.graph, self.v, radius)}


def random_graph(rng, kinds=("path", "circle", "er"), n_range=(5, 15)):
    kind = kinds[int(rng.integers(len(kinds)))]
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    if kind == "path":
        return path_graph(n)
    if kind == "circle":
        return circle_graph(n)
    return erdos_renyi_graph(n, 0.4, int(rng.integers(1 << 30)))


def simple_indices(vals: np.ndarray, gap: float = 1e-6) -> list[int]:
    out = []
    for j, lam in enumerate(vals):
        others = np.delete(vals, j)
        if np.min(np.abs(others - lam)) > gap:
            out.append(j + 1)
    return out


def random_instance(rng, s_max=2, kinds=("path", "circle", "er"), n_range=(5, 15),
                    max_tries=200) -> Instance:
    """Instance satisfying the one-neighbourhood hypotheses: simple, well separated
    active eigenvalues and ``|u_j(v)|`` bounded away from zero."""
    for _ in range(max_tries):
        g = random_graph(rng, kinds, n_range)
        basis = eigendecompose(g)
        s = int(rng.integers(1, s_max + 1))
        v = int(rng.integers(1, g.n + 1))
        cand = [j for j in simple_indices(basis.eigenvalues)
                if abs(basis.vector(j)[v - 1]) > 1e-2]
        if len(cand) < s:
            continue
        S = tuple(sorted(rng.choice(cand, size=s, replace=False).tolist()))
        lam = basis.eigenvalues[[j - 1 for j in S]]
        if s > 1 and np.min(np.diff(np.sort(lam))) < 1e-2:
            continue
        beta = rng.uniform(0.5, 2.0, size=s) * rng.choice([-1, 1], size=s)
        sig = SparseSpectralSignal(S, tuple(beta.tolist()))
        return Instance(g, basis, sig, synthesize(basis, sig), v, s)
    raise RuntimeError("no admissible instance found")


def dense_moments(graph, f: np.ndarray, v: int, K: int) -> np.ndarray:
    """``(L^k f)(v)`` by repeated dense matrix-vector products."""
    L = laplacian_dense(graph)
    out, h = [], np.array(f, dtype=float)
    for _ in range(K + 1):
        out.append(h[v - 1])
        h = L @ h
    return np.array(out)


def leibniz_det(M: np.ndarray):
    """Determinant by permutation expansion, independent of LAPACK."""
    from itertools import permutations
    n = M.shape[0]
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term = term * M[i, perm[i]]
        total += term
    return total
