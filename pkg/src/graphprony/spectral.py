"""Dense Laplacian eigendecomposition and sparse spectral synthesis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import GraphPronyError, InputError
from .graph import Graph, laplacian_dense

SIGN_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def vector(self, j: int) -> np.ndarray:
        """Eigenvector ``u_j`` with 1-based index ``j``."""
        self._check_index(j)
        return self.eigenvectors[:, j - 1]

    def value(self, j: int) -> float:
        self._check_index(j)
        return float(self.eigenvalues[j - 1])

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise InputError(f"eigen-index {j} outside 1..{self.n}")


@dataclass(frozen=True)
class SparseSpectralSignal:
    support: tuple[int, ...]
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.support) != len(self.coefficients):
            raise InputError("support and coefficients differ in length")
        if len(set(self.support)) != len(self.support):
            raise InputError("repeated support index")
        if any(c == 0 for c in self.coefficients):
            raise InputError("coefficients on the support must be nonzero")

    @property
    def sparsity(self) -> int:
        return len(self.support)

    def to_dict(self) -> dict:
        return {"support": list(self.support), "coefficients": [_number(c) for c in self.coefficients]}

    @classmethod
    def from_dict(cls, data: dict) -> "SparseSpectralSignal":
        coeffs = tuple(complex(*c) if isinstance(c, (list, tuple)) else float(c)
                       for c in data["coefficients"])
        return cls(tuple(int(j) for j in data["support"]), coeffs)


def _number(c):
    """JSON form of a scalar: a float, or ``[re, im]`` when complex."""
    c = complex(c)
    return c.real if c.imag == 0 else [c.real, c.imag]


@dataclass(frozen=True, eq=False)
class GraphSignal:
    graph: Graph
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.graph.n:
            raise InputError(f"signal has {len(self.values)} values, graph has {self.graph.n} vertices")

    def __call__(self, v: int) -> float:
        self.graph._check_vertex(v)
        return float(self.values[v - 1])

    def restrict(self, vertices) -> dict[int, float]:
        """Partial sample map ``{vertex: value}``."""
        return {int(v): self(int(v)) for v in vertices}


def _normalise_signs(vecs: np.ndarray) -> np.ndarray:
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        big = np.flatnonzero(np.abs(col) > SIGN_THRESHOLD)
        if len(big) and col[big[0]] < 0:
            vecs[:, j] = -col
    return vecs


def eigendecompose(lap, tol: Tolerances = DEFAULT) -> SpectralBasis:
    """Symmetric eigendecomposition with a reproducible sign and tie order.

    Each eigenvector's first entry exceeding ``1e-8`` in magnitude is made
    positive. Within a cluster of equal eigenvalues the columns are sorted
    lexicographically.
    """
    if isinstance(lap, Graph):
        lap = laplacian_dense(lap)
    lap = np.asarray(lap.toarray() if hasattr(lap, "toarray") else lap, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise InputError(f"expected a square matrix, got shape {lap.shape}")
    scale = max(1.0, float(np.max(np.abs(lap)))) if lap.size else 1.0
    if np.max(np.abs(lap - lap.T), initial=0.0) > tol.symmetry * scale:
        raise InputError("matrix is not symmetric")
    try:
        vals, vecs = np.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise GraphPronyError(f"eigensolver did not converge: {exc}", stage="eigen") from exc
    vecs = _normalise_signs(vecs)

    order = list(range(len(vals)))
    gap = 1e-9 * max(1.0, float(np.max(np.abs(vals), initial=0.0)))
    out: list[int] = []
    start = 0
    while start < len(order):
        stop = start + 1
        while stop < len(order) and vals[stop] - vals[stop - 1] <= gap:
            stop += 1
        group = sorted(range(start, stop), key=lambda j: tuple(np.round(vecs[:, j], 12)))
        out.extend(group)
        start = stop
    idx = np.asarray(out, dtype=int)
    return SpectralBasis(vals[idx], vecs[:, idx])


def synthesize(basis: SpectralBasis, sig: SparseSpectralSignal, graph: Graph | None = None):
    """Evaluate ``sum_j beta_j u_j``; returns a :class:`GraphSignal` if ``graph`` is given."""
    values = np.zeros(basis.n)
    for j, beta in zip(sig.support, sig.coefficients):
        values += beta * basis.vector(j)
    return GraphSignal(graph, values) if graph is not None else values


def coefficient_vector(n: int, sig: SparseSpectralSignal) -> np.ndarray:
    """Dense length-``n`` coefficient vector with zeros off the support."""
    out = np.zeros(n)
    for j, beta in zip(sig.support, sig.coefficients):
        if not 1 <= j <= n:
            raise InputError(f"support index {j} outside 1..{n}")
        out[j - 1] = beta
    return out


def dft_matrix(n: int) -> np.ndarray:
    """Unnormalised Fourier matrix with entries ``exp(2 pi i k j / n)``."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n)


def vandermonde(nodes: Sequence[float], rows: int | None = None) -> np.ndarray:
    """Matrix ``(node_j ** k)`` with rows ``k = 0..rows-1`` and one column per node."""
    nodes = np.asarray(nodes)
    rows = len(nodes) if rows is None else rows
    return nodes[None, :] ** np.arange(rows)[:, None]


def path_eigenpair(n: int, j: int) -> tuple[float, np.ndarray]:
    """Closed-form eigenpair of the path-graph Laplacian (1-based ``j``)."""
    v = np.arange(1, n + 1)
    lam = 2.0 - 2.0 * np.cos(np.pi * (j - 1) / n)
    u = np.sqrt(2.0 - (j == 1)) / np.sqrt(n) * np.cos(np.pi * (j - 1) * (2 * v - 1) / (2 * n))
    return lam, u
