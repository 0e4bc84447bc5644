"""Simple undirected graphs, their Laplacians, and the named generators.

Vertices are labelled ``1..n`` at every interface; arrays are 0-based
internally.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .errors import InputError
from .local import LocalDomain

DENSE_LIMIT = 2000
ER_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"vertex count must be positive, got {self.n}")
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise InputError(f"edge {(u, v)} is not a sorted pair inside 1..{self.n}")
        if len(set(self.edges)) != len(self.edges):
            raise InputError("duplicate edges")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        """0-based neighbour lists, sorted."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u - 1].append(v - 1)
            nbrs[v - 1].append(u - 1)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(x) for x in self.adjacency_lists], dtype=float)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency_lists[v - 1])

    def neighbours(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [w + 1 for w in self.adjacency_lists[v - 1]]

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 1 <= v <= self.n):
            raise InputError(f"invalid vertex {v!r} for graph on {self.n} vertices")

    @cached_property
    def domain(self) -> LocalDomain:
        return LocalDomain(list(self.vertices), self.adjacency_lists, laplacian(self))

    def is_connected(self) -> bool:
        return len(_bfs(self.adjacency_lists, 0, None)) == self.n


def build_graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Validate and normalise an edge list into a :class:`Graph`.

    Duplicates (in either orientation) are merged; self-loops and
    out-of-range endpoints raise :class:`InputError`.
    """
    n = int(n)
    if n < 1:
        raise InputError(f"vertex count must be positive, got {n}")
    seen = set()
    for edge in edges:
        u, v = (int(x) for x in edge)
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge {(u, v)} has an endpoint outside 1..{n}")
        seen.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(seen)))


def laplacian(g: Graph) -> sp.csr_matrix:
    """Combinatorial Laplacian ``D - A`` as a sparse CSR matrix."""
    if g.edges:
        e = np.asarray(g.edges, dtype=np.int64) - 1
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        adj = sp.coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    else:
        adj = sp.coo_matrix((g.n, g.n))
    lap = sp.diags(g.degrees) - adj
    return sp.csr_matrix(lap)


def laplacian_dense(g: Graph) -> np.ndarray:
    if g.n > DENSE_LIMIT:
        raise InputError(f"dense Laplacian limited to n <= {DENSE_LIMIT}")
    return laplacian(g).toarray()


def adjacency_dense(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u - 1, v - 1] = a[v - 1, u - 1] = 1.0
    return a


def _bfs(adj, source: int, radius: int | None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if radius is not None and dist[u] >= radius:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: Graph, v: int, w: int) -> float:
    """Shortest-path length, or ``math.inf`` when ``v`` and ``w`` are disconnected."""
    g._check_vertex(v)
    g._check_vertex(w)
    d = _bfs(g.adjacency_lists, v - 1, None).get(w - 1)
    return math.inf if d is None else d


def neighbourhood(g: Graph, v: int, k: int) -> set[int]:
    """Vertices at distance at most ``k`` from ``v``."""
    g._check_vertex(v)
    if k < 0:
        raise InputError(f"radius must be non-negative, got {k}")
    return {u + 1 for u in _bfs(g.adjacency_lists, v - 1, k)}


def all_pairs_distances(g: Graph) -> np.ndarray:
    out = np.full((g.n, g.n), np.inf)
    for v in range(g.n):
        for w, d in _bfs(g.adjacency_lists, v, None).items():
            out[v, w] = d
    return out


# -- generators -------------------------------------------------------------

def path_graph(n: int) -> Graph:
    return build_graph(n, [(v, v + 1) for v in range(1, n)])


def circle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError(f"circle graph needs n >= 3, got {n}")
    return build_graph(n, [(v, v + 1) for v in range(1, n)] + [(n, 1)])


def umbrella_graph(n: int) -> Graph:
    """Rim path ``1 - 2 - ... - (n-2)``, hub ``n-1`` joined to every rim vertex,
    and a pendant vertex ``n`` hanging off the hub."""
    if n < 3:
        raise InputError(f"umbrella graph needs n >= 3, got {n}")
    hub = n - 1
    edges = [(v, v + 1) for v in range(1, n - 2)]
    edges += [(v, hub) for v in range(1, n - 1)]
    edges.append((hub, n))
    return build_graph(n, edges)


def erdos_renyi_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) resampled until connected; deterministic in ``seed``."""
    if n < 1:
        raise InputError(f"vertex count must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(ER_MAX_ATTEMPTS):
        keep = rng.random(len(iu)) < p
        g = build_graph(n, zip(iu[keep] + 1, ju[keep] + 1))
        if g.is_connected():
            return g
    raise InputError(f"no connected G({n}, {p}) sample after {ER_MAX_ATTEMPTS} attempts")


def generate(kind: str, n: int, p: float | None = None, seed: int | None = None) -> Graph:
    if kind == "path":
        return path_graph(n)
    if kind == "circle":
        return circle_graph(n)
    if kind == "umbrella":
        return umbrella_graph(n)
    if kind in ("erdos_renyi", "er"):
        if p is None or seed is None:
            raise InputError("erdos_renyi needs both p and seed")
        return erdos_renyi_graph(n, p, seed)
    raise InputError(f"unknown graph kind {kind!r}")
