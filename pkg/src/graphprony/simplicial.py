"""Simplicial complexes, boundary operators and Hodge Laplacians, with
sparse recovery of UP/DN eigencomponents of k-chains.

Faces are sorted vertex tuples; a k-face has ``k + 1`` vertices and is
oriented by its ascending vertex order.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (GraphPronyError, HarmonicComponentWarning, InputError, ModelViolation,
                     RankDeficiencyError)
from .local import LocalDomain
from .multisnapshot import SnapshotPlan, recover_multi
from .prony import RecoveryResult, _components_on_patch, recover_local
from .spectral import eigendecompose

UP, DN = "UP", "DN"

Face = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    faces: tuple[tuple[Face, ...], ...]

    def __post_init__(self):
        present = {f for dim in self.faces for f in dim}
        for k, dim in enumerate(self.faces):
            if len(set(dim)) != len(dim):
                raise InputError(f"repeated {k}-faces")
            for f in dim:
                if len(f) != k + 1 or tuple(sorted(f)) != f or len(set(f)) != len(f):
                    raise InputError(f"face {f} is not a sorted {k}-face")
                if k > 0:
                    for sub in combinations(f, k):
                        if sub not in present:
                            raise InputError(f"complex not closed: {sub} missing below {f}")

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    def count(self, k: int) -> int:
        return len(self.faces[k]) if 0 <= k <= self.dimension else 0

    @cached_property
    def index(self) -> tuple[dict[Face, int], ...]:
        return tuple({f: i for i, f in enumerate(dim)} for dim in self.faces)

    def face_index(self, face: Iterable[int]) -> tuple[int, int]:
        """``(k, position)`` of a face given in any vertex order."""
        f = tuple(sorted(int(x) for x in face))
        k = len(f) - 1
        if not 0 <= k <= self.dimension or f not in self.index[k]:
            raise InputError(f"{f} is not a face of the complex")
        return k, self.index[k][f]

    def to_dict(self) -> dict:
        return {"facets": [list(f) for f in self.facets()]}

    def facets(self) -> list[Face]:
        out = []
        for k, dim in enumerate(self.faces):
            above = set()
            if k < self.dimension:
                for g in self.faces[k + 1]:
                    above.update(combinations(g, k + 1))
            out.extend(f for f in dim if f not in above)
        return out


def build_complex(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of ``facets``."""
    facets = [tuple(sorted({int(v) for v in f})) for f in facets]
    facets = [f for f in facets if f]
    if not facets:
        raise InputError("empty facet list")
    for f in facets:
        if min(f) < 1:
            raise InputError(f"vertex labels must be positive, got {f}")
    top = max(len(f) for f in facets) - 1
    layers: list[set[Face]] = [set() for _ in range(top + 1)]
    for f in facets:
        for k in range(len(f)):
            layers[k].update(combinations(f, k + 1))
    return SimplicialComplex(tuple(tuple(sorted(layer)) for layer in layers))


def boundary_matrix(cx: SimplicialComplex, k: int) -> np.ndarray:
    """Integer ``|faces_{k-1}| x |faces_k|`` matrix of the alternating-sign boundary."""
    if not 1 <= k <= cx.dimension:
        raise InputError(f"boundary dimension {k} outside 1..{cx.dimension}")
    lower = cx.index[k - 1]
    D = np.zeros((cx.count(k - 1), cx.count(k)), dtype=np.int64)
    for j, f in enumerate(cx.faces[k]):
        for i in range(k + 1):
            D[lower[f[:i] + f[i + 1:]], j] = (-1) ** i
    return D


class HodgeLaplacians(NamedTuple):
    full: np.ndarray
    up: np.ndarray
    down: np.ndarray


def hodge_laplacian(cx: SimplicialComplex, k: int) -> HodgeLaplacians:
    """``(L_k, L_k^UP, L_k^DN)`` with ``L^DN = d_k^T d_k`` and ``L^UP = d_{k+1} d_{k+1}^T``."""
    if not 0 <= k <= cx.dimension:
        raise InputError(f"dimension {k} outside 0..{cx.dimension}")
    m = cx.count(k)
    down = np.zeros((m, m), dtype=np.int64)
    up = np.zeros((m, m), dtype=np.int64)
    if k >= 1:
        d = boundary_matrix(cx, k)
        down = d.T @ d
    if k < cx.dimension:
        d = boundary_matrix(cx, k + 1)
        up = d @ d.T
    return HodgeLaplacians(up + down, up, down)


def betti(cx: SimplicialComplex, k: int, tol: Tolerances = DEFAULT) -> int:
    """Numerical nullity of ``L_k``."""
    if not 0 <= k <= cx.dimension:
        return 0
    ev = np.linalg.eigvalsh(hodge_laplacian(cx, k).full.astype(float))
    return int(np.sum(ev < tol.nullity * max(1.0, float(ev.max(initial=0.0)))))


@dataclass(frozen=True, eq=False)
class HodgeDecomposition:
    """Eigenpairs of ``L_k`` split into UP, DN and harmonic parts (columns)."""

    k: int
    up_values: np.ndarray
    up_vectors: np.ndarray
    dn_values: np.ndarray
    dn_vectors: np.ndarray
    harmonic: np.ndarray


def hodge_decomposition(cx: SimplicialComplex, k: int, tol: Tolerances = DEFAULT) -> HodgeDecomposition:
    lap = hodge_laplacian(cx, k)
    parts = []
    for op in (lap.up, lap.down):
        basis = eigendecompose(op.astype(float))
        cut = tol.nullity * max(1.0, float(basis.eigenvalues.max(initial=0.0)))
        keep = basis.eigenvalues > cut
        parts.append((basis.eigenvalues[keep], basis.eigenvectors[:, keep]))
    full = eigendecompose(lap.full.astype(float))
    cut = tol.nullity * max(1.0, float(full.eigenvalues.max(initial=0.0)))
    harmonic = full.eigenvectors[:, full.eigenvalues < cut]
    return HodgeDecomposition(k, *parts[0], *parts[1], harmonic)


# -- face metric ---------------------------------------------------------------

def face_adjacency(cx: SimplicialComplex, k: int) -> tuple[tuple[int, ...], ...]:
    """0-based neighbour lists of k-faces sharing a (k-1)-face.

    For ``k = 0`` the shared-face rule is vacuous, so vertices are joined
    along the edges of the 1-skeleton instead.
    """
    if not 0 <= k <= cx.dimension:
        raise InputError(f"dimension {k} outside 0..{cx.dimension}")
    m = cx.count(k)
    nbrs: list[set[int]] = [set() for _ in range(m)]
    if k == 0:
        idx = cx.index[0]
        for u, v in (cx.faces[1] if cx.dimension >= 1 else ()):
            a, b = idx[(u,)], idx[(v,)]
            nbrs[a].add(b)
            nbrs[b].add(a)
    else:
        by_sub = defaultdict(list)
        for i, f in enumerate(cx.faces[k]):
            for sub in combinations(f, k):
                by_sub[sub].append(i)
        for members in by_sub.values():
            for a in members:
                nbrs[a].update(b for b in members if b != a)
    return tuple(tuple(sorted(x)) for x in nbrs)


def face_neighbourhood(cx: SimplicialComplex, sigma: Iterable[int], d: int) -> set[Face]:
    """k-faces within face distance ``d`` of ``sigma``."""
    k, _ = cx.face_index(sigma)
    return set(face_domain(cx, k, "FULL").ball_labels(tuple(sorted(sigma)), d))


@lru_cache(maxsize=64)
def face_domain(cx: SimplicialComplex, k: int, kind: str) -> LocalDomain:
    """Local domain on k-faces with operator ``L_k^UP``, ``L_k^DN`` or ``L_k`` (``FULL``).

    The operator's sparsity pattern is checked against the face metric.
    """
    lap = hodge_laplacian(cx, k)
    op = {UP: lap.up, DN: lap.down, "FULL": lap.full}.get(kind)
    if op is None:
        raise InputError(f"operator kind must be UP, DN or FULL, got {kind!r}")
    dom = LocalDomain(list(cx.faces[k]), face_adjacency(cx, k), op)
    dom.check_locality()
    return dom


# -- chains ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Chain:
    complex: SimplicialComplex
    k: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.complex.count(self.k):
            raise InputError(f"chain has {len(self.values)} values, complex has "
                             f"{self.complex.count(self.k)} {self.k}-faces")

    def samples(self, faces: Iterable[Face] | None = None) -> dict[Face, float]:
        faces = self.complex.faces[self.k] if faces is None else faces
        idx = self.complex.index[self.k]
        return {f: float(self.values[idx[f]]) for f in faces}

    def to_dict(self) -> dict:
        return {"k": self.k, "faces": [list(f) for f in self.complex.faces[self.k]],
                "values": [float(x) for x in self.values]}

    @classmethod
    def from_dict(cls, cx: SimplicialComplex, data: dict) -> "Chain":
        k = int(data["k"])
        faces = [tuple(f) for f in data["faces"]]
        if faces != list(cx.faces[k]):
            raise InputError("chain faces are not in the complex's canonical order")
        return cls(cx, k, np.asarray(data["values"], dtype=float))


# -- recovery ----------------------------------------------------------------------

def _face(sigma) -> Face:
    return tuple(sorted(int(x) for x in sigma))


def recover_simplicial_one(cx: SimplicialComplex, k: int, T: str, sigma, s: int,
                           samples: Mapping, tol: Tolerances = DEFAULT) -> RecoveryResult:
    """One-neighbourhood recovery of an ``s``-sparse UP- or DN-chain at face ``sigma``."""
    if T not in (UP, DN):
        raise InputError(f"operator must be UP or DN, got {T!r}")
    return recover_local(face_domain(cx, k, T), _face(sigma), s, samples, tol)


def recover_simplicial_multi(cx: SimplicialComplex, k: int, T: str, plan: SnapshotPlan, s: int,
                             samples: Mapping, tol: Tolerances = DEFAULT) -> RecoveryResult:
    """Stacked-Hankel recovery over face anchors with radii summing to ``s``."""
    if T not in (UP, DN):
        raise InputError(f"operator must be UP or DN, got {T!r}")
    if plan.total_radius != s:
        raise InputError(f"plan radii sum to {plan.total_radius}, expected {s}")
    plan = SnapshotPlan(tuple((_face(a), r) for a, r in plan.anchors))
    return recover_multi(face_domain(cx, k, T), plan, s, samples, tol)


@dataclass(eq=False)
class SplitRecovery:
    """UP and DN recoveries with components rescaled to ``beta_j u_j``.

    ``raw`` keeps the unscaled components ``beta_j lambda_j u_j``;
    ``residual`` is ``f`` minus all rescaled components on ``N(sigma, s)``.
    """

    up: RecoveryResult
    dn: RecoveryResult
    raw: dict[str, dict] = field(default_factory=dict)
    residual: dict = field(default_factory=dict)
    harmonic_norm: float = 0.0
    harmonic_detected: bool = False
    budgets: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "up": self.up.to_dict(),
            "dn": self.dn.to_dict(),
            "harmonic_detected": self.harmonic_detected,
            "harmonic_norm": self.harmonic_norm,
            "budgets": self.budgets,
            "residual": [{"site": list(f), "value": v} for f, v in self.residual.items()],
        }


def _row_sum(M) -> float:
    return float(abs(M).sum(axis=1).max()) if M.shape[0] else 0.0


def split_recover(cx: SimplicialComplex, k: int, sigma, s: int, samples: Mapping,
                  tol: Tolerances = DEFAULT) -> SplitRecovery:
    """Recover the UP and DN parts of an ``s``-sparse chain from ``N(sigma, 2s)``.

    ``L^UP f`` and ``L^DN f`` are first treated as ``ceil(s/2)``-sparse. A
    side whose Hankel rank falls below that budget is exact and fixes the
    budget ``s - r`` of the other side. Harmonic content cannot be seen by
    either operator; it shows up in the residual and is flagged with a
    :class:`HarmonicComponentWarning`.
    """
    if s < 1:
        raise InputError(f"sparsity must be positive, got {s}")
    sigma = _face(sigma)
    doms = {UP: face_domain(cx, k, UP), DN: face_domain(cx, k, DN)}
    derived = {}
    for side, dom in doms.items():
        patch = dom.patch(samples, sigma, 2 * s)
        h, known = patch.apply(patch.values, patch.full_mask())
        inner = patch.mask_for(2 * s - 1)
        if not np.all(known[inner]):
            raise ModelViolation("operator stencil exceeds one face ring", stage="split")
        # a side annihilated by its operator comes back as roundoff; snap it to zero
        # so the relative rank test does not read noise as signal
        scale = float(np.max(np.abs(patch.values), initial=0.0)) * max(_row_sum(patch.sub), 1.0)
        if np.max(np.abs(h[inner]), initial=0.0) <= tol.nullity * scale:
            h = np.zeros_like(h)
        derived[side] = {patch.labels[i]: float(h[i]) for i in np.flatnonzero(inner)}

    def attempt(side, budget):
        try:
            return recover_local(doms[side], sigma, budget, derived[side], tol, components=False)
        except GraphPronyError as exc:
            return exc

    half = math.ceil(s / 2)
    first = {side: attempt(side, half) for side in (UP, DN)}
    ok = {side: r for side, r in first.items() if isinstance(r, RecoveryResult)}
    exact = {side: r for side, r in ok.items() if r.effective_sparsity < half}
    final: dict[str, RecoveryResult] = {}
    budgets = {UP: half, DN: half}
    if len(exact) == 2:
        final = dict(exact)
    elif len(exact) == 1:
        (side, res), = exact.items()
        other = DN if side == UP else UP
        budgets[other] = s - res.effective_sparsity
        second = attempt(other, budgets[other])
        if not isinstance(second, RecoveryResult):
            raise second
        final = {side: res, other: second}
    elif len(ok) == 2 and 2 * half <= s:
        final = dict(ok)
    else:
        failures = {side: (str(r) if not isinstance(r, RecoveryResult) else r.effective_sparsity)
                    for side, r in first.items()}
        raise RankDeficiencyError("neither UP nor DN part could be recovered", stage="split",
                                  details={"phase_one": failures})

    out_mask_radius = s
    results, raw = {}, {}
    for side in (UP, DN):
        res = final[side]
        lams = res.eigenvalues
        if lams:
            patch = doms[side].patch(derived[side], sigma, 2 * s - 1)
            comps = _components_on_patch(patch, lams, out_mask_radius, tol)
        else:
            comps = {}
        raw[side] = comps
        scaled = {lam: {f: v / lam for f, v in comp.items()} for lam, comp in comps.items()}
        results[side] = RecoveryResult(lams, scaled, None, res.diagnostics)

    ball = doms[UP].ball_labels(sigma, out_mask_radius)
    residual = {}
    for f in ball:
        total = sum(comp[f] for side in (UP, DN) for comp in results[side].components.values())
        residual[f] = float(samples[f]) - total
    fnorm = np.linalg.norm([float(samples[f]) for f in ball])
    hnorm = float(np.linalg.norm(list(residual.values())))
    flagged = hnorm > tol.harmonic * max(fnorm, 1e-300)
    if flagged:
        warnings.warn(f"residual {hnorm:.3e} on N(sigma, {s}): harmonic part not recoverable",
                      HarmonicComponentWarning, stacklevel=2)
    return SplitRecovery(results[UP], results[DN], raw, residual, hnorm, bool(flagged), budgets)


# -- generators --------------------------------------------------------------------

def triangle_strip(m: int) -> SimplicialComplex:
    """``m`` filled triangles ``(i, i+1, i+2)`` on vertices ``1..m+2``."""
    if m < 1:
        raise InputError("strip needs at least one triangle")
    return build_complex([(i, i + 1, i + 2) for i in range(1, m + 1)])


def random_complex(n_vertices: int, n_facets: int, max_dim: int, seed: int) -> SimplicialComplex:
    rng = np.random.default_rng(seed)
    facets = []
    for _ in range(n_facets):
        size = int(rng.integers(1, max_dim + 2))
        facets.append(rng.choice(np.arange(1, n_vertices + 1), size=min(size, n_vertices), replace=False))
    return build_complex(facets)
