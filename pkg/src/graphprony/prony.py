"""Recovery of a spectrally sparse signal from samples in one neighbourhood.

Pipeline: local moments ``g(k) = (L^k f)(v)`` -> Hankel matrix -> monic
kernel polynomial -> companion-matrix roots -> local eigencomponents via a
product of shifted Laplacian factors (Lagrange-type projector).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (GraphPronyError, InputError, MissingSamplesError, ModelViolation, NoSupportError,
                     RankDeficiencyError, RootError)
from .graph import Graph
from .local import LocalDomain
from .spectral import SpectralBasis


def as_domain(obj) -> LocalDomain:
    if isinstance(obj, LocalDomain):
        return obj
    if isinstance(obj, Graph):
        return obj.domain
    raise TypeError(f"expected a Graph or LocalDomain, got {type(obj).__name__}")


@dataclass(frozen=True, eq=False)
class MomentSequence:
    base: Hashable
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(eq=False)
class RecoveryResult:
    eigenvalues: tuple[float, ...]
    components: dict[float, dict] = field(default_factory=dict)
    matched_support: tuple[tuple[int, ...], ...] | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def effective_sparsity(self) -> int:
        return len(self.eigenvalues)

    @property
    def support(self) -> tuple[int, ...] | None:
        """Flat support when every recovered eigenvalue matched a single index."""
        if self.matched_support is None:
            return None
        return tuple(sorted(j for c in self.matched_support for j in c))

    def component(self, i: int) -> dict:
        """Component belonging to the ``i``-th recovered eigenvalue (0-based)."""
        return self.components[self.eigenvalues[i]]

    def to_dict(self) -> dict:
        out = {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "effective_sparsity": self.effective_sparsity,
            "components": [
                {"eigenvalue": float(lam),
                 "values": [{"site": _jsonable(k), "value": float(v)} for k, v in comp.items()]}
                for lam, comp in self.components.items()
            ],
            "diagnostics": {k: _jsonable(v) for k, v in self.diagnostics.items()},
        }
        if self.matched_support is not None:
            out["matched_support"] = [list(c) for c in self.matched_support]
        return out


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


# -- moments -----------------------------------------------------------------

def local_moments(g, samples: Mapping, v, K: int) -> MomentSequence:
    """``(L^k f)(v)`` for ``k = 0..K`` using only the samples on ``N(v, K)``.

    Each application of the operator is evaluated locally and loses one
    ring of valid sites, so ``g(k)`` depends on ``N(v, k)`` only.
    """
    if K < 0:
        raise InputError(f"moment count must be non-negative, got {K}")
    patch = as_domain(g).patch(samples, v, K)
    h, known = patch.values, patch.full_mask()
    out = [patch.value_at(h, v)]
    for _ in range(K):
        h, known = patch.apply(h, known)
        out.append(patch.value_at(h, v))
    return MomentSequence(v, np.asarray(out))


def one_sparse_eigenvalue(g: Graph, samples: Mapping, v: int) -> float:
    """Eigenvalue of a one-sparse signal from ``f`` on ``N(v, 1)``.

    Uses ``L = D - A``: ``lambda = sum_{w ~ v} (f(v) - f(w)) / f(v)``.
    """
    fv = float(samples[v])
    if fv == 0:
        raise ModelViolation(f"signal vanishes at vertex {v}", stage="moments")
    missing = [w for w in g.neighbours(v) if w not in samples]
    if missing:
        raise MissingSamplesError(missing)
    return sum(fv - float(samples[w]) for w in g.neighbours(v)) / fv


# -- Hankel / polynomial / roots ---------------------------------------------

def hankel(m, s: int) -> np.ndarray:
    """``s x (s+1)`` matrix with entries ``g(k + l)``."""
    g = np.asarray(m.values if isinstance(m, MomentSequence) else m, dtype=float)
    if s < 1:
        raise InputError(f"sparsity must be positive, got {s}")
    if len(g) < 2 * s:
        raise InputError(f"need {2 * s} moments for sparsity {s}, got {len(g)}", stage="hankel")
    k = np.arange(s)[:, None] + np.arange(s + 1)[None, :]
    return g[k]


def numerical_rank(sv: np.ndarray, tol: Tolerances = DEFAULT) -> int:
    if len(sv) == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol.rank * sv[0]))


def _monic_kernel_vector(H: np.ndarray, tol: Tolerances) -> np.ndarray:
    _, _, vh = np.linalg.svd(H)
    p = vh[-1]
    if abs(p[-1]) <= tol.coefficient * np.linalg.norm(p):
        raise RankDeficiencyError(
            "kernel vector has a vanishing leading coefficient", stage="polynomial",
            details={"kernel_vector": p.tolist()})
    return p / p[-1]


def kernel_polynomial(H: np.ndarray, tol: Tolerances = DEFAULT, shrink: bool = True):
    """Monic kernel polynomial of a (stacked) Hankel matrix.

    Returns ``(p, singular_values)``. With ``shrink`` a numerically rank
    deficient ``s x (s+1)`` Hankel matrix is cut down to its leading
    ``r x (r+1)`` block and a degree-``r`` polynomial is returned. Without
    it, any kernel of dimension other than one raises
    :class:`RankDeficiencyError`.
    """
    H = np.asarray(H, dtype=float)
    cols = H.shape[1]
    sv = np.linalg.svd(H, compute_uv=False)
    rank = numerical_rank(sv, tol)
    nullity = cols - rank
    diag = {"singular_values": sv.tolist(), "rank": rank, "kernel_dimension": nullity}
    if nullity == 0:
        raise RankDeficiencyError("Hankel matrix has a trivial kernel", stage="polynomial", details=diag)
    if nullity == 1:
        return _monic_kernel_vector(H, tol), sv
    if not shrink:
        raise RankDeficiencyError(
            f"Hankel kernel has dimension {nullity}; expected 1", stage="polynomial", details=diag)
    if rank == 0:
        return np.ones(1), sv
    sub = H[:rank, : rank + 1]
    sub_sv = np.linalg.svd(sub, compute_uv=False)
    if numerical_rank(sub_sv, tol) != rank:
        raise RankDeficiencyError(
            "leading Hankel block lost rank after shrinking", stage="polynomial", details=diag)
    return _monic_kernel_vector(sub, tol), sv


def prony_polynomial(H: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Monic ``p`` (ascending coefficients, ``p[-1] == 1``) with ``H p = 0``.

    The degree equals the detected effective sparsity.
    """
    return kernel_polynomial(H, tol, shrink=True)[0]


def companion_matrix(p: Sequence[float]) -> np.ndarray:
    """Ones on the subdiagonal, ``-p_0 .. -p_{s-1}`` in the last column."""
    p = np.asarray(p, dtype=float)
    s = len(p) - 1
    if s < 1:
        raise InputError("companion matrix needs degree >= 1")
    if p[-1] != 1:
        p = p / p[-1]
    P = np.zeros((s, s))
    P[np.arange(1, s), np.arange(s - 1)] = 1.0
    P[:, -1] = -p[:-1]
    return P


def polynomial_roots(p: Sequence[float], tol: Tolerances = DEFAULT) -> np.ndarray:
    """Real roots of a real-rooted polynomial, ascending.

    Raises :class:`RootError` for a root whose imaginary part exceeds
    ``tol.imag * (1 + |Re|)``.
    """
    z = np.linalg.eigvals(companion_matrix(p))
    bad = np.abs(z.imag) > tol.imag * (1 + np.abs(z.real))
    if np.any(bad):
        raise RootError(
            f"complex roots {z[bad].tolist()}", stage="roots",
            details={"roots_real": z.real.tolist(), "roots_imag": z.imag.tolist()})
    return np.sort(z.real)


def cluster_roots(roots: Sequence[float], tol: Tolerances = DEFAULT) -> tuple[np.ndarray, list[int]]:
    """Merge roots closer than ``tol.cluster * (1 + max|root|)``; returns means and sizes."""
    roots = np.sort(np.asarray(roots, dtype=float))
    if len(roots) == 0:
        return roots, []
    gap = tol.cluster * (1 + np.max(np.abs(roots)))
    groups = [[roots[0]]]
    for r in roots[1:]:
        if r - groups[-1][-1] <= gap:
            groups[-1].append(r)
        else:
            groups.append([r])
    return np.array([np.mean(g) for g in groups]), [len(g) for g in groups]


# -- components ------------------------------------------------------------------

def _components_on_patch(patch, eigenvalues: Sequence[float], out_radius: int, tol: Tolerances) -> dict:
    lams = [float(x) for x in eigenvalues]
    if len(lams) > 1:
        spread = np.min(np.diff(np.sort(lams)))
        if spread <= tol.cluster * (1 + max(abs(x) for x in lams)):
            raise ModelViolation("recovered eigenvalues collide", stage="components")
    out_mask = patch.mask_for(out_radius)
    result = {}
    for j, lam_j in enumerate(lams):
        h, known = patch.values, patch.full_mask()
        for k, lam_k in enumerate(lams):
            if k != j:
                h, known = patch.apply(h, known, shift=lam_k, scale=lam_j - lam_k)
        if not np.all(known[out_mask]):
            raise InputError("samples do not reach far enough for the components", stage="components")
        result[lam_j] = {patch.labels[i]: float(h[i]) for i in np.flatnonzero(out_mask)}
    return result


def local_components(g, samples: Mapping, v, eigenvalues: Sequence[float],
                     sample_radius: int | None = None, out_radius: int | None = None,
                     tol: Tolerances = DEFAULT) -> dict:
    """Per-eigenvalue components ``beta_j u_j`` on ``N(v, out_radius)``.

    Defaults follow the one-neighbourhood scheme: with ``s`` eigenvalues the
    samples on ``N(v, 2s-1)`` yield components on ``N(v, s)``.
    """
    s = len(eigenvalues)
    sample_radius = 2 * s - 1 if sample_radius is None else sample_radius
    out_radius = s if out_radius is None else out_radius
    if out_radius + s - 1 > sample_radius:
        raise InputError("sample radius too small for the requested component radius")
    patch = as_domain(g).patch(samples, v, sample_radius)
    return _components_on_patch(patch, eigenvalues, out_radius, tol)


# -- pipeline ------------------------------------------------------------------

def _tagged(exc: GraphPronyError, stage: str) -> GraphPronyError:
    if exc.stage is None:
        exc.stage = stage
    return exc


def recover_local(domain: LocalDomain, v, s: int, samples: Mapping,
                  tol: Tolerances = DEFAULT, components: bool = True) -> RecoveryResult:
    """One-neighbourhood recovery on any :class:`LocalDomain`."""
    if s < 1:
        raise InputError(f"sparsity must be positive, got {s}")
    radius = 2 * s - 1
    patch = domain.patch(samples, v, radius)
    h, known = patch.values, patch.full_mask()
    moments = [patch.value_at(h, v)]
    for _ in range(radius):
        h, known = patch.apply(h, known)
        moments.append(patch.value_at(h, v))
    H = hankel(moments, s)
    try:
        p, sv = kernel_polynomial(H, tol, shrink=True)
    except GraphPronyError as exc:
        raise _tagged(exc, "polynomial")
    diagnostics = {
        "moments": list(moments),
        "hankel_singular_values": sv.tolist(),
        "polynomial": p.tolist(),
        "max_imag_residue": 0.0,
        "multiplicity_merged": False,
    }
    if len(p) == 1:
        return RecoveryResult((), {}, None, diagnostics)
    z = np.linalg.eigvals(companion_matrix(p))
    diagnostics["max_imag_residue"] = float(np.max(np.abs(z.imag)))
    try:
        roots = polynomial_roots(p, tol)
    except GraphPronyError as exc:
        exc.details.update(diagnostics)
        raise _tagged(exc, "roots")
    lams, sizes = cluster_roots(roots, tol)
    diagnostics["multiplicity_merged"] = any(c > 1 for c in sizes)
    diagnostics["effective_sparsity"] = len(lams)
    comps = _components_on_patch(patch, lams, s, tol) if components else {}
    return RecoveryResult(tuple(float(x) for x in lams), comps, None, diagnostics)


def recover_one_neighbourhood(g, v, s: int, samples: Mapping, basis: SpectralBasis | None = None,
                              tol: Tolerances = DEFAULT, match_tol: float = 1e-6) -> RecoveryResult:
    """Eigenvalues and local components of an ``s``-sparse signal from ``N(v, 2s-1)``.

    If ``basis`` is given the recovered eigenvalues are matched back to
    eigen-indices (``matched_support``).
    """
    result = recover_local(as_domain(g), v, s, samples, tol)
    if basis is not None:
        result.matched_support = match_support(result.eigenvalues, basis, match_tol)
    return result


def match_support(eigenvalues: Sequence[float], basis: SpectralBasis, tol: float = 1e-6):
    """Clusters of 1-based eigen-indices within ``tol`` of each recovered eigenvalue."""
    out = []
    for lam in eigenvalues:
        idx = np.flatnonzero(np.abs(basis.eigenvalues - lam) <= tol)
        if len(idx) == 0:
            raise NoSupportError(f"no basis eigenvalue within {tol} of {lam}", stage="match")
        out.append(tuple(int(j) + 1 for j in idx))
    return tuple(out)


def coefficients_from_components(result: RecoveryResult, basis: SpectralBasis, v) -> dict[int, float]:
    """``beta_j`` from the component value at ``v`` for singleton matches."""
    if result.matched_support is None:
        raise InputError("result carries no matched support")
    out = {}
    for lam, cluster in zip(result.eigenvalues, result.matched_support):
        if len(cluster) != 1:
            raise InputError(f"eigenvalue {lam} is multiple; no single coefficient")
        j = cluster[0]
        out[j] = result.components[lam][v] / basis.vector(j)[v - 1]
    return out
