"""Eigenvalue recovery from stacked Hankel matrices over several anchors.

Anchor ``i`` with radius ``r_i`` contributes the rows
``(g_i(l), ..., g_i(l + s))`` for ``l = 0..r_i-1``; with ``r = sum r_i``
the stacked matrix factors as ``B @ C`` where ``C`` is the
``s x (s+1)`` Vandermonde matrix of the active eigenvalues and ``B`` is
the ``r x s`` coefficient matrix returned by :func:`coefficient_matrix_B`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import GraphPronyError, InputError
from .prony import (MomentSequence, RecoveryResult, as_domain, cluster_roots, companion_matrix,
                    kernel_polynomial, local_moments, polynomial_roots)
from .spectral import SparseSpectralSignal, SpectralBasis


@dataclass(frozen=True)
class SnapshotPlan:
    anchors: tuple[tuple[Hashable, int], ...]

    def __post_init__(self):
        if not self.anchors:
            raise InputError("a plan needs at least one anchor")
        for site, r in self.anchors:
            if int(r) < 1:
                raise InputError(f"anchor {site!r} has radius {r} < 1")
        sites = [a for a, _ in self.anchors]
        if len(set(sites)) != len(sites):
            raise InputError("plan anchors must be distinct")

    @classmethod
    def of(cls, *anchors) -> "SnapshotPlan":
        return cls(tuple((site, int(r)) for site, r in anchors))

    @property
    def total_radius(self) -> int:
        return sum(r for _, r in self.anchors)

    def to_dict(self) -> dict:
        return {"anchors": [{"vertex": _plain(v), "radius": r} for v, r in self.anchors]}

    @classmethod
    def from_dict(cls, data: dict) -> "SnapshotPlan":
        return cls(tuple((_label(a["vertex"]), int(a["radius"])) for a in data["anchors"]))


def _plain(v):
    return list(v) if isinstance(v, tuple) else int(v)


def _label(v):
    return tuple(int(x) for x in v) if isinstance(v, list) else int(v)


def required_samples(g, plan: SnapshotPlan, s: int) -> set:
    """Union of ``N(v_i, s - 1 + r_i)`` over the anchors."""
    dom = as_domain(g)
    out = set()
    for v, r in plan.anchors:
        out.update(dom.ball_labels(v, s - 1 + r))
    return out


def stacked_hankel(moments: Sequence[MomentSequence], plan: SnapshotPlan, s: int) -> np.ndarray:
    """``r x (s+1)`` stacked Hankel matrix, anchor blocks in plan order."""
    if len(moments) != len(plan.anchors):
        raise InputError("one moment sequence per anchor is required")
    rows = []
    for m, (v, r) in zip(moments, plan.anchors):
        g = np.asarray(m.values if isinstance(m, MomentSequence) else m, dtype=float)
        if len(g) < s + r:
            raise InputError(
                f"anchor {v!r} needs moments up to index {s + r - 1}, got {len(g)} values",
                stage="hankel")
        rows.extend(g[l:l + s + 1] for l in range(r))
    return np.array(rows)


def anchor_moments(g, plan: SnapshotPlan, s: int, samples: Mapping) -> list[MomentSequence]:
    return [local_moments(g, samples, v, s - 1 + r) for v, r in plan.anchors]


def recover_multi(g, plan: SnapshotPlan, s: int, samples: Mapping,
                  tol: Tolerances = DEFAULT) -> RecoveryResult:
    """Active eigenvalues from the stacked Hankel kernel (no components).

    A kernel of dimension other than one raises :class:`RankDeficiencyError`
    before any root is computed.
    """
    if s < 1:
        raise InputError(f"sparsity must be positive, got {s}")
    moments = anchor_moments(g, plan, s, samples)
    H = stacked_hankel(moments, plan, s)
    try:
        p, sv = kernel_polynomial(H, tol, shrink=False)
    except GraphPronyError as exc:
        exc.details.setdefault("stacked_hankel", H.tolist())
        if exc.stage is None:
            exc.stage = "polynomial"
        raise
    diagnostics = {
        "hankel_singular_values": sv.tolist(),
        "polynomial": p.tolist(),
        "max_imag_residue": float(np.max(np.abs(np.linalg.eigvals(companion_matrix(p)).imag))),
    }
    roots = polynomial_roots(p, tol)
    lams, sizes = cluster_roots(roots, tol)
    diagnostics["multiplicity_merged"] = any(c > 1 for c in sizes)
    diagnostics["effective_sparsity"] = len(lams)
    return RecoveryResult(tuple(float(x) for x in lams), {}, None, diagnostics)


def coefficient_matrix_B(basis: SpectralBasis, sig: SparseSpectralSignal, plan: SnapshotPlan,
                         index_of=None) -> np.ndarray:
    """Ground-truth ``r x s`` matrix with rows ``lambda_j^k * beta_j * u_j(v_i)``.

    ``index_of`` maps an anchor label to its 0-based row in the eigenvector
    matrix; the default treats anchors as 1-based vertices.
    """
    index_of = index_of or (lambda v: v - 1)
    lam = np.array([basis.value(j) for j in sig.support])
    beta = np.asarray(sig.coefficients, dtype=float)
    blocks = []
    for v, r in plan.anchors:
        alpha = beta * np.array([basis.vector(j)[index_of(v)] for j in sig.support])
        blocks.append(lam[None, :] ** np.arange(r)[:, None] * alpha[None, :])
    return np.vstack(blocks)


def rank_certificate(B: np.ndarray, s: int, tol: Tolerances = DEFAULT) -> tuple[bool, float]:
    """``(full column rank, smallest singular value)`` with the relative rank tolerance."""
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[1] != s:
        raise InputError(f"expected {s} columns, got shape {B.shape}")
    sv = np.linalg.svd(B, compute_uv=False)
    if B.shape[0] < s:
        return False, 0.0
    smin = float(sv[-1])
    return bool(sv[0] > 0 and smin > tol.rank * sv[0]), smin


def khatri_rao(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Column-wise Kronecker product."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape[1] != B.shape[1]:
        raise InputError("Khatri-Rao factors need the same column count")
    return (A[:, None, :] * B[None, :, :]).reshape(A.shape[0] * B.shape[0], A.shape[1])
