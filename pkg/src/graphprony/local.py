"""Local application of a sparse operator to partially sampled signals.

A :class:`LocalDomain` couples a set of labelled sites (graph vertices or
k-faces) with a metric (adjacency lists) and a sparse symmetric operator
whose stencil only couples sites at distance at most one. A
:class:`LocalPatch` holds the samples on one ball ``N(center, radius)`` and
applies the operator there; every application shrinks the set of sites
with a valid value by one ring.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import InputError, LocalityError, MissingSamplesError


class LocalDomain:
    def __init__(self, labels: Sequence[Hashable], adjacency: Sequence[Sequence[int]], operator):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.adjacency = adjacency
        op = sp.csr_matrix(operator, dtype=float)
        op.eliminate_zeros()
        self.operator = op
        self._row_nnz = np.diff(op.indptr)

    def __len__(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        try:
            return self.index[label]
        except (KeyError, TypeError):
            raise InputError(f"unknown site {label!r}") from None

    def ball(self, label, radius: int) -> list[int]:
        """Sorted indices of sites within ``radius`` hops of ``label``."""
        if radius < 0:
            raise InputError(f"radius must be non-negative, got {radius}")
        src = self.index_of(label)
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if dist[u] >= radius:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return sorted(dist)

    def ball_labels(self, label, radius: int) -> list:
        return [self.labels[i] for i in self.ball(label, radius)]

    def check_locality(self) -> None:
        """Raise unless every off-diagonal operator entry joins adjacent sites."""
        coo = self.operator.tocoo()
        for i, j in zip(coo.row, coo.col):
            if i != j and j not in self.adjacency[i]:
                raise LocalityError(
                    f"operator couples {self.labels[i]!r} and {self.labels[j]!r}, "
                    "which are not neighbours",
                    stage="locality",
                )

    def patch(self, samples: Mapping, center, radius: int) -> "LocalPatch":
        return LocalPatch(self, samples, center, radius)


class LocalPatch:
    """Samples on ``N(center, radius)`` together with the restricted operator."""

    def __init__(self, domain: LocalDomain, samples: Mapping, center, radius: int):
        self.domain = domain
        self.center = center
        self.radius = radius
        idx = domain.ball(center, radius)
        labels = [domain.labels[i] for i in idx]
        missing = [lab for lab in labels if lab not in samples]
        if missing:
            raise MissingSamplesError(missing)
        self.sites = np.asarray(idx)
        self.labels = labels
        self.position = {lab: p for p, lab in enumerate(labels)}
        self.values = np.array([float(samples[lab]) for lab in labels])
        sub = domain.operator[self.sites][:, self.sites].tocsr()
        # a row is usable only if its whole stencil lies inside the patch
        self.closed = np.diff(sub.indptr) == domain._row_nnz[self.sites]
        self.sub = sub
        pattern = sub.copy()
        pattern.data = np.ones_like(pattern.data)
        self.pattern = pattern

    def full_mask(self) -> np.ndarray:
        return np.ones(len(self.sites), dtype=bool)

    def apply(self, values: np.ndarray, known: np.ndarray, shift: float = 0.0,
              scale: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(T - shift) values / scale`` and its validity mask."""
        unknown = (~known).astype(float)
        new_known = known & self.closed & (self.pattern @ unknown == 0)
        v = np.where(known, values, 0.0)
        out = (self.sub @ v - shift * v) / scale
        out[~new_known] = np.nan
        return out, new_known

    def mask_for(self, radius: int) -> np.ndarray:
        inner = set(self.domain.ball(self.center, radius))
        return np.array([i in inner for i in self.sites])

    def value_at(self, values: np.ndarray, label) -> float:
        return float(values[self.position[label]])
