"""Central numerical tolerances."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Relative thresholds shared by every recovery and verification routine.

    ``scaled(c)`` multiplies every entry by ``c``; the CLI's ``--tol-scale``
    goes through it.
    """

    rank: float = 1e-10          # singular values <= rank * sigma_max count as zero
    imag: float = 1e-8           # |Im z| <= imag * (1 + |Re z|) is discarded
    cluster: float = 1e-8        # roots closer than cluster * (1 + max|root|) merge
    residual: float = 1e-9       # least-squares fit accepted below residual * ||samples||
    minor: float = 1e-10         # |det| <= minor * prod(row norms) is a vanishing minor
    nullity: float = 1e-9        # Laplacian eigenvalues below nullity * max(1, lambda_max)
    symmetry: float = 1e-12      # eigendecomposition input check
    harmonic: float = 1e-8       # split-recovery residual flag, relative to ||f||
    coefficient: float = 1e-8    # collision coefficients below this * ||x|| count as zero

    def scaled(self, factor: float) -> "Tolerances":
        if factor <= 0:
            raise ValueError(f"tolerance scale must be positive, got {factor}")
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT = Tolerances()
