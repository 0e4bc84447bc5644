"""Brute-force sampling theory: l0 decoding, colliding sparse signals,
the no-vanishing-minor (Chebotarev) property and sampling-set uniqueness.

Every routine enumerates subsets exhaustively and carries a hard size guard.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import AmbiguityWarning, DegenerateBasisError, InputError, NoSupportError, SizeGuardError
from .spectral import SparseSpectralSignal, SpectralBasis

L0_MAX_S = 3
# every support of size <= 3 over 15 indices
L0_MAX_CANDIDATES = sum(comb(15, k) for k in range(1, 4))
CHEBOTAREV_MAX_N = 8
UNIQUENESS_MAX_N = 14
UNIQUENESS_MAX_S = 2


def _matrix(basis) -> np.ndarray:
    return basis.eigenvectors if isinstance(basis, SpectralBasis) else np.asarray(basis)


def _rows(W: Iterable[int], n: int) -> list[int]:
    rows = sorted(int(w) for w in W)
    for w in rows:
        if not 1 <= w <= n:
            raise InputError(f"sample vertex {w} outside 1..{n}")
    return [w - 1 for w in rows]


def l0_decode(U_W: np.ndarray, samples: Sequence[float], s_max: int,
              tol: Tolerances = DEFAULT) -> SparseSpectralSignal:
    """Smallest support whose columns of ``U_W`` interpolate ``samples``.

    Sizes are tried in increasing order and supports lexicographically
    within a size; the first fit wins. An :class:`AmbiguityWarning` is
    issued when a second support of the same size fits too.
    """
    U_W = np.asarray(U_W)
    y = np.asarray(samples)
    m, n = U_W.shape
    if m < 1:
        raise InputError("need at least one sample")
    if len(y) != m:
        raise InputError(f"{len(y)} samples for {m} rows")
    candidates = sum(comb(n, k) for k in range(1, s_max + 1))
    if s_max > L0_MAX_S or candidates > L0_MAX_CANDIDATES:
        raise SizeGuardError(
            f"l0 decoding limited to s_max <= {L0_MAX_S} and {L0_MAX_CANDIDATES} candidate "
            f"supports; got s_max={s_max} with {candidates}")
    ynorm = np.linalg.norm(y)
    if ynorm == 0:
        return SparseSpectralSignal((), ())
    thresh = tol.residual * ynorm
    for size in range(1, s_max + 1):
        fits = []
        for S in combinations(range(n), size):
            A = U_W[:, S]
            coef, *_ = np.linalg.lstsq(A, y, rcond=None)
            if np.linalg.norm(A @ coef - y) < thresh and np.all(coef != 0):
                fits.append((S, coef))
        if fits:
            if len(fits) > 1:
                warnings.warn(
                    f"{len(fits)} supports of size {size} fit the samples; "
                    f"first two: {[tuple(j + 1 for j in S) for S, _ in fits[:2]]}",
                    AmbiguityWarning, stacklevel=2)
            S, coef = fits[0]
            if np.iscomplexobj(coef) and np.allclose(coef.imag, 0):
                coef = coef.real
            return SparseSpectralSignal(tuple(j + 1 for j in S), tuple(coef.tolist()))
    raise NoSupportError(f"no support of size <= {s_max} explains the samples", stage="decode")


def l0_decode_basis(basis, W: Iterable[int], samples: dict, s_max: int,
                    tol: Tolerances = DEFAULT) -> SparseSpectralSignal:
    """Convenience wrapper taking a basis and a ``{vertex: value}`` map."""
    U = _matrix(basis)
    rows = _rows(W, U.shape[0])
    return l0_decode(U[rows], [samples[r + 1] for r in rows], s_max, tol)


@dataclass(frozen=True, eq=False)
class Collision:
    f: SparseSpectralSignal
    g: SparseSpectralSignal
    f_values: np.ndarray
    g_values: np.ndarray
    W: tuple[int, ...]


def colliding_signals(basis, W: Iterable[int], S_f: Sequence[int],
                      tol: Tolerances = DEFAULT) -> Collision:
    """Two different ``s``-sparse signals with identical samples on ``W``.

    Requires ``|W| <= 2s - 1``. Candidate supports ``S_g`` disjoint from
    ``S_f`` are tried lexicographically; a kernel vector of
    ``U[W, S_f + S_g]`` splits into the two coefficient vectors. A
    candidate is rejected when some coefficient vanishes.
    """
    U = _matrix(basis)
    n = U.shape[0]
    rows = _rows(W, n)
    S_f = tuple(int(j) for j in S_f)
    s = len(S_f)
    if s < 1 or len(set(S_f)) != s or not all(1 <= j <= n for j in S_f):
        raise InputError(f"invalid support {S_f}")
    if len(rows) > 2 * s - 1:
        raise InputError(f"|W| = {len(rows)} exceeds 2s - 1 = {2 * s - 1}")
    if 2 * s > n:
        raise InputError(f"sparsity {s} exceeds n/2 = {n / 2}")
    rest = [j for j in range(1, n + 1) if j not in S_f]
    for S_g in combinations(rest, s):
        cols = [j - 1 for j in S_f + S_g]
        M = U[np.ix_(rows, cols)]
        _, sv, vh = np.linalg.svd(M)
        rank = int(np.sum(sv > tol.rank * sv[0])) if len(sv) and sv[0] > 0 else 0
        kernel = vh[rank:].conj().T
        if kernel.shape[1] == 0:
            continue
        # generic deterministic combination when the kernel has dimension > 1
        weights = np.random.default_rng(0).standard_normal(kernel.shape[1])
        x = kernel @ weights
        if not np.iscomplexobj(U):
            x = x.real
        x = x / np.linalg.norm(x)
        if np.any(np.abs(x) <= tol.coefficient):
            continue
        fhat, ghat = x[:s], -x[s:]
        f_vals = U[:, [j - 1 for j in S_f]] @ fhat
        g_vals = U[:, [j - 1 for j in S_g]] @ ghat
        return Collision(
            SparseSpectralSignal(S_f, tuple(fhat.tolist())),
            SparseSpectralSignal(tuple(S_g), tuple(ghat.tolist())),
            f_vals, g_vals, tuple(r + 1 for r in rows))
    raise DegenerateBasisError(f"no support disjoint from {S_f} yields nonzero coefficients",
                               stage="collide")


def is_chebotarev(M: np.ndarray, tol: Tolerances = DEFAULT):
    """Whether every square minor of ``M`` is nonzero.

    Returns ``(True, None)`` or ``(False, (rows, cols))`` with the first
    vanishing minor in (size, rows, cols) lexicographic order, 0-based. A
    minor counts as vanishing when ``|det| <= tol.minor * prod(row norms)``.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    if n > CHEBOTAREV_MAX_N:
        raise SizeGuardError(f"minor enumeration limited to n <= {CHEBOTAREV_MAX_N}")
    for k in range(1, n + 1):
        for rows in combinations(range(n), k):
            sub_rows = M[list(rows)]
            for cols in combinations(range(n), k):
                sub = sub_rows[:, list(cols)]
                scale = np.prod(np.linalg.norm(sub, axis=1))
                if abs(np.linalg.det(sub)) <= tol.minor * scale:
                    return False, (rows, cols)
    return True, None


def uniqueness_check(basis, W: Iterable[int], s: int, tol: Tolerances = DEFAULT) -> bool:
    """Whether the samples on ``W`` determine every ``s``-sparse signal.

    True iff ``U[W, T]`` has full column rank for every column set ``T`` of
    size ``2s`` (or ``n`` if smaller).
    """
    U = _matrix(basis)
    n = U.shape[0]
    rows = _rows(W, n)
    if s < 1:
        raise InputError(f"sparsity must be positive, got {s}")
    width = min(2 * s, n)
    if len(rows) < width:
        return False
    if n > UNIQUENESS_MAX_N or s > UNIQUENESS_MAX_S:
        raise SizeGuardError(
            f"uniqueness enumeration limited to n <= {UNIQUENESS_MAX_N}, s <= {UNIQUENESS_MAX_S} "
            f"({comb(n, width)} column sets requested)")
    U_W = U[rows]
    for T in combinations(range(n), width):
        sv = np.linalg.svd(U_W[:, list(T)], compute_uv=False)
        if sv[0] == 0 or sv[-1] <= tol.rank * sv[0]:
            return False
    return True
