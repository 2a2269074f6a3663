"""Reduced-mode QR and LQ factorizations via Householder reflections.

For an m-by-n input with k = min(m, n), QR returns Q (m, k) with orthonormal
columns and upper-triangular R (k, n); for a wide input Q is therefore a full
square orthogonal matrix. LQ is realized as the transposed QR of the
transposed input. Both are deterministic functions of the input: rows of the
triangular factor are sign-flipped so its diagonal is nonnegative, which makes
the factors differentiable wherever the input has full rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Shape, as_matrix, check_triangular_diagonal
from .errors import RankDeficientError, ShapeError


@dataclass(frozen=True)
class QRFactors:
    q: np.ndarray
    r: np.ndarray
    shape: Shape


@dataclass(frozen=True)
class LQFactors:
    l: np.ndarray
    q: np.ndarray
    shape: Shape


def _householder_sweep(a: np.ndarray):
    """Triangularize a copy of ``a``, returning the unit reflectors and the result.

    Reflector j zeroes column j below the diagonal; a zero subcolumn needs no
    reflection and is recorded as None.
    """
    m, n = a.shape
    r = a.copy()
    reflectors = []
    for j in range(min(m - 1, n)):
        x = r[j:, j]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            reflectors.append(None)
            continue
        v = x.copy()
        v[0] += math.copysign(norm_x, x[0])
        v /= np.linalg.norm(v)
        reflectors.append(v)
        r[j:, j:] -= 2.0 * np.outer(v, v @ r[j:, j:])
    return reflectors, r


def _accumulate_q(reflectors, m: int, k: int) -> np.ndarray:
    """Apply the reflectors in reverse against the leading columns of I_m."""
    q = np.eye(m, k)
    for j in range(len(reflectors) - 1, -1, -1):
        v = reflectors[j]
        if v is None:
            continue
        q[j:, :] -= 2.0 * np.outer(v, v @ q[j:, :])
    return q


def qr_reduced(a) -> QRFactors:
    """Reduced QR factorization A = Q R with nonnegative diagonal of R.

    Entries of R below the diagonal are exact zeros. Raises
    RankDeficientError when the diagonal of the computed R falls below the
    singularity threshold, and InvalidInputError on non-finite input.
    """
    a = as_matrix(a, "factorization input")
    m, n = a.shape
    k = min(m, n)
    reflectors, r_full = _householder_sweep(a)
    r = np.triu(r_full[:k, :])
    q = _accumulate_q(reflectors, m, k)

    negative = np.diag(r) < 0.0
    if np.any(negative):
        r[negative, :] = -r[negative, :]
        q[:, negative] = -q[:, negative]
        r = np.triu(r)

    check_triangular_diagonal(np.diag(r), max(m, n), RankDeficientError,
                              "computed triangular factor")
    return QRFactors(q=q, r=r, shape=Shape(m, n))


def lq_reduced(a) -> LQFactors:
    """Reduced LQ factorization A = L Q, the transposed QR of the transpose."""
    a = as_matrix(a, "factorization input")
    f = qr_reduced(a.T)
    return LQFactors(l=np.ascontiguousarray(f.r.T), q=np.ascontiguousarray(f.q.T),
                     shape=Shape(a.shape[0], a.shape[1]))


def leading_block_condition(a, mode: str) -> float:
    """Condition estimate of the leading square block of a wide or deep matrix.

    For ``mode="qr"`` (wide input) the block is the first k columns; for
    ``mode="lq"`` (deep input) it is the first k rows. The estimate is
    max|d| / min|d| over the diagonal of the block's triangular factor, and
    an exactly singular block yields +inf rather than an error.
    """
    a = as_matrix(a, "condition input")
    m, n = a.shape
    k = min(m, n)
    if mode == "qr":
        if m >= n:
            raise ShapeError(f"qr leading-block condition needs a wide input, got {m}x{n}")
        block = a[:, :k]
    elif mode == "lq":
        if m <= n:
            raise ShapeError(f"lq leading-block condition needs a deep input, got {m}x{n}")
        # the LQ triangular factor of the block shares its diagonal with the
        # QR factor of the transposed block
        block = a[:k, :].T
    else:
        raise ShapeError(f"mode must be 'qr' or 'lq', got {mode!r}")
    _, r = _householder_sweep(np.ascontiguousarray(block))
    diag = np.abs(np.diag(r[:k, :k]))
    smallest = float(diag.min())
    if smallest == 0.0:
        return math.inf
    return float(diag.max()) / smallest
