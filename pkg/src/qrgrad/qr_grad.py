"""Reverse-mode gradients of the reduced QR factorization.

Given the forward factors A = Q R and upstream gradients (Q_bar, R_bar) of a
scalar loss with respect to Q and R, these routines return A_bar, the gradient
with respect to A. Square and deep inputs use the compact copyltu form; wide
inputs split A into a leading square block plus remainder so the square-case
formula applies to the block. All inverse-triangular products are evaluated
with substitution solves.
"""

from __future__ import annotations

import numpy as np

from .core import EPS, as_matrix, copyltu, solve_upper_triangular, strict_lower_mask
from .errors import AssumptionViolatedError, ShapeError
from .factor import QRFactors


def _check_adjoint(arr, expected, name):
    arr = as_matrix(arr, name)
    if arr.shape != expected:
        raise ShapeError(f"{name} must have shape {expected}, found {arr.shape}")
    return arr


def _check_block_full_rank(diag, dim, what):
    absd = np.abs(diag)
    biggest = float(absd.max())
    bad = np.nonzero((absd < EPS * dim * biggest) | (absd == 0.0))[0]
    if bad.size:
        raise AssumptionViolatedError(
            f"{what} gradient requires the leading {dim}x{dim} block of the input "
            f"to be full rank; its triangular factor has |diagonal[{int(bad[0])}]| = "
            f"{absd[bad[0]]:.3e}",
            int(bad[0]),
        )


def _square_core(q, r_tri, q_bar, r_bar_tri):
    """(Q_bar + Q copyltu(M)) R^{-T} with M = R R_bar^T - Q_bar^T Q."""
    m = r_tri @ r_bar_tri.T - q_bar.T @ q
    return solve_upper_triangular(q_bar + q @ copyltu(m), r_tri,
                                  side="right", transpose=True)


def qr_backward_deep(f: QRFactors, q_bar, r_bar) -> np.ndarray:
    """Gradient of A for square or deep inputs (m >= n)."""
    if f.shape.m < f.shape.n:
        raise ShapeError(f"deep-case backward needs m >= n, got {f.shape}")
    q_bar = _check_adjoint(q_bar, f.q.shape, "Q adjoint")
    r_bar = _check_adjoint(r_bar, f.r.shape, "R adjoint")
    return _square_core(f.q, f.r, q_bar, r_bar)


def qr_backward_walter(f: QRFactors, q_bar, r_bar) -> np.ndarray:
    """Alternative formulation of the square/deep gradient.

    Uses a strict-lower mask on the antisymmetric combination of the factor
    products instead of copyltu. Algebraically identical to
    :func:`qr_backward_deep`; kept as an independent formulation so the two
    can be compared numerically.
    """
    if f.shape.m < f.shape.n:
        raise ShapeError(f"deep-case backward needs m >= n, got {f.shape}")
    q_bar = _check_adjoint(q_bar, f.q.shape, "Q adjoint")
    r_bar = _check_adjoint(r_bar, f.r.shape, "R adjoint")
    q, r = f.q, f.r
    n = f.shape.n
    s = r @ r_bar.T - r_bar @ r.T + q.T @ q_bar - q_bar.T @ q
    inner = solve_upper_triangular(strict_lower_mask(n) * s, r,
                                   side="right", transpose=True)
    residual = solve_upper_triangular(q_bar - q @ (q.T @ q_bar), r,
                                      side="right", transpose=True)
    return q @ (r_bar + inner) + residual


def qr_backward_wide(a, f: QRFactors, q_bar, r_bar) -> np.ndarray:
    """Gradient of A for wide inputs (m < n) via the leading-block split.

    A = [X | Y] with X the leading m-by-m block, R = [U | V]. The Q adjoint
    is first augmented with Y's contribution (Q feeds both U and V in the
    forward pass), then the square-case core applies to the block:

        X_bar = (Q_bar + Y V_bar^T + Q copyltu(M)) U^{-T}
        Y_bar = Q V_bar
    """
    a = as_matrix(a, "input matrix")
    m, n = a.shape
    if m > n:
        raise ShapeError(f"wide-case backward needs m <= n, got {m}x{n}")
    if (f.shape.m, f.shape.n) != (m, n):
        raise ShapeError(f"factors were computed for {f.shape}, input is {m}x{n}")
    q_bar = _check_adjoint(q_bar, f.q.shape, "Q adjoint")
    r_bar = _check_adjoint(r_bar, f.r.shape, "R adjoint")

    u = f.r[:, :m]
    _check_block_full_rank(np.diag(u), m, "wide-case")
    u_bar = r_bar[:, :m]
    v_bar = r_bar[:, m:]
    if n == m:
        q_bar_prime = q_bar
    else:
        q_bar_prime = q_bar + a[:, m:] @ v_bar.T
    x_bar = _square_core(f.q, u, q_bar_prime, u_bar)
    y_bar = f.q @ v_bar
    return np.concatenate([x_bar, y_bar], axis=1)


def qr_backward(a, f: QRFactors, q_bar, r_bar) -> np.ndarray:
    """Gradient of A for any input order; dispatches on the factor shape."""
    a = as_matrix(a, "input matrix")
    if (f.shape.m, f.shape.n) != a.shape:
        raise ShapeError(f"factors were computed for {f.shape}, input is {a.shape}")
    if f.shape.m >= f.shape.n:
        return qr_backward_deep(f, q_bar, r_bar)
    return qr_backward_wide(a, f, q_bar, r_bar)
