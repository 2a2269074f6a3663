"""Reverse-mode gradients of the reduced LQ factorization.

Mirror images of the QR formulas: square and wide inputs use the compact
copyltu form directly, deep inputs split A into a leading square block of rows
plus remainder. L^{-T} products are evaluated as transposed lower-triangular
substitution solves.
"""

from __future__ import annotations

import numpy as np

from .core import as_matrix, copyltu, solve_upper_triangular
from .errors import ShapeError
from .factor import LQFactors
from .qr_grad import _check_adjoint, _check_block_full_rank


def _square_core(l_tri, q, l_bar_tri, q_bar):
    """L^{-T} (Q_bar + copyltu(M) Q) with M = L^T L_bar - Q_bar Q^T."""
    m = l_tri.T @ l_bar_tri - q_bar @ q.T
    rhs = q_bar + copyltu(m) @ q
    # L is lower triangular, so L^T X = rhs is an upper-triangular solve
    return solve_upper_triangular(l_tri.T, rhs, side="left")


def lq_backward_wide(f: LQFactors, l_bar, q_bar) -> np.ndarray:
    """Gradient of A for square or wide inputs (m <= n)."""
    if f.shape.m > f.shape.n:
        raise ShapeError(f"wide-case backward needs m <= n, got {f.shape}")
    l_bar = _check_adjoint(l_bar, f.l.shape, "L adjoint")
    q_bar = _check_adjoint(q_bar, f.q.shape, "Q adjoint")
    return _square_core(f.l, f.q, l_bar, q_bar)


def lq_backward_deep(a, f: LQFactors, l_bar, q_bar) -> np.ndarray:
    """Gradient of A for deep inputs (m > n) via the leading-row-block split.

    A = [X; Y] with X the top n-by-n block, L = [U; V] stacked the same way:

        X_bar = U^{-T} (Q_bar + V_bar^T Y + copyltu(M) Q)
        Y_bar = V_bar Q
    """
    a = as_matrix(a, "input matrix")
    m, n = a.shape
    if m < n:
        raise ShapeError(f"deep-case backward needs m >= n, got {m}x{n}")
    if (f.shape.m, f.shape.n) != (m, n):
        raise ShapeError(f"factors were computed for {f.shape}, input is {m}x{n}")
    l_bar = _check_adjoint(l_bar, f.l.shape, "L adjoint")
    q_bar = _check_adjoint(q_bar, f.q.shape, "Q adjoint")

    u = f.l[:n, :]
    _check_block_full_rank(np.diag(u), n, "deep-case")
    u_bar = l_bar[:n, :]
    v_bar = l_bar[n:, :]
    if m == n:
        q_bar_prime = q_bar
    else:
        q_bar_prime = q_bar + v_bar.T @ a[n:, :]
    x_bar = _square_core(u, f.q, u_bar, q_bar_prime)
    y_bar = v_bar @ f.q
    return np.concatenate([x_bar, y_bar], axis=0)


def lq_backward(a, f: LQFactors, l_bar, q_bar) -> np.ndarray:
    """Gradient of A for any input order; dispatches on the factor shape."""
    a = as_matrix(a, "input matrix")
    if (f.shape.m, f.shape.n) != a.shape:
        raise ShapeError(f"factors were computed for {f.shape}, input is {a.shape}")
    if f.shape.m <= f.shape.n:
        return lq_backward_wide(f, l_bar, q_bar)
    return lq_backward_deep(a, f, l_bar, q_bar)
