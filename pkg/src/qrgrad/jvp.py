"""Forward-mode variations (JVPs) of the reduced QR and LQ factorizations.

Each routine maps a perturbation dA of the input onto the induced first-order
perturbations of the factors, using the precomputed factors rather than
refactorizing. Together with the reverse-mode modules these give two
independent routes to the same directional derivative, which the duality
check in the harness compares.
"""

from __future__ import annotations

import numpy as np

from .core import as_matrix, mask_e, solve_upper_triangular, sym
from .errors import ShapeError
from .factor import LQFactors, QRFactors
from .qr_grad import _check_block_full_rank


def _check_tangent(da, shape: tuple, name="tangent"):
    da = as_matrix(da, name)
    if da.shape != shape:
        raise ShapeError(f"{name} must have shape {shape}, found {da.shape}")
    return da


def _qr_core(q, r_tri, dx):
    """Square-block QR variation: dU = (sym(Q^T dX U^{-1}) ∘ E^T) U, dQ = (dX - Q dU) U^{-1}."""
    c = q.T @ solve_upper_triangular(r_tri, dx, side="right")
    k = r_tri.shape[0]
    du = np.triu((sym(c) * mask_e(k).T) @ r_tri)
    dq = solve_upper_triangular(r_tri, dx - q @ du, side="right")
    return dq, du


def _lq_core(l_tri, q, dx):
    """Square-block LQ variation: dU = U (sym(U^{-1} dX Q^T) ∘ E), dQ = U^{-1} (dX - dU Q)."""
    # L is lower triangular; L Z = B is solved as (L^T)^T Z = B
    z = solve_upper_triangular(l_tri.T, dx, side="left", transpose=True)
    c = z @ q.T
    k = l_tri.shape[0]
    du = np.tril(l_tri @ (sym(c) * mask_e(k)))
    dq = solve_upper_triangular(l_tri.T, dx - du @ q, side="left", transpose=True)
    return du, dq


def qr_jvp_deep(f: QRFactors, da):
    """Variations (dQ, dR) for square or deep inputs (m >= n)."""
    if f.shape.m < f.shape.n:
        raise ShapeError(f"deep-case variation needs m >= n, got {f.shape}")
    da = _check_tangent(da, (f.shape.m, f.shape.n))
    dq, dr = _qr_core(f.q, f.r, da)
    return dq, dr


def qr_jvp_wide(f: QRFactors, da):
    """Variations (dQ, dR) for wide inputs (m < n) via the leading-block split."""
    m, n = f.shape.m, f.shape.n
    if m > n:
        raise ShapeError(f"wide-case variation needs m <= n, got {f.shape}")
    da = _check_tangent(da, (m, n))
    u = f.r[:, :m]
    _check_block_full_rank(np.diag(u), m, "wide-case")
    dq, du = _qr_core(f.q, u, da[:, :m])
    dv = f.q.T @ (da[:, m:] - dq @ f.r[:, m:])
    return dq, np.concatenate([du, dv], axis=1)


def qr_jvp(f: QRFactors, da):
    """Variations for any input order; dispatches on the factor shape."""
    if f.shape.m >= f.shape.n:
        return qr_jvp_deep(f, da)
    return qr_jvp_wide(f, da)


def lq_jvp_wide(f: LQFactors, da):
    """Variations (dL, dQ) for square or wide inputs (m <= n)."""
    if f.shape.m > f.shape.n:
        raise ShapeError(f"wide-case variation needs m <= n, got {f.shape}")
    da = _check_tangent(da, (f.shape.m, f.shape.n))
    dl, dq = _lq_core(f.l, f.q, da)
    return dl, dq


def lq_jvp_deep(f: LQFactors, da):
    """Variations (dL, dQ) for deep inputs (m > n) via the leading-row split."""
    m, n = f.shape.m, f.shape.n
    if m < n:
        raise ShapeError(f"deep-case variation needs m >= n, got {f.shape}")
    da = _check_tangent(da, (m, n))
    u = f.l[:n, :]
    _check_block_full_rank(np.diag(u), n, "deep-case")
    du, dq = _lq_core(u, f.q, da[:n, :])
    dv = (da[n:, :] - f.l[n:, :] @ dq) @ f.q.T
    return np.concatenate([du, dv], axis=0), dq


def lq_jvp(f: LQFactors, da):
    """Variations for any input order; dispatches on the factor shape."""
    if f.shape.m <= f.shape.n:
        return lq_jvp_wide(f, da)
    return lq_jvp_deep(f, da)
