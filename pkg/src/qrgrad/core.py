"""Dense matrix toolkit: masks, symmetrization, triangular solves, norms.

All routines operate on 2-D float64 numpy arrays and never mutate their
arguments, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ShapeError, SingularMatrixError

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Shape:
    """Matrix dimensions with the derived inner rank k = min(m, n)."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {self.m}x{self.n}")

    @property
    def k(self) -> int:
        return min(self.m, self.n)

    @property
    def order(self) -> str:
        """One of ``"square"``, ``"deep"`` (m > n) or ``"wide"`` (m < n)."""
        if self.m == self.n:
            return "square"
        return "deep" if self.m > self.n else "wide"

    @classmethod
    def parse(cls, spec: str) -> "Shape":
        """Parse an ``MxN`` string such as ``"5x3"``."""
        parts = spec.lower().split("x")
        if len(parts) != 2:
            raise ShapeError(f"invalid shape spec {spec!r}, expected MxN")
        try:
            m, n = int(parts[0]), int(parts[1])
        except ValueError:
            raise ShapeError(f"invalid shape spec {spec!r}, expected MxN") from None
        return cls(m, n)

    def __str__(self) -> str:
        return f"{self.m}x{self.n}"


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce input to a 2-D float64 array, rejecting non-finite entries."""
    try:
        out = np.asarray(a, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} is not a dense real matrix: {exc}") from exc
    if out.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got ndim={out.ndim}")
    if out.shape[0] < 1 or out.shape[1] < 1:
        raise ShapeError(f"{name} must have positive dimensions, got {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InvalidInputError(f"{name} contains NaN or Inf entries")
    return np.ascontiguousarray(out)


def _require_square(a: np.ndarray, name: str) -> np.ndarray:
    a = as_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got {a.shape[0]}x{a.shape[1]}")
    return a


def mask_e(n: int) -> np.ndarray:
    """Triangle-selection mask: 0 above the diagonal, 1 on it, 2 strictly below.

    Multiplying elementwise by this mask (or its transpose) recovers a lower
    (upper) triangular matrix from its symmetrized form.
    """
    if n < 1:
        raise ShapeError(f"mask dimension must be positive, got {n}")
    return 2.0 * np.tril(np.ones((n, n))) - np.eye(n)


def strict_lower_mask(n: int) -> np.ndarray:
    """All-ones strictly-lower-triangular mask; zero on and above the diagonal."""
    if n < 1:
        raise ShapeError(f"mask dimension must be positive, got {n}")
    return np.tril(np.ones((n, n)), -1)


def sym(a) -> np.ndarray:
    """Symmetric part (A + A^T) / 2 of a square matrix."""
    a = _require_square(a, "sym input")
    return (a + a.T) / 2.0


def copyltu(a) -> np.ndarray:
    """Copy the lower triangle (diagonal included) onto the strict upper triangle.

    Equals sym(A ∘ E) with E the triangle mask; the result is symmetric.
    """
    a = _require_square(a, "copyltu input")
    lower = np.tril(a)
    return lower + np.tril(a, -1).T


def check_triangular_diagonal(diag: np.ndarray, dim: int, error_cls=SingularMatrixError,
                              context: str = "triangular factor") -> None:
    """Raise if any diagonal entry falls below the scale-invariant rank threshold.

    The threshold is eps * dim * max_j |d_j|; an all-zero diagonal always fails.
    """
    absd = np.abs(diag)
    biggest = float(absd.max())
    threshold = EPS * dim * biggest
    bad = np.nonzero((absd < threshold) | (absd == 0.0))[0]
    if bad.size:
        index = int(bad[0])
        raise error_cls(
            f"{context} is numerically singular: |diagonal[{index}]| = "
            f"{absd[index]:.3e} below threshold {threshold:.3e}",
            index,
        )


def solve_upper_triangular(r, b, side: str = "left", transpose: bool = False) -> np.ndarray:
    """Solve a triangular system by substitution without forming an inverse.

    With R upper triangular (entries below the diagonal are ignored):

    - ``side="left"``,  ``transpose=False``: R X = B
    - ``side="left"``,  ``transpose=True``:  R^T X = B
    - ``side="right"``, ``transpose=False``: X R = B
    - ``side="right"``, ``transpose=True``:  X R^T = B

    Raises SingularMatrixError when a diagonal entry is below the
    singularity threshold.
    """
    r = _require_square(r, "triangular matrix")
    b = as_matrix(b, "right-hand side")
    n = r.shape[0]
    if side == "left":
        if b.shape[0] != n:
            raise ShapeError(f"left solve needs {n} rows in B, got {b.shape[0]}")
    elif side == "right":
        if b.shape[1] != n:
            raise ShapeError(f"right solve needs {n} columns in B, got {b.shape[1]}")
    else:
        raise ShapeError(f"side must be 'left' or 'right', got {side!r}")

    diag = np.diag(r)
    check_triangular_diagonal(diag, n)

    x = np.zeros_like(b)
    if side == "left" and not transpose:
        for i in range(n - 1, -1, -1):
            x[i, :] = (b[i, :] - r[i, i + 1:] @ x[i + 1:, :]) / diag[i]
    elif side == "left":
        for i in range(n):
            x[i, :] = (b[i, :] - r[:i, i] @ x[:i, :]) / diag[i]
    elif not transpose:
        for j in range(n):
            x[:, j] = (b[:, j] - x[:, :j] @ r[:j, j]) / diag[j]
    else:
        for j in range(n - 1, -1, -1):
            x[:, j] = (b[:, j] - x[:, j + 1:] @ r[j, j + 1:]) / diag[j]
    return x


def frobenius_norm(a) -> float:
    """Square root of the sum of squared entries."""
    a = as_matrix(a, "norm input")
    return float(np.linalg.norm(a))


def frobenius_inner(x, y) -> float:
    """Tr(X^T Y) computed as the elementwise sum, without a matrix product."""
    x = as_matrix(x, "inner-product operand")
    y = as_matrix(y, "inner-product operand")
    if x.shape != y.shape:
        raise ShapeError(f"inner product needs equal shapes, got {x.shape} and {y.shape}")
    return float(np.sum(x * y))


def trace_product(a, b) -> float:
    """Tr(A B) via the diagonal sum, avoiding the full O(n^3) product."""
    a = as_matrix(a, "trace operand")
    b = as_matrix(b, "trace operand")
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise ShapeError(f"trace of product needs (p,q)x(q,p) shapes, got {a.shape} and {b.shape}")
    return float(np.sum(a * b.T))


def random_matrix(shape, seed: int) -> np.ndarray:
    """Deterministic matrix of i.i.d. standard normal entries.

    ``shape`` is an (m, n) pair or a :class:`Shape`; identical (shape, seed)
    arguments reproduce the matrix bit for bit.
    """
    if isinstance(shape, Shape):
        m, n = shape.m, shape.n
    else:
        m, n = shape
    if m < 1 or n < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {m}x{n}")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, n))
