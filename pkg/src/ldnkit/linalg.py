"""Dense linear algebra kernel for small systems (q up to ~64).

Matrices are plain ``numpy.ndarray`` objects in row-major order; vectors are
1-d arrays. All operations are pure functions: inputs are validated (finite
entries, matching shapes) and never mutated, so values are safe to share
between threads.

The routines are deliberately self-contained rather than delegating to a
LAPACK wrapper: the pivot-based singularity test and the condition estimator
feed error reporting elsewhere in the package, and the ill-conditioned solves
this library deals in are part of its subject matter rather than a corner
case.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import RankDeficientError, SingularMatrixError

# A pivot this far below the largest entry of the input matrix is treated as
# zero. Chosen just above double-precision noise so that moderately sized
# Hilbert-matrix solves still go through (callers are expected to consult
# condition_estimate instead of relying on the solve to fail).
PIVOT_RTOL = 1e-13

# Order-6 diagonal Pade coefficients of exp(x); numerator N(x) = sum c[j] x^j,
# denominator N(-x).
_PADE6 = (
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
)

# ||A / 2^s||_1 is brought below this before applying the Pade approximant.
_SQUARING_THRESHOLD = 0.5


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d float array, requiring finite entries."""
    out = np.asarray(a, dtype=float)
    if out.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} has non-finite entries")
    return out


def as_vector(b, name: str = "vector") -> np.ndarray:
    """Coerce to a 1-d float array, requiring finite entries."""
    out = np.asarray(b, dtype=float)
    if out.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} has non-finite entries")
    return out


def _as_square(a, name: str = "matrix") -> np.ndarray:
    out = as_matrix(a, name)
    if out.shape[0] != out.shape[1]:
        raise ValueError(f"{name} must be square, got shape {out.shape}")
    return out


def one_norm(a) -> float:
    """Induced 1-norm (maximum absolute column sum)."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a).sum(axis=0)))


def _lu_factor(a: np.ndarray):
    """LU with partial pivoting, packed in one array plus a permutation.

    Raises SingularMatrixError when a pivot falls below PIVOT_RTOL times the
    largest absolute entry of the input.
    """
    lu = a.copy()
    n = lu.shape[0]
    perm = np.arange(n)
    tol = PIVOT_RTOL * float(np.max(np.abs(a))) if a.size else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= tol:
            raise SingularMatrixError(
                f"pivot {abs(lu[p, k]):.3e} at column {k} is below "
                f"{tol:.3e} (relative threshold {PIVOT_RTOL:g})"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm


def _lu_backsolve(lu: np.ndarray, perm: np.ndarray, b: np.ndarray) -> np.ndarray:
    x = b[perm].astype(float, copy=True)
    n = lu.shape[0]
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        x[k] -= lu[k, k + 1:] @ x[k + 1:]
        x[k] /= lu[k, k]
    return x


def lu_solve(a, b) -> np.ndarray:
    """Solve a x = b with partially pivoted LU.

    ``b`` may be a vector or a matrix of stacked right-hand sides (one per
    column); the result has the shape of ``b``.
    """
    a = _as_square(a, "a")
    b_arr = np.asarray(b, dtype=float)
    if b_arr.ndim == 1:
        b_arr = as_vector(b, "b")
    else:
        b_arr = as_matrix(b, "b")
    if b_arr.shape[0] != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: a is {a.shape}, b has {b_arr.shape[0]} rows"
        )
    lu, perm = _lu_factor(a)
    return _lu_backsolve(lu, perm, b_arr)


def expm(a) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a [6/6] Pade step.

    The input is scaled so that ||A / 2^s||_1 <= 0.5 before the approximant
    is applied, then squared s times.
    """
    a = _as_square(a, "a")
    n = a.shape[0]
    norm = one_norm(a)
    s = 0
    if norm > _SQUARING_THRESHOLD:
        s = int(math.ceil(math.log2(norm / _SQUARING_THRESHOLD)))
    scaled = a / (2.0 ** s)
    ident = np.eye(n)
    a2 = scaled @ scaled
    a4 = a2 @ a2
    u = scaled @ (_PADE6[1] * ident + _PADE6[3] * a2 + _PADE6[5] * a4)
    v = _PADE6[0] * ident + _PADE6[2] * a2 + _PADE6[4] * a4 + _PADE6[6] * (a2 @ a4)
    f = lu_solve(v - u, v + u)
    for _ in range(s):
        f = f @ f
    return f


def pinv_rows(l) -> np.ndarray:
    """Right pseudo-inverse L+ = L^T (L L^T)^{-1} of a full-row-rank q x N matrix.

    Only the q x q Gram matrix is ever factored; no N x N object is formed.
    Raises RankDeficientError when the Gram solve reports singularity.
    """
    l = as_matrix(l, "l")
    q, n = l.shape
    if n < q:
        raise ValueError(f"need at least as many columns as rows, got {l.shape}")
    gram = l @ l.T
    try:
        x = lu_solve(gram, l)  # q x N, equals (L L^T)^{-1} L
    except SingularMatrixError as exc:
        raise RankDeficientError(f"rows are not linearly independent: {exc}") from exc
    return x.T


def condition_estimate(a) -> float:
    """1-norm condition number estimate, correct to within a small factor.

    Uses Hager's estimator for ||a^{-1}||_1 driven by LU solves with a and
    a^T. Propagates SingularMatrixError for singular input.
    """
    a = _as_square(a, "a")
    n = a.shape[0]
    lu, perm = _lu_factor(a)
    lu_t, perm_t = _lu_factor(a.T.copy())
    est = 0.0
    x = np.full(n, 1.0 / n)
    for _ in range(5):
        y = _lu_backsolve(lu, perm, x)
        est = max(est, float(np.sum(np.abs(y))))
        xi = np.where(y >= 0.0, 1.0, -1.0)
        z = _lu_backsolve(lu_t, perm_t, xi)
        j = int(np.argmax(np.abs(z)))
        if abs(z[j]) <= float(z @ x):
            break
        x = np.zeros(n)
        x[j] = 1.0
    return max(one_norm(a) * est, 1.0)
