"""Constructors for basis-generating LTI systems.

The stored convention is theta * dm/dt = A m(t) + B u(t): the window length
theta only rescales time, so the closed-form matrices below are independent
of theta and integer valued, and tests can demand exact equality. Conversion
to plain dm/dt form happens in the simulator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, poly
from .bases import PolyBasis, validate


@dataclass(frozen=True)
class LtiSystem:
    """State-space system theta * dm/dt = a m + b u of order q.

    ``condition`` carries the coefficient-solve condition estimate when the
    system came out of the generic basis solver, else None.
    """

    a: np.ndarray
    b: np.ndarray
    theta: float
    condition: float | None = None

    @property
    def q(self) -> int:
        return self.b.size


def _check_order(q: int) -> None:
    if q < 1:
        raise ValueError("q must be at least 1")


def _alternating(q: int) -> np.ndarray:
    # (B)_i = (-1)^(i+1) with 1-based i
    return (-1.0) ** np.arange(q)


def mk_ldn(q: int, theta: float = 1.0) -> LtiSystem:
    """Legendre Delay Network system (state scaled so entries are (2j-1)).

    With 1-based indices: (A)_ij = (2j-1) * (-1 if i <= j or i+j even,
    else +1), (B)_i = (-1)^(i+1).
    """
    _check_order(q)
    i = np.arange(1, q + 1)[:, None]
    j = np.arange(1, q + 1)[None, :]
    sign = np.where((i > j) & ((i + j) % 2 == 1), 1.0, -1.0)
    return LtiSystem(a=(2 * j - 1) * sign, b=_alternating(q), theta=float(theta))


def mk_legendre(q: int, theta: float = 1.0) -> LtiSystem:
    """System whose impulse response traces the shifted Legendre polynomials.

    With 1-based indices: (A)_ij = (4j-2) for i > j with i+j odd, else 0;
    (B)_i = (-1)^(i+1). Strictly lower triangular, so the system is not
    asymptotically stable; it exists to be dampened.
    """
    _check_order(q)
    i = np.arange(1, q + 1)[:, None]
    j = np.arange(1, q + 1)[None, :]
    a = np.where((i > j) & ((i + j) % 2 == 1), (4 * j - 2).astype(float), 0.0)
    return LtiSystem(a=a, b=_alternating(q), theta=float(theta))


def mk_chebyshev(q: int, theta: float = 1.0) -> LtiSystem:
    """System generating the shifted Chebyshev polynomials (first kind).

    With 1-based indices: (A)_ij = (2i-2) * (1 if j == 1 else 2) for i > j
    with i+j odd, else 0; (B)_i = (-1)^(i+1).
    """
    _check_order(q)
    i = np.arange(1, q + 1)[:, None]
    j = np.arange(1, q + 1)[None, :]
    weight = np.where(j == 1, 1.0, 2.0)
    a = np.where((i > j) & ((i + j) % 2 == 1), (2 * i - 2) * weight, 0.0)
    return LtiSystem(a=a, b=_alternating(q), theta=float(theta))


def mk_poly_basis_lti(basis: PolyBasis) -> LtiSystem:
    """Solve for the LTI system generating an arbitrary polynomial basis.

    Row n of A linearly combines the basis polynomials into theta times the
    derivative of polynomial n; in coefficient space that is one q x q
    solve per row against the shared transposed coefficient matrix, which
    is factored once. B holds the basis values at t = 0.

    Raises SingularMatrixError for a rank-deficient coefficient matrix
    (validate() should have caught that first); the condition estimate of
    the coefficient matrix is attached to the result.
    """
    report = validate(basis)
    if not report.ok:
        raise ValueError(f"basis fails validation: {report}")
    q = basis.q
    if basis.width != q:
        raise ValueError("the system solver needs polynomial degrees bounded by q - 1")
    lam = basis.coefficient_matrix()
    rhs = np.zeros((q, q))
    for n, p in enumerate(basis.polys):
        dp = basis.theta * poly.differentiate(p)
        rhs[n, : dp.size] = dp
    # lam.T x_n = rhs_n for every row n; stack the right-hand sides as columns
    a = linalg.lu_solve(lam.T, rhs.T).T
    cond = linalg.condition_estimate(lam.T)
    return LtiSystem(a=a, b=lam[:, 0].copy(), theta=basis.theta, condition=cond)


def _state_scaling(q: int) -> np.ndarray:
    # M = diag(1 / (2i+1)) with 0-based i; maps original coordinates to scaled
    return 1.0 / (2.0 * np.arange(q) + 1.0)


def to_original_ldn(sys: LtiSystem) -> LtiSystem:
    """Undo the per-dimension scaling of mk_ldn.

    Returns A' = M^-1 A M and B' = M^-1 B with M = diag(1/(2i+1)), the
    coordinates in which dimension i of the state runs (2i+1) times larger.
    """
    m = _state_scaling(sys.q)
    return LtiSystem(
        a=sys.a * (m[None, :] / m[:, None]),
        b=sys.b / m,
        theta=sys.theta,
        condition=sys.condition,
    )


def to_scaled_ldn(sys: LtiSystem) -> LtiSystem:
    """Inverse of to_original_ldn: A = M A' M^-1, B = M B'."""
    m = _state_scaling(sys.q)
    return LtiSystem(
        a=sys.a * (m[:, None] / m[None, :]),
        b=sys.b * m,
        theta=sys.theta,
        condition=sys.condition,
    )
