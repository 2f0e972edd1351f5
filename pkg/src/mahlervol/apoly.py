"""Gluing-equation analogue for the t = 1 polyhedra.

The m + n tetrahedra over an admissible polygon get shapes w_1..w_m and
z_1..z_n.  Rows of the exponent matrix U (columns: exponents of the shapes,
then exponents of one minus the shapes):

    w_1^a z_1^b                                            = x^2
    w_1^{-mn(m+n)a} z_1^{-mn(m+n)b} prod (1-w_i)^{2n} prod (1-z_j)^{-2m} = y^2
    w_1 ... w_m z_1 ... z_n                                = 1
    w_1 / w_j = 1,  z_1 / z_j = 1

with n a - m b = 1.  Neumann-Zagier predicts U J U^T = 2 diag(J_2, 0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError
from .mahler import quadrature_measure
from .quadrature import integrate
from .spectrum import FamilyParams

PI = math.pi


@dataclass(frozen=True)
class ExponentSystem:
    m: int
    n: int
    alpha: int
    beta: int
    U: np.ndarray

    @property
    def size(self) -> int:
        """Number of tetrahedra, m + n."""
        return self.m + self.n

    @property
    def deformation_rows(self) -> np.ndarray:
        return self.U[:2]

    @property
    def gluing_rows(self) -> np.ndarray:
        return self.U[2:]


@dataclass(frozen=True)
class IdentitySolution:
    """A solution of the x = y = 1 system, parametrised by a root of unity u."""

    u: complex
    w: complex  # u^n
    z: complex  # u^-m
    degenerate: bool  # w = 1 or z = 1, where the modulus equation reads 0 = 0


def _check_pair(m: int, n: int) -> None:
    for name, v in (("m", m), ("n", n)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")
    if m == n or math.gcd(m, n) != 1:
        raise DomainError(f"need coprime m != n, got ({m}, {n})")


def canonical_alpha_beta(m: int, n: int) -> tuple[int, int]:
    """The solution of n a - m b = 1 with 1 <= a <= m."""
    _check_pair(m, n)
    alpha = 1 if m == 1 else pow(n, -1, m)
    beta = (n * alpha - 1) // m
    return alpha, beta


def build_system(m: int, n: int, alpha: int | None = None, beta: int | None = None
                 ) -> ExponentSystem:
    """Exponent matrix U, shape (m+n+1) x 2(m+n), exact integers.

    Two deformation rows followed by the m + n - 1 gluing rows of the
    system above (the product row and the equalities w_1 = w_j, z_1 = z_j).

    ``alpha``/``beta`` default to :func:`canonical_alpha_beta`; other
    representatives (alpha + j m, beta + j n) are accepted as given, and so
    are broken pairs, which is how the identity's sensitivity is tested.
    """
    _check_pair(m, n)
    if alpha is None or beta is None:
        alpha, beta = canonical_alpha_beta(m, n)
    k = m + n
    U = np.zeros((k + 1, 2 * k), dtype=np.int64)
    w1, z1 = 0, m  # columns of w_1 and z_1
    U[0, w1] = alpha
    U[0, z1] = beta
    scale = -m * n * (m + n)
    U[1, w1] = scale * alpha
    U[1, z1] = scale * beta
    U[1, k:k + m] = 2 * n
    U[1, k + m:2 * k] = -2 * m
    U[2, :k] = 1
    row = 3
    for j in range(1, m):
        U[row, w1] = 1
        U[row, j] = -1
        row += 1
    for j in range(1, n):
        U[row, z1] = 1
        U[row, m + j] = -1
        row += 1
    return ExponentSystem(m, n, int(alpha), int(beta), U)


def symplectic_form(size: int) -> np.ndarray:
    """J_{2p} = [[0, I_p], [-I_p, 0]] as an integer matrix."""
    eye = np.eye(size, dtype=np.int64)
    zero = np.zeros((size, size), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


def check_neumann_zagier(system: ExponentSystem) -> bool:
    """True iff U J U^T == 2 diag(J_2, 0) exactly."""
    U = system.U
    k = system.size
    if U.ndim != 2 or U.shape[1] != 2 * k or U.shape[0] < 2 or U.dtype.kind != "i":
        raise ConsistencyError(f"U has shape {U.shape} and dtype {U.dtype}")
    product = U @ symplectic_form(k) @ U.T
    rows = U.shape[0]
    target = np.zeros((rows, rows), dtype=np.int64)
    target[0, 1] = 2
    target[1, 0] = -2
    return bool(np.array_equal(product, target))


def identity_solutions(m: int, n: int, tol: float = 1e-9) -> list[IdentitySolution]:
    """Solutions of w^n z^m = 1, w^m z^n = 1, |1 - w| = |1 - z| with w = u^n, z = u^-m.

    u runs over the |n^2 - m^2|-th roots of unity; the modulus equation is
    tested numerically.  u = 1 satisfies it as 0 = 0 and is kept with
    ``degenerate=True``.
    """
    _check_pair(m, n)
    order = abs(n * n - m * m)
    out = []
    for j in range(order):
        u = cmath.exp(2j * PI * j / order)
        w = u ** n
        z = u ** (-m)
        if abs(abs(1.0 - w) - abs(1.0 - z)) <= tol:
            degenerate = abs(1.0 - w) <= tol or abs(1.0 - z) <= tol
            out.append(IdentitySolution(u, w, z, degenerate))
    return out


def tilde_measure(m: int, n: int, abs_tol: float = 1e-10) -> float:
    """m(R~) for R~ = (x^m - x^-m)^{mn} y - (x^n - x^-n)^{mn}.

    The leading coefficient is a monomial times cyclotomic factors, so
    m(R~) = (mn/pi) int_0^pi log+ |sin(n theta) / sin(m theta)| dtheta.
    """
    _check_pair(m, n)

    def integrand(theta):
        with np.errstate(divide="ignore", invalid="ignore"):
            value = (np.log(np.abs(np.sin(n * theta)))
                     - np.log(np.abs(np.sin(m * theta))))
        return np.maximum(value, 0.0)

    # |sin n th| = |sin m th| at th = j pi/(n+m) and j pi/|n-m|; logs blow up at j pi/m, j pi/n
    points = {0.0, PI}
    for d in (n + m, abs(n - m), m, n):
        points.update(j * PI / d for j in range(1, d))
    integral, _ = integrate(integrand, sorted(points), abs_tol * PI / (m * n))
    return m * n * integral / PI


def tilde_measure_check(m: int, n: int, abs_tol: float = 1e-10) -> float:
    """|mn m(R_1) - m(R~)| with both sides from independent quadratures."""
    lhs = m * n * quadrature_measure(FamilyParams(m, n, 1.0), abs_tol)
    return abs(lhs - tilde_measure(m, n, abs_tol))
