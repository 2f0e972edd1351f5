"""Mahler measure of R_t(x, y) = t(x^m - 1) y - (x^n - 1).

Jensen's formula in y gives

    m(R_t) = log t + (1/pi) int_0^pi max(0, g(theta)) dtheta,
    g(theta) = log|1 - e^{i n theta}| - log|1 - e^{i m theta}| - log t.

:func:`quadrature_measure` integrates this directly.  :func:`closed_form_measure`
integrates g exactly over the arcs where it is positive, using the
antiderivative

    Phi(theta) = -D(e^{i n theta})/n + D(e^{i m theta})/m - theta log t,

so every root enters with the sign fixed by whether it opens or closes an arc.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .dilog import bloch_wigner
from .errors import ConsistencyError, DomainError
from .quadrature import integrate
from .spectrum import FamilyParams, RootList, UnitRoot, boundary_value, find_unit_roots

PI = math.pi

ORIGIN = "origin"
ROOT = "root"
END = "pi"


@dataclass(frozen=True)
class Arc:
    """A sub-arc (start, end) of (0, pi) on which |y| > t."""

    start: float
    end: float
    start_kind: str
    end_kind: str
    start_root: int | None = None
    end_root: int | None = None


@dataclass(frozen=True)
class ArcDecomposition:
    arcs: tuple[Arc, ...]

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def root_roles(self) -> dict[int, int]:
        """Map root index -> +1 if the root closes an arc, -1 if it opens one."""
        roles = {}
        for arc in self.arcs:
            if arc.start_kind == ROOT:
                roles[arc.start_root] = -1
            if arc.end_kind == ROOT:
                roles[arc.end_root] = +1
        return roles


@dataclass
class MeasureReport:
    """Split of m(R_t) into log, dilogarithm and argument parts (all in nats)."""

    params: FamilyParams
    total: float
    log_term: float
    dilog_term: float
    arg_term: float
    roots: RootList
    arcs: ArcDecomposition
    tangent: list[float] = field(default_factory=list)

    @property
    def near_threshold(self) -> bool:
        return bool(self.tangent)


def arc_decomposition(params: FamilyParams, roots) -> ArcDecomposition:
    """Cut (0, pi) at the roots and keep the cells where F > 0.

    Consecutive cells must alternate in sign because every root is a
    crossing; anything else means the roots belong to other parameters.
    """
    sigmas = [r.sigma for r in roots]
    if any(not (0.0 < s < PI) for s in sigmas) or sigmas != sorted(sigmas):
        raise ConsistencyError("roots must be sorted and inside (0, pi)")
    cuts = [0.0] + sigmas + [PI]
    kinds = [ORIGIN] + [ROOT] * len(sigmas) + [END]
    indices = [None] + [r.index for r in roots] + [None]

    arcs = []
    previous = None
    for i in range(len(cuts) - 1):
        a, b = cuts[i], cuts[i + 1]
        positive = boundary_value(params, 0.5 * (a + b)) > 0.0
        if previous is not None and positive == previous:
            raise ConsistencyError(
                f"cells around sigma={a:.17g} have the same sign; "
                "the root list does not match these parameters")
        previous = positive
        if positive:
            arcs.append(Arc(a, b, kinds[i], kinds[i + 1], indices[i], indices[i + 1]))
    return ArcDecomposition(tuple(arcs))


def dilog_antiderivative(params: FamilyParams, theta: float) -> float:
    """-D(e^{i n theta})/n + D(e^{i m theta})/m, the dilogarithm part of Phi."""
    m, n = params.m, params.n
    return (-bloch_wigner(cmath.exp(1j * n * theta)) / n
            + bloch_wigner(cmath.exp(1j * m * theta)) / m)


def closed_form_measure(params: FamilyParams, roots: RootList | None = None) -> MeasureReport:
    """m(R_t) from the dilogarithm closed form over the explicit arc set."""
    if roots is None:
        roots = find_unit_roots(params)
    arcs = arc_decomposition(params, roots)
    log_t = math.log(params.t)

    def phi_dilog(theta: float, kind: str) -> float:
        # D vanishes at e^{i 0} and e^{i k pi}
        return 0.0 if kind != ROOT else dilog_antiderivative(params, theta)

    dilog_parts = []
    arg_parts = []
    for arc in arcs:
        dilog_parts.append(phi_dilog(arc.end, arc.end_kind))
        dilog_parts.append(-phi_dilog(arc.start, arc.start_kind))
        arg_parts.append(-(arc.end - arc.start) * log_t)

    dilog_term = math.fsum(dilog_parts) / PI
    arg_term = math.fsum(arg_parts) / PI
    total = math.fsum([log_t, dilog_term, arg_term])
    return MeasureReport(params, total, log_t, dilog_term, arg_term, roots, arcs,
                         list(roots.tangent))


def jensen_integrand(params: FamilyParams):
    """Vectorised theta -> max(0, g(theta))."""
    m, n = params.m, params.n
    log_t = math.log(params.t)

    def g(theta):
        with np.errstate(divide="ignore", invalid="ignore"):
            value = (np.log(np.abs(2.0 * np.sin(0.5 * n * theta)))
                     - np.log(np.abs(2.0 * np.sin(0.5 * m * theta))) - log_t)
        return np.maximum(value, 0.0)

    return g


def singular_points(k: int) -> list[float]:
    """Zeros of sin(k theta / 2) in (0, pi)."""
    return [2.0 * PI * j / k for j in range(1, k) if 2 * j < k]


def quadrature_measure(params: FamilyParams, abs_tol: float = 1e-10,
                       roots: RootList | None = None, full_output: bool = False):
    """m(R_t) by adaptive Gauss-Kronrod quadrature of the Jensen integral.

    Breakpoints: 0, pi, every unit root (kinks of max(0, g)) and every zero
    of sin(m theta/2) or sin(n theta/2) (log singularities).  With
    ``full_output`` returns (value, error estimate).
    """
    if not abs_tol >= 1e-12:
        raise DomainError(f"abs_tol must be at least 1e-12, got {abs_tol!r}")
    if roots is None:
        roots = find_unit_roots(params)
    points = [0.0, PI]
    points += [r.sigma for r in roots]
    points += list(roots.tangent)
    points += singular_points(params.m) + singular_points(params.n)
    integral, err = integrate(jensen_integrand(params), points, abs_tol * PI)
    value = math.log(params.t) + integral / PI
    if full_output:
        return value, err / PI
    return value


def cassaigne_maillot(a: float, b: float, c: float) -> float:
    """m(a + b x + c y) for positive a, b, c.

    Triangle case: (D(a/b e^{i gamma}) + alpha log a + beta log b + gamma log c) / pi
    with alpha, beta, gamma the angles opposite a, b, c; otherwise log max(a, b, c).
    """
    for name, v in (("a", a), ("b", b), ("c", c)):
        if not (math.isfinite(v) and v > 0.0):
            raise DomainError(f"{name} must be a positive finite number, got {v!r}")
    if not (a < b + c and b < a + c and c < a + b):
        return math.log(max(a, b, c))
    alpha = _opposite_angle(a, b, c)
    gamma = _opposite_angle(c, a, b)
    beta = PI - alpha - gamma
    volume = bloch_wigner(a / b * cmath.exp(1j * gamma))
    return (volume + alpha * math.log(a) + beta * math.log(b) + gamma * math.log(c)) / PI


def _opposite_angle(opposite: float, s1: float, s2: float) -> float:
    cos_angle = (s1 * s1 + s2 * s2 - opposite * opposite) / (2.0 * s1 * s2)
    return math.acos(min(1.0, max(-1.0, cos_angle)))


__all__ = [
    "Arc", "ArcDecomposition", "MeasureReport", "UnitRoot",
    "arc_decomposition", "closed_form_measure", "quadrature_measure",
    "cassaigne_maillot", "dilog_antiderivative", "jensen_integrand",
]
