"""Unit-circle roots of Q(x) for the family R_t = t(x^m - 1) y - (x^n - 1).

On ``x = e^{i theta}`` the sign of Q agrees with the sign of

    F(theta) = |1 - e^{i n theta}|^2 - t^2 |1 - e^{i m theta}|^2
             = 4 sin^2(n theta / 2) - 4 t^2 sin^2(m theta / 2),

so odd-multiplicity roots on the upper half circle are the sign changes of F
on the open interval (0, pi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError

PI = math.pi

GRID_FACTOR = 64
MAX_DOUBLINGS = 6
TANGENT_EPS = 1e-9
TANGENT_WINDOW = 1e-6


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (m, n, t) of R_t.  ``t`` is replaced by ``|t|``."""

    m: int
    n: int
    t: float

    def __post_init__(self):
        for name in ("m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.m == self.n:
            raise DomainError("m and n must differ")
        if math.gcd(self.m, self.n) != 1:
            raise DomainError(f"gcd(m, n) must be 1, got gcd({self.m}, {self.n})")
        t = abs(complex(self.t))
        if not math.isfinite(t) or t == 0.0:
            raise DomainError(f"t must be finite and nonzero, got {self.t!r}")
        object.__setattr__(self, "t", float(t))


@dataclass(frozen=True)
class UnitRoot:
    """A root e^{i sigma} of Q with 0 < sigma < pi, numbered from 1 upward."""

    sigma: float
    index: int

    @property
    def alpha(self) -> complex:
        return cmath.exp(1j * self.sigma)


class RootList(list):
    """List of :class:`UnitRoot` carrying the tangent points found on the way.

    ``tangent`` holds angles where F touches zero without changing sign.
    They are not roots of odd multiplicity and are never used as arc ends.
    """

    def __init__(self, roots=(), tangent=()):
        super().__init__(roots)
        self.tangent = list(tangent)

    @property
    def near_threshold(self) -> bool:
        return bool(self.tangent)


def boundary_value(params: FamilyParams, theta: float) -> float:
    """F(theta); even in theta and zero at theta = 0."""
    sn = math.sin(0.5 * params.n * theta)
    sm = math.sin(0.5 * params.m * theta)
    return 4.0 * sn * sn - 4.0 * params.t * params.t * sm * sm


def _boundary_values(params: FamilyParams, theta: np.ndarray) -> np.ndarray:
    sn = np.sin(0.5 * params.n * theta)
    sm = np.sin(0.5 * params.m * theta)
    return 4.0 * sn * sn - 4.0 * params.t * params.t * sm * sm


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _left_sign(params: FamilyParams) -> int:
    """Sign of F on (0, eps): F ~ (n^2 - t^2 m^2) theta^2 + (t^2 m^4 - n^4) theta^4 / 12."""
    m, n, t = params.m, params.n, params.t
    quad = n * n - t * t * m * m
    if abs(quad) > 1e-12 * n * n:
        return _sign(quad)
    return _sign(m * m - n * n)


def _right_sign(params: FamilyParams) -> int:
    """Sign of F on (pi - eps, pi)."""
    m, n, t = params.m, params.n, params.t
    at_pi = 4.0 * (n % 2) - 4.0 * t * t * (m % 2)
    if abs(at_pi) > 1e-12:
        return _sign(at_pi)
    # m, n odd and t ~ 1: double root at pi, F ~ -(n^2 - t^2 m^2) x^2
    return _sign(t * t * m * m - n * n)


def _bisect(f, a: float, b: float, sign_a: int) -> float:
    """Bisect a bracketed sign change down to adjacent floats."""
    lo, hi = a, b
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if _sign(fm) == sign_a:
            lo = mid
        else:
            hi = mid
    candidates = [x for x in (lo, hi) if 0.0 < x < PI]
    return min(candidates, key=lambda x: abs(f(x)))


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, a: float, b: float, xtol: float = 1e-13) -> float:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _scan(params: FamilyParams, intervals: int) -> tuple[list[float], list[float]]:
    """Roots and tangent points of F on a grid of ``intervals`` cells."""
    f = lambda x: boundary_value(params, x)  # noqa: E731
    h = PI / intervals
    xs = np.arange(intervals + 1) * h
    xs[-1] = PI
    vals = np.zeros(intervals + 1)
    vals[1:-1] = _boundary_values(params, xs[1:-1])
    signs = np.sign(vals).astype(int)
    signs[0] = _left_sign(params)
    signs[-1] = _right_sign(params)

    roots: list[float] = []
    tangent: list[float] = []
    for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0].tolist():
        roots.append(_bisect(f, float(xs[i]), float(xs[i + 1]), int(signs[i])))

    # exact zeros on interior grid nodes
    for i in (np.nonzero(signs[1:-1] == 0)[0] + 1).tolist():
        s0, s2 = signs[i - 1], signs[i + 1]
        if s0 * s2 < 0:
            roots.append(float(xs[i]))
        elif s0 * s2 > 0:
            tangent.append(float(xs[i]))

    # Local extrema of F that come close to zero may hide a pair of roots
    # or a tangency inside a single cell pair.
    curvature = 2.0 * (params.n ** 2 + params.t ** 2 * params.m ** 2)
    reach = 2.0 * curvature * h * h
    # F vanishes at theta = 0 (and at pi when t = 1, m, n odd); windows
    # touching an end are left to the endpoint signs.
    mag = np.abs(vals)
    mag[0] = mag[-1] = np.inf
    inner = slice(1, -1)
    candidate = (
        (xs[:-2] > 0.0)
        & (xs[2:] < PI)
        & (signs[inner] != 0)
        & (signs[:-2] == signs[inner])
        & (signs[2:] == signs[inner])
        & (mag[inner] <= reach)
        & (mag[inner] <= mag[:-2])
        & (mag[inner] <= mag[2:])
    )
    for i in (np.nonzero(candidate)[0] + 1).tolist():
        s = int(signs[i])
        a, b = float(xs[i - 1]), float(xs[i + 1])
        star = _golden_min(lambda x: s * f(x), a, b)
        low = f(star)
        if abs(low) < TANGENT_EPS:
            left = f(max(a, star - TANGENT_WINDOW))
            right = f(min(b, star + TANGENT_WINDOW))
            if _sign(left) == s and _sign(right) == s:
                tangent.append(star)
                continue
        if s * low < 0:
            roots.append(_bisect(f, a, star, s))
            roots.append(_bisect(f, star, b, -s))

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-13:
            deduped.append(r)
    return deduped, sorted(tangent)


def find_unit_roots(params: FamilyParams) -> RootList:
    """Odd-multiplicity roots of Q on the open upper half circle, ascending in sigma.

    The grid starts at 64 (m + n) cells and is doubled until the root count
    agrees over two successive refinements.
    """
    intervals = GRID_FACTOR * (params.m + params.n)
    roots, tangent = _scan(params, intervals)
    stable = 0
    for _ in range(MAX_DOUBLINGS):
        intervals *= 2
        finer, finer_tangent = _scan(params, intervals)
        if len(finer) == len(roots) and len(finer_tangent) == len(tangent):
            stable += 1
            if stable == 2:
                break
        else:
            stable = 0
        roots, tangent = finer, finer_tangent
    return RootList((UnitRoot(s, i + 1) for i, s in enumerate(roots)), tangent)


def case_indices(m: int, n: int, sigma: float) -> tuple[int, int]:
    """(k, l) with sigma in (k pi/m, (k+1) pi/m] and (l pi/n, (l+1) pi/n]."""
    k = min(max(math.ceil(m * sigma / PI) - 1, 0), m - 1)
    l = min(max(math.ceil(n * sigma / PI) - 1, 0), n - 1)
    return k, l


def _lucas(degree: int) -> list[list[int]]:
    """Ascending coefficients of V_j(M) = 2 cos(j theta), M = 2 cos theta, j <= degree."""
    polys = [[2], [0, 1]]
    for j in range(2, degree + 1):
        prev, prev2 = polys[j - 1], polys[j - 2]
        nxt = [0] + prev
        for i, c in enumerate(prev2):
            nxt[i] -= c
        polys.append(nxt)
    return polys[: degree + 1]


def _chord_quotient(k: int, lucas: list[list[int]]) -> list[int]:
    """(2 - V_k(M)) / (2 - M) = |1 + x + ... + x^{k-1}|^2 as a polynomial in M."""
    num = [-c for c in lucas[k]]
    num[0] += 2
    # synthetic division by (2 - M) = -(M - 2)
    deg = len(num) - 1
    quotient = [0] * deg
    carry = 0
    for i in range(deg, 0, -1):
        carry = num[i] + 2 * carry if i < deg else num[i]
        quotient[i - 1] = carry
    remainder = num[0] + 2 * carry
    if remainder != 0:
        raise ArithmeticError("division by 2 - M left a remainder")
    return [-c for c in quotient]


def reciprocal_reduction(params: FamilyParams) -> list[float]:
    """Ascending coefficients of S(M) with Q_1(x) = x^d S(x + 1/x).

    Built from F = (2 - V_n(M)) - t^2 (2 - V_m(M)) divided by the common
    chord factor 2 - M = |1 - x|^2.  Roots of S in [-2, 2] are 2 cos(sigma)
    for the unit roots e^{i sigma}.
    """
    m, n, t = params.m, params.n, params.t
    lucas = _lucas(max(m, n))
    qn = _chord_quotient(n, lucas)
    qm = _chord_quotient(m, lucas)
    size = max(len(qn), len(qm))
    coeffs = [0.0] * size
    for i, c in enumerate(qn):
        coeffs[i] += c
    for i, c in enumerate(qm):
        coeffs[i] -= t * t * c
    while len(coeffs) > 1 and coeffs[-1] == 0.0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class ThresholdEvent:
    """A t-value where the root count or a root's (k, l) case changes."""

    t: float
    kind: str  # "count" or "shape"
    count_below: int
    count_above: int
    cases_below: tuple = field(default=())
    cases_above: tuple = field(default=())

    @property
    def count_change(self) -> int:
        return self.count_above - self.count_below


def root_signature(m: int, n: int, t: float) -> tuple[int, tuple[tuple[int, int], ...]]:
    roots = find_unit_roots(FamilyParams(m, n, t))
    return len(roots), tuple(case_indices(m, n, r.sigma) for r in roots)


def threshold_scan(m: int, n: int, t_lo: float, t_hi: float, steps: int,
                   t_tol: float = 1e-10) -> list[ThresholdEvent]:
    """Sweep t over [t_lo, t_hi] and bracket every change of root count or case.

    Samples are geometrically spaced: t -> 1/t exchanges (m, n) with (n, m),
    so thresholds are spread evenly on a log scale rather than a linear one.

    Each event is bisected in t until its bracket is shorter than ``t_tol``.
    Raises :class:`ResolutionError` when the signature flips and flips back
    between neighbouring samples, which means the sweep is too coarse.
    """
    if not (0.0 < t_lo < t_hi) or not math.isfinite(t_hi):
        raise DomainError(f"need 0 < t_lo < t_hi, got ({t_lo}, {t_hi})")
    if steps < 2:
        raise DomainError("steps must be at least 2")
    FamilyParams(m, n, t_lo)

    ts = np.geomspace(t_lo, t_hi, steps).tolist()
    ts[0], ts[-1] = t_lo, t_hi
    sigs = [root_signature(m, n, t) for t in ts]

    for i in range(1, len(sigs) - 1):
        if sigs[i] != sigs[i - 1] and sigs[i] != sigs[i + 1] and sigs[i - 1] == sigs[i + 1]:
            raise ResolutionError(
                f"root count jitters around t={ts[i]:.6g}; increase steps above {steps}")

    events: list[ThresholdEvent] = []
    for i in range(len(ts) - 1):
        if sigs[i] != sigs[i + 1]:
            _resolve(m, n, ts[i], ts[i + 1], sigs[i], sigs[i + 1], t_tol, events)
    return events


def _resolve(m, n, lo, hi, below, above, t_tol, events, depth=0):
    """Bisect [lo, hi] down to t_tol, splitting whenever a third signature shows up."""
    while hi - lo > t_tol:
        mid = 0.5 * (lo + hi)
        sig = root_signature(m, n, mid)
        if sig == below:
            lo = mid
        elif sig == above:
            hi = mid
        else:
            if depth > 64:
                raise ResolutionError(f"cannot separate events near t={mid:.12g}")
            _resolve(m, n, lo, mid, below, sig, t_tol, events, depth + 1)
            _resolve(m, n, mid, hi, sig, above, t_tol, events, depth + 1)
            return
    kind = "count" if below[0] != above[0] else "shape"
    events.append(ThresholdEvent(0.5 * (lo + hi), kind, below[0], above[0],
                                 below[1], above[1]))
