"""Admissible polygons of type (m, n) and the volumes of the polyhedra over them.

An admissible polygon is inscribed in a circle and has n sides of length 1
(central angle eta) and m sides of length t (central angle tau).  The unit
sides all turn the same way; the t sides turn the same way or the opposite
way, and

    n eta + m tau = 2 pi h   (same direction)
    n eta - m tau = +-2 pi h (opposite directions).

Each unit root e^{i sigma} of Q gives exactly one such polygon and the ideal
polyhedron over it has volume

    Vol = (n D(e^{i eta}) +- m D(e^{i tau})) / 2,

with the t-side tetrahedra counted negatively when the directions differ.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .dilog import orthoscheme_volume
from .errors import CertificationError, MalformedPolygonError
from .mahler import closed_form_measure
from .spectrum import (FamilyParams, RootList, UnitRoot, boundary_value, case_indices,
                       find_unit_roots)

PI = math.pi
TWO_PI = 2.0 * math.pi

SINE_RULE_TOL = 1e-10


@dataclass(frozen=True)
class AdmissiblePolygon:
    params: FamilyParams
    eta: float
    tau: float
    winding_h: int
    same_direction: bool
    radius: float
    source_sigma: float
    k: int
    l: int
    source_index: int = 0

    @property
    def direction(self) -> int:
        """+1 when both families turn the same way, -1 otherwise."""
        return 1 if self.same_direction else -1

    @property
    def signed_winding(self) -> int:
        """(n eta +- m tau) / 2 pi with its sign; ``winding_h`` is its modulus."""
        p = self.params
        return round((p.n * self.eta + self.direction * p.m * self.tau) / TWO_PI)

    @property
    def vertices(self) -> list[complex]:
        return polygon_vertices(self)

    def relation_text(self) -> str:
        """Winding relation as text, e.g. ``3η + 2τ = 4π``."""
        p = self.params
        h = self.signed_winding
        op = "+" if self.same_direction else "-"
        lhs_n = "η" if p.n == 1 else f"{p.n}η"
        lhs_m = "τ" if p.m == 1 else f"{p.m}τ"
        if h == 0:
            rhs = "0"
        elif h == 1:
            rhs = "2π"
        elif h == -1:
            rhs = "-2π"
        else:
            rhs = f"{2 * h}π"
        return f"{lhs_n} {op} {lhs_m} = {rhs}"


def _folded_angle(multiple: int, sigma: float, index: int) -> float:
    """Reduce multiple*sigma into (0, pi] following the parity of its case index."""
    if index % 2 == 0:
        return multiple * sigma - index * PI
    return (index + 1) * PI - multiple * sigma


def alpha_to_polygon(params: FamilyParams, root: UnitRoot) -> AdmissiblePolygon:
    """The admissible polygon attached to a unit root.

    eta = +-m sigma and tau = +-n sigma (mod 2 pi), folded into (0, pi] by
    the parity of the case indices k, l.  The sine rule
    1 / sin(eta/2) = t / sin(tau/2) is checked and its failure raises
    :class:`CertificationError`.
    """
    m, n, t = params.m, params.n, params.t
    sigma = root.sigma
    k, l = case_indices(m, n, sigma)
    eta = _folded_angle(m, sigma, k)
    tau = _folded_angle(n, sigma, l)
    if not (0.0 < eta <= PI and 0.0 < tau <= PI):
        raise CertificationError(f"angles eta={eta!r}, tau={tau!r} outside (0, pi]")

    radius = 1.0 / (2.0 * math.sin(0.5 * eta))
    radius_t = t / (2.0 * math.sin(0.5 * tau))
    if abs(radius - radius_t) > SINE_RULE_TOL * radius:
        raise CertificationError(
            f"sine rule fails at sigma={sigma!r}: radii {radius!r} vs {radius_t!r}")

    same_direction = (k + l) % 2 == 1
    direction = 1 if same_direction else -1
    winding = (n * eta + direction * m * tau) / TWO_PI
    h = round(winding)
    if abs(winding - h) > 1e-9:
        raise CertificationError(f"winding relation not integral: {winding!r}")
    return AdmissiblePolygon(params, eta, tau, abs(h), same_direction, radius,
                             sigma, k, l, root.index)


def polygon_vertices(P: AdmissiblePolygon) -> list[complex]:
    """The m + n vertices: n unit steps of eta, then m steps of +-tau."""
    m, n = P.params.m, P.params.n
    angles = [j * P.eta for j in range(n + 1)]
    angles += [n * P.eta + P.direction * j * P.tau for j in range(1, m)]
    return [P.radius * cmath.exp(1j * a) for a in angles]


def closure_gap(P: AdmissiblePolygon) -> float:
    """Distance between the start vertex and the point reached after all m + n sides."""
    m, n = P.params.m, P.params.n
    final = n * P.eta + P.direction * m * P.tau
    return abs(P.radius * cmath.exp(1j * final) - P.radius)


def polygon_volume(P: AdmissiblePolygon) -> float:
    """Signed hyperbolic volume of the ideal polyhedron over P."""
    m, n = P.params.m, P.params.n
    return n * orthoscheme_volume(P.eta) + P.direction * m * orthoscheme_volume(P.tau)


def polygon_to_alpha(P: AdmissiblePolygon) -> UnitRoot:
    """Recover the unit root that produces P.

    Works from the smaller of the two angles.  For eta <= tau, s is the
    integer with s n = h (mod m) and 0 < eta - 2 pi s < 2 pi m, and
    sigma = (eta - 2 pi s)/m or ((s + m) 2 pi - eta)/m.  For tau < eta the
    roles of (eta, m) and (tau, n) are exchanged.
    """
    m, n = P.params.m, P.params.n
    h = P.signed_winding
    if P.eta <= P.tau:
        sigma = _invert(P.eta, m, n, h)
    else:
        sigma = _invert(P.tau, n, m, h if P.same_direction else -h)
    if not (0.0 < sigma < PI):
        raise MalformedPolygonError(f"recovered sigma={sigma!r} outside (0, pi)")
    scale = 4.0 * (1.0 + P.params.t ** 2)
    if abs(boundary_value(P.params, sigma)) > 1e-9 * scale:
        raise MalformedPolygonError(f"e^(i {sigma!r}) is not a root of Q")
    return UnitRoot(sigma, P.source_index)


def _invert(angle: float, own: int, other: int, h: int) -> float:
    """Solve for sigma given an angle subtended by ``other`` sides of its own kind.

    ``own`` is the multiplier of sigma in this angle (m for eta, n for tau).
    """
    for s in range(-own + 1, 1):
        if (s * other - h) % own == 0 and 0.0 < angle - TWO_PI * s < TWO_PI * own:
            break
    else:
        raise MalformedPolygonError(
            f"no integer s with s*{other} = {h} (mod {own}) in range for angle {angle!r}")
    shifted = angle - TWO_PI * s
    if shifted < own * PI:
        return shifted / own
    return ((s + own) * TWO_PI - angle) / own


def enumerate_polygons(params: FamilyParams, roots: RootList | None = None):
    """All admissible polygons with their signs, as a list of (polygon, eps_k).

    eps_k = role * (-1)^k where role is +1 if the root closes an arc of
    |y| > t and -1 if it opens one; no sign is guessed.
    """
    report = closed_form_measure(params, roots)
    roles = report.arcs.root_roles()
    out = []
    for root in report.roots:
        P = alpha_to_polygon(params, root)
        sign = roles[root.index] * (1 if P.k % 2 == 0 else -1)
        out.append((P, sign))
    return out


def verify_main_theorem(params: FamilyParams) -> float:
    """|pi * dilog_term - (2/mn) sum eps_k Vol(P_k)| for one parameter set."""
    roots = find_unit_roots(params)
    report = closed_form_measure(params, roots)
    polys = enumerate_polygons(params, roots)
    volumes = math.fsum(eps * polygon_volume(P) for P, eps in polys)
    return abs(PI * report.dilog_term - 2.0 * volumes / (params.m * params.n))
