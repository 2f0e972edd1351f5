"""Bloch-Wigner dilogarithm and its restriction to the unit circle.

Two independent evaluation paths are provided:

* :func:`bloch_wigner` works for any complex argument.  It folds ``z`` into
  ``{|z| <= 1, Re z <= 1/2}`` with ``D(1/z) = -D(z)`` and ``D(1-z) = -D(z)``,
  then sums either the power series of ``Li_2`` (``|z| <= 1/2``) or the
  Bernoulli series in ``u = -log(1-z)``.
* :func:`clausen_volume` evaluates ``D(e^{i theta}) = Cl_2(theta)`` from the
  Bernoulli expansion of the Clausen function around ``theta = 0``.

Both are accurate to a few units in 1e-15 absolute.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

PI = math.pi
TWO_PI = 2.0 * math.pi

_POWER_SERIES_RADIUS = 0.5
_N_BERNOULLI = 40


@lru_cache(maxsize=None)
def bernoulli_numbers(count: int) -> tuple[Fraction, ...]:
    """Return B_0 .. B_{count-1} (convention B_1 = -1/2) as exact fractions."""
    b = [Fraction(0)] * count
    for n in range(count):
        # Akiyama-Tanigawa recurrence gives B_1 = +1/2; flipped below.
        a = [Fraction(0)] * (n + 1)
        for j in range(n + 1):
            a[j] = Fraction(1, j + 1)
            for i in range(j, 0, -1):
                a[i - 1] = i * (a[i - 1] - a[i])
        b[n] = a[0]
    if count > 1:
        b[1] = -b[1]
    return tuple(b)


def _series_coefficients():
    bern = bernoulli_numbers(2 * _N_BERNOULLI + 2)
    # Li_2(z) = sum_{k>=0} B_k u^{k+1} / (k+1)!,  u = -log(1-z)
    li2 = [float(bern[2 * j] / math.factorial(2 * j + 1)) for j in range(1, _N_BERNOULLI)]
    # Cl_2(theta) = theta - theta log|theta| + sum |B_2k| theta^{2k+1} / (2k (2k+1)!)
    cl2 = [float(abs(bern[2 * k]) / (2 * k * math.factorial(2 * k + 1)))
           for k in range(1, _N_BERNOULLI)]
    return li2, cl2


_LI2_BERNOULLI, _CL2_COEFFS = _series_coefficients()


def normalize_angle(theta: float) -> float:
    """Reduce an angle to the canonical range (-pi, pi]."""
    if not math.isfinite(theta):
        raise DomainError(f"angle must be finite, got {theta!r}")
    r = math.remainder(theta, TWO_PI)
    if r <= -PI:
        r += TWO_PI
    return r


def _check_finite(z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"argument must be finite, got {z!r}")


def _im_li2_small(z: complex) -> float:
    """Im Li_2(z) from the defining power series, |z| <= 1/2."""
    total = 0.0
    power = z
    k = 1
    while True:
        term = power.imag / (k * k)
        total += term
        if abs(power) < 1e-18 * k * k:
            break
        k += 1
        power *= z
    return total


def _im_li2_bernoulli(z: complex) -> float:
    """Im Li_2(z) from the Bernoulli series; needs |log(1-z)| well below 2 pi."""
    u = -cmath.log(1.0 - z)
    u2 = u * u
    total = u - 0.25 * u2
    power = u * u2
    for c in _LI2_BERNOULLI:
        term = c * power
        total += term
        if abs(term) < 1e-18:
            break
        power *= u2
    return total.imag


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + log|z| arg(1-z).

    Continuous on the whole plane with D(0) = D(1) = 0 and exactly zero on
    the real axis.
    """
    z = complex(z)
    _check_finite(z)
    if z.imag == 0.0:
        return 0.0
    sign = 1.0
    if abs(z) > 1.0:
        z = 1.0 / z
        sign = -sign
    if z.real > 0.5:
        z = 1.0 - z
        sign = -sign
    if abs(z) <= _POWER_SERIES_RADIUS:
        im_li2 = _im_li2_small(z)
    else:
        im_li2 = _im_li2_bernoulli(z)
    modulus = abs(z)
    correction = math.log(modulus) * cmath.phase(1.0 - z) if modulus != 1.0 else 0.0
    return sign * (im_li2 + correction)


def clausen_volume(theta: float) -> float:
    """D(e^{i theta}) = Cl_2(theta) = sum sin(k theta) / k^2."""
    x = normalize_angle(theta)
    if x == 0.0 or x == PI:
        return 0.0
    sign = 1.0
    if x < 0.0:
        x, sign = -x, -1.0
    x2 = x * x
    total = x - x * math.log(x)
    power = x * x2
    for c in _CL2_COEFFS:
        term = c * power
        total += term
        if term < 1e-18:
            break
        power *= x2
    return sign * total


def orthoscheme_volume(central_angle: float) -> float:
    """Volume D(e^{i w})/2 of the ideal orthoscheme over a triangle with apex angle w.

    The angle must already be oriented into (0, pi].
    """
    if not math.isfinite(central_angle) or not (0.0 < central_angle <= PI):
        raise DomainError(f"central angle must lie in (0, pi], got {central_angle!r}")
    if central_angle == PI:
        return 0.0
    return 0.5 * clausen_volume(central_angle)
