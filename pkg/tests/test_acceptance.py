"""Acceptance criteria, one test each, printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.
"""

import cmath
import math
import time

import mpmath
import numpy as np
import pytest

from grid import FAMILIES, family_t_values, grid
from mahlervol.apoly import (build_system, canonical_alpha_beta, check_neumann_zagier,
                             identity_solutions, tilde_measure_check)
from mahlervol.dilog import bloch_wigner, clausen_volume
from mahlervol.mahler import cassaigne_maillot, closed_form_measure, quadrature_measure
from mahlervol.polygons import (alpha_to_polygon, enumerate_polygons, polygon_to_alpha,
                                verify_main_theorem)
from mahlervol.spectrum import FamilyParams, find_unit_roots, threshold_scan

PI = math.pi
SQ = math.sqrt
SMYTH = 0.3230659472


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def smyth_reference():
    l_value = (mpmath.zeta(2, mpmath.mpf(1) / 3) - mpmath.zeta(2, mpmath.mpf(2) / 3)) / 9
    return float(3 * mpmath.sqrt(3) / (4 * mpmath.pi) * l_value)


def test_criterion_01_smyth_anchor(report):
    start = time.perf_counter()
    p = FamilyParams(1, 2, 1.0)
    quad = quadrature_measure(p, 1e-10)
    closed = closed_form_measure(p).total
    elapsed = time.perf_counter() - start
    ok = (abs(quad - SMYTH) < 1e-10 and abs(closed - SMYTH) < 1e-10
          and abs(quad - closed) <= 1e-9 and abs(closed - smyth_reference()) <= 1e-12
          and elapsed < 1.0)
    report(1, "Smyth anchor", ok,
           f"quad={quad:.15f} closed={closed:.15f} |diff|={abs(quad - closed):.1e} t={elapsed:.2f}s")


def test_criterion_02_log_branch(report):
    start = time.perf_counter()
    ok = True
    for t in (4.5, 5.0, 10.0):
        p = FamilyParams(1, 4, t)
        r = closed_form_measure(p)
        ok &= r.total == math.log(t) and r.dilog_term == 0.0 and r.arg_term == 0.0
        ok &= enumerate_polygons(p) == []
    elapsed = time.perf_counter() - start
    report(2, "log t branch for (1,4), t in {4.5, 5, 10}", ok and elapsed < 1.0, f"t={elapsed:.2f}s")


def test_criterion_03_three_way_grid(report):
    start = time.perf_counter()
    worst_measure = worst_theorem = 0.0
    worst_at = None
    cases = near = 0
    for m, n, t in grid():
        p = FamilyParams(m, n, t)
        roots = find_unit_roots(p)
        closed = closed_form_measure(p, roots)
        quad = quadrature_measure(p, 1e-10, roots)
        diff = abs(closed.total - quad)
        limit = 1e-6 if closed.near_threshold else 1e-8
        near += closed.near_threshold
        if diff / limit > worst_measure / 1e-8:
            worst_at = (m, n, t)
        worst_measure = max(worst_measure, diff * 1e-8 / limit)
        worst_theorem = max(worst_theorem, verify_main_theorem(p))
        cases += 1
    elapsed = time.perf_counter() - start
    ok = worst_measure <= 1e-8 and worst_theorem <= 1e-10 and elapsed < 120
    assert all(len(family_t_values(m, n)) >= 10 for m, n in FAMILIES)
    report(3, "three-way agreement grid", ok,
           f"{len(FAMILIES)} families, {cases} cases ({near} near threshold), "
           f"max|closed-quad|={worst_measure:.1e} at {worst_at}, "
           f"max theorem residual={worst_theorem:.1e}, t={elapsed:.1f}s")


def test_criterion_04_two_three_family(report):
    start = time.perf_counter()
    worst = 0.0
    for t in (0.2, 0.5, 0.9, 1.0, 1.3, 1.49, 1.6, 3.0):
        disc = t * SQ(t * t + 4)
        expected = sorted(math.acos(M / 2) for M in ((t * t - 2 + disc) / 2, (t * t - 2 - disc) / 2)
                          if -2 < M < 2)
        got = [r.sigma for r in find_unit_roots(FamilyParams(2, 3, t))]
        if len(got) != len(expected):
            worst = math.inf
            break
        worst = max([worst] + [abs(a - b) for a, b in zip(got, expected)])

    def rows(t):
        return {(P.k, P.l, P.relation_text()) for P, _ in enumerate_polygons(FamilyParams(2, 3, t))}

    case_rows = (rows(0.5) >= {(1, 1, "3η - 2τ = 2π")} and rows(0.9) >= {(0, 1, "3η + 2τ = 4π")}
             and rows(1.3) >= {(0, 0, "3η - 2τ = 0")})
    alpha2 = all((len(find_unit_roots(FamilyParams(2, 3, t))) == 2) == (t < 1.5)
                 for t in (0.1, 0.7, 1.2, 1.499, 1.501, 1.8, 4.0))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and case_rows and alpha2 and elapsed < 1.0
    report(4, "(2,3) fixtures", ok,
           f"root error={worst:.1e} case rows={case_rows} alpha2 iff t<3/2={alpha2} t={elapsed:.2f}s")


def test_criterion_05_one_four_family(report):
    start = time.perf_counter()
    t1 = SQ(32 / 27)
    counts_ok = all(len(find_unit_roots(FamilyParams(1, 4, t))) == c
                    for t, c in [(0.1, 3), (0.6, 3), (1.0, 3), (1.08, 3), (1.1, 1), (2.0, 1),
                                 (3.9, 1), (4.1, 0), (8.0, 0)])
    events = threshold_scan(1, 4, 0.1, 5.0, 400)
    count_ts = [e.t for e in events if e.kind == "count"]
    shape_ts = [e.t for e in events if e.kind == "shape"]
    targets = [SQ(4 - 2 * SQ(2)), SQ(4 + 2 * SQ(2))]
    bracket_ok = (len(count_ts) == 2 and abs(count_ts[0] - t1) <= 1e-8 and abs(count_ts[1] - 4) <= 1e-8
                  and len(shape_ts) == 2
                  and all(abs(a - b) <= 1e-8 for a, b in zip(shape_ts, targets)))

    # the shape events are tau = pi crossings
    def min_gap(t):
        return min(abs(P.tau - PI) for P, _ in enumerate_polygons(FamilyParams(1, 4, t)))

    diameter_ok = all(min_gap(s - 1e-9) < 1e-3 and min_gap(s + 1e-9) < 1e-3 for s in shape_ts)

    def relations(t):
        return {P.relation_text() for P, _ in enumerate_polygons(FamilyParams(1, 4, t))}

    stars = [P for P, _ in enumerate_polygons(FamilyParams(1, 4, 1.085))
             if P.relation_text() == "4η - τ = 2π"]
    relations_ok = ("4η + τ = 2π" in relations(0.5) and "4η + τ = 4π" in relations(0.5)
                    and len(stars) == 2)
    elapsed = time.perf_counter() - start
    ok = counts_ok and bracket_ok and diameter_ok and relations_ok and elapsed < 5.0
    report(5, "(1,4) fixtures", ok,
           f"counts={counts_ok} thresholds={[round(x, 10) for x in count_ts]} "
           f"shape={[round(x, 10) for x in shape_ts]} tau=pi={diameter_ok} relations={relations_ok} "
           f"t={elapsed:.2f}s")


def test_criterion_06_m_one_at_t_one(report):
    start = time.perf_counter()
    worst = 0.0
    equal_angles = True
    for n in range(2, 9):
        expected = {2 * j * PI / (n + 1) for j in range(1, n + 1)}
        expected |= {2 * j * PI / (n - 1) for j in range(1, n)}
        expected = sorted(s for s in expected if 0 < s < PI - 1e-12)
        p = FamilyParams(1, n, 1.0)
        got = [r.sigma for r in find_unit_roots(p)]
        if len(got) != len(expected):
            worst = math.inf
            break
        worst = max([worst] + [abs(a - b) for a, b in zip(got, expected)])
        equal_angles &= all(abs(P.eta - P.tau) <= 1e-12 for P, _ in enumerate_polygons(p))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and equal_angles and elapsed < 1.0
    report(6, "m=1, t=1 roots and eta = tau", ok,
           f"max root error={worst:.1e} eta=tau={equal_angles} t={elapsed:.2f}s")


def test_criterion_07_round_trip(report):
    worst = 0.0
    count = 0
    for m, n, t in grid():
        p = FamilyParams(m, n, t)
        for root in find_unit_roots(p):
            P = alpha_to_polygon(p, root)
            worst = max(worst, abs(polygon_to_alpha(P).sigma - root.sigma))
            count += 1
    report(7, "polygon round trip", worst <= 1e-12, f"{count} polygons, max residual={worst:.1e}")


def test_criterion_08_neumann_zagier(report):
    start = time.perf_counter()
    pairs = [(m, n) for m in range(1, 20) for n in range(1, 20)
             if m != n and m + n <= 20 and math.gcd(m, n) == 1]
    passes = mutants_fail = True
    for m, n in pairs:
        a, b = canonical_alpha_beta(m, n)
        for j in range(3):
            passes &= check_neumann_zagier(build_system(m, n, a + j * m, b + j * n))
        mutants_fail &= not check_neumann_zagier(build_system(m, n, a, b + 1))
    elapsed = time.perf_counter() - start
    ok = passes and mutants_fail and elapsed < 1.0
    report(8, "Neumann-Zagier identity", ok,
           f"{len(pairs)} pairs x 3 representatives={passes} mutants rejected={mutants_fail} "
           f"t={elapsed:.2f}s")


def test_criterion_09_identity_solutions(report):
    start = time.perf_counter()
    ok = True
    for m, n in ((2, 3), (1, 4)):
        us = [s.u for s in identity_solutions(m, n)]
        expected = [cmath.exp(2j * PI * j / (m + n)) for j in range(m + n)]
        expected += [cmath.exp(2j * PI * j / abs(n - m)) for j in range(abs(n - m))]
        ok &= all(any(abs(u - e) < 1e-9 for e in expected) for u in us)
        ok &= all(any(abs(u - e) < 1e-9 for u in us) for e in expected)
        args = [cmath.phase(u) for u in us]
        ok &= all(min(abs(r.sigma - a) for a in args) < 1e-12
                  for r in find_unit_roots(FamilyParams(m, n, 1.0)))
    elapsed = time.perf_counter() - start
    report(9, "identity solutions", ok and elapsed < 1.0, f"t={elapsed:.2f}s")


def test_criterion_10_tilde_relation(report):
    start = time.perf_counter()
    residuals = {mn: tilde_measure_check(*mn) for mn in ((1, 2), (2, 3), (1, 4))}
    elapsed = time.perf_counter() - start
    ok = all(r <= 1e-6 for r in residuals.values()) and elapsed < 30
    report(10, "mn m(R_1) = m(R~)", ok,
           " ".join(f"{k}:{v:.1e}" for k, v in residuals.items()) + f" t={elapsed:.2f}s")


def test_criterion_11_dilogarithm(report):
    rng = np.random.default_rng(2024)
    zs = 3.0 * np.sqrt(rng.random(1000)) * np.exp(1j * rng.uniform(-PI, PI, 1000))
    antisym = max(abs(bloch_wigner(complex(z).conjugate()) + bloch_wigner(complex(z))) for z in zs)
    reals = all(bloch_wigner(x) == 0.0 for x in rng.uniform(-50, 50, 1000))
    thetas = rng.uniform(-10, 10, 1000)
    series = max(abs(clausen_volume(t) - bloch_wigner(cmath.exp(1j * t))) for t in thetas)
    continuity = True
    for centre in (0.0, 1.0):
        for k in range(8):
            d = cmath.exp(1j * (PI / 8 + k * PI / 4))
            values = [abs(bloch_wigner(centre + r * d)) for r in np.logspace(-9, -10, 12)]
            continuity &= values[-1] < 1e-8 and all(b <= a for a, b in zip(values, values[1:]))
    cm = cassaigne_maillot(1, 1, 1)
    cm_ok = abs(cm - quadrature_measure(FamilyParams(1, 2, 1.0), 1e-10)) <= 1e-9
    log3 = cassaigne_maillot(3, 1, 1) == math.log(3)
    ok = antisym <= 1e-13 and reals and series <= 1e-13 and continuity and cm_ok and log3
    report(11, "dilogarithm suite", ok,
           f"antisymmetry={antisym:.1e} reals={reals} series={series:.1e} continuity={continuity} "
           f"CM(1,1,1)={cm:.13f} CM(3,1,1)=log3:{log3}")
