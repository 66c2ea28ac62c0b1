"""Acceptance criteria, one test per criterion.

Run ``pytest -v tests/test_acceptance.py`` for one pass/fail line per
criterion, or add ``-s`` to see the explicit ACCEPTANCE lines."""

import math
import random
import time
from fractions import Fraction

import pytest

from skewtent import (
    TentParams,
    ThetaSignField,
    ThetaSpec,
    compose_branch_condition,
    counterexample_scan,
    diagonal_critical_points,
    diagonal_stationary_beta,
    kneading_prefix,
    m1_first_return,
    orbit,
    parse_seq,
    raster,
    slope_at_diagonal,
    theta_eval,
    theta_grad,
    theta_hessian,
    theta_partial_sum,
    thex_spec,
)
from skewtent.algebraic import BivarPoly
from skewtent.curves import THEX_ALPHA0

A0 = THEX_ALPHA0
GOLD_RLLRC_BETA0 = 0.7236067977499790
GOLD_RLLRC_SLOPE = -0.8090169943749474


def _report(num, text):
    print(f"ACCEPTANCE {num:02d} PASS: {text}")


def _sample_u(rng, margin=0.002):
    b = rng.uniform(0.5 + 2 * margin, 1.0 - margin)
    a = rng.uniform(1 - b + margin, b - margin)
    return a, b


def test_criterion_01_thex_constants():
    spec = thex_spec()
    t0 = time.perf_counter()
    v1 = theta_eval(spec, A0, 0.535).value
    v2 = theta_eval(spec, A0, 0.7).value
    v3 = theta_eval(spec, A0, 0.995).value
    elapsed = time.perf_counter() - t0
    assert v1 == pytest.approx(-0.0505893, abs=1e-4)
    assert v2 == pytest.approx(0.2194096, abs=1e-4)
    assert v3 == pytest.approx(-0.00207430, abs=1e-4)
    assert elapsed < 1.0
    _report(1, f"thex constants {v1:.7f}, {v2:.7f}, {v3:.8f} in {elapsed:.3f}s")


def test_criterion_02_counterexample_structure():
    t0 = time.perf_counter()
    roots = counterexample_scan(thex_spec(), A0, 0.535, 0.995)
    elapsed = time.perf_counter() - t0
    assert len(roots) >= 2
    assert any(r.relation == "less" for r in roots)
    assert all(r.relation != "greater" for r in roots)
    assert elapsed < 5.0
    _report(2, f"{len(roots)} roots, labels {[r.relation for r in roots]} in {elapsed:.3f}s")


def test_criterion_03_thex_intermediate_quantities():
    b0 = 0.535
    x = (A0 - 1) / b0
    y = A0 / b0
    first = x * y ** 6
    pair = x ** 2 * y ** 11 * ((A0 + b0 - 1) / b0)
    ratio = (A0 + b0 - 1) / b0
    tail = y ** 121 * x ** 48 * b0 / (1 + b0 - A0)
    assert first == pytest.approx(-0.5483592, abs=1e-6)
    assert pair == pytest.approx(0.0138784, abs=1e-6)
    assert ratio == pytest.approx(0.0420561, abs=1e-6)
    assert tail == pytest.approx(8.445889e-07, abs=1e-12)
    _report(3, f"first={first:.7f} pair={pair:.7f} ratio={ratio:.7f} tail={tail:.6e}")


def test_criterion_04_rlc_orthogonality():
    p = compose_branch_condition("RLC")
    assert p == BivarPoly({(3, 0): 1, (2, 0): -1, (0, 3): -1, (0, 2): 1})
    roots = diagonal_critical_points(p)
    assert roots == [Fraction(2, 3)]
    (one, other), _ = slope_at_diagonal(p, roots[0])
    assert abs(one - 1) <= 1e-12 and abs(other + 1) <= 1e-12
    _report(4, "RLC polynomial exact, beta0 = 2/3 exact, slopes {1, -1}")


def test_criterion_05_rllrc_non_orthogonality():
    p = compose_branch_condition("RLLRC")
    assert p == BivarPoly({(5, 0): 1, (4, 0): -2, (3, 1): 1, (3, 0): 1,
                           (2, 1): -1, (0, 5): -1, (0, 4): 1})
    roots = diagonal_critical_points(p)
    assert len(roots) == 1
    b0 = roots[0]
    assert b0 == pytest.approx(GOLD_RLLRC_BETA0, abs=1e-10)
    (_, slope), _ = slope_at_diagonal(p, b0)
    assert slope == pytest.approx(GOLD_RLLRC_SLOPE, abs=1e-10)
    _report(5, f"RLLRC beta0 = {b0:.16f}, slope = {slope:.16f}")


def test_criterion_06_diagonal_identity():
    t0 = time.perf_counter()
    specs = {
        "RLC": ThetaSpec.from_seq(parse_seq("RLC")),
        "RLLRC": ThetaSpec.from_seq(parse_seq("RLLRC")),
        "RLRC": ThetaSpec.from_seq(parse_seq("RLRC")),
        "thex": thex_spec(),
    }
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(100):
        b = rng.uniform(0.505, 0.999)
        for spec in specs.values():
            worst = max(worst, abs(theta_eval(spec, b, b).value))
    assert worst <= 1e-12
    # gradient at the diagonal meet point of each curve that has one;
    # RLRC is a doubling-cascade word whose curve never enters U, its only
    # diagonal critical root is the excluded corner 1/2
    grad_worst = 0.0
    for name, b0 in [("RLC", 2 / 3), ("RLLRC", 0.5 + math.sqrt(5) / 10),
                     ("thex", diagonal_stationary_beta(specs["thex"]))]:
        da, db = theta_grad(specs[name], b0, b0)
        grad_worst = max(grad_worst, abs(da), abs(db))
    assert grad_worst <= 1e-9
    with pytest.raises(ValueError, match="no diagonal critical points"):
        diagonal_critical_points(compose_branch_condition("RLRC"))
    elapsed = time.perf_counter() - t0
    assert elapsed < 2.0
    _report(6, f"diag |Theta| <= {worst:.2e}, |grad| <= {grad_worst:.2e} "
               f"(RLRC has no meet point in (1/2,1)) in {elapsed:.3f}s")


def test_criterion_07_vanishing_and_recursion():
    rng = random.Random(777)
    worst_ratio = 0.0
    checked = 0
    while checked < 200:
        a, b = _sample_u(rng)
        ks = kneading_prefix(TentParams(a, b), 48)
        if "C" in ks or ks.count("R") < 2:
            continue  # critical hit, or no complete gap within the depth
        spec = ThetaSpec.from_kneading_prefix(ks)
        h = len(spec.gaps.head)
        tv = theta_eval(spec, a, b)
        _, ph = theta_partial_sum(spec, a, b, h)
        bound = max(1e-8, 1.0 / abs(ph))
        assert abs(tv.value) <= bound
        worst_ratio = max(worst_ratio, abs(tv.value) / bound)
        checked += 1

    # orbit recursion: the identity is polynomial, so it is checked in exact
    # rational arithmetic at dyadic sample points (double precision loses it
    # once |P_k| approaches 1e8 near the upper corner); the double precision
    # spot check lives in test_theta.test_orbit_recursion_float
    rng = random.Random(778)
    exact_checked = 0
    while exact_checked < 200:
        b = Fraction(rng.randrange(2049, 4090), 4096)
        lo = 1 - b
        a = lo + (b - lo) * Fraction(rng.randrange(1, 4095), 4096)
        p = TentParams(a, b)
        ks = kneading_prefix(p, 48)
        if "C" in ks or ks.count("R") < 2:
            continue
        spec = ThetaSpec.from_kneading_prefix(ks)
        xs = orbit(p, b, 48)
        h = len(spec.gaps.head)
        for k in range(0, 7):
            if k + 1 > h:
                break  # stage k+1 needs a genuinely observed gap
            n = k + 1 + spec.cum(k + 1)
            if n > 47:
                break  # orbit symbol at n not verified by the prefix
            part, pk = theta_partial_sum(spec, a, b, k)
            assert abs(pk * part - xs[n]) <= 1e-8  # exactly zero
        exact_checked += 1
    _report(7, f"200 points: |Theta| within slope-product bound "
               f"(worst ratio {worst_ratio:.3f}); recursion exact at 200 points")


def test_criterion_08_derivative_formulas():
    specs = [ThetaSpec.from_seq(parse_seq("RLC")), ThetaSpec.from_seq(parse_seq("RLLRC")),
             ThetaSpec.from_seq(parse_seq("RLRC")), thex_spec()]
    rng = random.Random(31337)
    h = 1e-5
    count = 0
    while count < 50:
        b = rng.uniform(0.56, 0.97)
        a = rng.uniform(1 - b + 0.06, b - 0.01)
        spec = specs[count % len(specs)]
        f = lambda x, y: theta_eval(spec, x, y).value
        da, db = theta_grad(spec, a, b)
        fa = (f(a + h, b) - f(a - h, b)) / (2 * h)
        fb = (f(a, b + h) - f(a, b - h)) / (2 * h)
        assert da == pytest.approx(fa, rel=1e-5, abs=1e-8)
        assert db == pytest.approx(fb, rel=1e-5, abs=1e-8)
        q = theta_hessian(spec, a, b)
        faa = (f(a + h, b) - 2 * f(a, b) + f(a - h, b)) / h ** 2
        fbb = (f(a, b + h) - 2 * f(a, b) + f(a, b - h)) / h ** 2
        fab = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4 * h ** 2)
        assert q.a == pytest.approx(faa, rel=1e-5, abs=1e-6)
        assert q.b == pytest.approx(fab, rel=1e-5, abs=1e-6)
        assert q.c == pytest.approx(fbb, rel=1e-5, abs=1e-6)
        count += 1
    _report(8, "gradient and Hessian match central differences at 50 interior points")


def test_criterion_09_first_return_bounds():
    rng = random.Random(99)
    for _ in range(100):
        a, b = _sample_u(rng)
        q = (math.log(1 - a) - math.log(1 - b)) / (math.log(b) - math.log(a))
        m1 = m1_first_return(a, b)
        assert q - 1 - 1e-9 <= m1 <= q + 1e-9
    for _ in range(20):
        b0 = rng.uniform(0.55, 0.95)
        a = b0 - 1e-7 * (1 - b0)
        m1 = m1_first_return(a, b0)
        c = b0 / (1 - b0)
        assert c - 2 < m1 < c + 1
    _report(9, "first-return value inside log-ratio and near-diagonal brackets")


def test_criterion_10_almost_orthogonality_trend():
    rows = []
    for k in range(2, 25):
        p = compose_branch_condition("R" + "L" * k + "RC")
        roots = diagonal_critical_points(p)
        assert len(roots) == 1
        b0 = float(roots[0])
        (_, slope), _ = slope_at_diagonal(p, roots[0])
        rows.append((b0, float(slope)))
    betas = [b for b, _ in rows]
    deviations = [abs(s + 1) for _, s in rows]
    assert betas == sorted(betas)
    assert deviations == sorted(deviations, reverse=True)
    for b0, s in rows:
        if b0 > 0.95:
            assert abs(s + 1) < 0.1
    _report(10, f"|slope + 1| falls from {deviations[0]:.3f} to {deviations[-1]:.4f} "
                f"as beta0 rises to {betas[-1]:.3f}")


def test_criterion_11_hessian_polynomial_cross_check():
    for word in ["RLC", "RLLRC"]:
        p = compose_branch_condition(word)
        b0 = float(diagonal_critical_points(p)[0])
        (_, poly_slope), _ = slope_at_diagonal(p, b0)
        q = theta_hessian(ThetaSpec.from_seq(parse_seq(word)), b0, b0)
        series_slope = q.a / q.c
        assert series_slope == pytest.approx(float(poly_slope), abs=1e-6)
    _report(11, "series saddle direction matches polynomial slope for RLC and RLLRC")


def test_criterion_12_raster_determinism(tmp_path):
    from skewtent.cli import main as cli_main

    flags = ["raster", "--field", "theta_sign", "--preset", "thex",
             "--window", "0.05,0.95,0.505,0.995", "--size", "128x128"]
    assert cli_main(flags + ["--out", str(tmp_path / "one")]) == 0
    assert cli_main(flags + ["--out", str(tmp_path / "two")]) == 0
    first = (tmp_path / "one.pgm").read_bytes()
    assert first == (tmp_path / "two.pgm").read_bytes()

    g = raster(ThetaSignField(thex_spec()), (0.05, 0.95, 0.505, 0.995), 128, 128)
    signs = {v for v in g.values if not math.isnan(v)}
    assert 1.0 in signs and -1.0 in signs
    _report(12, "two CLI raster runs bit-identical at 128x128, both signs present")
