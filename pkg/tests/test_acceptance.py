"""Acceptance criteria 1-9, one test each.

Every test records a single PASS/FAIL line; the lines are printed at the end
of the pytest run (see conftest.py) and when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from realpart.constants import (
    PRINTED_RATIOS,
    ConstantQuery,
    bounds_even,
    closed_form_lookup,
    consistency_report,
    dk_dalpha,
    k_alpha,
    k_alpha_increment,
    k_sharp,
    lambda_m,
    theorem1_value,
)
from realpart.qkernel import QSpec, q_closed, q_maximize, q_numeric, regime
from realpart.sharpness import (
    BoundaryDensity,
    TrigPolynomial,
    disk_constant,
    disk_verify,
    realpart_ratio,
    sharpness_ratio,
)

HALF_PI = math.pi / 2
RESULTS = {}


def _rel(a, b):
    return abs(a - b) / abs(b)


def _record(number, ok, detail):
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def _quadrature_k(n, p):
    return k_sharp(ConstantQuery(n, p), use_closed_form=False)


def test_criterion_1_headline_values():
    cases = [
        (1, "inf", 2 / math.pi),
        (3, "inf", 6 / math.pi),
        (5, "inf", 90 / math.pi),
        (2, "inf", 3 * math.sqrt(3) / (2 * math.pi)),
        (4, "inf", 3 * (16 + 5 * math.sqrt(5)) / (4 * math.pi)),
    ] + [(n, 2, math.sqrt(math.factorial(2 * n) / (2 ** (2 * n + 1) * math.pi))) for n in range(1, 7)]
    worst_err = worst_time = 0.0
    for n, p, expected in cases:
        t0 = time.perf_counter()
        r = _quadrature_k(n, p)
        worst_time = max(worst_time, time.perf_counter() - t0)
        assert r.method == "quadrature"
        worst_err = max(worst_err, _rel(r.value, expected))
    _record(1, worst_err <= 1e-8 and worst_time < 5.0,
            f"{len(cases)} values, worst rel err {worst_err:.2e} (<= 1e-8), slowest {worst_time:.2f} s (< 5 s)")


def test_criterion_2_ratio_table():
    t0 = time.perf_counter()
    misses, rows = [], []
    for m, (lo, up) in PRINTED_RATIOS.items():
        k = _quadrature_k(2 * m, "inf").value
        b = bounds_even(m)
        rl, ru = b.lower / k, b.upper / k
        rows.append(f"m={m}: {rl:.4f}/{ru:.4f}")
        if abs(rl - lo) > 5e-4:
            misses.append(f"L/K m={m} {rl:.5f} vs {lo}")
        if abs(ru - up) > 5e-4:
            misses.append(f"U/K m={m} {ru:.5f} vs {up}")
    elapsed = time.perf_counter() - t0
    detail = f"{'; '.join(rows)} in {elapsed:.1f} s"
    if misses:
        detail += " | off by more than 5e-4: " + ", ".join(misses)
    _record(2, not misses and elapsed < 60.0, detail)


def test_criterion_3_theorem_consistency():
    worst_exact = 0.0
    for n in range(1, 11):
        worst_exact = max(worst_exact, _rel(theorem1_value(n, n), closed_form_lookup(n, 2)[0]))
    for m in range(0, 5):
        n = 2 * m + 1
        worst_exact = max(worst_exact, _rel(theorem1_value(n, m), closed_form_lookup(n, "inf")[0]))
    worst_quad = 0.0
    for n, m in ((1, 2), (2, 3), (3, 4), (1, 4)):
        p = f"{2 * (m + 1)}/{2 * m + 1 - n}"
        worst_quad = max(worst_quad, _rel(theorem1_value(n, m), _quadrature_k(n, p).value))
    _record(3, worst_exact <= 1e-12 and worst_quad <= 1e-8,
            f"special cases rel err {worst_exact:.2e} (<= 1e-12), general vs quadrature {worst_quad:.2e} (<= 1e-8)")


def test_criterion_4_kernel_lemma():
    agree = flat = argmax = 0.0
    count = 0
    betas = np.linspace(0.0, math.pi, 16, endpoint=False)
    for m in range(7):
        for n in range(7):
            for gamma in (1.0, 1.5, 2.0, 3.0, 4.0):
                reg = regime(m, n, gamma)
                if reg == "outside":
                    continue
                count += 1
                agree = max(agree, abs(q_numeric(QSpec(m, n, gamma)) - q_closed(m, n, gamma)))
                if reg == "low":
                    vals = [q_numeric(QSpec(m, n, gamma, float(b))) for b in betas]
                    flat = max(flat, max(vals) - min(vals))
                else:
                    argmax = max(argmax, q_maximize(m, n, gamma)[0])
    _record(4, agree <= 1e-9 and flat <= 1e-9 and argmax <= 1e-6,
            f"{count} cases: agreement {agree:.2e}, flatness {flat:.2e}, argmax {argmax:.2e}")


def test_criterion_5_signs_and_derivative():
    phi = np.linspace(1e-6, HALF_PI - 1e-6, 1000)
    signs = bool(np.all(lambda_m(3, phi) < 0) and np.all(lambda_m(4, phi) > 0))
    h, worst = 1e-5, 0.0
    for m in (1, 2, 3, 4):
        for a in np.linspace(0.05, HALF_PI - 0.05, 20):
            fd = k_alpha_increment(2 * m, a - h, a + h) / (2 * h)
            worst = max(worst, _rel(fd, dk_dalpha(m, a)))
    a6 = _quadrature_k(6, "inf").alpha_star
    a8 = _quadrature_k(8, "inf").alpha_star
    pos = abs(a6) <= 1e-6 and abs(a8 - HALF_PI) <= 1e-6
    _record(5, signs and worst <= 1e-6 and pos,
            f"signs ok={signs}, derivative vs central difference {worst:.2e} (<= 1e-6), "
            f"alpha*(6)={a6:.3g}, alpha*(8)={a8:.10f}")


def test_criterion_6_bracket():
    ok, ratios = True, []
    for m in range(1, 9):
        b = bounds_even(m)
        k = _quadrature_k(2 * m, "inf").value
        r = k / b.lower
        ok &= b.lower < k < b.upper and 1 < r < 2 * m / (2 * m - 1)
        ratios.append(r)
    decreasing = all(x > y for x, y in zip(ratios, ratios[1:]))
    _record(6, ok and decreasing,
            f"L < K < U for m=1..8, K/L from {ratios[0]:.4f} down to {ratios[-1]:.4f} (monotone={decreasing})")


def test_criterion_7_sharpness():
    t0 = time.perf_counter()
    targets = [(1, "inf", 2 / math.pi), (2, "inf", 3 * math.sqrt(3) / (2 * math.pi)),
               (1, 2, 1 / (2 * math.sqrt(math.pi)))]
    fractions = []
    for n, p, target in targets:
        assert k_alpha(n, p, 0.0) == pytest.approx(target, rel=1e-12)
        r = sharpness_ratio(n, p, 0.0, T=1e4, N=2**20)
        fractions.append(r / target)
    elapsed = time.perf_counter() - t0
    rng = np.random.default_rng(2024)
    cases = [(1, "inf"), (2, "inf"), (1, 2), (2, 2), (3, "inf")]
    consts = {c: k_sharp(ConstantQuery(*c)).value for c in cases}
    worst = 0.0
    for i in range(200):
        n, p = cases[i % len(cases)]
        u = BoundaryDensity.uniform(100.0, np.repeat(rng.uniform(-1, 1, 50), 40), p)
        z = complex(rng.uniform(-20, 20), rng.uniform(0.5, 5.0))
        worst = max(worst, realpart_ratio(u, n, z) / consts[(n, p)])
    ok = all(0.99 <= f <= 1 + 1e-6 for f in fractions) and elapsed < 120 and worst <= 1 + 1e-6
    _record(7, ok, "extremal ratio/target " + ", ".join(f"{f:.6f}" for f in fractions)
            + f" in {elapsed:.1f} s; fuzz worst ratio/K {worst:.4f} over 200 densities")


def test_criterion_8_disk():
    c1 = _rel(disk_constant(1, "inf"), 4 / math.pi)
    c2 = max(_rel(disk_constant(n, 2), math.sqrt(math.factorial(2 * n) / math.pi)) for n in range(9))
    checks = [disk_verify(TrigPolynomial((0, 1)), 1, "inf", 0),
              disk_verify(TrigPolynomial((1,)), 1, 2, 0.5),
              disk_verify(TrigPolynomial((0, 0, 1)), 2, "inf", 0)]
    lhs_ok = (abs(checks[0]["lhs"] - 1) < 1e-12 and abs(checks[1]["lhs"]) < 1e-12
              and abs(checks[2]["lhs"] - 2) < 1e-12)
    ok = c1 <= 1e-10 and c2 <= 1e-10 and all(c["ok"] for c in checks) and lhs_ok
    _record(8, ok, f"C_1,inf rel err {c1:.1e}, C_n,2 identity {c2:.1e}, three disk checks ok={ok}")


def test_criterion_9_consistency_report():
    rows = consistency_report()
    ok = len(rows) == 2 and all(
        all(math.isfinite(r[k]) for k in ("printed_formula", "quadrature", "ratio_table_from_lower"))
        for r in rows)
    parts = [f"{r['case']}: printed {r['printed_formula']:.2f}, quadrature {r['quadrature']:.2f}, "
             f"table {r['ratio_table_from_lower']:.2f}" for r in rows]
    _record(9, ok, "; ".join(parts))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
