import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from realpart.qkernel import (
    QSpec,
    RegimeError,
    g_raw,
    g_reduced,
    q_closed,
    q_integral,
    q_maximize,
    q_numeric,
    regime,
)

GAMMAS = (1.0, 1.5, 2.0, 3.0, 4.0)
CASES = [(m, n, g) for m in range(7) for n in range(7) for g in GAMMAS if regime(m, n, g) != "outside"]


def test_qspec_validation():
    with pytest.raises(ValueError):
        QSpec(-1, 0, 1.0)
    with pytest.raises(ValueError):
        QSpec(1, 0, -1.0)
    assert QSpec(3, 1, 2.0).mu == 6


def test_regimes():
    assert regime(2, 2, 0.5) == "low"
    assert regime(3, 1, 2.0) == "high"
    assert regime(6, 1, 2.0) == "outside"  # needs gamma > 4


def test_closed_form_small_case():
    # m=1, n=0, gamma=2: int cos^4 = 3 pi / 8
    assert q_closed(1, 0, 2.0) == pytest.approx(3 * math.pi / 8, rel=1e-15)


def test_closed_form_rejects_outside():
    with pytest.raises(RegimeError):
        q_closed(6, 1, 2.0)


@pytest.mark.parametrize("m, n, gamma", CASES)
def test_numeric_matches_closed(m, n, gamma):
    assert q_numeric(QSpec(m, n, gamma), None) == pytest.approx(q_closed(m, n, gamma), abs=1e-9, rel=1e-12)


@pytest.mark.parametrize("m, n, gamma", [c for c in CASES if c[0] <= c[1]][::3])
def test_low_regime_is_flat_in_beta(m, n, gamma):
    vals = [q_numeric(QSpec(m, n, gamma, b)) for b in np.linspace(0, math.pi, 8, endpoint=False)]
    assert max(vals) - min(vals) <= 1e-9


@pytest.mark.parametrize("m, n, gamma", [c for c in CASES if c[0] > c[1]][::2])
def test_high_regime_peaks_at_zero(m, n, gamma):
    beta_star, value = q_maximize(m, n, gamma)
    assert beta_star <= 1e-6
    assert value == pytest.approx(q_closed(m, n, gamma), rel=1e-10)


def test_q_maximize_needs_a_fine_grid():
    with pytest.raises(ValueError):
        q_maximize(2, 1, 2.0, points=16)


def test_against_mpmath_quadrature():
    m, n, gamma, beta = 2, 1, 1.5, 0.4
    w = n + 1
    kinks = sorted(q for q in ((beta - math.pi / 2 - k * math.pi) / w for k in range(-4, 5))
                   if -math.pi / 2 < q < math.pi / 2)
    pts = [-mpmath.pi / 2] + [mpmath.mpf(k) for k in kinks] + [mpmath.pi / 2]
    ref = mpmath.quad(lambda x: abs(mpmath.cos(beta - w * x)) ** gamma * mpmath.cos(x) ** (2 * m), pts)
    assert q_numeric(QSpec(m, n, gamma, beta)) == pytest.approx(float(ref), rel=1e-13)


def test_fractional_exponents():
    # mu = -0.5, gamma = 1 and n = 0: int |cos|^0.5 = B(3/4, 1/2)
    ref = float(mpmath.beta(0.75, 0.5))
    assert q_integral(-0.5, 0, 1.0, 0.0).value == pytest.approx(ref, rel=1e-12)


@given(st.integers(0, 6), st.integers(0, 6), st.floats(-3, 3))
def test_reduced_series_matches_raw_sum(m, n, theta):
    assert g_reduced(m, n, theta) == pytest.approx(g_raw(m, n, theta), abs=1e-12)


@given(st.floats(-1.4, 1.4), st.floats(0.5, 3.0), st.integers(0, 3), st.integers(0, 3))
def test_beta_symmetries(beta, gamma, m, n):
    base = q_numeric(QSpec(m, n, gamma, beta))
    assert q_numeric(QSpec(m, n, gamma, -beta)) == pytest.approx(base, abs=1e-10)
    assert q_numeric(QSpec(m, n, gamma, beta + math.pi)) == pytest.approx(base, abs=1e-10)
