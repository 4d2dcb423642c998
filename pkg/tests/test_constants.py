import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from realpart.constants import (
    AdmissibilityError,
    ConstantQuery,
    ExponentP,
    bounds_even,
    check_admissible,
    closed_form_lookup,
    consistency_report,
    dk_dalpha,
    exterior_bound,
    k_alpha,
    k_alpha_increment,
    k_profile,
    k_sharp,
    lambda_m,
    log_k_alpha,
    theorem1_value,
)

HALF_PI = math.pi / 2


def k_quad(n, p):
    return k_sharp(ConstantQuery(n, p), use_closed_form=False)


class TestExponent:
    def test_parse_forms(self):
        assert ExponentP.parse("inf").is_infinite
        assert ExponentP.parse("3/2").p == Fraction(3, 2)
        assert ExponentP.parse(1.2).p == Fraction(6, 5)
        assert ExponentP.parse(math.inf).is_infinite
        assert str(ExponentP.parse("6/4")) == "3/2"

    def test_conjugates(self):
        assert ExponentP.parse("inf").q == 1.0
        assert ExponentP.parse(1).q == math.inf
        assert ExponentP.parse("3/2").q_exact == 3
        assert ExponentP.parse(4).inv_p == 0.25

    def test_rejects_small_p(self):
        with pytest.raises(ValueError):
            ExponentP.parse("1/2")

    @given(st.integers(1, 50), st.integers(1, 50))
    def test_rational_round_trip(self, a, b):
        if a < b:
            a, b = b, a
        p = ExponentP.parse(f"{a}/{b}")
        assert p.p == Fraction(a, b)
        if a != b:
            assert 1 / p.p + 1 / p.q_exact == 1


class TestAdmissibility:
    def test_divergent_case_named(self):
        with pytest.raises(AdmissibilityError, match="divergent"):
            ConstantQuery(0, "inf")

    def test_p_one_has_no_profile(self):
        with pytest.raises(AdmissibilityError):
            k_alpha(2, 1, 0.3)
        assert k_sharp(ConstantQuery(3, 1)).value == pytest.approx(6 / math.pi)

    def test_bad_order(self):
        with pytest.raises(AdmissibilityError):
            check_admissible(-1, 2)
        with pytest.raises(AdmissibilityError):
            check_admissible(1.5, 2)


class TestHeadlineValues:
    @pytest.mark.parametrize("n, expected", [
        (1, 2 / math.pi),
        (3, 6 / math.pi),
        (5, 90 / math.pi),
        (2, 3 * math.sqrt(3) / (2 * math.pi)),
        (4, 3 * (16 + 5 * math.sqrt(5)) / (4 * math.pi)),
    ])
    def test_p_infinity(self, n, expected):
        assert k_quad(n, "inf").value == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("n", range(0, 7))
    def test_p_two(self, n):
        expected = math.sqrt(math.factorial(2 * n) / (2 ** (2 * n + 1) * math.pi))
        assert k_quad(n, 2).value == pytest.approx(expected, rel=1e-8)

    def test_p_two_is_alpha_flat(self):
        _, vals = k_profile(3, 2, points=16)
        assert np.ptp(vals) <= 1e-12 * vals[0]

    def test_profile_symmetries(self):
        for a in (0.1, 0.7, 1.3):
            assert k_alpha(2, "inf", a) == pytest.approx(k_alpha(2, "inf", -a), rel=1e-12)
            assert k_alpha(3, "3", a) == pytest.approx(k_alpha(3, "3", math.pi - a), rel=1e-12)

    def test_log_value_agrees(self):
        assert math.exp(log_k_alpha(4, "inf", 0.2)) == pytest.approx(k_alpha(4, "inf", 0.2), rel=1e-13)

    def test_huge_order_stays_finite_in_logs(self):
        assert k_alpha(200, "inf", 0.0) == math.inf
        assert math.isfinite(log_k_alpha(200, "inf", 0.0))


class TestRegistry:
    def test_precedence(self):
        assert closed_form_lookup(1, "inf")[1] == "M1"
        assert closed_form_lookup(2, 4)[1] == "C-3.6"
        assert closed_form_lookup(1, "4/3")[1] == "C-k"
        assert closed_form_lookup(3, 2)[1] == "M3-p2"
        assert closed_form_lookup(6, "inf")[1] == "E-6"
        assert closed_form_lookup(2, 3) is None

    def test_printed_high_order_formulas_are_not_trusted(self):
        r = k_sharp(ConstantQuery(6, "inf"))
        assert r.method == "quadrature"

    @pytest.mark.parametrize("n, p", [(2, 4), (4, 6), (2, "4/3"), (1, "6/5"), (3, "8/7")])
    def test_corollaries_against_quadrature(self, n, p):
        value, _ = closed_form_lookup(n, p)
        assert k_quad(n, p).value == pytest.approx(value, rel=1e-8)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_theorem_at_n_equals_m(self, n):
        assert theorem1_value(n, n) == pytest.approx(closed_form_lookup(n, 2)[0], rel=1e-12)

    @pytest.mark.parametrize("m", range(0, 5))
    def test_theorem_at_odd_order(self, m):
        assert theorem1_value(2 * m + 1, m) == pytest.approx(closed_form_lookup(2 * m + 1, "inf")[0], rel=1e-12)

    @pytest.mark.parametrize("n, m", [(1, 2), (2, 3), (3, 4), (1, 4)])
    def test_theorem_general_values(self, n, m):
        p = f"{2 * (m + 1)}/{2 * m + 1 - n}"
        assert k_quad(n, p).value == pytest.approx(theorem1_value(n, m), rel=1e-8)


class TestEvenOrder:
    @pytest.mark.parametrize("m", range(1, 9))
    def test_bracket(self, m):
        b = bounds_even(m)
        k = k_quad(2 * m, "inf").value
        assert b.lower < k < b.upper

    def test_bracket_ratio_decreases(self):
        ratios = [k_quad(2 * m, "inf").value / bounds_even(m).lower for m in range(1, 9)]
        assert all(1 < r < 2 * m / (2 * m - 1) for m, r in zip(range(1, 9), ratios))
        assert all(a > b for a, b in zip(ratios, ratios[1:]))

    def test_bounds_example(self):
        b = bounds_even(3)
        assert b.lower == pytest.approx(143.2394, abs=1e-4)
        assert b.upper == pytest.approx(171.8873, abs=1e-4)

    def test_bounds_large_m(self):
        b = bounds_even(200)
        assert b.lower == math.inf and math.isfinite(b.log_lower)

    def test_lambda_signs(self):
        phi = np.linspace(1e-6, HALF_PI - 1e-6, 1000)
        assert np.all(lambda_m(3, phi) < 0)
        assert np.all(lambda_m(4, phi) > 0)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_derivative_matches_central_difference(self, m):
        h = 1e-5
        for a in np.linspace(0.05, HALF_PI - 0.05, 20):
            fd = k_alpha_increment(2 * m, a - h, a + h) / (2 * h)
            assert fd == pytest.approx(dk_dalpha(m, a), rel=1e-6)

    def test_increment_matches_plain_difference(self):
        d = k_alpha(4, "inf", 0.6) - k_alpha(4, "inf", 0.2)
        assert k_alpha_increment(4, 0.2, 0.6) == pytest.approx(d, rel=1e-12)

    def test_argmax_positions(self):
        assert k_quad(6, "inf").alpha_star == pytest.approx(0.0, abs=1e-6)
        assert k_quad(8, "inf").alpha_star == pytest.approx(HALF_PI, abs=1e-6)

    def test_argmax_alternates_while_resolvable(self):
        for m in range(1, 11):
            expected = 0.0 if m % 2 else HALF_PI
            assert k_quad(2 * m, "inf").alpha_star == expected

    def test_unresolvable_profile_is_reported_flat(self):
        # the whole alpha-variation of K_{24,inf} is below one ulp
        assert k_quad(24, "inf").alpha_star == 0.0

    def test_lambda_route_warns_when_ill_conditioned(self):
        with pytest.warns(RuntimeWarning):
            dk_dalpha(9, 0.3)

    def test_profile_monotone(self):
        _, v6 = k_profile(6, "inf", points=64)
        _, v8 = k_profile(8, "inf", points=64)
        assert np.all(np.diff(v6) <= 1e-12 * v6[0])
        assert np.all(np.diff(v8) >= -1e-12 * v8[0])


def test_exterior_bound():
    assert exterior_bound(1, 2.0) == pytest.approx(1 / math.pi)
    with pytest.raises(ValueError):
        exterior_bound(1, 0.0)


def test_consistency_report_has_three_numbers_per_case():
    rows = consistency_report()
    assert [r["case"] for r in rows] == ["K_6,inf", "K_8,inf"]
    for r in rows:
        for key in ("printed_formula", "quadrature", "ratio_table_from_lower"):
            assert math.isfinite(r[key])
    k6, k8 = rows
    assert k6["printed_formula"] == pytest.approx(149.15, abs=0.01)
    assert k6["ratio_table_from_lower"] == pytest.approx(155.63, abs=0.05)
    assert k8["printed_formula"] == pytest.approx(7633.6, abs=0.1)
    assert k8["quadrature"] == pytest.approx(7469.7, abs=0.6)
