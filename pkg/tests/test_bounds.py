import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grover_anneal.bounds import (
    BoundReport,
    bound_report,
    d1_asymptotic,
    d1_definition,
    d1_upper_bound,
    delta_for_probability,
    delta_phi_approx,
    delta_phi_exact,
    i1_lower_half_bound,
    i1_quadrature,
    i1_upper_half_bound,
    phi_exact,
    ratio_bound,
    required_tau,
)
from grover_anneal.integrator import evolve, final_probability
from grover_anneal.model import eigenbasis_projection
from grover_anneal.schedule import linear


def gap_integral(n, s):
    """Closed form of int_0^s gap ds with gap**2 = a + b (s - 1/2)**2."""
    a, b = 1.0 / n, 4.0 * (1.0 - 1.0 / n)

    def F(x):
        return 0.5 * x * math.sqrt(a + b * x * x) + a / (2 * math.sqrt(b)) * math.asinh(x * math.sqrt(b / a))

    return F(s - 0.5) - F(-0.5)


def i1_static(n, s_a, s_b):
    """I1 at tau = 0 from the antiderivative -(a + b x**2)**-1.5 / (3b)."""
    a, b = 1.0 / n, 4.0 * (1.0 - 1.0 / n)

    def F(x):
        return -((a + b * x * x) ** -1.5) / (3 * b)

    return F(s_b - 0.5) - F(s_a - 0.5)


class TestPhases:
    @pytest.mark.parametrize("n", [2, 100, 10**6])
    def test_empty_integral(self, n):
        assert phi_exact(n, 0.0, 0) == 0.0
        assert phi_exact(n, 0.0, 1) == 0.0
        assert delta_phi_exact(n, 0.0) == 0.0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=2, max_value=10**8), st.floats(min_value=0.0, max_value=1.0))
    def test_levels_sum_to_s(self, n, s):
        assert phi_exact(n, s, 0) + phi_exact(n, s, 1) == pytest.approx(s, abs=1e-12)

    def test_ground_phase_from_gap_phase(self):
        assert phi_exact(100, 1.0, 0) == pytest.approx((1 - gap_integral(100, 1.0)) / 2, rel=1e-11)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=2, max_value=10**10), st.floats(min_value=0.0, max_value=1.0))
    def test_gap_phase_closed_form(self, n, s):
        assert delta_phi_exact(n, s) == pytest.approx(gap_integral(n, s), rel=1e-9, abs=1e-14)

    def test_large_n_limit(self):
        assert delta_phi_exact(10**12, 1.0) == pytest.approx(0.5, abs=1e-10)

    def test_finite_n_correction(self):
        n = 10**4
        assert abs(delta_phi_exact(n, 1.0) - 0.5) <= 5 * math.log(n) / n

    def test_bad_level(self):
        with pytest.raises(ValueError):
            phi_exact(4, 0.5, 2)

    def test_bad_s(self):
        with pytest.raises(ValueError):
            delta_phi_exact(4, 1.5)


class TestPhaseApproximation:
    @pytest.mark.parametrize("n", [4, 10**4, 10**9])
    def test_quarter_at_midpoint(self, n):
        assert delta_phi_approx(n, 0.5) == 0.25

    def test_end(self):
        assert delta_phi_approx(10**6, 1.0) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("n", [10**4, 10**5, 10**6])
    def test_sup_norm_error(self, n):
        worst = max(abs(delta_phi_approx(n, s) - gap_integral(n, s)) for s in np.linspace(0, 1, 2001))
        assert worst <= 5 * math.log(n) / n


class TestI1:
    def test_empty_range(self):
        assert i1_quadrature(100, 5.0, 0.3, 0.3) == 0.0

    @pytest.mark.parametrize("n,tau", [(16, 0.0), (10**4, 20.0), (10**6, 3.0)])
    def test_sign_on_lower_half(self, n, tau):
        assert i1_quadrature(n, tau, 0.0, 0.5) < 0
        assert i1_quadrature(n, tau, 0.5, 1.0) > 0

    @pytest.mark.parametrize("n", [2, 64, 10**4, 10**6])
    @pytest.mark.parametrize("s_a,s_b", [(0.0, 0.5), (0.5, 1.0), (0.1, 0.7), (0.0, 1.0)])
    def test_static_value(self, n, s_a, s_b):
        expected = i1_static(n, s_a, s_b)
        scale = i1_static(n, 0.0, 0.5)
        assert i1_quadrature(n, 0.0, s_a, s_b) == pytest.approx(expected, rel=1e-9, abs=1e-12 * abs(scale))

    @pytest.mark.parametrize("n", [10**4, 10**6])
    @pytest.mark.parametrize("tau", [5.0, 10.0, 20.0, 40.0])
    def test_closed_form_upper_bounds(self, n, tau):
        assert i1_quadrature(n, tau, 0.0, 0.5) <= i1_lower_half_bound(n, tau)
        assert i1_quadrature(n, tau, 0.5, 1.0) <= i1_upper_half_bound(n, tau)

    def test_reversed_range(self):
        with pytest.raises(ValueError):
            i1_quadrature(16, 1.0, 0.6, 0.4)


class TestD1:
    def test_upper_bound_values(self):
        assert d1_upper_bound(4, 0.0) == 1.25
        assert d1_upper_bound(10**6, 40.0) == pytest.approx(5e-4 + math.exp(-10), rel=1e-14)
        assert d1_upper_bound(10**6, 40.0) == pytest.approx(5.45e-4, abs=1e-6)
        assert d1_upper_bound(10**16, 400.0) < 1e-7

    def test_asymptotic_values(self):
        assert d1_asymptotic(2, 1.0) == pytest.approx(0.5 * (1 - math.exp(-0.5)), rel=1e-14)
        assert d1_asymptotic(2, 1.0) == pytest.approx(0.19673, abs=1e-5)

    @pytest.mark.parametrize("n", [2, 64, 10**6])
    def test_asymptotic_limit(self, n):
        assert 1e6 * d1_asymptotic(n, 1e6) == pytest.approx(math.sqrt(n - 1) / n, rel=1e-14)

    @pytest.mark.parametrize("tau", [0.0, -1.0])
    def test_asymptotic_domain(self, tau):
        with pytest.raises(ValueError):
            d1_asymptotic(4, tau)

    def test_upper_bound_domain(self):
        with pytest.raises(ValueError):
            d1_upper_bound(4, -1.0)

    def test_asymptotic_predicts_failure_probability(self):
        p = final_probability(64, linear(100.0), "it")
        assert 0.5 <= (1 - p) / d1_asymptotic(64, 100.0) ** 2 <= 2.0

    @pytest.mark.parametrize("n", [10**4, 10**6])
    @pytest.mark.parametrize("tau", [5.0, 10.0, 20.0, 40.0])
    def test_definition_is_of_the_bound_order(self, n, tau):
        # the exp(-tau/4) term carries a prefactor near 1.6 at short times
        assert d1_definition(n, tau) <= 2.0 * d1_upper_bound(n, tau)

    def test_definition_within_bound_at_long_times(self):
        for n in (10**4, 10**6):
            assert d1_definition(n, 40.0) <= d1_upper_bound(n, 40.0)

    def test_definition_matches_asymptote_at_long_times(self):
        assert d1_definition(64, 100.0) == pytest.approx(d1_asymptotic(64, 100.0), rel=0.1)


class TestRatio:
    @pytest.mark.parametrize("tau", [0.0, 3.0, 50.0])
    def test_single_item(self, tau):
        assert ratio_bound(1, tau) == pytest.approx(0.5 + math.exp(-tau / 4), rel=1e-15)

    def test_log_time(self):
        n = 10**6
        assert ratio_bound(n, 4 * math.log(n)) == pytest.approx(0.501, abs=1e-12)

    @pytest.mark.parametrize("n", [10**4, 10**6])
    @pytest.mark.parametrize("tau", [5.0, 10.0, 20.0, 40.0])
    def test_simulated_ratio_dominated(self, n, tau):
        traj = evolve(n, linear(tau), "it", certify=True)
        c0, c1 = eigenbasis_projection(traj.final, n, 1.0)
        assert abs(c1 / c0) <= 1.2 * ratio_bound(n, tau)

    def test_domain(self):
        with pytest.raises(ValueError):
            ratio_bound(4, -0.5)


class TestRequiredTau:
    def test_e_squared(self):
        assert required_tau(math.e ** 2, 1.0) == pytest.approx(4.0, rel=1e-15)

    def test_million(self):
        assert required_tau(10**6, 0.1) == pytest.approx(2 * math.log(1e8), rel=1e-15)
        assert required_tau(10**6, 0.1) == pytest.approx(36.841, abs=1e-3)

    def test_delta_from_probability(self):
        assert delta_for_probability(0.99) == pytest.approx(0.100504, abs=1e-6)

    @given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
    def test_delta_round_trip(self, p):
        d = delta_for_probability(p)
        assert 1 / (1 + d * d) == pytest.approx(p, rel=1e-12)

    @pytest.mark.parametrize("delta", [0.0, -0.1])
    def test_domain(self, delta):
        with pytest.raises(ValueError):
            required_tau(100, delta)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_probability_domain(self, p):
        with pytest.raises(ValueError):
            delta_for_probability(p)

    @given(st.integers(min_value=2, max_value=10**12), st.floats(min_value=1e-3, max_value=10.0))
    def test_inverts_ratio_tail(self, n, delta):
        assert math.sqrt(n) * math.exp(-required_tau(n, delta) / 4) == pytest.approx(delta, rel=1e-9)


class TestReport:
    def test_fields(self):
        rep = bound_report(10**6, 36.841)
        assert isinstance(rep, BoundReport)
        assert rep.tau_required == pytest.approx(36.841, abs=1e-3)
        assert all(v >= 0 for v in rep.to_dict().values())

    def test_rejects_zero_time(self):
        with pytest.raises(ValueError):
            bound_report(16, 0.0)
