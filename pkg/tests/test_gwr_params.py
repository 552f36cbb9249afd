"""Hyper-parameter validation and the habituation law."""

import math

import pytest

from pointgwr.gwr import GwrParams, habituate, habituation_closed_form


class TestValidation:
    def test_defaults_are_valid(self):
        GwrParams()

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"a_t": 0.0},
            {"a_t": 1.0},
            {"noise_t": 1.5},
            {"eta_b": 0.01, "eta_n": 0.1},  # rates out of order
            {"eta_n": 0.0},
            {"h_t": 1.5},
            {"h_t": 0.0},
            {"stimulus": 0.0},
            {"tau_b": 0.0},
            {"h_floor": 0.5},  # above h_t
            {"age_max": 0},
            {"nb_max": 1},
            {"habituation_rule": "magic"},
        ],
    )
    def test_bad_settings_rejected(self, kwargs):
        with pytest.raises(ValueError):
            GwrParams(**kwargs)

    def test_dict_round_trip(self):
        params = GwrParams(a_t=0.85, nb_max=4)
        assert GwrParams.from_dict(params.as_dict()) == params


class TestHabituation:
    def test_iterated_updates_follow_the_closed_form(self):
        """The per-firing update walks the exponential decay exactly."""
        params = GwrParams()
        h = params.h0
        worst = 0.0
        for t in range(1, 201):
            h = habituate(h, params, is_bmu=True)
            worst = max(worst, abs(h - habituation_closed_form(t, params)))
        assert worst < 1e-12

    def test_decay_reaches_the_asymptote(self):
        params = GwrParams()
        h = params.h0
        for _ in range(200):
            h = habituate(h, params, is_bmu=True)
        assert abs(h - params.habituation_asymptote(is_bmu=True)) < 1e-3

    def test_asymptote_value(self):
        params = GwrParams()
        assert params.habituation_asymptote(True) == pytest.approx(
            params.h0 - params.stimulus / params.kappa_b
        )

    def test_neighbor_constants_differ_from_bmu(self):
        params = GwrParams()
        h_bmu = habituate(params.h0, params, is_bmu=True)
        h_nb = habituate(params.h0, params, is_bmu=False)
        # tau_n < tau_b: the neighbor counter drops faster per firing
        assert h_nb < h_bmu

    def test_counter_stays_clamped(self):
        params = GwrParams(habituation_rule="euler")
        h = params.h0
        for _ in range(500):
            h = habituate(h, params, is_bmu=True)
            assert params.h_floor <= h <= params.h0

    def test_closed_form_at_zero_is_h0(self):
        params = GwrParams()
        assert habituation_closed_form(0, params) == params.h0

    def test_euler_rule_is_a_different_curve(self):
        euler = GwrParams(habituation_rule="euler")
        closed = GwrParams()
        h_e = habituate(euler.h0, euler, True)
        h_c = habituate(closed.h0, closed, True)
        assert h_e != pytest.approx(h_c, abs=1e-6)

    def test_monotone_decrease_until_floor(self):
        params = GwrParams()
        h = params.h0
        for _ in range(50):
            nxt = habituate(h, params, True)
            assert nxt <= h
            h = nxt

    def test_closed_form_consistency_for_neighbors(self):
        params = GwrParams()
        h = params.h0
        for t in range(1, 101):
            h = habituate(h, params, is_bmu=False)
            expected = habituation_closed_form(t, params, is_bmu=False)
            assert h == pytest.approx(max(expected, params.h_floor), abs=1e-12)
