from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsn.traces import (CUT, DELTA, EMPTY_TRACE, Trace, choice_merge, dumps, loads,
                         prefix_action, render_set, tau_pow, trace, traces, truncate_set,
                         xi_set, xi_trace)

T = traces


def test_prefix_action():
    assert prefix_action("b", T("eps")) == T("b")
    assert prefix_action("tau", T("b1", "b2.delta")) == T("tau.b1", "tau.b2.delta")
    assert prefix_action("b", T("cut")) == T("b.cut")


def test_tau_pow():
    p = T("b1", "delta")
    assert tau_pow(0, p) == p
    assert tau_pow(2, T("eps")) == T("tau.tau")
    assert tau_pow(1, tau_pow(1, p)) == tau_pow(2, p)


class TestChoiceMerge:
    def test_both_deadlock(self):
        assert choice_merge(0, T("tau.tau"), T("tau.tau"), 2) == T("tau.tau")

    def test_deadlock_branch_dropped(self):
        assert choice_merge(0, T("tau.tau.b"), T("tau.tau"), 2) == T("tau.tau.b")

    def test_both_survive(self):
        assert choice_merge(0, T("tau.tau.b1"), T("tau.tau.b2"), 2) == T("tau.tau.b1", "tau.tau.b2")

    def test_level_changes_the_deadlock_shape(self):
        assert choice_merge(1, T("tau"), T("tau.b"), 2) == T("tau.b")
        assert choice_merge(2, T("eps"), T("eps"), 2) == T("eps")

    def test_partial_cut_kept(self):
        assert choice_merge(0, T("tau.cut"), T("tau.tau"), 2) == T("tau.cut")

    def test_level_out_of_range(self):
        with pytest.raises(ValueError):
            choice_merge(3, T("eps"), T("eps"), 2)


def test_xi():
    assert xi_trace(trace("b1.b2.delta"), 2) == trace("tau.tau.b1.tau.tau.b2.tau.tau")
    assert xi_trace(EMPTY_TRACE, 2) == EMPTY_TRACE
    assert xi_trace(trace("tau.delta"), 2) == trace("tau.tau.tau.tau.tau")
    assert xi_set(T("tau"), 2) == T("tau.tau.tau")
    assert xi_set(T("eps"), 2) == T("eps")
    assert xi_set(T("b1.b2.delta", "b2.b1.delta"), 2) == T("tau.tau.b1.tau.tau.b2.tau.tau",
                                                           "tau.tau.b2.tau.tau.b1.tau.tau")


def test_truncate():
    assert truncate_set(T("b1.b2.delta"), 1) == T("b1.cut")
    assert truncate_set(T("eps"), 5) == T("eps")
    assert truncate_set(T("tau.tau.b", "tau.tau"), 2) == T("tau.tau.cut", "tau.tau")


def test_text_form():
    assert str(trace("b1.delta")) == "b1.delta"
    assert str(EMPTY_TRACE) == "eps"
    assert trace("b.cut") == Trace(("b",), CUT)
    assert render_set(T("b2", "b1.delta")) == "{b1.delta, b2}"


symbols = st.lists(st.sampled_from(["tau", "b1", "b2"]), max_size=5).map(tuple)
trace_sets = st.frozensets(st.builds(Trace, symbols, st.sampled_from(["eps", DELTA, CUT])),
                           max_size=5)


@given(trace_sets)
def test_json_round_trip(p):
    assert loads(dumps(p)) == p


@given(trace_sets, st.integers(0, 6), st.integers(0, 6))
def test_truncation_composes(p, m, k):
    assert truncate_set(truncate_set(p, m + k), m) == truncate_set(p, m)


@given(trace_sets, trace_sets, st.integers(0, 2))
def test_choice_commutes(p1, p2, i):
    cut_free = lambda p: frozenset(q for q in p if q.end != CUT)
    p1, p2 = cut_free(p1), cut_free(p2)
    assert choice_merge(i, p1, p2, 2) == choice_merge(i, p2, p1, 2)
