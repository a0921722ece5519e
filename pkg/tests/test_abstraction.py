from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsn import syntax as s
from ccsn.abstraction import (IllFormedResumption, Verdict, Vocabulary, check_invariance,
                              check_xi, default_vocabulary, denotational_difference,
                              discriminate, enumerate_contexts, invariance_squares,
                              lift_resumption, operational_budget)
from ccsn.bags import Bag
from ccsn.denotational import PHI_E, OfStmt, gamma0
from ccsn.generators import random_program, random_resumption, random_statement
from ccsn.identifiers import HOLE, SEQ_MARKER, ParLeft, ParRight, nu
from ccsn.operational import E, Operational, Resumption, initial_resumption, with_seq
from ccsn.parser import parse_program, parse_statement
from ccsn.syntax import Act, Calculus, Internal, Merge, Output
from ccsn.traces import trace

b = Act(Internal("b"))


class TestLift:
    def test_initial(self):
        assert lift_resumption(initial_resumption(), 2) == gamma0()

    def test_pointwise(self):
        rho = with_seq(initial_resumption(), b)
        g = lift_resumption(rho, 2)
        assert g.kbag[SEQ_MARKER] == OfStmt(b)
        assert g.kbag.default is PHI_E
        assert g.ids == rho.ids and g.iset == rho.iset

    def test_rejects_ill_formed(self):
        with pytest.raises(IllFormedResumption):
            lift_resumption(Resumption((b,), frozenset(), (HOLE,), Bag(E)), 2)

    @given(st.integers(0, 2**32), st.integers(0, 2**32))
    def test_injective(self, s1, s2):
        r1 = random_resumption(random.Random(s1), 2)
        r2 = random_resumption(random.Random(s2), 2)
        assert (r1 == r2) == (lift_resumption(r1) == lift_resumption(r2))


class TestXi:
    def test_x1(self, x1):
        assert check_xi(x1.main, x1, 30).verdict == "equal"

    def test_x4(self, x4):
        assert check_xi(x4.main, x4, 30).verdict == "equal"

    def test_stop(self):
        p = parse_program("run stop")
        v = check_xi(p.main, p, 10)
        assert v.verdict == "equal" and v.right == {trace("tau.tau")}

    def test_operational_budget_suffices(self):
        assert operational_budget(48, 2) == 16
        assert operational_budget(49, 2) == 17

    def test_reports_a_witness(self, x1):
        v = Verdict("diff", trace("b1"), frozenset(), frozenset([trace("b1")]))
        assert v.to_json()["witness"] == {"symbols": ["b1"], "end": "eps"}


class TestInvariance:
    def test_initial(self):
        p = parse_program("run b")
        assert check_invariance(initial_resumption(), b, p)

    def test_squares_at_initial(self):
        squares = {name: (a, c) for name, a, c in invariance_squares(initial_resumption(), b, "c", 2)}
        assert squares["left_sync"][0].ids == squares["left_sync"][1].ids == (ParLeft(HOLE),
                                                                               ParRight(HOLE))
        assert squares["restrict"][0].head == squares["restrict"][1].head == nu("c")

    def test_guard_skips_left_sync(self):
        rho = initial_resumption()
        from ccsn.operational import with_sync_push
        full = with_sync_push(with_sync_push(rho, b), b)
        names = [name for name, _, _ in invariance_squares(full, b, "c", 2)]
        assert "left_sync" not in names

    @given(st.integers(0, 2**32))
    def test_random(self, seed):
        rng = random.Random(seed)
        p = parse_program("chan c1 c2 c3; run b")
        rho = random_resumption(rng, 2)
        x = random_statement(rng, depth=2)
        assert check_invariance(rho, x, p, rng.choice(["c1", "c2", "c3"]))


class TestContexts:
    vocab = Vocabulary((Output("c"),), ("c",))

    def test_depth_zero(self):
        assert list(enumerate_contexts(0, self.vocab)) == [s.HOLE]

    def test_depth_one(self):
        ctxs = list(enumerate_contexts(1, self.vocab))
        assert Merge(s.HOLE, Act(Output("c"))) in ctxs
        assert ctxs == list(enumerate_contexts(1, self.vocab))
        assert all(s.has_hole(c) and s.depth(c) <= 1 for c in ctxs)
        assert len(ctxs) == len(set(ctxs))

    def test_smallest_first(self):
        sizes = [s.node_count(c) for c in enumerate_contexts(2, self.vocab)]
        assert sizes == sorted(sizes)

    def test_default_vocabulary(self):
        p = parse_program("chan c1; run c1")
        vocab = default_vocabulary(p)
        assert Output("c1") in vocab.actions


class TestDiscriminate:
    p = parse_program("chan c1 c2; run b")

    def test_different_actions(self):
        v = discriminate(parse_statement("b1", self.p), parse_statement("b2", self.p), self.p, 0)
        assert v.verdict == "found" and v.witness == s.HOLE

    def test_identical(self):
        x = parse_statement("c1&c2", self.p)
        assert discriminate(x, x, self.p).verdict == "not_found"

    def test_joint_input_against_single_input(self):
        x1, x2 = parse_statement("c1&c2", self.p), parse_statement("c1", self.p)
        v = discriminate(x1, x2, self.p, 2)
        assert v.verdict == "found" and s.depth(v.witness) <= 2
        op = Operational(self.p)
        assert op.semantics(s.fill_context(v.witness, x1), 16) == v.left
        assert op.semantics(s.fill_context(v.witness, x2), 16) == v.right
        assert v.left != v.right

    def test_known_separating_context(self):
        ctx = parse_statement("@ || ~c1 || ~c2", self.p)
        x1, x2 = parse_statement("c1&c2", self.p), parse_statement("c1", self.p)
        op = Operational(self.p)
        assert op.semantics(s.fill_context(ctx, x1), 8) != op.semantics(s.fill_context(ctx, x2), 8)

    def test_denotational_difference(self):
        x1, x2 = parse_statement("b1", self.p), parse_statement("b2", self.p)
        assert denotational_difference(x1, x2, self.p, random.Random(0), samples=3) is not None
        assert denotational_difference(x1, x1, self.p, random.Random(0), samples=3) is None


@pytest.mark.parametrize("calculus", list(Calculus))
def test_xi_on_random_programs(calculus):
    rng = random.Random(3)
    for _ in range(60):
        p = random_program(rng, calculus)
        assert check_xi(p.main, p, 30).verdict == "equal"
