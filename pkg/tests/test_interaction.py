from __future__ import annotations

import random

from hypothesis import given
from hypothesis import strategies as st

from ccsn.generators import random_balanced_interaction_set, random_interaction_set
from ccsn.identifiers import HOLE, ParLeft, ParRight, Restrict, SeqLeft
from ccsn.interaction import (brute_force_matching, interact, interact_n, interact_n_plus,
                              interact_n_plus_oracle, match_sequences, perfect_matching,
                              split_receives, split_sends, to_joint_prefix)
from ccsn.syntax import (STOP, TAU, Calculus, Internal, JointInput, JointPrefix, Output,
                         SyncAction)

L, R = ParLeft(HOLE), ParRight(HOLE)


def jp(*items):
    """``jp("c1", "~c2")`` is the joint prefix c1&~c2."""
    return JointPrefix(tuple(SyncAction(i.lstrip("~"), i.startswith("~")) for i in items))


class TestCcsn:
    def test_single_internal(self):
        assert interact_n({(Internal("b"), HOLE)}) == "b"

    def test_lone_joint_input_blocks(self):
        assert interact_n({(JointInput(("c1", "c2")), HOLE)}) is None

    def test_stop_blocks(self):
        assert interact_n({(STOP, HOLE)}) is None

    def test_three_way_step_of_x3(self):
        # ((c1&c2 || ~c1)\c1) || ~c2 with every component pushed
        u = {(JointInput(("c1", "c2")), ParLeft(Restrict(L, "c1"))),
             (Output("c1"), ParLeft(Restrict(R, "c1"))),
             (Output("c2"), R)}
        assert interact_n(u) == TAU

    def test_restriction_blocks_outside_partner(self):
        u = {(JointInput(("c1",)), ParLeft(Restrict(L, "c1"))), (Output("c1"), R)}
        assert interact_n(u) is None

    def test_two_inputs_do_not_interact(self):
        assert interact_n({(JointInput(("c",)), L), (JointInput(("c",)), R)}) is None


class TestMsync:
    def test_split(self):
        j = jp("c1", "c1", "~c2", "~c3")
        assert split_receives(j, HOLE) == [("c1", HOLE), ("c1", HOLE)]
        assert split_sends(j, HOLE) == [("c2", HOLE), ("c3", HOLE)]
        assert split_receives(jp("~c"), HOLE) == []
        assert split_receives(jp("c"), HOLE) == [("c", HOLE)]
        assert split_sends(jp("c"), HOLE) == []
        assert split_sends(jp("~c", "~c"), HOLE) == [("c", HOLE), ("c", HOLE)]

    def test_match_sequences(self):
        assert match_sequences([], [])
        assert match_sequences([("c", L)], [("c", R)])
        assert not match_sequences([("c", L)], [("c", L)])

    def test_single_internal(self):
        assert interact_n_plus({(Internal("b"), HOLE)}) == "b"

    def test_three_way_sync_of_x4(self):
        a1 = ParLeft(Restrict(ParLeft(SeqLeft(HOLE)), "c1"))
        a2 = ParLeft(Restrict(R, "c1"))
        a3 = ParRight(SeqLeft(HOLE))
        u = {(jp("~c1", "c2"), a1), (jp("c1", "~c3"), a2), (jp("~c2", "c3"), a3)}
        assert interact_n_plus(u) == TAU
        assert interact_n_plus_oracle(u) == TAU

    def test_unbalanced_counts(self):
        assert interact_n_plus({(jp("c", "c"), L), (jp("~c"), R)}) is None

    def test_dispatch(self):
        u = {(Output("c"), L), (JointInput(("c",)), R)}
        assert interact(u, Calculus.CCSN) == TAU
        translated = {(to_joint_prefix(a), alpha) for a, alpha in u}
        assert interact(translated, Calculus.CCSNPLUS) == TAU

    @given(st.integers(0, 2**32))
    def test_matching_agrees_with_permutations(self, seed):
        rng = random.Random(seed)
        make = random_balanced_interaction_set if seed % 2 else random_interaction_set
        u = make(rng, max_size=4, max_len=3)
        assert interact_n_plus(u) == interact_n_plus_oracle(u)

    def test_perfect_matching_needs_augmenting_paths(self):
        # greedy would pair l0 with r0 and strand l1
        left = [("c", L), ("c", R)]
        right = [("c", R), ("c", L)]
        assert perfect_matching(left, right) and brute_force_matching(left, right)
