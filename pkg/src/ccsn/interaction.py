"""Interaction sets and the interaction functions of both calculi."""
from __future__ import annotations

import itertools
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .identifiers import ChannelName, Identifier, binary_interact
from .syntax import (Action, Calculus, Internal, JointInput, JointPrefix, Output,
                     SyncAction, TAU)

Located = Tuple[Action, Identifier]
InteractionSet = FrozenSet[Located]
Endpoint = Tuple[ChannelName, Identifier]

# ``None`` plays the role of "no interaction"; a successful interaction
# yields the internal action name.
InteractionResult = Optional[str]


def split_receives(j: JointPrefix, a: Identifier) -> List[Endpoint]:
    return [(item.channel, a) for item in j.items if not item.output]


def split_sends(j: JointPrefix, a: Identifier) -> List[Endpoint]:
    return [(item.channel, a) for item in j.items if item.output]


def match_sequences(recv: Sequence[Endpoint], send: Sequence[Endpoint]) -> bool:
    """Pointwise check of two equally long sequences of inputs and outputs."""
    if len(recv) != len(send):
        return False
    return all(binary_interact(r, q) for r, q in zip(recv, send))


def perfect_matching(left: Sequence[Endpoint], right: Sequence[Endpoint]) -> bool:
    """Is there a bijection pairing every ``left`` with a compatible ``right``?

    Augmenting-path bipartite matching; candidates are bucketed by channel
    since ``binary_interact`` never pairs different channels.
    """
    if len(left) != len(right):
        return False
    by_channel = {}
    for k, (c, _) in enumerate(right):
        by_channel.setdefault(c, []).append(k)
    owner: List[Optional[int]] = [None] * len(right)

    def augment(i: int, seen: set) -> bool:
        for k in by_channel.get(left[i][0], ()):
            if k in seen or not binary_interact(left[i], right[k]):
                continue
            seen.add(k)
            if owner[k] is None or augment(owner[k], seen):
                owner[k] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(left)))


def brute_force_matching(left: Sequence[Endpoint], right: Sequence[Endpoint]) -> bool:
    """Reference check enumerating every ordering of ``right``."""
    if len(left) != len(right):
        return False
    return any(match_sequences(left, perm) for perm in itertools.permutations(right))


def _singleton(u: InteractionSet) -> InteractionResult:
    (action, _), = u
    if isinstance(action, Internal):
        return action.name
    return None


def interact_n(u: Iterable[Located], nbar: int = 2) -> InteractionResult:
    u = frozenset(u)
    if not u:
        return None
    if len(u) == 1:
        return _singleton(u)
    joints = [(a, alpha) for a, alpha in u if isinstance(a, JointInput)]
    outputs = [(a.channel, alpha) for a, alpha in u if isinstance(a, Output)]
    if len(joints) != 1 or len(outputs) + 1 != len(u):
        return None
    joint, holder = joints[0]
    receivers = [(c, holder) for c in joint.names]
    return TAU if perfect_matching(receivers, outputs) else None


def _msync(u: InteractionSet, matcher) -> InteractionResult:
    if not all(isinstance(a, JointPrefix) for a, _ in u):
        return None
    recv: List[Endpoint] = []
    send: List[Endpoint] = []
    for j, alpha in sorted(u, key=repr):
        recv.extend(split_receives(j, alpha))
        send.extend(split_sends(j, alpha))
    if len(recv) != len(send):
        return None
    return TAU if matcher(recv, send) else None


def interact_n_plus(u: Iterable[Located], nbar: int = 2) -> InteractionResult:
    u = frozenset(u)
    if not u:
        return None
    if len(u) == 1:
        return _singleton(u)
    return _msync(u, perfect_matching)


def interact_n_plus_oracle(u: Iterable[Located]) -> InteractionResult:
    """msync computed by literal permutation enumeration."""
    u = frozenset(u)
    if not u:
        return None
    if len(u) == 1:
        return _singleton(u)
    return _msync(u, brute_force_matching)


def interact(u: Iterable[Located], calculus: Calculus, nbar: int = 2) -> InteractionResult:
    if calculus is Calculus.CCSNPLUS:
        return interact_n_plus(u, nbar)
    return interact_n(u, nbar)


def to_joint_prefix(a: Action) -> Action:
    """Translate a ccsn action to the corresponding ccsn+ action."""
    if isinstance(a, Output):
        return JointPrefix((SyncAction(a.channel, True),))
    if isinstance(a, JointInput):
        return JointPrefix(tuple(SyncAction(c) for c in a.names))
    return a
