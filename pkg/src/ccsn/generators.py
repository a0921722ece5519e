"""Seeded random generators for identifiers, programs, interaction sets and
resumptions.  All take an explicit ``random.Random``."""
from __future__ import annotations

import random
from typing import List, Optional, Sequence

from . import identifiers as I
from . import syntax as s
from .operational import (Resumption, initial_resumption, push_guard, with_left_merge,
                          with_pop, with_restriction, with_seq, with_sync_push)
from .syntax import Calculus, Program, Statement

CHANNEL_POOL = ("c1", "c2", "c3")
INTERNAL_POOL = ("b1", "b2", "b3", s.TAU)
MAX_WIDTH = 6


def random_identifier(rng: random.Random, max_depth: int = 6, names: Sequence[str] = CHANNEL_POOL) -> I.Identifier:
    """Uniform constructor choice, depth bounded; leaves are ``*`` or ``(;*)``."""
    depth = rng.randint(0, max_depth)
    a: I.Identifier = rng.choice((I.HOLE, I.SEQ_MARKER))
    for _ in range(depth):
        kind = rng.randrange(4)
        if kind == 0:
            a = I.SeqLeft(a)
        elif kind == 1:
            a = I.Restrict(a, rng.choice(names))
        elif kind == 2:
            a = I.ParLeft(a)
        else:
            a = I.ParRight(a)
    return a


def random_hole_identifier(rng: random.Random, max_depth: int = 6,
                           names: Sequence[str] = CHANNEL_POOL) -> I.Identifier:
    a = random_identifier(rng, max_depth, names)
    return I.substitute(a, I.HOLE) if I.leaf(a) == I.HOLE else _reroot(a)


def _reroot(a: I.Identifier) -> I.Identifier:
    if I.is_leaf(a):
        return I.HOLE
    if isinstance(a, I.Restrict):
        return I.Restrict(_reroot(a.child), a.name)
    return type(a)(_reroot(a.child))


def random_extension(rng: random.Random, a: I.Identifier, max_depth: int = 3) -> I.Identifier:
    """An identifier above ``a`` in the prefix order (when ``a`` ends in ``*``)."""
    return I.substitute(a, random_identifier(rng, max_depth))


# -- actions -------------------------------------------------------------------

def random_action(rng: random.Random, calculus: Calculus, nbar: int,
                  channels: Sequence[str] = CHANNEL_POOL,
                  internals: Sequence[str] = INTERNAL_POOL) -> s.Action:
    r = rng.random()
    if r < 0.45 or not channels:
        return s.Internal(rng.choice(internals))
    if r < 0.48:
        return s.STOP
    m = rng.randint(1, nbar)
    if calculus is Calculus.CCSNPLUS:
        return s.JointPrefix(tuple(s.SyncAction(rng.choice(channels), rng.random() < 0.5)
                                   for _ in range(m)))
    if r < 0.74:
        return s.Output(rng.choice(channels))
    return s.JointInput(tuple(rng.choice(channels) for _ in range(m)))


def random_joint_prefix(rng: random.Random, max_len: int = 3,
                        channels: Sequence[str] = CHANNEL_POOL) -> s.JointPrefix:
    m = rng.randint(1, max_len)
    return s.JointPrefix(tuple(s.SyncAction(rng.choice(channels), rng.random() < 0.5)
                               for _ in range(m)))


def random_interaction_set(rng: random.Random, max_size: int = 4, max_len: int = 3,
                           channels: Sequence[str] = ("c1", "c2")):
    """A set of joint prefixes at random positions, sized 1..max_size."""
    n = rng.randint(1, max_size)
    positions = [random_hole_identifier(rng, 3, channels) for _ in range(n)]
    return frozenset((random_joint_prefix(rng, max_len, channels), a) for a in positions)


def random_balanced_interaction_set(rng: random.Random, max_size: int = 4, max_len: int = 3,
                                    channels: Sequence[str] = ("c1", "c2")):
    """Participants whose sends and receives pair up by channel.

    Positions are distinct parallel branches, occasionally under a
    restriction, so the matching can still fail.
    """
    n = rng.randint(2, max_size)
    positions = []
    for k in range(n):
        a: I.Identifier = I.HOLE
        for bit in format(k, "02b"):
            a = I.substitute(a, I.PAR_LEFT if bit == "0" else I.PAR_RIGHT)
        if rng.random() < 0.15:
            a = I.substitute(a, I.nu(rng.choice(channels)))
        positions.append(a)
    items: List[List[s.SyncAction]] = [[] for _ in range(n)]
    for _ in range(rng.randint(1, n * max_len // 2)):
        sender, receiver = rng.sample(range(n), 2)
        if len(items[sender]) >= max_len or len(items[receiver]) >= max_len:
            break
        c = rng.choice(channels)
        items[sender].append(s.SyncAction(c, True))
        items[receiver].append(s.SyncAction(c, False))
    out = set()
    for its, a in zip(items, positions):
        if not its:
            its = [s.SyncAction(rng.choice(channels), rng.random() < 0.5)]
        rng.shuffle(its)
        out.add((s.JointPrefix(tuple(its)), a))
    return frozenset(out)


# -- statements and programs -------------------------------------------------------

_BINARY = (s.Seq, s.Choice, s.Merge, s.SyncMerge, s.LeftMerge, s.LeftSyncMerge)
# biased towards operators that do not block on their own
_WEIGHTS = (3, 2, 3, 1, 1, 1)


def parallel_width(x: Statement, decls, _active: frozenset = frozenset()) -> int:
    """How many action leaves of ``x`` may be live at once.

    Sequential and choice operators take the maximum of their operands and
    parallel ones the sum.  A recursive call already being measured counts 0,
    which is exact when recursion never sits under a parallel operator.
    """
    if isinstance(x, s.Act):
        return 1
    if isinstance(x, s.Var):
        if x.name in _active:
            return 0
        return parallel_width(decls[x.name], decls, _active | {x.name})
    if isinstance(x, s.Restrict):
        return parallel_width(x.body, decls, _active)
    left = parallel_width(x.left, decls, _active)
    right = parallel_width(x.right, decls, _active)
    if isinstance(x, (s.Seq, s.Choice)):
        return max(left, right)
    return left + right


class ProgramGenerator:
    """Random well-formed programs: guarded declarations, bounded depth.

    Programs wider than ``max_width`` (see ``parallel_width``) are redrawn;
    without the cap a few draws have state spaces far beyond desk scale.
    """

    def __init__(self, rng: random.Random, calculus: Calculus = Calculus.CCSN, nbar: int = 2,
                 max_depth: int = 4, max_channels: int = 3, max_decls: int = 2,
                 max_width: Optional[int] = MAX_WIDTH) -> None:
        self.rng = rng
        self.calculus = calculus
        self.nbar = nbar
        self.max_depth = max_depth
        self.max_channels = max_channels
        self.max_decls = max_decls
        self.max_width = max_width

    def action(self) -> Statement:
        return s.Act(random_action(self.rng, self.calculus, self.nbar, self.channels))

    def statement(self, depth: int, variables: Sequence[str]) -> Statement:
        rng = self.rng
        if depth == 0 or rng.random() < 0.3:
            if variables and rng.random() < 0.25:
                return s.Var(rng.choice(variables))
            return self.action()
        if rng.random() < 0.1 and self.channels:
            return s.Restrict(self.statement(depth - 1, variables), rng.choice(self.channels))
        op = rng.choices(_BINARY, _WEIGHTS)[0]
        return op(self.statement(depth - 1, variables), self.statement(depth - 1, variables))

    def guarded(self, depth: int, variables: Sequence[str]) -> Statement:
        """A guarded declaration body.

        Recursive calls never sit under a parallel operator, so unfolding
        cannot spawn unboundedly many components.
        """
        rng = self.rng
        if depth == 0 or rng.random() < 0.3:
            return self.action()
        if rng.random() < 0.1 and self.channels:
            return s.Restrict(self.guarded(depth - 1, variables), rng.choice(self.channels))
        op = rng.choices(_BINARY, _WEIGHTS)[0]
        if op is s.Seq:
            return s.Seq(self.guarded(depth - 1, variables), self.tail(depth - 1, variables))
        if op is s.Choice:
            return s.Choice(self.guarded(depth - 1, variables), self.guarded(depth - 1, variables))
        if op is s.LeftMerge:
            return s.LeftMerge(self.guarded(depth - 1, ()), self.statement(depth - 1, ()))
        return op(self.guarded(depth - 1, ()), self.guarded(depth - 1, ()))

    def tail(self, depth: int, variables: Sequence[str]) -> Statement:
        """Like ``statement`` but keeps variables out of parallel operands."""
        rng = self.rng
        if depth == 0 or rng.random() < 0.3:
            if variables and rng.random() < 0.25:
                return s.Var(rng.choice(variables))
            return self.action()
        if rng.random() < 0.1 and self.channels:
            return s.Restrict(self.tail(depth - 1, variables), rng.choice(self.channels))
        op = rng.choices(_BINARY, _WEIGHTS)[0]
        if op in (s.Seq, s.Choice):
            return op(self.tail(depth - 1, variables), self.tail(depth - 1, variables))
        return op(self.statement(depth - 1, ()), self.statement(depth - 1, ()))

    def program(self) -> Program:
        while True:
            p = self._draw()
            if self.max_width is None or parallel_width(p.main, p.decls) <= self.max_width:
                return p

    def _draw(self) -> Program:
        rng = self.rng
        self.channels = list(CHANNEL_POOL[:rng.randint(1, self.max_channels)])
        names = [f"y{i + 1}" for i in range(rng.randint(0, self.max_decls))]
        decls = {y: self.guarded(self.max_depth, names) for y in names}
        main = self.statement(self.max_depth, names)
        return Program(main, decls, frozenset(self.channels), self.calculus, self.nbar)


def random_program(rng: random.Random, calculus: Calculus = Calculus.CCSN, nbar: int = 2,
                   **kwargs) -> Program:
    return ProgramGenerator(rng, calculus, nbar, **kwargs).program()


def random_statement(rng: random.Random, calculus: Calculus = Calculus.CCSN, nbar: int = 2,
                     depth: int = 3, variables: Sequence[str] = ()) -> Statement:
    gen = ProgramGenerator(rng, calculus, nbar)
    gen.channels = list(CHANNEL_POOL)
    return gen.statement(depth, list(variables))


# -- resumptions ---------------------------------------------------------------------

def random_resumption(rng: random.Random, nbar: int = 2, steps: int = 8,
                      calculus: Calculus = Calculus.CCSN) -> Resumption:
    """A random walk over the resumption formation rules from the initial one."""
    rho = initial_resumption()
    for _ in range(rng.randint(0, steps)):
        moves = ["nu", "seq", "lmerge"]
        if push_guard(rho, nbar):
            moves.append("push")
        if rho.sync and len(rho.iset) <= nbar:
            moves.append("pop")
        move = rng.choice(moves)
        x = random_statement(rng, calculus, nbar, depth=1)
        if move == "nu":
            rho = with_restriction(rho, rng.choice(CHANNEL_POOL))
        elif move == "seq":
            rho = with_seq(rho, x)
        elif move == "lmerge":
            rho = with_left_merge(rho, x)
        elif move == "push":
            rho = with_sync_push(rho, x)
        else:
            _, rho = with_pop(rho, random_action(rng, calculus, nbar))
    return rho
