"""Relating the two semantics: the xi check, lifting resumptions to
continuations, invariance of the add operators, and a bounded search for
contexts that tell two statements apart."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import syntax as s
from .bags import Bag
from .denotational import (PHI_E, AddLeftMerge, AddLeftSync, AddSeq, Continuation, Denotational,
                           OfStmt, Restriction, cont_transform)
from .operational import (E, Operational, Resumption, push_guard, well_formed, with_left_merge,
                          with_restriction, with_seq, with_sync_push)
from .syntax import Calculus, Program, Statement
from .traces import Trace, TraceSet, sorted_traces, truncate_set, xi_set


class IllFormedResumption(ValueError):
    pass


# -- lifting ----------------------------------------------------------------

def _lift_value(v):
    return PHI_E if v is E else OfStmt(v)


def lift_resumption(rho: Resumption, nbar: Optional[int] = None) -> Continuation:
    """Statements become ``OfStmt`` terms; ``E`` becomes the empty denotation.

    With ``nbar`` given, ``rho`` is first checked for well-formedness.
    """
    if nbar is not None and not well_formed(rho, nbar):
        raise IllFormedResumption(f"not derivable: {rho!r}")
    kbag = Bag(_lift_value(rho.kbag.default), rho.kbag.domain,
               tuple((a, _lift_value(v)) for a, v in rho.kbag.table))
    return Continuation(tuple(OfStmt(x) for x in rho.sync), rho.iset, rho.ids, kbag)


# -- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    verdict: str  # equal | diff | found | not_found
    witness: object = None
    left: Optional[TraceSet] = None
    right: Optional[TraceSet] = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("equal", "found")

    def to_json(self) -> dict:
        witness = self.witness
        if isinstance(witness, Trace):
            witness = witness.to_json()
        elif isinstance(witness, (s.Act, s.Var, s.ContextHole, s.Restrict) + s.BINARY):
            witness = s.render(witness)
        out = {"verdict": self.verdict, "witness": witness}
        if self.left is not None:
            out["left"] = [q.to_json() for q in sorted_traces(self.left)]
            out["right"] = [q.to_json() for q in sorted_traces(self.right)]
        return out


# -- the xi check ----------------------------------------------------------------

def operational_budget(m: int, nbar: int) -> int:
    """Operational steps needed so that xi of the result fills ``m`` symbols.

    Each operational symbol becomes ``nbar + 1`` denotational ones, so traces
    longer than this are cut by the final truncation anyway.
    """
    return -(-m // (nbar + 1))


def xi_sides(x: Statement, program: Program, m: int,
             op: Optional[Operational] = None,
             den: Optional[Denotational] = None) -> Tuple[TraceSet, TraceSet]:
    op = op or Operational(program)
    den = den or Denotational(program)
    nbar = program.nbar
    left = truncate_set(xi_set(op.semantics(x, operational_budget(m, nbar)), nbar), m)
    right = truncate_set(den.semantics(x, m), m)
    return left, right


def check_xi(x: Statement, program: Program, m: int, **engines) -> Verdict:
    left, right = xi_sides(x, program, m, **engines)
    if left == right:
        return Verdict("equal", None, left, right)
    witness = sorted_traces(left ^ right)[0]
    return Verdict("diff", witness, left, right)


# -- invariance of the add operators -----------------------------------------------

def invariance_squares(rho: Resumption, x: Statement, channel: str, nbar: int):
    """Pairs (transform after lift, lift after rule), one per applicable transformer."""
    g = lift_resumption(rho)
    d = OfStmt(x)
    yield "restrict", cont_transform(Restriction(channel), g), lift_resumption(with_restriction(rho, channel))
    yield "seq", cont_transform(AddSeq(d), g), lift_resumption(with_seq(rho, x))
    yield "left_merge", cont_transform(AddLeftMerge(d), g), lift_resumption(with_left_merge(rho, x))
    if push_guard(rho, nbar):
        yield "left_sync", cont_transform(AddLeftSync(d), g, nbar), lift_resumption(with_sync_push(rho, x))


def check_invariance(rho: Resumption, x: Statement, program: Program, channel: str = "c1") -> bool:
    return all(a == b for _, a, b in invariance_squares(rho, x, channel, program.nbar))


# -- contexts ------------------------------------------------------------------------

CONTEXT_OPERATORS = (s.Merge, s.SyncMerge, s.Seq, s.Choice, s.LeftMerge, s.LeftSyncMerge)


@dataclass(frozen=True)
class Vocabulary:
    actions: Tuple[s.Action, ...]
    channels: Tuple[str, ...] = ()


def default_vocabulary(program: Program, *xs: Statement) -> Vocabulary:
    """Outputs and single inputs on every channel in sight.

    In the plus calculus single-item joint prefixes play both roles.
    """
    chans = set(program.channels)
    for x in xs:
        for a in s.actions(x):
            if isinstance(a, s.Output):
                chans.add(a.channel)
            elif isinstance(a, s.JointInput):
                chans.update(a.names)
            elif isinstance(a, s.JointPrefix):
                chans.update(item.channel for item in a.items)
    channels = tuple(sorted(chans))
    if program.calculus is Calculus.CCSNPLUS:
        acts = [s.JointPrefix((s.SyncAction(c, True),)) for c in channels]
        acts += [s.JointPrefix((s.SyncAction(c, False),)) for c in channels]
    else:
        acts = [s.Output(c) for c in channels] + [s.JointInput((c,)) for c in channels]
    return Vocabulary(tuple(acts), channels)


def _contexts_of_size(n: int, depth: int, leaves: Sequence[Statement], channels: Sequence[str],
                      memo: Dict) -> List[Statement]:
    """All trees with exactly ``n`` nodes and depth at most ``depth``."""
    key = (n, depth)
    if key in memo:
        return memo[key]
    out: List[Statement] = []
    if n == 1:
        out = list(leaves)
    elif depth > 0:
        for op in CONTEXT_OPERATORS:
            for k in range(1, n - 1):
                for left in _contexts_of_size(k, depth - 1, leaves, channels, memo):
                    for right in _contexts_of_size(n - 1 - k, depth - 1, leaves, channels, memo):
                        out.append(op(left, right))
        for c in channels:
            out.extend(s.Restrict(body, c)
                       for body in _contexts_of_size(n - 1, depth - 1, leaves, channels, memo))
    memo[key] = out
    return out


def enumerate_contexts(depth: int, vocab: Vocabulary) -> Iterator[Statement]:
    """Contexts of depth at most ``depth``, by node count, each with a hole."""
    leaves = [s.HOLE] + [s.Act(a) for a in vocab.actions]
    memo: Dict = {}
    max_nodes = 2 ** (depth + 1) - 1
    for n in range(1, max_nodes + 1):
        for ctx in _contexts_of_size(n, depth, leaves, vocab.channels, memo):
            if s.has_hole(ctx):
                yield ctx


def discriminate(x1: Statement, x2: Statement, program: Program, max_depth: int = 2, m: int = 16,
                 vocab: Optional[Vocabulary] = None) -> Verdict:
    """First context under which the operational trace sets of ``x1`` and ``x2`` differ.

    ``not_found`` only means the search was exhausted at ``max_depth``.
    """
    if vocab is None:
        vocab = default_vocabulary(program, x1, x2)
    op = Operational(program)
    if x1 == x2:
        return Verdict("not_found", max_depth)
    for ctx in enumerate_contexts(max_depth, vocab):
        left = op.semantics(s.fill_context(ctx, x1), m)
        right = op.semantics(s.fill_context(ctx, x2), m)
        if left != right:
            return Verdict("found", ctx, left, right)
    return Verdict("not_found", max_depth)


def denotational_difference(x1: Statement, x2: Statement, program: Program, rng: random.Random,
                            samples: int = 50, m: int = 16) -> Optional[Continuation]:
    """A lifted random resumption at which the denotations of ``x1`` and ``x2`` differ."""
    from .generators import random_resumption

    den = Denotational(program)
    for _ in range(samples):
        g = lift_resumption(random_resumption(rng, program.nbar, calculus=program.calculus))
        if den.eval(OfStmt(x1), g, m) != den.eval(OfStmt(x2), g, m):
            return g
    return None
