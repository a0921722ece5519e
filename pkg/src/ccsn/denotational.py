"""Continuation-based denotational semantics.

Denotations are kept intensional: a ``DenTerm`` names the semantic operator
tree, and ``Denotational.eval`` applies it to a continuation.  ``OfStmt(x)``
stands for the meaning of statement ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from ._util import cached_hash, deep_stack
from . import identifiers as ids_
from . import syntax as s
from .bags import Bag
from .identifiers import HOLE, Identifier, substitute
from .interaction import InteractionSet, interact
from .operational import collapse_k
from .syntax import Program, Statement, TAU
from .traces import CUT, Trace, TraceSet, choice_merge


@cached_hash
@dataclass(frozen=True)
class OfStmt:
    stmt: Statement


@cached_hash
@dataclass(frozen=True)
class RestrictT:
    body: "DenTerm"
    channel: str


@cached_hash
@dataclass(frozen=True)
class SeqT:
    left: "DenTerm"
    right: "DenTerm"


@cached_hash
@dataclass(frozen=True)
class ChoiceT:
    left: "DenTerm"
    right: "DenTerm"


@cached_hash
@dataclass(frozen=True)
class MergeT:
    left: "DenTerm"
    right: "DenTerm"


@cached_hash
@dataclass(frozen=True)
class SyncMergeT:
    left: "DenTerm"
    right: "DenTerm"


@cached_hash
@dataclass(frozen=True)
class LeftMergeT:
    left: "DenTerm"
    right: "DenTerm"


@cached_hash
@dataclass(frozen=True)
class LeftSyncMergeT:
    left: "DenTerm"
    right: "DenTerm"


DenTerm = Union[OfStmt, RestrictT, SeqT, ChoiceT, MergeT, SyncMergeT, LeftMergeT, LeftSyncMergeT]


@cached_hash
@dataclass(frozen=True)
class EmptyDen:
    """The empty denotation: nothing left to run."""

    def __str__(self) -> str:
        return "phi_E"


PHI_E = EmptyDen()
Denotation = Union[EmptyDen, DenTerm]


class GuardViolation(ValueError):
    pass


@cached_hash
@dataclass(frozen=True)
class Continuation:
    sync: Tuple[DenTerm, ...] = ()
    iset: InteractionSet = frozenset()
    ids: Tuple[Identifier, ...] = (HOLE,)
    kbag: Bag = field(default_factory=lambda: Bag(PHI_E))

    @property
    def head(self) -> Identifier:
        return self.ids[0]


def gamma0() -> Continuation:
    return Continuation()


def card_u(g: Continuation) -> int:
    return len(g.iset)


def card_gamma(g: Continuation, nbar: int) -> bool:
    return len(g.sync) + len(g.iset) < nbar


# -- continuation transformers ------------------------------------------------

def restrict_cont(g: Continuation, c: str) -> Continuation:
    return Continuation(g.sync, g.iset, (substitute(g.head, ids_.nu(c)),) + g.ids[1:], g.kbag)


def add_seq(d: DenTerm, g: Continuation) -> Continuation:
    a = g.head
    return Continuation(g.sync, g.iset, (substitute(a, ids_.SEQ_LEFT),) + g.ids[1:],
                        g.kbag.bind(substitute(a, ids_.SEQ_MARKER), d))


def add_left_merge(d: DenTerm, g: Continuation) -> Continuation:
    a = g.head
    return Continuation(g.sync, g.iset, (substitute(a, ids_.PAR_LEFT),) + g.ids[1:],
                        g.kbag.bind(substitute(a, ids_.PAR_RIGHT), d))


def add_left_sync(d: DenTerm, g: Continuation, nbar: Optional[int] = None) -> Continuation:
    if nbar is not None and not card_gamma(g, nbar):
        raise GuardViolation("synchronous stack is full")
    a = g.head
    return Continuation((d,) + g.sync, g.iset,
                        (substitute(a, ids_.PAR_LEFT), substitute(a, ids_.PAR_RIGHT)) + g.ids[1:],
                        g.kbag)


@cached_hash
@dataclass(frozen=True)
class Restriction:
    channel: str


@cached_hash
@dataclass(frozen=True)
class AddSeq:
    den: DenTerm


@cached_hash
@dataclass(frozen=True)
class AddLeftMerge:
    den: DenTerm


@cached_hash
@dataclass(frozen=True)
class AddLeftSync:
    den: DenTerm


Transformer = Union[Restriction, AddSeq, AddLeftMerge, AddLeftSync]


def cont_transform(kind: Transformer, g: Continuation, nbar: Optional[int] = None) -> Continuation:
    if isinstance(kind, Restriction):
        return restrict_cont(g, kind.channel)
    if isinstance(kind, AddSeq):
        return add_seq(kind.den, g)
    if isinstance(kind, AddLeftMerge):
        return add_left_merge(kind.den, g)
    return add_left_sync(kind.den, g, nbar)


# -- collapsing the continuation bag ---------------------------------------------

def _restrict_hat(d: Denotation, c: str) -> Denotation:
    return PHI_E if d is PHI_E else RestrictT(d, c)


def _seq_hat(d1: Denotation, d2: Denotation) -> Denotation:
    if d1 is PHI_E:
        return d2
    if d2 is PHI_E:
        return d1
    return SeqT(d1, d2)


def _par_hat(d1: Denotation, d2: Denotation) -> Denotation:
    if d1 is PHI_E:
        return d2
    if d2 is PHI_E:
        return d1
    return MergeT(d1, d2)


def collapse_kd(a: Identifier, k: Bag) -> Denotation:
    return collapse_k(a, k, _restrict_hat, _seq_hat, _par_hat, PHI_E)


def unfold(x: Statement) -> DenTerm:
    """One application of the semantic equations to a compound statement."""
    if isinstance(x, s.Restrict):
        return RestrictT(OfStmt(x.body), x.channel)
    if isinstance(x, s.Seq):
        return SeqT(OfStmt(x.left), OfStmt(x.right))
    if isinstance(x, s.Choice):
        return ChoiceT(OfStmt(x.left), OfStmt(x.right))
    if isinstance(x, s.Merge):
        return MergeT(OfStmt(x.left), OfStmt(x.right))
    if isinstance(x, s.SyncMerge):
        return SyncMergeT(OfStmt(x.left), OfStmt(x.right))
    if isinstance(x, s.LeftMerge):
        return LeftMergeT(OfStmt(x.left), OfStmt(x.right))
    if isinstance(x, s.LeftSyncMerge):
        return LeftSyncMergeT(OfStmt(x.left), OfStmt(x.right))
    raise TypeError(f"no unfolding for {x!r}")


# -- evaluation ------------------------------------------------------------------

def _emit(symbols: Tuple[str, ...], m: int) -> Tuple[bool, TraceSet]:
    if len(symbols) > m:
        return False, frozenset([Trace(symbols[:m], CUT)])
    return True, frozenset([Trace(symbols)])


class Denotational:
    """Evaluates denotations against continuations under a symbol budget.

    Every emitted symbol (silent or not) costs one unit of budget; a trace
    that would exceed the budget ends in ``cut``.
    """

    def __init__(self, program: Program) -> None:
        self.program = program
        self.nbar = program.nbar
        self.unreachable_hits = 0
        self._cache: Dict[Tuple[DenTerm, Continuation, int], TraceSet] = {}

    def semantics(self, x: Statement, m: int) -> TraceSet:
        return self.eval(OfStmt(x), gamma0(), m)

    @deep_stack
    def eval(self, d: DenTerm, g: Continuation, m: int) -> TraceSet:
        return self._eval_cached(d, g, m)

    def _eval_cached(self, d: DenTerm, g: Continuation, m: int) -> TraceSet:
        key = (d, g, m)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._cache[key] = self._eval(d, g, m)
        return cached

    def _then(self, symbols: Tuple[str, ...], m: int, d: DenTerm, g: Continuation) -> TraceSet:
        """``symbols`` followed by the traces of ``d`` applied to ``g``."""
        if len(symbols) > m:
            return frozenset([Trace(symbols[:m], CUT)])
        rest = self._eval_cached(d, g, m - len(symbols))
        return frozenset(Trace(symbols + q.symbols, q.end) for q in rest)

    def _eval(self, d: DenTerm, g: Continuation, m: int) -> TraceSet:
        nbar = self.nbar
        if isinstance(d, OfStmt):
            x = d.stmt
            if isinstance(x, s.Act):
                return self._op_a(x.action, g, m)
            if isinstance(x, s.Var):
                return self._eval_cached(OfStmt(self.program.body(x.name)), g, m)
            return self._eval_cached(unfold(x), g, m)
        if isinstance(d, RestrictT):
            return self._eval_cached(d.body, restrict_cont(g, d.channel), m)
        if isinstance(d, SeqT):
            return self._eval_cached(d.left, add_seq(d.right, g), m)
        if isinstance(d, LeftMergeT):
            return self._eval_cached(d.left, add_left_merge(d.right, g), m)
        if isinstance(d, LeftSyncMergeT):
            if card_gamma(g, nbar):
                return self._eval_cached(d.left, add_left_sync(d.right, g), m)
            return _emit((TAU,) * (nbar - card_u(g)), m)[1]
        level = card_u(g)
        if isinstance(d, ChoiceT):
            branches = [d.left, d.right]
        elif isinstance(d, SyncMergeT):
            branches = [LeftSyncMergeT(d.left, d.right), LeftSyncMergeT(d.right, d.left)]
        elif isinstance(d, MergeT):
            branches = [LeftMergeT(d.left, d.right), LeftMergeT(d.right, d.left),
                        LeftSyncMergeT(d.left, d.right), LeftSyncMergeT(d.right, d.left)]
        else:
            raise TypeError(f"not a denotation term: {d!r}")
        result = self._eval_cached(branches[0], g, m)
        for other in branches[1:]:
            result = choice_merge(level, result, self._eval_cached(other, g, m), nbar)
        return result

    @deep_stack
    def op_a(self, a: s.Action, g: Continuation, m: int) -> TraceSet:
        return self._op_a(a, g, m)

    def _op_a(self, a: s.Action, g: Continuation, m: int) -> TraceSet:
        nbar = self.nbar
        u = g.iset
        wait = (TAU,) * max(nbar - len(u), 0)
        if len(u) > nbar:
            # excluded by len(sync) + |u| <= nbar on every reachable continuation
            self.unreachable_hits += 1
            return _emit(wait, m)[1]
        joined = u | {(a, g.head)}
        if g.sync:
            rest = Continuation(g.sync[1:], joined, g.ids[1:], g.kbag)
            return self._then((TAU,), m, g.sync[0], rest)
        b = interact(joined, self.program.calculus, nbar)
        if b is None:
            return _emit(wait, m)[1]
        k = collapse_kd(HOLE, g.kbag)
        if k is PHI_E:
            return _emit(wait + (b,), m)[1]
        return self._then(wait + (b,), m, k, gamma0())


def eval_den(d: DenTerm, g: Continuation, program: Program, m: int) -> TraceSet:
    return Denotational(program).eval(d, g, m)


def op_a(a: s.Action, g: Continuation, program: Program, m: int) -> TraceSet:
    return Denotational(program).op_a(a, g, m)


def den_d(x: Statement, program: Program, m: int) -> TraceSet:
    return Denotational(program).semantics(x, m)
