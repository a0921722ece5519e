"""Resumptions, the transition relation and the budgeted operational semantics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple, Union

from ._util import cached_hash, deep_stack
from . import identifiers as ids_
from . import syntax as s
from .bags import Bag
from .identifiers import HOLE, Identifier, substitute
from .interaction import InteractionSet, interact
from .syntax import Program, Statement
from .traces import CUT, DELTA, EMPTY_TRACE, Trace, TraceSet, prefix_action


@cached_hash
@dataclass(frozen=True)
class Terminated:
    def __str__(self) -> str:
        return "E"


E = Terminated()
RRes = Union[Terminated, Statement]


class AmbiguousRestriction(RuntimeError):
    pass


class RewriteBoundExceeded(RuntimeError):
    pass


@cached_hash
@dataclass(frozen=True)
class Resumption:
    sync: Tuple[Statement, ...] = ()
    iset: InteractionSet = frozenset()
    ids: Tuple[Identifier, ...] = (HOLE,)
    kbag: Bag = field(default_factory=lambda: Bag(E))

    @property
    def head(self) -> Identifier:
        return self.ids[0]


def initial_resumption() -> Resumption:
    return Resumption()


@cached_hash
@dataclass(frozen=True)
class Running:
    stmt: Statement
    rho: Resumption


@cached_hash
@dataclass(frozen=True)
class Final:
    result: RRes


Configuration = Union[Running, Final]


def measure(rho: Resumption) -> Tuple[int, int]:
    return len(rho.iset), sum(ids_.size(a) for a in rho.ids)


def push_guard(rho: Resumption, nbar: int) -> bool:
    return len(rho.sync) + len(rho.iset) < nbar


# -- resumption rules -------------------------------------------------------
# Each builds the conclusion of one formation rule from its premise.

def with_restriction(rho: Resumption, c: str) -> Resumption:
    return Resumption(rho.sync, rho.iset, (substitute(rho.head, ids_.nu(c)),) + rho.ids[1:], rho.kbag)


def with_seq(rho: Resumption, x: Statement) -> Resumption:
    a = rho.head
    return Resumption(rho.sync, rho.iset, (substitute(a, ids_.SEQ_LEFT),) + rho.ids[1:],
                      rho.kbag.bind(substitute(a, ids_.SEQ_MARKER), x))


def with_left_merge(rho: Resumption, x: Statement) -> Resumption:
    a = rho.head
    return Resumption(rho.sync, rho.iset, (substitute(a, ids_.PAR_LEFT),) + rho.ids[1:],
                      rho.kbag.bind(substitute(a, ids_.PAR_RIGHT), x))


def with_sync_push(rho: Resumption, x: Statement) -> Resumption:
    a = rho.head
    return Resumption((x,) + rho.sync, rho.iset,
                      (substitute(a, ids_.PAR_LEFT), substitute(a, ids_.PAR_RIGHT)) + rho.ids[1:],
                      rho.kbag)


def with_pop(rho: Resumption, action: s.Action) -> Tuple[Statement, Resumption]:
    """Move ``action`` at the head position into the interaction set."""
    return rho.sync[0], Resumption(rho.sync[1:], rho.iset | {(action, rho.head)}, rho.ids[1:], rho.kbag)


# -- collapsing the bag ----------------------------------------------------

def restrict_r(r: RRes, c: str) -> RRes:
    return E if r is E else s.Restrict(r, c)


def seq_r(r1: RRes, r2: RRes) -> RRes:
    if r1 is E:
        return r2
    if r2 is E:
        return r1
    return s.Seq(r1, r2)


def par_r(r1: RRes, r2: RRes) -> RRes:
    if r1 is E:
        return r2
    if r2 is E:
        return r1
    return s.Merge(r1, r2)


def collapse_k(a: Identifier, k: Bag, restrict=restrict_r, seq=seq_r, par=par_r, empty=E):
    """Fold the pending computations of ``k`` below ``a`` back into one value.

    The combinators are parameters so the denotational side can reuse the
    traversal with its own lifted operators.
    """
    pi = k.domain
    below = ids_.filter_below(pi, a)
    if not below:
        return empty
    if below == {a}:
        return k[a]
    names = ids_.restricted_names_below(pi, a)
    if len(names) > 1:
        raise AmbiguousRestriction(f"restrictions {sorted(names)} meet at {a}")
    if names:
        (c,) = names
        return restrict(collapse_k(substitute(a, ids_.nu(c)), k, restrict, seq, par, empty), c)
    marker = substitute(a, ids_.SEQ_MARKER)
    if marker in pi:
        return seq(collapse_k(substitute(a, ids_.SEQ_LEFT), k, restrict, seq, par, empty), k[marker])
    return par(collapse_k(substitute(a, ids_.PAR_LEFT), k, restrict, seq, par, empty),
               collapse_k(substitute(a, ids_.PAR_RIGHT), k, restrict, seq, par, empty))


# -- well-formedness --------------------------------------------------------

def well_formed(rho: Resumption, nbar: int) -> bool:
    """Is ``rho`` derivable from the initial resumption by the formation rules?

    Backward reachability over the inverted rules.  Bag values never influence
    derivability beyond having to be statements, so states abstract the bag to
    its domain.

    Every rule consumes the head identifier and the new heads strictly extend
    it, so no identifier is head twice.  Hence each bag key and each member of
    the interaction set was fresh when added, and the inverted rules only need
    to remove them.
    """
    if any(v is E for _, v in rho.kbag.table):
        return False
    if rho.kbag.default is not E:
        return False
    return _derivable(len(rho.sync), rho.iset, rho.ids, rho.kbag.domain, nbar)


def _derivable(n: int, u, ids, pi, nbar: int) -> bool:
    start = (n, u, ids, pi)
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        if _is_axiom(state):
            return True
        for pred in _predecessors(state, nbar):
            if pred not in seen:
                seen.add(pred)
                stack.append(pred)
    return False


def _is_axiom(state) -> bool:
    n, u, ids, pi = state
    return n == 0 and not u and ids == (HOLE,) and not pi


def _predecessors(state, nbar: int):
    n, u, ids, pi = state
    if len(ids) != n + 1 or n > nbar or len(u) > nbar + 1 or not ids:
        return
    # pop rule, read backwards: the head of the premise was the action's position
    if n + 1 <= nbar:
        for member in u:
            rest = u - {member}
            if len(rest) <= nbar:
                yield n + 1, rest, (member[1],) + ids, pi
    split = ids_.split_last(ids[0])
    if split is None:
        return
    parent, last = split
    tail = ids[1:]
    if isinstance(last, ids_.Restrict):
        yield n, u, (parent,) + tail, pi
    elif isinstance(last, ids_.SeqLeft):
        key = substitute(parent, ids_.SEQ_MARKER)
        if key in pi:
            yield n, u, (parent,) + tail, pi - {key}
    elif isinstance(last, ids_.ParLeft):
        key = substitute(parent, ids_.PAR_RIGHT)
        if key in pi:
            yield n, u, (parent,) + tail, pi - {key}
        if n >= 1 and tail and tail[0] == key and (n - 1) + len(u) < nbar:
            yield n - 1, u, (parent,) + tail[1:], pi


# -- transitions ------------------------------------------------------------

class Operational:
    """Transition relation and budgeted trace semantics for one program.

    ``monitor`` is called with every resumption met while rewriting, which
    lets callers check structural invariants along real executions.
    """

    def __init__(self, program: Program, monitor: Optional[Callable[[Resumption], None]] = None) -> None:
        self.program = program
        self.nbar = program.nbar
        self.monitor = monitor
        self._weigh = s.Weigher(program.decls)
        self._succ: Dict[Configuration, FrozenSet[Tuple[str, Configuration]]] = {}
        self._runs: Dict[Tuple[Configuration, int], TraceSet] = {}

    @deep_stack
    def successors(self, t: Configuration) -> FrozenSet[Tuple[str, Configuration]]:
        return self._successors(t)

    def _successors(self, t: Configuration) -> FrozenSet[Tuple[str, Configuration]]:
        if isinstance(t, Final):
            if t.result is E:
                return frozenset()
            t = Running(t.result, initial_resumption())
        cached = self._succ.get(t)
        if cached is None:
            out: Set[Tuple[str, Configuration]] = set()
            bound = (self.nbar + 1) * (self._weigh(t.stmt) + sum(map(self._weigh, t.rho.sync)) + 1)
            self._rewrite(t.stmt, t.rho, out, bound)
            cached = self._succ[t] = frozenset(out)
        return cached

    def _rewrite(self, x: Statement, rho: Resumption, out: set, fuel: int) -> None:
        fuel -= 1
        if fuel < 0:
            raise RewriteBoundExceeded(f"rewriting {s.render(x)} did not terminate within bound")
        if self.monitor is not None:
            self.monitor(rho)
        nbar = self.nbar
        if isinstance(x, s.Act):
            if len(rho.iset) > nbar:
                return
            if not rho.sync:
                b = interact(rho.iset | {(x.action, rho.head)}, self.program.calculus, nbar)
                if b is not None:
                    out.add((b, Final(collapse_k(HOLE, rho.kbag))))
            else:
                nxt, rho2 = with_pop(rho, x.action)
                self._rewrite(nxt, rho2, out, fuel)
        elif isinstance(x, s.Var):
            self._rewrite(self.program.body(x.name), rho, out, fuel)
        elif isinstance(x, s.Restrict):
            self._rewrite(x.body, with_restriction(rho, x.channel), out, fuel)
        elif isinstance(x, s.Seq):
            self._rewrite(x.left, with_seq(rho, x.right), out, fuel)
        elif isinstance(x, s.Choice):
            self._rewrite(x.left, rho, out, fuel)
            self._rewrite(x.right, rho, out, fuel)
        elif isinstance(x, s.LeftMerge):
            self._rewrite(x.left, with_left_merge(rho, x.right), out, fuel)
        elif isinstance(x, s.LeftSyncMerge):
            if push_guard(rho, nbar):
                self._rewrite(x.left, with_sync_push(rho, x.right), out, fuel)
        elif isinstance(x, s.SyncMerge):
            if push_guard(rho, nbar):
                self._rewrite(x.left, with_sync_push(rho, x.right), out, fuel)
                self._rewrite(x.right, with_sync_push(rho, x.left), out, fuel)
        elif isinstance(x, s.Merge):
            self._rewrite(x.left, with_left_merge(rho, x.right), out, fuel)
            self._rewrite(x.right, with_left_merge(rho, x.left), out, fuel)
            if push_guard(rho, nbar):
                self._rewrite(x.left, with_sync_push(rho, x.right), out, fuel)
                self._rewrite(x.right, with_sync_push(rho, x.left), out, fuel)
        else:
            raise TypeError(f"cannot execute {x!r}")

    @deep_stack
    def run(self, t: Configuration, m: int) -> TraceSet:
        """All traces of ``t``, cut after ``m`` emitted actions."""
        return self._run(t, m)

    def _run(self, t: Configuration, m: int) -> TraceSet:
        key = (t, m)
        cached = self._runs.get(key)
        if cached is not None:
            return cached
        if isinstance(t, Final) and t.result is E:
            result = frozenset([EMPTY_TRACE])
        else:
            succ = self._successors(t)
            if not succ:
                result = frozenset([Trace((), DELTA)])
            elif m <= 0:
                result = frozenset([Trace((), CUT)])
            else:
                acc: Set[Trace] = set()
                for b, t2 in succ:
                    acc |= prefix_action(b, self._run(t2, m - 1))
                result = frozenset(acc)
        self._runs[key] = result
        return result

    def semantics(self, x: Statement, m: int) -> TraceSet:
        return self.run(Running(x, initial_resumption()), m)


def step(t: Configuration, program: Program):
    return Operational(program).successors(t)


def run_o(t: Configuration, program: Program, m: int) -> TraceSet:
    return Operational(program).run(t, m)


def den_o(x: Statement, program: Program, m: int) -> TraceSet:
    return Operational(program).semantics(x, m)
