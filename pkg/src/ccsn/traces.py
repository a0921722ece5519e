"""Finite trace sets approximating the linear-time final domains.

A trace is a tuple of internal-action names and a terminator: ``eps``
(normal termination), ``delta`` (operational deadlock) or ``cut`` (the
symbol budget ran out; more symbols would follow).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from .syntax import TAU

EPS = "eps"
DELTA = "delta"
CUT = "cut"


@dataclass(frozen=True, order=True)
class Trace:
    symbols: Tuple[str, ...] = ()
    end: str = EPS

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        parts = list(self.symbols)
        if self.end != EPS:
            parts.append(self.end)
        return ".".join(parts) if parts else EPS

    def to_json(self) -> dict:
        return {"symbols": list(self.symbols), "end": self.end}

    @staticmethod
    def from_json(obj: dict) -> "Trace":
        return Trace(tuple(obj["symbols"]), obj["end"])


TraceSet = FrozenSet[Trace]

EMPTY_TRACE = Trace()


def trace(text: str) -> Trace:
    """Parse the dotted rendering, e.g. ``"tau.b1.delta"``."""
    if text in ("", EPS):
        return EMPTY_TRACE
    parts = text.split(".")
    if parts[-1] in (DELTA, CUT):
        return Trace(tuple(parts[:-1]), parts[-1])
    return Trace(tuple(parts))


def traces(*texts: str) -> TraceSet:
    return frozenset(map(trace, texts))


def prefix_action(b: str, p: Iterable[Trace]) -> TraceSet:
    return frozenset(Trace((b,) + q.symbols, q.end) for q in p)


def tau_pow(i: int, p: Iterable[Trace]) -> TraceSet:
    pad = (TAU,) * i
    return frozenset(Trace(pad + q.symbols, q.end) for q in p)


def _leading_taus(q: Trace) -> int:
    n = 0
    for sym in q.symbols:
        if sym != TAU:
            break
        n += 1
    return n


def choice_merge(i: int, p1: Iterable[Trace], p2: Iterable[Trace], nbar: int) -> TraceSet:
    """Nondeterministic choice at interaction level ``i``.

    Branches that merely deadlock (exactly ``nbar - i`` silent steps, then
    nothing) are dropped unless every branch deadlocks.  A cut trace that is
    all silent steps up to the cut might still continue, so it is kept.
    """
    if not 0 <= i <= nbar:
        raise ValueError(f"choice level {i} outside 0..{nbar}")
    k = nbar - i
    kept = set()
    for q in set(p1) | set(p2):
        lead = _leading_taus(q)
        if q.end == CUT and lead == len(q) and lead <= k:
            kept.add(q)
        elif lead >= k and not (len(q) == k and q.end == EPS):
            kept.add(q)
    if not kept:
        return frozenset([Trace((TAU,) * k)])
    return frozenset(kept)


def xi_trace(q: Trace, nbar: int) -> Trace:
    """Map an operational trace to its denotational shape."""
    pad = (TAU,) * nbar
    out: Tuple[str, ...] = ()
    for b in q.symbols:
        out += pad + (b,)
    if q.end == DELTA:
        return Trace(out + pad, EPS)
    return Trace(out, q.end)


def xi_set(p: Iterable[Trace], nbar: int) -> TraceSet:
    return frozenset(xi_trace(q, nbar) for q in p)


def truncate(q: Trace, m: int) -> Trace:
    if len(q) <= m:
        return q
    return Trace(q.symbols[:m], CUT)


def truncate_set(p: Iterable[Trace], m: int) -> TraceSet:
    return frozenset(truncate(q, m) for q in p)


def has_cut(p: Iterable[Trace]) -> bool:
    return any(q.end == CUT for q in p)


def render_set(p: Iterable[Trace]) -> str:
    return "{" + ", ".join(sorted(map(str, p))) + "}"


def sorted_traces(p: Iterable[Trace]):
    return sorted(p, key=lambda q: (q.symbols, q.end))


def dumps(p: Iterable[Trace]) -> str:
    return json.dumps([q.to_json() for q in sorted_traces(p)])


def loads(text: str) -> TraceSet:
    return frozenset(Trace.from_json(obj) for obj in json.loads(text))
