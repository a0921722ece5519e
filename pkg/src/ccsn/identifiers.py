"""Tree-shaped process identifiers and their algebra.

An identifier records the position of a computation inside a statement: the
restrictions it lives under and the sequential/parallel branches leading to
it.  Every identifier is a unary chain ending in a single leaf, either the
hole ``*`` (an active position) or the sequencing marker ``(;*)``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, Optional, Tuple, Union

from ._util import cached_hash

ChannelName = str


@cached_hash
@dataclass(frozen=True)
class Hole:
    def __str__(self) -> str:
        return "*"


@cached_hash
@dataclass(frozen=True)
class SeqMarker:
    def __str__(self) -> str:
        return "(;*)"


@cached_hash
@dataclass(frozen=True)
class SeqLeft:
    child: "Identifier"

    def __str__(self) -> str:
        return f"<{self.child};"


@cached_hash
@dataclass(frozen=True)
class Restrict:
    child: "Identifier"
    name: ChannelName

    def __str__(self) -> str:
        return f"({self.child})\\{self.name}"


@cached_hash
@dataclass(frozen=True)
class ParLeft:
    child: "Identifier"

    def __str__(self) -> str:
        return f"<{self.child}|"


@cached_hash
@dataclass(frozen=True)
class ParRight:
    child: "Identifier"

    def __str__(self) -> str:
        return f"|{self.child}>"


Identifier = Union[Hole, SeqMarker, SeqLeft, Restrict, ParLeft, ParRight]
IdSet = FrozenSet[Identifier]

HOLE = Hole()
SEQ_MARKER = SeqMarker()


class _Undefined:
    """The single value standing for an undefined subtraction."""

    _instance: Optional["_Undefined"] = None

    def __new__(cls) -> "_Undefined":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()

_WRAPPERS = (SeqLeft, Restrict, ParLeft, ParRight)


def is_leaf(a: Identifier) -> bool:
    return isinstance(a, (Hole, SeqMarker))


def _same_wrapper(a: Identifier, b: Identifier) -> bool:
    if type(a) is not type(b) or is_leaf(a):
        return False
    if isinstance(a, Restrict):
        return a.name == b.name  # type: ignore[union-attr]
    return True


def _rewrap(template: Identifier, child: Identifier) -> Identifier:
    if isinstance(template, Restrict):
        return Restrict(child, template.name)
    return type(template)(child)  # type: ignore[call-arg]


@functools.lru_cache(maxsize=1 << 18)
def substitute(outer: Identifier, inner: Identifier) -> Identifier:
    """Replace the hole of ``outer`` by ``inner``; ``(;*)`` is left alone."""
    if isinstance(outer, Hole):
        return inner
    if isinstance(outer, SeqMarker):
        return outer
    return _rewrap(outer, substitute(outer.child, inner))


@functools.lru_cache(maxsize=1 << 18)
def matches(a: Identifier, b: Identifier) -> bool:
    """The prefix order: ``matches(a, b)`` iff ``b`` extends ``a``."""
    while True:
        if isinstance(a, Hole):
            return True
        if isinstance(a, SeqMarker):
            return isinstance(b, SeqMarker)
        if not _same_wrapper(a, b):
            return False
        a, b = a.child, b.child  # type: ignore[union-attr]


def glb(a: Identifier, b: Identifier) -> Identifier:
    if a == b:
        return a
    if _same_wrapper(a, b):
        return _rewrap(a, glb(a.child, b.child))  # type: ignore[union-attr]
    return HOLE


def subtract(big: Identifier, small: Identifier):
    """``big`` with the common prefix ``small`` removed, or ``UNDEFINED``.

    ``(;*) - (;*)`` gives ``*``: the marker extends itself by any residue and
    the hole is the canonical one.
    """
    if isinstance(small, Hole):
        return big
    if isinstance(small, SeqMarker) and isinstance(big, SeqMarker):
        return HOLE
    if _same_wrapper(big, small):
        return subtract(big.child, small.child)  # type: ignore[union-attr]
    return UNDEFINED


def occurs_restricted(c: ChannelName, a: Identifier) -> bool:
    while not is_leaf(a):
        if isinstance(a, Restrict) and a.name == c:
            return True
        a = a.child  # type: ignore[union-attr]
    return False


def binary_interact(p: Tuple[ChannelName, Identifier], q: Tuple[ChannelName, Identifier]) -> bool:
    """Can action ``c1@a1`` meet ``c2@a2``?

    They must come from different processes, use the same channel, and the
    channel must not be restricted on either path below the common ancestor.
    """
    c1, a1 = p
    c2, a2 = q
    if a1 == a2 or c1 != c2:
        return False
    common = glb(a1, a2)
    r1 = subtract(a1, common)
    r2 = subtract(a2, common)
    return not occurs_restricted(c1, r1) and not occurs_restricted(c2, r2)


def filter_below(pi: Iterable[Identifier], a: Identifier) -> IdSet:
    return frozenset(b for b in pi if matches(a, b))


@functools.lru_cache(maxsize=1 << 18)
def _restricted_name(a: Identifier, b: Identifier) -> Optional[ChannelName]:
    while True:
        if isinstance(a, Hole):
            return b.name if isinstance(b, Restrict) else None
        if not _same_wrapper(a, b):
            return None
        a, b = a.child, b.child  # type: ignore[union-attr]


def restricted_names_below(pi: Iterable[Identifier], a: Identifier) -> AbstractSet[ChannelName]:
    """Names of restrictions sitting directly under ``a`` in members of ``pi``."""
    names = set()
    for b in pi:
        c = _restricted_name(a, b)
        if c is not None:
            names.add(c)
    return frozenset(names)


def size(a: Identifier) -> int:
    n = 1
    while not is_leaf(a):
        a = a.child  # type: ignore[union-attr]
        n += 1
    return n


def leaf(a: Identifier) -> Identifier:
    while not is_leaf(a):
        a = a.child  # type: ignore[union-attr]
    return a


def split_last(a: Identifier):
    """Split ``a`` as ``parent(W(*))``; returns ``(parent, W(*))`` or ``None``.

    Only identifiers whose leaf wrapper sits directly above a hole split.
    """
    if is_leaf(a):
        return None
    child = a.child  # type: ignore[union-attr]
    if isinstance(child, Hole):
        return HOLE, a
    inner = split_last(child)
    if inner is None:
        return None
    parent, last = inner
    return _rewrap(a, parent), last


# Convenience constants for the single-level wrappers used by the semantics.
def nu(c: ChannelName) -> Identifier:
    return Restrict(HOLE, c)


SEQ_LEFT = SeqLeft(HOLE)
PAR_LEFT = ParLeft(HOLE)
PAR_RIGHT = ParRight(HOLE)
