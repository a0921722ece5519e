"""Abstract syntax for the two calculi, plus weight, guardedness and contexts."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple, Union

from ._util import cached_hash
from .identifiers import ChannelName

TAU = "tau"


class Calculus(enum.Enum):
    CCSN = "ccsn"
    CCSNPLUS = "ccsnplus"


# -- actions ---------------------------------------------------------------

@cached_hash
@dataclass(frozen=True)
class Internal:
    name: str

    def __str__(self) -> str:
        return self.name


@cached_hash
@dataclass(frozen=True)
class Output:
    channel: ChannelName

    def __str__(self) -> str:
        return f"~{self.channel}"


@cached_hash
@dataclass(frozen=True)
class JointInput:
    names: Tuple[ChannelName, ...]

    def __str__(self) -> str:
        return "&".join(self.names)


@cached_hash
@dataclass(frozen=True)
class SyncAction:
    channel: ChannelName
    output: bool = False

    def __str__(self) -> str:
        return f"~{self.channel}" if self.output else self.channel


@cached_hash
@dataclass(frozen=True)
class JointPrefix:
    items: Tuple[SyncAction, ...]

    def __str__(self) -> str:
        return "&".join(map(str, self.items))


@cached_hash
@dataclass(frozen=True)
class Stop:
    def __str__(self) -> str:
        return "stop"


Action = Union[Internal, Output, JointInput, JointPrefix, Stop]
STOP = Stop()


# -- statements ------------------------------------------------------------

@cached_hash
@dataclass(frozen=True)
class Act:
    action: Action


@cached_hash
@dataclass(frozen=True)
class Var:
    name: str


@cached_hash
@dataclass(frozen=True)
class Restrict:
    body: "Statement"
    channel: ChannelName


@cached_hash
@dataclass(frozen=True)
class Seq:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class Choice:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class Merge:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class SyncMerge:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class LeftMerge:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class LeftSyncMerge:
    left: "Statement"
    right: "Statement"


@cached_hash
@dataclass(frozen=True)
class ContextHole:
    """The hole of a syntactic context."""


Statement = Union[Act, Var, Restrict, Seq, Choice, Merge, SyncMerge, LeftMerge,
                  LeftSyncMerge, ContextHole]
BINARY = (Seq, Choice, Merge, SyncMerge, LeftMerge, LeftSyncMerge)
PARALLEL = (Merge, SyncMerge, LeftMerge, LeftSyncMerge)
HOLE = ContextHole()

OPERATOR_TOKENS = {
    Choice: "+",
    Merge: "||",
    SyncMerge: "|",
    LeftMerge: "||-",
    LeftSyncMerge: "|-",
    Seq: ";",
}


@cached_hash
@dataclass(frozen=True)
class Program:
    main: Statement
    decls: Mapping[str, Statement] = field(default_factory=dict)
    channels: FrozenSet[ChannelName] = frozenset()
    calculus: Calculus = Calculus.CCSN
    nbar: int = 2

    def __hash__(self) -> int:
        return hash((self.main, tuple(sorted(self.decls.items())), self.channels,
                     self.calculus, self.nbar))

    def body(self, name: str) -> Statement:
        return self.decls[name]

    def with_main(self, main: Statement) -> "Program":
        return Program(main, self.decls, self.channels, self.calculus, self.nbar)


class UnguardedRecursion(ValueError):
    pass


# -- measures --------------------------------------------------------------

def is_guarded(g: Statement) -> bool:
    if isinstance(g, Act):
        return True
    if isinstance(g, Restrict):
        return is_guarded(g.body)
    if isinstance(g, (Seq, LeftMerge)):
        return is_guarded(g.left)
    if isinstance(g, (Choice, Merge, SyncMerge, LeftSyncMerge)):
        return is_guarded(g.left) and is_guarded(g.right)
    return False


class Weigher:
    """Computes ``wgt`` with a per-variable cache."""

    def __init__(self, decls: Mapping[str, Statement]) -> None:
        self.decls = decls
        self._cache: Dict[str, int] = {}
        self._active: set = set()

    def __call__(self, x: Statement) -> int:
        if isinstance(x, (Act, ContextHole)):
            return 1
        if isinstance(x, Var):
            if x.name in self._cache:
                return self._cache[x.name]
            if x.name in self._active:
                raise UnguardedRecursion(f"unguarded recursion through {x.name!r}")
            self._active.add(x.name)
            try:
                w = 1 + self(self.decls[x.name])
            finally:
                self._active.discard(x.name)
            self._cache[x.name] = w
            return w
        if isinstance(x, Restrict):
            return 1 + self(x.body)
        if isinstance(x, (Seq, LeftMerge)):
            return 1 + self(x.left)
        return 1 + max(self(x.left), self(x.right))


def weight(x: Statement, decls: Optional[Mapping[str, Statement]] = None) -> int:
    return Weigher(decls or {})(x)


# -- contexts --------------------------------------------------------------

def fill_context(s: Statement, x: Statement) -> Statement:
    if isinstance(s, ContextHole):
        return x
    if isinstance(s, Restrict):
        return Restrict(fill_context(s.body, x), s.channel)
    if isinstance(s, BINARY):
        return type(s)(fill_context(s.left, x), fill_context(s.right, x))
    return s


def has_hole(s: Statement) -> bool:
    if isinstance(s, ContextHole):
        return True
    if isinstance(s, Restrict):
        return has_hole(s.body)
    if isinstance(s, BINARY):
        return has_hole(s.left) or has_hole(s.right)
    return False


def depth(s: Statement) -> int:
    if isinstance(s, Restrict):
        return 1 + depth(s.body)
    if isinstance(s, BINARY):
        return 1 + max(depth(s.left), depth(s.right))
    return 0


def node_count(s: Statement) -> int:
    if isinstance(s, Restrict):
        return 1 + node_count(s.body)
    if isinstance(s, BINARY):
        return 1 + node_count(s.left) + node_count(s.right)
    return 1


def variables(s: Statement) -> FrozenSet[str]:
    if isinstance(s, Var):
        return frozenset([s.name])
    if isinstance(s, Restrict):
        return variables(s.body)
    if isinstance(s, BINARY):
        return variables(s.left) | variables(s.right)
    return frozenset()


def actions(s: Statement):
    if isinstance(s, Act):
        yield s.action
    elif isinstance(s, Restrict):
        yield from actions(s.body)
    elif isinstance(s, BINARY):
        yield from actions(s.left)
        yield from actions(s.right)


# -- rendering -------------------------------------------------------------

def render(s: Statement) -> str:
    """Concrete syntax, parenthesising every compound operand."""
    if isinstance(s, Act):
        return str(s.action)
    if isinstance(s, Var):
        return s.name
    if isinstance(s, ContextHole):
        return "@"
    if isinstance(s, Restrict):
        return f"{_operand(s.body)}\\{s.channel}"
    return f"{_operand(s.left)} {OPERATOR_TOKENS[type(s)]} {_operand(s.right)}"


def _operand(s: Statement) -> str:
    text = render(s)
    if isinstance(s, BINARY) or isinstance(s, Restrict):
        return f"({text})"
    return text


def render_program(p: Program) -> str:
    lines = []
    if p.channels:
        lines.append("chan " + " ".join(sorted(p.channels)) + ";")
    for name, body in sorted(p.decls.items()):
        lines.append(f"let {name} = {render(body)};")
    lines.append(f"run {render(p.main)}")
    return "\n".join(lines) + "\n"
