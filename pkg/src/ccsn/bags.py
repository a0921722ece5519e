"""Identifier-indexed bags: a domain set plus a total lookup table."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Generic, Mapping, Tuple, TypeVar

from ._util import cached_hash
from .identifiers import Identifier, IdSet

X = TypeVar("X")


@cached_hash
@dataclass(frozen=True)
class Bag(Generic[X]):
    """A persistent pair (domain, table) whose lookup falls back to ``default``."""

    default: X
    domain: IdSet = frozenset()
    table: FrozenSet[Tuple[Identifier, X]] = field(default=frozenset())

    def __post_init__(self) -> None:
        # a set, so structurally equal bags compare and hash equal
        if not isinstance(self.table, frozenset):
            object.__setattr__(self, "table", frozenset(self.table))

    def mapping(self) -> Mapping[Identifier, X]:
        return dict(self.table)

    def __getitem__(self, a: Identifier) -> X:
        for key, value in self.table:
            if key == a:
                return value
        return self.default

    def bind(self, a: Identifier, x: X) -> "Bag[X]":
        if a in self.domain:
            table = frozenset((k, v) for k, v in self.table if k != a) | {(a, x)}
            return Bag(self.default, self.domain, table)
        return Bag(self.default, self.domain | {a}, self.table | {(a, x)})

    def map_values(self, fn) -> "Bag":
        """Pointwise image; the default is mapped too."""
        return Bag(fn(self.default), self.domain, frozenset((k, fn(v)) for k, v in self.table))


def empty(default: X) -> Bag[X]:
    return Bag(default)


def domain_of(b: Bag) -> IdSet:
    return b.domain


def lookup(b: Bag[X], a: Identifier) -> X:
    return b[a]


def bind(b: Bag[X], a: Identifier, x: X) -> Bag[X]:
    return b.bind(a, x)
