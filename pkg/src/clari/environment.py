"""Append-only global environment of named, checked definitions."""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator

from .term import Term

DEF, THEOREM, STATEMENT = "def", "theorem", "statement"


@dataclass(frozen=True)
class Global:
    name: str
    type: Term
    body: Term | None  # None for statement-only entries, which never unfold
    kind: str = DEF
    origin: str | None = None  # corpus file that introduced it, if any

    @property
    def proved(self) -> bool:
        return self.body is not None


class GlobalEnv:
    """Immutable mapping from identifiers to globals; ``extend`` returns a new env.

    Use :func:`clari.checker.define_global` to add checked entries; ``extend``
    itself performs no checking.
    """

    __slots__ = ("_entries", "_order")

    def __init__(self, entries=None, order=()):
        self._entries = MappingProxyType(dict(entries or {}))
        self._order = tuple(order)

    def extend(self, g: Global) -> GlobalEnv:
        if g.name in self._entries:
            raise KeyError(g.name)
        entries = dict(self._entries)
        entries[g.name] = g
        return GlobalEnv(entries, self._order + (g.name,))

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __getitem__(self, name: str) -> Global:
        return self._entries[name]

    def get(self, name: str) -> Global | None:
        return self._entries.get(name)

    def body(self, name: str) -> Term | None:
        g = self._entries.get(name)
        return None if g is None else g.body

    def __iter__(self) -> Iterator[Global]:
        return (self._entries[n] for n in self._order)

    def __len__(self) -> int:
        return len(self._order)

    def names(self) -> tuple[str, ...]:
        return self._order

    def __repr__(self):
        return f"GlobalEnv({len(self)} globals)"


EMPTY = GlobalEnv()
