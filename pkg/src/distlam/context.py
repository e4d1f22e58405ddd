from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .syntax import Type, pretty_type


class TypingContext:
    """Ordered, immutable map from variable names to types.

    Later bindings shadow earlier ones for lookup; iteration yields the
    visible bindings in insertion order.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[tuple[str, Type]] = ()):
        self._entries = tuple(entries)

    @classmethod
    def of(cls, **bindings: Type) -> "TypingContext":
        return cls(bindings.items())

    def extend(self, name: str, ty: Type) -> "TypingContext":
        return TypingContext(self._entries + ((name, ty),))

    def lookup(self, name: str) -> Optional[Type]:
        for n, ty in reversed(self._entries):
            if n == name:
                return ty
        return None

    def __contains__(self, name: object) -> bool:
        return any(n == name for n, _ in self._entries)

    def items(self) -> list[tuple[str, Type]]:
        seen: dict[str, Type] = {}
        for n, ty in self._entries:
            seen.pop(n, None)
            seen[n] = ty
        return list(seen.items())

    def names(self) -> list[str]:
        return [n for n, _ in self.items()]

    def __iter__(self) -> Iterator[str]:
        return iter(self.names())

    def __len__(self) -> int:
        return len(self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TypingContext):
            return NotImplemented
        return dict(self.items()) == dict(other.items())

    def __hash__(self) -> int:
        return hash(frozenset(self.items()))

    def __str__(self) -> str:
        return ", ".join(f"{n}:{pretty_type(ty)}" for n, ty in self.items())

    def __repr__(self) -> str:
        return f"TypingContext({str(self)!r})"
