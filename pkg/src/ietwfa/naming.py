"""Injective, readable names for the composite states built by constructions."""
from __future__ import annotations

from typing import Hashable, Iterable


class Namer:
    """Hand out names for structured keys without clashing with existing ones.

    The same key always maps to the same name. Renderings that would collide
    with a reserved name or with another key's name get apostrophes appended.
    """

    def __init__(self, reserved: Iterable[str] = ()):
        self._used = set(reserved)
        self._names = {}

    def reserve(self, name: str) -> None:
        self._used.add(name)

    def name(self, key: Hashable, rendering: str) -> str:
        found = self._names.get(key)
        if found is not None:
            return found
        candidate = rendering
        while candidate in self._used:
            candidate += "'"
        self._used.add(candidate)
        self._names[key] = candidate
        return candidate

    def composite(self, *parts) -> str:
        """Name a tuple of parts, rendered as ``<p1.p2...>``; empty strings are skipped."""
        shown = [_render(p) for p in parts]
        return self.name(("composite",) + tuple(parts), "<" + ".".join(s for s in shown if s) + ">")

    def fresh(self, base: str) -> str:
        """A brand new name derived from ``base``, never returned before."""
        candidate = base
        while candidate in self._used:
            candidate += "'"
        self._used.add(candidate)
        return candidate


def _render(part) -> str:
    if isinstance(part, tuple):
        return "".join(part)
    return str(part)
