"""Fresh-name generation."""

from __future__ import annotations

import re
from typing import Iterable

STAR = "star"

_SUFFIX = re.compile(r"^(.*?)(\d+)$")


def base_of(name: str) -> str:
    m = _SUFFIX.match(name)
    base = m.group(1) if m else name
    return base or "v"


def fresh_like(name: str, avoid) -> str:
    """A variant of ``name`` (same base, numeric suffix) not in ``avoid``."""
    if name not in avoid:
        return name
    base = base_of(name)
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


class FreshSupply:
    """Monotone counter emitting ``x<N>`` / ``a<N>`` names.

    Emitted names never collide with reserved names or with earlier output.
    Not thread-safe; give each translation its own supply.
    """

    def __init__(self, reserved: Iterable[str] = ()) -> None:
        self.reserved = set(reserved)
        self.reserved.add(STAR)
        self.counter = 0

    def reserve(self, names: Iterable[str]) -> None:
        self.reserved.update(names)

    def _next(self, prefix: str) -> str:
        while True:
            name = f"{prefix}{self.counter}"
            self.counter += 1
            if name not in self.reserved:
                self.reserved.add(name)
                return name

    def var(self) -> str:
        return self._next("x")

    def covar(self) -> str:
        return self._next("a")
