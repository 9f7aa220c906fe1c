"""Engine adapters.

An engine is anything with two functions over PD text plus an identifying
string: ``volume(pd_text) -> float`` and ``is_hyperbolic(pd_text) -> bool``.
The harness has no hard dependency on any geometry software; the SnapPy
adapter activates only when that package is importable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Protocol

__all__ = ["Engine", "FunctionEngine", "snappy_engine", "parse_pd_text"]


class Engine(Protocol):
    name: str

    def volume(self, pd_text: str) -> float: ...

    def is_hyperbolic(self, pd_text: str) -> bool: ...


@dataclass
class FunctionEngine:
    """Wrap a (volume, is_hyperbolic) pair of callables."""

    name: str
    volume_fn: Callable[[str], float]
    hyperbolic_fn: Callable[[str], bool]

    def volume(self, pd_text: str) -> float:
        return self.volume_fn(pd_text)

    def is_hyperbolic(self, pd_text: str) -> bool:
        return self.hyperbolic_fn(pd_text)


_PD_LINE = re.compile(r"^\s*X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_pd_text(pd_text: str) -> list[tuple[int, int, int, int]]:
    rows = []
    for line in pd_text.splitlines():
        if not line.strip():
            continue
        m = _PD_LINE.match(line)
        if not m:
            raise ValueError(f"bad PD line: {line!r}")
        rows.append(tuple(int(x) for x in m.groups()))
    return rows


def snappy_engine():
    """A SnapPy-backed engine, or None when SnapPy is not installed."""
    try:
        import snappy  # type: ignore
    except ImportError:
        return None

    def _manifold(pd_text: str):
        link = snappy.Link(parse_pd_text(pd_text))
        return link.exterior()

    def volume(pd_text: str) -> float:
        return float(_manifold(pd_text).volume())

    def is_hyperbolic(pd_text: str) -> bool:
        sol = _manifold(pd_text).solution_type()
        return "geometric" in sol

    version = getattr(snappy, "__version__", "unknown")
    return FunctionEngine(f"snappy-{version}", volume, is_hyperbolic)
