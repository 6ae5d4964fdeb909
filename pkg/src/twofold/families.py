"""Small named graph families used by fixtures, demos and the CLI."""
from __future__ import annotations

import re

from .errors import InputError
from .graph import Graph, from_edge_list


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty(n: int) -> Graph:
    return Graph.empty(n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def diamond() -> Graph:
    """K4 minus the edge {2, 3}; vertices 2 and 3 are twins."""
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


_SIZED = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "empty": empty,
}


def from_name(spec: str) -> Graph | None:
    """Build ``cycle:8``, ``path:3``, ``complete:4``, ``empty:2``,
    ``bipartite:2,3`` or ``petersen``; None if ``spec`` is not a family name."""
    s = spec.strip().lower()
    if s == "petersen":
        return petersen()
    if s == "diamond":
        return diamond()
    m = re.fullmatch(r"(cycle|path|complete|empty):(\d+)", s)
    if m:
        return _SIZED[m.group(1)](int(m.group(2)))
    m = re.fullmatch(r"bipartite:(\d+),(\d+)", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    return None
