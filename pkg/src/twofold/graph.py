"""Dense-index graphs with bitset rows, permutations, and structural predicates.

Vertices are the integers ``0..n-1``.  Row ``v`` of a :class:`Graph` is a
Python int whose bit ``u`` is set iff ``u`` is adjacent to ``v``.

Permutations compose right-to-left everywhere in this package:
``compose(p, q)(v) == p(q(v))``, and ``p * q`` means the same thing.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InputError

#: Upper bound on vertex count accepted by parsers and constructors.
DEFAULT_MAX_N = 512
MAX_N = DEFAULT_MAX_N

#: Returned by :func:`diameter` for disconnected graphs.
INFINITY = math.inf

Arc = tuple[int, int]


def set_max_n(bound: int) -> None:
    global MAX_N
    if bound < 1:
        raise InputError("max n must be positive")
    MAX_N = bound


def _check_n(n: int) -> None:
    if n < 0:
        raise InputError(f"negative vertex count {n}")
    if n > MAX_N:
        raise InputError(f"n={n} exceeds the configured bound {MAX_N}")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ----------------------------------------------------------------------------
# Permutations
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..n-1}`` stored as its image array."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"not a permutation: {list(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if not 0 <= x < n:
                    raise InputError(f"cycle entry {x} out of range for n={n}")
                if x in seen:
                    raise InputError(f"point {x} appears in two cycles")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def order(self) -> int:
        return order(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point, sorted."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self, names: Sequence[str] | None = None) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        fmt = (lambda v: names[v]) if names is not None else str
        return "".join("(" + " ".join(fmt(v) for v in c) + ")" for c in cycs)

    def __str__(self) -> str:
        return self.cycle_string()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``: apply ``q`` first, then ``p``."""
    if len(p) != len(q):
        raise InputError(f"size mismatch: {len(p)} vs {len(q)}")
    pi = p.images
    return Permutation(tuple(pi[x] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def order(p: Permutation) -> int:
    # lcm of cycle lengths
    result = 1
    for c in p.cycles():
        result = math.lcm(result, len(c))
    return result


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int, names: VertexLabeling | None = None) -> Permutation:
    """Parse cycle notation ``(0 2)(1 3)``, ``id``, or an image array ``[2,1,0]``."""
    s = text.strip()
    if s in ("", "id", "()", "e"):
        return Permutation.identity(n)
    if s.startswith("["):
        try:
            images = [int(x) for x in s.strip("[]").replace(",", " ").split()]
        except ValueError:
            raise InputError(f"bad image array {text!r}") from None
        if len(images) != n:
            raise InputError(f"image array has {len(images)} entries, expected {n}")
        return Permutation(tuple(images))
    rest = _CYCLE_RE.sub("", s).strip()
    if rest:
        raise InputError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        tokens = body.replace(",", " ").split()
        if names is not None:
            cycles.append([names.index(t) for t in tokens])
        else:
            try:
                cycles.append([int(t) for t in tokens])
            except ValueError:
                raise InputError(f"non-integer vertex in {text!r}") from None
    return Permutation.from_cycles(n, cycles)


# ----------------------------------------------------------------------------
# Labelling
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexLabeling:
    """External names for dense vertex indices."""

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = tuple(str(x) for x in self.names)
        if len(set(names)) != len(names):
            raise InputError("vertex names must be distinct")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __getitem__(self, v: int) -> str:
        return self.names[v]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown vertex name {name!r}") from None


# ----------------------------------------------------------------------------
# Graphs
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1`` with bitset adjacency rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise InputError(f"expected {self.n} rows, got {len(self.rows)}")
        validate_rows(self.n, self.rows)

    @classmethod
    def empty(cls, n: int) -> Graph:
        _check_n(n)
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def arcs(self) -> list[Arc]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u])]

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def relabel(self, p: Permutation) -> Graph:
        """The graph with edge ``{p(u), p(v)}`` for each edge ``{u, v}``."""
        if len(p) != self.n:
            raise InputError("permutation size does not match graph")
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = p(u), p(v)
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        idx = {v: i for i, v in enumerate(vertices)}
        return from_edge_list(
            len(vertices),
            [(idx[u], idx[v]) for u in vertices for v in iter_bits(self.rows[u]) if v in idx and u < v],
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def validate_rows(n: int, rows: Sequence[int]) -> None:
    """Raise unless ``rows`` is a symmetric, loop-free adjacency on ``n`` vertices."""
    _check_n(n)
    full = (1 << n) - 1
    for u, r in enumerate(rows):
        if r < 0 or r & ~full:
            raise InputError(f"row {u} refers to vertices outside 0..{n - 1}")
        if r >> u & 1:
            raise InputError("loop not allowed")
        for v in iter_bits(r):
            if not rows[v] >> u & 1:
                raise InputError(f"adjacency not symmetric at ({u}, {v})")


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    _check_n(n)
    rows = [0] * n
    for e in edges:
        u, v = e
        if u == v:
            raise InputError("loop not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def neighborhood(g: Graph, v: int) -> set[int]:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    return set(iter_bits(g.rows[v]))


def is_vertex_determining(g: Graph) -> bool:
    """True iff no two distinct vertices have the same neighbourhood."""
    return len(set(g.rows)) == g.n


def twin_pairs(g: Graph) -> list[tuple[int, int]]:
    first: dict[int, int] = {}
    out = []
    for v, r in enumerate(g.rows):
        if r in first:
            out.append((first[r], v))
        else:
            first[r] = v
    return out


def triangles_of(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        higher = g.rows[u] >> (u + 1) << (u + 1)
        for v in iter_bits(higher):
            for w in iter_bits(higher & g.rows[v] >> (v + 1) << (v + 1)):
                out.append((u, v, w))
    return out


def is_triangle(g: Graph, tri: Sequence[int]) -> bool:
    a, b, c = tri
    return len({a, b, c}) == 3 and g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)


def every_edge_on_triangle(g: Graph) -> bool:
    return all(g.rows[u] & g.rows[v] for u, v in g.edges())


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Distances from ``source``; unreachable vertices get :data:`INFINITY`."""
    dist: list[float] = [INFINITY] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        seen |= nxt
        for v in iter_bits(nxt):
            dist[v] = d
        frontier = nxt
    return dist


def distance_matrix(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def eccentricity(g: Graph, source: int) -> float:
    """Largest BFS distance from ``source`` (bitset frontier sweep)."""
    full = (1 << g.n) - 1
    seen = frontier = 1 << source
    d = 0
    while seen != full:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        if not nxt:
            return INFINITY
        seen |= nxt
        frontier = nxt
        d += 1
    return d


def diameter(g: Graph) -> float:
    """Largest shortest-path length, or :data:`INFINITY` if disconnected.

    The empty graph and the one-vertex graph have diameter 0.
    """
    best: float = 0
    for s in range(g.n):
        e = eccentricity(g, s)
        if e == INFINITY:
            return INFINITY
        best = max(best, e)
    return best


def components(g: Graph) -> list[list[int]]:
    left = (1 << g.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(list(iter_bits(seen)))
        left &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_bipartite(g: Graph) -> list[int] | None:
    """A proper 2-colouring (vertex 0 of each component gets colour 0), or None."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in iter_bits(g.rows[u]):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return colour


# ----------------------------------------------------------------------------
# Mixed graphs (arc sets)
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MixedGraph:
    """Loop-free set of arcs on ``0..n-1``."""

    n: int
    arcs: frozenset[Arc]

    def __post_init__(self) -> None:
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise InputError("loop not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u}, {v}) out of range")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbors(self, v: int) -> set[int]:
        return {b for a, b in self.arcs if a == v}

    def in_neighbors(self, v: int) -> set[int]:
        return {a for a, b in self.arcs if b == v}

    def vertices(self) -> set[int]:
        """Vertices incident to at least one arc."""
        return {x for arc in self.arcs for x in arc}

    def is_self_paired(self) -> bool:
        return all((v, u) in self.arcs for u, v in self.arcs)

    def paired_edges(self) -> set[frozenset[int]]:
        """Underlying edges present in both orientations."""
        return {frozenset(a) for a in self.arcs if (a[1], a[0]) in self.arcs}

    def underlying_edges(self) -> set[frozenset[int]]:
        return {frozenset(a) for a in self.arcs}

    @classmethod
    def of_graph(cls, g: Graph) -> MixedGraph:
        return cls(g.n, frozenset(g.arcs()))
