"""Automorphism groups by equitable refinement, individualisation and backtracking.

The search walks a single "first path" down the refinement tree, then, level
by level from the bottom up, asks for each vertex ``w`` of the target cell
whether some automorphism fixing the earlier base points maps the base point
to ``w``.  The answers give the basic orbits of a stabiliser chain, so the
group order is the product of the orbit lengths and every element is a unique
product of coset representatives.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .double_cover import DoubleCover
from .errors import CapExceeded, InputError
from .graph import Graph, Permutation, compose, inverse, iter_bits

DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True)
class VertexColouring:
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        cols = tuple(int(c) for c in self.colours)
        if cols and set(cols) != set(range(max(cols) + 1)):
            raise InputError("colours must be 0..k-1 with every class nonempty")
        object.__setattr__(self, "colours", cols)

    def __len__(self) -> int:
        return len(self.colours)

    def classes(self) -> list[list[int]]:
        k = max(self.colours, default=-1) + 1
        out: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.colours):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class AutGroup:
    """A permutation group given by a stabiliser chain.

    ``transversals[i]`` holds, for each point ``w`` of the i-th basic orbit, an
    element mapping ``base[i]`` to ``w`` and fixing ``base[:i]`` pointwise.
    """

    n: int
    generators: tuple[Permutation, ...]
    base: tuple[int, ...]
    transversals: tuple[dict[int, Permutation], ...]
    order: int
    enum_cap: int = DEFAULT_ENUM_CAP

    @cached_property
    def elements(self) -> tuple[Permutation, ...] | None:
        """All elements, or None when the order exceeds ``enum_cap``."""
        if self.order > self.enum_cap:
            return None
        return tuple(Permutation(tuple(row)) for row in self.element_array().tolist())

    def element_array(self) -> np.ndarray:
        """All elements as rows of an ``(order, n)`` integer array."""
        if self.order > self.enum_cap:
            raise CapExceeded(f"group order {self.order} exceeds enumeration cap {self.enum_cap}")
        elems = np.arange(self.n, dtype=np.int32)[None, :]
        for trans in reversed(self.transversals):
            reps = np.array([p.images for p in trans.values()], dtype=np.int32)
            # (u o h)(x) = u[h[x]] for every pair of representative u and element h
            elems = reps[:, elems].reshape(-1, self.n)
        return elems

    def contains(self, p: Permutation) -> bool:
        if len(p) != self.n:
            return False
        for b, trans in zip(self.base, self.transversals):
            u = trans.get(p(b))
            if u is None:
                return False
            p = compose(inverse(u), p)
        return p.is_identity()


def group_order(ag: AutGroup) -> int:
    return ag.order


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if len(p) != g.n:
        raise InputError(f"permutation on {len(p)} points, graph has {g.n} vertices")
    return _is_aut(g.rows, p.images)


def _is_aut(rows: Sequence[int], img: Sequence[int]) -> bool:
    for u, r in enumerate(rows):
        target = rows[img[u]]
        if r.bit_count() != target.bit_count():
            return False
        for v in iter_bits(r):
            if not target >> img[v] & 1:
                return False
    return True


def _mask(cell: Sequence[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(rows, cells, queue):
    """Refine ``cells`` to the coarsest equitable partition below it.

    Splitting only depends on neighbour counts and cell positions, so the
    returned trace is an isomorphism invariant of the input partition.
    """
    n = len(rows)
    queue = deque(queue)
    trace = []
    while queue and len(cells) < n:
        s = queue.popleft()
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((rows[v] & s).bit_count(), []).append(v)
            if len(buckets) == 1:
                out.append(cell)
                continue
            keys = sorted(buckets)
            trace.append((len(out), tuple((k, len(buckets[k])) for k in keys)))
            for k in keys:
                out.append(buckets[k])
                queue.append(_mask(buckets[k]))
        cells = out
    return cells, trace


def _individualise(cells, t, v):
    rest = [x for x in cells[t] if x != v]
    return cells[:t] + [[v], rest] + cells[t + 1 :]


def _target(cells) -> int:
    best = -1
    for i, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = i
    return best


def _orbit(point: int, gens: Sequence[Permutation]) -> set[int]:
    orb = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g.images[x]
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


class _Search:
    def __init__(self, g: Graph, colours: Sequence[int] | None):
        self.rows = g.rows
        self.n = g.n
        if colours is None:
            cells = [list(range(g.n))] if g.n else []
        else:
            cells = [c for c in VertexColouring(tuple(colours)).classes()]
        root, _ = _refine(self.rows, cells, [_mask(c) for c in cells])
        self.path = [root]
        self.traces = [None]
        self.targets = []
        self.base = []
        cells = root
        while len(cells) < self.n:
            t = _target(cells)
            v = cells[t][0]
            self.targets.append(t)
            self.base.append(v)
            cells, tr = _refine(self.rows, _individualise(cells, t, v), [1 << v])
            self.path.append(cells)
            self.traces.append(tr)
        self.leaf = [c[0] for c in cells]
        self.depth = len(self.base)

    def _leaf_map(self, cells) -> Permutation | None:
        img = [0] * self.n
        for src, cell in zip(self.leaf, cells):
            img[src] = cell[0]
        if _is_aut(self.rows, img):
            return Permutation(tuple(img))
        return None

    def _dfs(self, level, cells):
        if level == self.depth:
            return self._leaf_map(cells)
        t = self.targets[level]
        want = self.traces[level + 1]
        for u in cells[t]:
            sub, tr = _refine(self.rows, _individualise(cells, t, u), [1 << u])
            if tr == want:
                found = self._dfs(level + 1, sub)
                if found is not None:
                    return found
        return None

    def run(self):
        gens: list[Permutation] = []
        gen_level: list[int] = []
        for level in range(self.depth - 1, -1, -1):
            b = self.base[level]
            cell = self.path[level][self.targets[level]]
            orbit = _orbit(b, gens)
            rejected: set[int] = set()
            for w in cell:
                if w in orbit or w in rejected:
                    continue
                cells = _individualise(self.path[level], self.targets[level], w)
                sub, tr = _refine(self.rows, cells, [1 << w])
                found = self._dfs(level + 1, sub) if tr == self.traces[level + 1] else None
                if found is None:
                    rejected |= _orbit(w, gens)
                else:
                    gens.append(found)
                    gen_level.append(level)
                    orbit = _orbit(b, gens)
        transversals = []
        for level in range(self.depth):
            level_gens = [g for g, lv in zip(gens, gen_level) if lv >= level]
            transversals.append(_schreier(self.base[level], level_gens, self.n))
        return gens, transversals


def _schreier(point: int, gens: Sequence[Permutation], n: int) -> dict[int, Permutation]:
    reps = {point: Permutation.identity(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g.images[x]
            if y not in reps:
                reps[y] = compose(g, reps[x])
                queue.append(y)
    return reps


def automorphism_group(
    g: Graph,
    colouring: VertexColouring | Sequence[int] | None = None,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> AutGroup:
    """Full group of (colour-preserving) automorphisms of ``g``.

    Parameters
    ----------
    g : Graph
    colouring : VertexColouring or sequence of int, optional
        Colour per vertex; automorphisms must map each class onto itself.
    enum_cap : int
        Largest order for which :attr:`AutGroup.elements` is materialised.
    """
    colours = None
    if colouring is not None:
        colours = colouring.colours if isinstance(colouring, VertexColouring) else tuple(colouring)
        if len(colours) != g.n:
            raise InputError(f"colouring has {len(colours)} entries, graph has {g.n} vertices")
    search = _Search(g, colours)
    gens, transversals = search.run()
    order = 1
    for t in transversals:
        order *= len(t)
    # drop base levels with trivial orbits; they contribute nothing
    keep = [i for i, t in enumerate(transversals) if len(t) > 1]
    return AutGroup(
        n=g.n,
        generators=tuple(sorted(gens, key=lambda p: p.images)),
        base=tuple(search.base[i] for i in keep),
        transversals=tuple(transversals[i] for i in keep),
        order=order,
        enum_cap=enum_cap,
    )


def colour_class_stabiliser(dc: DoubleCover, *, enum_cap: int = DEFAULT_ENUM_CAP) -> AutGroup:
    """Automorphisms of the cover mapping ``V_0`` onto itself."""
    return automorphism_group(dc.graph, dc.colouring(), enum_cap=enum_cap)
