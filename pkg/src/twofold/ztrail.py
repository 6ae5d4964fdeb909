"""Alternating trails (Z-trails) and images of triangles under TF-maps.

A Z-trail is stored as its arc sequence together with the walk
``x0, x1, ..., xk`` it traces: consecutive arcs meet alternately head-to-head
and tail-to-tail, so the arcs are traversed alternately forwards and
backwards along the walk.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import InputError, PreconditionError
from .graph import Arc, Graph, MixedGraph, is_triangle
from .tf import TFMap, is_tf_automorphism


class ClosureClass(str, Enum):
    OPEN = "open"
    SEMI_CLOSED = "semi-closed"
    CLOSED = "closed"


@dataclass(frozen=True)
class ZTrail:
    arcs: tuple[Arc, ...]
    walk: tuple[int, ...]

    @property
    def closure(self) -> ClosureClass:
        return classify_ztrail(self)

    def __len__(self) -> int:
        return len(self.arcs)

    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    def same_trail(self, other: ZTrail) -> bool:
        # orderings are not unique, so compare arc sets and class
        return self.arc_set() == other.arc_set() and self.closure == other.closure


def _host_arcs(host: Graph | MixedGraph) -> frozenset[Arc]:
    if isinstance(host, MixedGraph):
        return host.arcs
    return frozenset(host.arcs())


def validate_ztrail(arcs: Sequence[Sequence[int]], host: Graph | MixedGraph | None = None) -> ZTrail:
    """Check alternation and arc-distinctness; optionally that every arc is in ``host``."""
    arcs = tuple((int(a[0]), int(a[1])) for a in arcs)
    if not arcs:
        raise InputError("a Z-trail needs at least one arc")
    if len(set(arcs)) != len(arcs):
        raise InputError("repeated arc in Z-trail")
    for u, v in arcs:
        if u == v:
            raise InputError("loop not allowed")
    if host is not None:
        available = _host_arcs(host)
        missing = [a for a in arcs if a not in available]
        if missing:
            raise InputError(f"arc {missing[0]} is not an arc of the host graph")
    (p, q) = arcs[0]
    if len(arcs) == 1:
        return ZTrail(arcs, (p, q))
    r, s = arcs[1]
    if s == q:
        walk, forward = [p, q], True    # p -> q <- r
    elif r == p:
        walk, forward = [q, p], False   # q <- p -> s
    else:
        raise InputError(f"alternation break between arcs 1 and 2: {arcs[0]}, {arcs[1]}")
    for i, (a, b) in enumerate(arcs[1:], start=1):
        fwd = forward if i % 2 == 0 else not forward
        x = walk[-1]
        if fwd and a == x:
            walk.append(b)
        elif not fwd and b == x:
            walk.append(a)
        else:
            raise InputError(f"alternation break at arc {i + 1}: {arcs[i - 1]}, {arcs[i]}")
    return ZTrail(arcs, tuple(walk))


def classify_ztrail(t: ZTrail) -> ClosureClass:
    if t.walk[0] != t.walk[-1]:
        return ClosureClass.OPEN
    # the end vertex plays the same role (tail/head) in the first and last
    # arc exactly when the number of arcs is even
    return ClosureClass.SEMI_CLOSED if len(t.arcs) % 2 else ClosureClass.CLOSED


def map_ztrail(t: TFMap, z: ZTrail, host: Graph | MixedGraph | None = None) -> ZTrail:
    """Image of ``z`` under ``t``; each arc ``(u, v)`` goes to ``(alpha(u), beta(v))``.

    Alternation and length survive; the closure class can change between open
    and semi-closed, because the two ends of an odd trail are moved by
    different permutations.
    """
    image = [t.arc_image(u, v) for u, v in z.arcs]
    if host is not None:
        available = _host_arcs(host)
        for src, a in zip(z.arcs, image):
            if a not in available:
                raise PreconditionError(f"image {a} of arc {src} is not an arc: not a TF-map of the host")
    return validate_ztrail(image)


def triangle_to_ztrails(g: Graph, tri: Sequence[int]) -> tuple[ZTrail, ZTrail]:
    """The two semi-closed 3-arc trails ``x->y<-z->x`` and ``x<-y->z<-x``."""
    if not is_triangle(g, tri):
        raise PreconditionError(f"{tuple(tri)} is not a triangle")
    x, y, z = sorted(tri)
    return (
        validate_ztrail([(x, y), (z, y), (z, x)]),
        validate_ztrail([(y, x), (y, z), (x, z)]),
    )


def random_ztrail(g: Graph, rng: random.Random, max_len: int = 8) -> ZTrail | None:
    """A random Z-trail of ``g`` with at most ``max_len`` arcs, grown by an
    alternating walk from a random arc; None if ``g`` has no edges."""
    arcs = g.arcs()
    if not arcs:
        return None
    u, v = rng.choice(arcs)
    seq = [(u, v)]
    used = {(u, v)}
    x, head_turn = v, True     # next arc must end at x
    target = rng.randint(1, max_len)
    while len(seq) < target:
        if head_turn:
            cands = [(w, x) for w in g.neighbors(x) if (w, x) not in used]
        else:
            cands = [(x, w) for w in g.neighbors(x) if (x, w) not in used]
        if not cands:
            break
        a = rng.choice(cands)
        seq.append(a)
        used.add(a)
        x = a[0] if head_turn else a[1]
        head_turn = not head_turn
    return validate_ztrail(seq, host=g)


class TriangleConfig(str, Enum):
    CLOSED_Z6 = "closed_z6"
    SHARED_VERTEX = "shared_vertex"
    SHARED_EDGE = "shared_edge"
    UNDIRECTED = "undirected"

    @property
    def letter(self) -> str:
        return "abcd"[list(TriangleConfig).index(self)]


_BY_AGREEMENT = {
    0: TriangleConfig.CLOSED_Z6,
    1: TriangleConfig.SHARED_VERTEX,
    2: TriangleConfig.SHARED_EDGE,
    3: TriangleConfig.UNDIRECTED,
}


@dataclass(frozen=True)
class TriangleImage:
    triangle: tuple[int, int, int]
    by_agreement: TriangleConfig
    by_geometry: TriangleConfig | None
    arcs: tuple[Arc, ...]          # closed Z-trail order
    agreement: tuple[int, ...]     # triangle vertices with alpha(x) == beta(x)
    image_vertices: tuple[int, ...]
    chords: tuple[tuple[int, int], ...] = ()

    @property
    def config(self) -> TriangleConfig | None:
        """The configuration, or None when the two derivations disagree."""
        return self.by_agreement if self.by_agreement == self.by_geometry else None

    def to_dict(self) -> dict:
        return {
            "triangle": list(self.triangle),
            "config": self.config.value if self.config else None,
            "by_agreement": self.by_agreement.value,
            "by_geometry": self.by_geometry.value if self.by_geometry else None,
            "image_arcs": [list(a) for a in self.arcs],
            "agreement": list(self.agreement),
            "chords": [list(c) for c in self.chords],
        }


def _is_alternating_hexagon(arcs: frozenset[Arc]) -> bool:
    """Six arcs on six vertices whose underlying graph is a 6-cycle and in
    which every vertex is a pure source or a pure sink."""
    mg_vertices = {x for a in arcs for x in a}
    if len(arcs) != 6 or len(mg_vertices) != 6:
        return False
    out_deg = {v: 0 for v in mg_vertices}
    in_deg = {v: 0 for v in mg_vertices}
    for u, v in arcs:
        out_deg[u] += 1
        in_deg[v] += 1
    if any(out_deg[v] + in_deg[v] != 2 or (out_deg[v] and in_deg[v]) for v in mg_vertices):
        return False
    # connected 2-regular on 6 vertices => a single hexagon
    ordered = _alternating_order(arcs)
    return ordered is not None and classify_ztrail(validate_ztrail(ordered)) == ClosureClass.CLOSED


def _alternating_order(arcs: frozenset[Arc]) -> list[Arc] | None:
    remaining = set(arcs)
    first = min(remaining)
    seq = [first]
    remaining.discard(first)
    head_turn = True   # next arc shares the head of the previous one
    while remaining:
        u, v = seq[-1]
        if head_turn:
            nxt = [a for a in remaining if a[1] == v]
        else:
            nxt = [a for a in remaining if a[0] == u]
        if len(nxt) != 1:
            return None
        seq.append(nxt[0])
        remaining.discard(nxt[0])
        head_turn = not head_turn
    return seq


def _underlying_triangles(edges: set[frozenset[int]]) -> list[frozenset[int]]:
    verts = sorted({x for e in edges for x in e})
    out = []
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            b = verts[j]
            if frozenset((a, b)) not in edges:
                continue
            for c in verts[j + 1 :]:
                if frozenset((a, c)) in edges and frozenset((b, c)) in edges:
                    out.append(frozenset((a, b, c)))
    return out


def geometric_config(n: int, arcs: Sequence[Arc]) -> TriangleConfig | None:
    """Classify six image arcs by shape alone, or None if no shape fits."""
    mg = MixedGraph(n, frozenset(arcs))
    verts = mg.vertices()
    paired = mg.paired_edges()
    under = mg.underlying_edges()
    tris = _underlying_triangles(under)
    if len(verts) == 3 and len(paired) == 3 and mg.is_self_paired():
        return TriangleConfig.UNDIRECTED
    if len(verts) == 4 and len(paired) == 1 and len(under) == 5 and len(tris) == 2:
        if len(tris[0] & tris[1]) == 2:
            return TriangleConfig.SHARED_EDGE
    if len(verts) == 5 and not paired and len(under) == 6 and len(tris) == 2:
        if len(tris[0] & tris[1]) == 1:
            return TriangleConfig.SHARED_VERTEX
    if len(verts) == 6 and not paired and _is_alternating_hexagon(mg.arcs):
        return TriangleConfig.CLOSED_Z6
    return None


def classify_triangle_image(g: Graph, t: TFMap, tri: Sequence[int], *, check: bool = True) -> TriangleImage:
    """Image of the six arcs of ``tri`` under ``t`` and its configuration.

    The configuration is derived twice: from how many triangle vertices
    ``alpha`` and ``beta`` agree on (0 -> closed hexagon, 1 -> two triangles on
    a vertex, 2 -> two triangles on an edge, 3 -> undirected triangle), and
    independently from the shape of the image arc set.
    """
    if not is_triangle(g, tri):
        raise PreconditionError(f"{tuple(tri)} is not a triangle")
    if check and not is_tf_automorphism(g, t):
        raise PreconditionError("the map is not a TF-automorphism of the graph")
    x, y, z = sorted(tri)
    a, b = t.alpha, t.beta
    arcs = (
        (a(x), b(y)), (a(z), b(y)), (a(z), b(x)),
        (a(y), b(x)), (a(y), b(z)), (a(x), b(z)),
    )
    agree = tuple(v for v in (x, y, z) if a(v) == b(v))
    by_agreement = _BY_AGREEMENT[len(agree)]
    by_geometry = geometric_config(g.n, arcs)
    verts = tuple(sorted({v for arc in arcs for v in arc}))
    chords: tuple[tuple[int, int], ...] = ()
    if by_agreement == TriangleConfig.CLOSED_Z6:
        cycle_edges = {frozenset(arc) for arc in arcs}
        chords = tuple(
            (u, v) for i, u in enumerate(verts) for v in verts[i + 1 :]
            if g.has_edge(u, v) and frozenset((u, v)) not in cycle_edges
        )
    return TriangleImage((x, y, z), by_agreement, by_geometry, arcs, agree, verts, chords)


@dataclass(frozen=True)
class PartnerReport:
    """Where the arcs reversing the image of a triangle come from.

    ``kind`` is ``"triangle"``, ``"closed_z6"`` or ``"other"``; ``falsified`` is
    set when the pre-image structure contradicts the expected shape (an
    ``"other"`` partner, a partner sharing a vertex with the triangle in the
    hexagon case, or a disconnected pair in the two-triangle cases).
    """

    config: TriangleConfig
    kind: str
    preimage_arcs: tuple[Arc, ...]
    partner_vertices: tuple[int, ...]
    shared_vertices: tuple[int, ...]
    connected: bool
    falsified: bool

    def to_dict(self) -> dict:
        return {
            "config": self.config.value,
            "kind": self.kind,
            "preimage_arcs": [list(a) for a in self.preimage_arcs],
            "partner_vertices": list(self.partner_vertices),
            "shared_vertices": list(self.shared_vertices),
            "connected": self.connected,
            "falsified": self.falsified,
        }


def _connected_on(g: Graph, verts: set[int]) -> bool:
    if not verts:
        return True
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if v in verts and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == verts


def find_image_partner(g: Graph, t: TFMap, tri: Sequence[int]) -> PartnerReport:
    img = classify_triangle_image(g, t, tri)
    if img.config is None:
        raise PreconditionError("triangle image is unclassified")
    if img.config == TriangleConfig.UNDIRECTED:
        raise PreconditionError("an undirected triangle image has no partner structure")
    image = set(img.arcs)
    missing = sorted({(v, u) for u, v in image} - image)
    ainv, binv = t.alpha.inverse(), t.beta.inverse()
    pre = tuple(sorted((ainv(u), binv(v)) for u, v in missing))
    verts = {x for a in pre for x in a}
    tri_set = set(img.triangle)
    shared = tuple(sorted(verts & tri_set))
    connected = _connected_on(g, verts | tri_set)
    if img.config == TriangleConfig.CLOSED_Z6:
        # reversing every arc of the image hexagon keeps it a closed Z-trail;
        # pull that trail back through the inverse map
        back = [(ainv(v), binv(u)) for u, v in img.arcs]
        try:
            closed = classify_ztrail(validate_ztrail(back)) == ClosureClass.CLOSED
        except InputError:
            closed = False
        if closed and len(verts) == 3:
            kind = "triangle"
        elif closed:
            kind = "closed_z6"
        else:
            kind = "other"
        falsified = kind == "other" or bool(shared)
    else:
        kind = "triangle" if len(verts) == 3 and is_triangle(g, sorted(verts)) else "other"
        falsified = not connected
    return PartnerReport(img.config, kind, pre, tuple(sorted(verts)), shared, connected, falsified)
