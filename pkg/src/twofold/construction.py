"""Cyclic layered graphs with complete bipartite links, and TF-maps that
shift every layer onto the next one.

``[H_0, ..., H_{m-1}]`` is the disjoint union of the layers plus every edge
between cyclically consecutive layers.  Given TF-isomorphisms
``link_i : H_i -> H_{i+1}`` whose cyclic product is the identity, the layer
maps glue to a TF-automorphism of the whole graph; it is non-trivial as soon
as one link is.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import Falsified, InputError, PreconditionError
from .graph import (
    Graph,
    Permutation,
    distance_matrix,
    every_edge_on_triangle,
    is_connected,
    is_vertex_determining,
    parse_permutation,
)
from .tf import TFMap, is_tf_automorphism, is_tf_isomorphism

MIN_LAYERS = 3


@dataclass(frozen=True)
class LayeredSpec:
    layers: tuple[Graph, ...]
    # link i goes from layer i to layer i+1 (mod m); None for a bare graph
    links: tuple[TFMap, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class LayeredGraph:
    graph: Graph
    layer_of: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.offsets)

    def global_index(self, layer: int, local: int) -> int:
        return self.offsets[layer] + local

    def local_index(self, v: int) -> int:
        return v - self.offsets[self.layer_of[v]]


def build_layered_graph(spec: LayeredSpec) -> LayeredGraph:
    m = spec.m
    if m < MIN_LAYERS:
        raise InputError(f"need at least {MIN_LAYERS} layers, got {m}")
    for i, h in enumerate(spec.layers):
        if h.n == 0:
            raise InputError(f"layer {i} is empty")
        iso = [v for v in range(h.n) if not h.rows[v]]
        if iso:
            raise InputError(f"layer {i} has isolated vertex {iso[0]}")
    offsets = []
    total = 0
    for h in spec.layers:
        offsets.append(total)
        total += h.n
    masks = [((1 << h.n) - 1) << off for h, off in zip(spec.layers, offsets)]
    rows = [0] * total
    layer_of = [0] * total
    for i, (h, off) in enumerate(zip(spec.layers, offsets)):
        across = masks[(i - 1) % m] | masks[(i + 1) % m]
        for v, r in enumerate(h.rows):
            rows[off + v] = (r << off) | across
            layer_of[off + v] = i
    return LayeredGraph(Graph(total, tuple(rows)), tuple(layer_of), tuple(offsets))


def cyclic_product(links: Sequence[TFMap]) -> TFMap:
    """``link_{m-1} * ... * link_0``: the map layer 0 -> layer 0 obtained by
    walking once around the cycle."""
    prod = links[0]
    for t in links[1:]:
        if t.n != prod.n:
            raise InputError("consecutive links act on different vertex counts")
        prod = t * prod
    return prod


def complete_link_cycle(rest: Sequence[TFMap]) -> TFMap:
    """Link 0 making the cyclic product the identity, given links 1..m-1."""
    if not rest:
        raise InputError("need at least one link to complete the cycle")
    return cyclic_product(list(rest)).inverse()


def _check_links(spec: LayeredSpec) -> tuple[TFMap, ...]:
    if spec.links is None:
        raise PreconditionError("no links were given")
    if len(spec.links) != spec.m:
        raise InputError(f"{spec.m} layers need {spec.m} links, got {len(spec.links)}")
    for i, t in enumerate(spec.links):
        src, dst = spec.layers[i], spec.layers[(i + 1) % spec.m]
        if t.n != src.n or src.n != dst.n:
            raise InputError(f"link {i} does not match the sizes of layers {i} and {(i + 1) % spec.m}")
        if not is_tf_isomorphism(src, dst, t):
            raise PreconditionError(f"link {i} is not a TF-isomorphism between its layers")
    return spec.links


def assemble_tf(spec: LayeredSpec, lg: LayeredGraph, *, require_identity_product: bool = True) -> TFMap:
    """Glue the links into one TF-map of ``lg.graph`` and validate it.

    With ``require_identity_product=False`` the cyclic-product condition is
    skipped, which lets callers observe whether it is actually needed.
    """
    links = _check_links(spec)
    if require_identity_product and not cyclic_product(links).is_identity():
        raise PreconditionError("the cyclic product of the links is not the identity")
    m = spec.m
    alpha = [0] * lg.graph.n
    beta = [0] * lg.graph.n
    for i, t in enumerate(links):
        off, nxt = lg.offsets[i], lg.offsets[(i + 1) % m]
        for v in range(spec.layers[i].n):
            alpha[off + v] = nxt + t.alpha(v)
            beta[off + v] = nxt + t.beta(v)
    tf = TFMap(Permutation(tuple(alpha)), Permutation(tuple(beta)))
    if not is_tf_automorphism(lg.graph, tf):
        raise Falsified("the assembled pair is not a TF-automorphism of the layered graph")
    return tf


def parity_shift(k: int) -> TFMap:
    """On the even cycle ``C_k``: alpha adds 2 to even vertices, beta adds 2
    to odd vertices, everything else fixed."""
    if k < 4 or k % 2:
        raise InputError(f"parity shift needs an even cycle length >= 4, got {k}")
    a = tuple((v + 2) % k if v % 2 == 0 else v for v in range(k))
    b = tuple((v + 2) % k if v % 2 == 1 else v for v in range(k))
    return TFMap(Permutation(a), Permutation(b))


# ----------------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------------


@dataclass
class LayeredReport:
    m: int
    n: int
    edge_count: int
    tf_valid: bool
    tf_nontrivial: bool
    diameter: float
    diameter_floor: int        # floor(m/2), the maximal layer distance
    diameter_ceil: int         # ceil(m/2), i.e. (m + (m mod 2)) / 2
    every_edge_on_triangle: bool
    growth_holds: bool
    growth_failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def floor_matches(self) -> bool:
        return self.diameter == self.diameter_floor

    @property
    def ceil_matches(self) -> bool:
        return self.diameter == self.diameter_ceil

    @property
    def discrepancy(self) -> bool:
        """The two closed forms disagree with each other (odd m)."""
        return self.diameter_floor != self.diameter_ceil

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "edge_count": self.edge_count,
            "tf_valid": self.tf_valid,
            "tf_nontrivial": self.tf_nontrivial,
            "diameter": self.diameter if math.isfinite(self.diameter) else None,
            "diameter_floor_formula": self.diameter_floor,
            "diameter_ceil_formula": self.diameter_ceil,
            "floor_formula_matches": self.floor_matches,
            "ceil_formula_matches": self.ceil_matches,
            "formula_discrepancy": self.discrepancy,
            "every_edge_on_triangle": self.every_edge_on_triangle,
            "growth_holds": self.growth_holds,
            "growth_failures": [list(p) for p in self.growth_failures[:10]],
        }


def growth_failures(g: Graph, dist: Sequence[Sequence[float]] | None = None) -> list[tuple[int, int]]:
    """Pairs ``(v, w)`` at distance ``diam - 1`` such that no neighbour of
    ``w`` is at distance ``diam`` from ``v``."""
    dist = dist if dist is not None else distance_matrix(g)
    diam = max((max(r) for r in dist), default=0)
    if not math.isfinite(diam) or diam < 1:
        return []
    bad = []
    for v in range(g.n):
        dv = dist[v]
        far = 0
        for u in range(g.n):
            if dv[u] == diam:
                far |= 1 << u
        for w in range(g.n):
            if dv[w] == diam - 1 and not g.rows[w] & far:
                bad.append((v, w))
    return bad


def verify_layered_graph(lg: LayeredGraph, t: TFMap) -> LayeredReport:
    g = lg.graph
    dist = distance_matrix(g)
    diam = max((max(r) for r in dist), default=0)
    bad = growth_failures(g, dist)
    m = lg.m
    return LayeredReport(
        m=m,
        n=g.n,
        edge_count=g.edge_count,
        tf_valid=len(t.alpha) == g.n and is_tf_automorphism(g, t),
        tf_nontrivial=not t.is_trivial(),
        diameter=diam,
        diameter_floor=m // 2,
        diameter_ceil=(m + 1) // 2,
        every_edge_on_triangle=every_edge_on_triangle(g),
        growth_holds=not bad,
        growth_failures=bad,
    )


# ----------------------------------------------------------------------------
# Large-diameter unstable graphs
# ----------------------------------------------------------------------------

MIN_COUNTEREXAMPLE_DIAMETER = 4


@dataclass
class CounterexampleSummary:
    lg: LayeredGraph
    tf: TFMap
    checks: dict[str, bool]
    diameter: float

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        from .formats import write_graph6

        return {
            "n": self.lg.graph.n,
            "m": self.lg.m,
            "edge_count": self.lg.graph.edge_count,
            "diameter": self.diameter if math.isfinite(self.diameter) else None,
            "checks": dict(self.checks),
            "passed": self.passed,
            "certificate": self.tf.to_dict(),
            "graph6": write_graph6(self.lg.graph),
        }


def layered_demo(m: int, layer: Graph, link: TFMap) -> tuple[LayeredSpec, LayeredGraph, TFMap]:
    """``m`` copies of ``layer``; link 1 is ``link``, links 2.. are the
    identity and link 0 closes the cycle."""
    if m < MIN_LAYERS:
        raise InputError(f"need at least {MIN_LAYERS} layers, got {m}")
    ident = TFMap.identity(layer.n)
    rest = [link] + [ident] * (m - 2)
    links = (complete_link_cycle(rest), *rest)
    spec = LayeredSpec(tuple([layer] * m), links)
    lg = build_layered_graph(spec)
    return spec, lg, assemble_tf(spec, lg)


def check_counterexample(m: int, layer: Graph, link: TFMap) -> CounterexampleSummary:
    """Build the layered graph and run every check; never raises on a failed check."""
    if not is_connected(layer):
        raise PreconditionError("layer graph must be connected")
    if not is_vertex_determining(layer):
        raise PreconditionError("layer graph must be vertex-determining")
    if not is_tf_automorphism(layer, link):
        raise PreconditionError("link is not a TF-automorphism of the layer")
    if link.is_trivial():
        raise PreconditionError("link must be a non-trivial TF-automorphism")
    _, lg, tf = layered_demo(m, layer, link)
    g = lg.graph
    diam = max((max(r) for r in distance_matrix(g)), default=0)
    checks = {
        "connected": is_connected(g),
        "diameter_at_least_4": diam >= MIN_COUNTEREXAMPLE_DIAMETER,
        "every_edge_on_triangle": every_edge_on_triangle(g),
        "vertex_determining": is_vertex_determining(g),
        # a non-trivial TF-automorphism already forces an unexpected cover automorphism
        "unstable": is_tf_automorphism(g, tf) and not tf.is_trivial(),
    }
    return CounterexampleSummary(lg, tf, checks, diam)


def large_diameter_counterexample(m: int, layer: Graph, link: TFMap) -> CounterexampleSummary:
    """An unstable, connected, vertex-determining graph of diameter >= 4 in
    which every edge lies on a triangle; raises naming the failed checks."""
    summary = check_counterexample(m, layer, link)
    if not summary.passed:
        raise Falsified(f"check(s) failed for m={m}: {', '.join(summary.failed())} (diameter {summary.diameter})")
    return summary


# ----------------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------------


def parse_layered_spec(text: str) -> LayeredSpec:
    """Line 1: ``m``; then ``m`` graph6 lines; then optionally ``m`` link
    lines ``ALPHA ; BETA`` (cycle notation, ``id`` or ``[images]``).  Link 0
    may be ``auto``.  ``#`` starts a comment."""
    from .formats import parse_graph6

    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((lineno, s))
    if not lines:
        raise InputError("empty layered spec")
    lineno, head = lines[0]
    try:
        m = int(head)
    except ValueError:
        raise InputError(f"line {lineno}: expected the layer count, got {head!r}") from None
    if m < MIN_LAYERS:
        raise InputError(f"line {lineno}: need at least {MIN_LAYERS} layers, got {m}")
    if len(lines) not in (1 + m, 1 + 2 * m):
        raise InputError(f"expected {m} layer lines and optionally {m} link lines, got {len(lines) - 1} lines")
    layers = []
    for lineno, s in lines[1 : 1 + m]:
        try:
            layers.append(parse_graph6(s))
        except InputError as e:
            raise InputError(f"line {lineno}: {e}") from None
    if len(lines) == 1 + m:
        return LayeredSpec(tuple(layers))
    links: list[TFMap | None] = []
    for i, (lineno, s) in enumerate(lines[1 + m :]):
        if s.lower() == "auto":
            if i:
                raise InputError(f"line {lineno}: only link 0 may be 'auto'")
            links.append(None)
            continue
        parts = s.split(";")
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'ALPHA ; BETA'")
        n = layers[i].n
        try:
            links.append(TFMap(parse_permutation(parts[0], n), parse_permutation(parts[1], n)))
        except InputError as e:
            raise InputError(f"line {lineno}: {e}") from None
    if links[0] is None:
        links[0] = complete_link_cycle(links[1:])
    return LayeredSpec(tuple(layers), tuple(links))


def format_layered_spec(spec: LayeredSpec) -> str:
    from .formats import write_graph6

    out = [str(spec.m)]
    out += [write_graph6(h) for h in spec.layers]
    if spec.links is not None:
        out += [f"{t.alpha.cycle_string()} ; {t.beta.cycle_string()}" for t in spec.links]
    return "\n".join(out) + "\n"

