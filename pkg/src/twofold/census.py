"""Per-graph stability records over graph6 corpora, and minimal-match search."""
from __future__ import annotations

import ast
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

from . import graph as _graph
from .aut import DEFAULT_ENUM_CAP, automorphism_group, colour_class_stabiliser
from .double_cover import build_double_cover
from .errors import CapExceeded, InputError
from .formats import iter_graph6, parse_graph6, write_graph6
from .graph import Graph, every_edge_on_triangle, is_bipartite, is_connected, is_vertex_determining, triangles_of
from .tf import DEFAULT_ORACLE_BOUND, TFMap, tf_group_brute_force, tf_group_via_cover, tf_order_brute_force
from .ztrail import TriangleConfig, classify_triangle_image

CONFIG_NAMES = tuple(c.value for c in TriangleConfig)


@dataclass
class CensusRecord:
    index: int
    graph6: str
    n: int
    edge_count: int
    connected: bool
    bipartite: bool
    vertex_determining: bool
    every_edge_on_triangle: bool
    triangle_count: int
    aut_order: int
    cover_aut_order: int
    tf_order: int
    tf_method: str                 # "brute_force" or "cover"
    unstable_by_definition: bool
    has_nontrivial_tf: bool
    criteria_agree: bool
    # None when the TF group is too large to enumerate
    triangle_config_counts: dict[str, int] | None = field(default=None)
    unclassified_triangle_images: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


@dataclass
class CensusError:
    index: int
    line: int
    error: str

    def to_json(self) -> str:
        return json.dumps({"index": self.index, "line": self.line, "error": self.error}, separators=(",", ":"))


def triangle_config_counts(g: Graph, maps: Iterable[TFMap]) -> tuple[dict[str, int], int]:
    """Configuration counts over all triangles times all non-trivial maps,
    plus the number of images that fit no configuration."""
    counts = Counter({name: 0 for name in CONFIG_NAMES})
    unclassified = 0
    tris = triangles_of(g)
    if not tris:
        return dict(counts), 0
    for t in maps:
        if t.is_trivial():
            continue
        for tri in tris:
            img = classify_triangle_image(g, t, tri, check=False)
            if img.config is None:
                unclassified += 1
            else:
                counts[img.config.value] += 1
    return dict(counts), unclassified


def census_record(
    g: Graph,
    index: int = 0,
    *,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> CensusRecord:
    aut = automorphism_group(g, enum_cap=enum_cap)
    dc = build_double_cover(g)
    cover = automorphism_group(dc.graph, enum_cap=enum_cap)
    maps = None
    if g.n <= oracle_bound:
        tf_order, method = tf_order_brute_force(g, bound=oracle_bound), "brute_force"
        if tf_order <= enum_cap:
            maps = tuple(tf_group_brute_force(g, bound=oracle_bound, enum_cap=enum_cap))
    else:
        sigma = colour_class_stabiliser(dc, enum_cap=enum_cap)
        tf_order, method = sigma.order, "cover"
        if sigma.order <= enum_cap:
            maps = tuple(tf_group_via_cover(g, enum_cap=enum_cap, stabiliser=sigma))
    unstable = cover.order > 2 * aut.order
    nontrivial = tf_order > aut.order
    tris = triangles_of(g)
    if not tris:
        counts, unclassified = {name: 0 for name in CONFIG_NAMES}, 0
    elif maps is None:
        counts, unclassified = None, 0
    else:
        counts, unclassified = triangle_config_counts(g, maps)
    return CensusRecord(
        index=index,
        graph6=write_graph6(g),
        n=g.n,
        edge_count=g.edge_count,
        connected=is_connected(g),
        bipartite=is_bipartite(g) is not None,
        vertex_determining=is_vertex_determining(g),
        every_edge_on_triangle=every_edge_on_triangle(g),
        triangle_count=len(tris),
        aut_order=aut.order,
        cover_aut_order=cover.order,
        tf_order=tf_order,
        tf_method=method,
        unstable_by_definition=unstable,
        has_nontrivial_tf=nontrivial,
        criteria_agree=unstable == nontrivial,
        triangle_config_counts=counts,
        unclassified_triangle_images=unclassified,
    )


def _work(item: tuple[int, int, str, int, int, int]) -> CensusRecord | CensusError:
    index, lineno, line, oracle_bound, enum_cap, max_n = item
    # worker processes do not inherit a changed bound under spawn
    _graph.set_max_n(max_n)
    try:
        g = parse_graph6(line)
        return census_record(g, index, oracle_bound=oracle_bound, enum_cap=enum_cap)
    except (InputError, CapExceeded) as e:
        return CensusError(index, lineno, str(e))


def run_census(
    lines: Iterable[str],
    *,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    enum_cap: int = DEFAULT_ENUM_CAP,
    jobs: int = 1,
) -> Iterator[CensusRecord | CensusError]:
    """One record (or error) per non-blank input line, in input order."""
    items = [
        (i, lineno, s, oracle_bound, enum_cap, _graph.MAX_N)
        for i, (lineno, s) in enumerate(iter_graph6(lines))
    ]
    if jobs <= 1 or len(items) < 2:
        yield from map(_work, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_work, items, chunksize=max(1, len(items) // (8 * jobs)))


# ----------------------------------------------------------------------------
# Predicates
# ----------------------------------------------------------------------------

_ALLOWED = (
    ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not, ast.USub,
    ast.Compare, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE,
    ast.BinOp, ast.Add, ast.Sub, ast.Mult, ast.Mod,
    ast.Name, ast.Load, ast.Constant,
)


def _namespace(r: CensusRecord) -> dict:
    ns = {k: v for k, v in asdict(r).items() if k != "triangle_config_counts"}
    ns["unstable"] = r.unstable_by_definition
    ns["has_triangle"] = r.triangle_count > 0
    for name in CONFIG_NAMES:
        ns[name] = (r.triangle_config_counts or {}).get(name, 0)
    ns["true"], ns["false"] = True, False
    return ns


def compile_predicate(expr: str) -> Callable[[CensusRecord], bool]:
    """A boolean expression over record fields, e.g.
    ``unstable and has_triangle and shared_vertex > 0``.

    Names: every record field, ``unstable``, ``has_triangle`` and one count
    per triangle configuration.  Only comparisons, boolean and simple
    arithmetic operators are accepted.
    """
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as e:
        raise InputError(f"bad predicate {expr!r}: {e.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise InputError(f"predicate may not contain {type(node).__name__}")
    known = set(_namespace(_EXAMPLE))
    for node in ast.walk(tree):
        if isinstance(node, ast.Name) and node.id not in known:
            raise InputError(f"unknown name {node.id!r} in predicate")
    code = compile(tree, "<predicate>", "eval")

    def pred(r: CensusRecord) -> bool:
        return bool(eval(code, {"__builtins__": {}}, _namespace(r)))

    return pred


def find_minimal(records: Iterable[CensusRecord], expr: str) -> list[CensusRecord]:
    """Matching records of least order, then least size, tied by graph6."""
    recs = list(records)
    if not recs:
        raise InputError("empty corpus")
    pred = compile_predicate(expr)
    hits = [r for r in recs if pred(r)]
    if not hits:
        return []
    best = min((r.n, r.edge_count) for r in hits)
    return sorted((r for r in hits if (r.n, r.edge_count) == best), key=lambda r: r.graph6)


_EXAMPLE = CensusRecord(
    index=0, graph6="@", n=1, edge_count=0, connected=True, bipartite=True,
    vertex_determining=True, every_edge_on_triangle=True, triangle_count=0,
    aut_order=1, cover_aut_order=2, tf_order=1, tf_method="brute_force",
    unstable_by_definition=False, has_nontrivial_tf=False, criteria_agree=True,
)
