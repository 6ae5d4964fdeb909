"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed (or no census match),
2 input error, 3 an enumeration or oracle cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import families
from . import graph as _graph
from .aut import DEFAULT_ENUM_CAP, automorphism_group
from .census import CensusError, CensusRecord, find_minimal, run_census
from .construction import (
    assemble_tf,
    build_layered_graph,
    check_counterexample,
    cyclic_product,
    layered_demo,
    parity_shift,
    parse_layered_spec,
    verify_layered_graph,
)
from .double_cover import build_double_cover
from .errors import CapExceeded, Falsified, InputError
from .formats import parse_graph6, read_graph, write_edge_list, write_graph6
from .graph import Graph, VertexLabeling, parse_permutation, triangles_of
from .tf import (
    DEFAULT_ORACLE_BOUND,
    TFMap,
    is_tf_automorphism,
    stability_verdict,
    tf_group_brute_force,
    tf_group_via_cover,
)
from .ztrail import TriangleConfig, classify_triangle_image, find_image_partner, map_ztrail, validate_ztrail

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Failed(Exception):
    """Output was written but the command should exit with code 1."""


# ----------------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------------


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, "w") as fh:
        yield fh


def _emit(args, obj) -> None:
    with _output(args.out) as fh:
        if isinstance(obj, str):
            fh.write(obj if obj.endswith("\n") else obj + "\n")
        else:
            json.dump(obj, fh)
            fh.write("\n")


def _load_graph(args, source: str) -> tuple[Graph, VertexLabeling | None]:
    """A family name (``cycle:8``), a file, ``-`` for stdin, or a graph6 literal."""
    g = families.from_name(source)
    if g is not None:
        return g, None
    if source == "-":
        return read_graph(sys.stdin.read(), args.format)
    if os.path.exists(source):
        with open(source) as fh:
            return read_graph(fh.read(), args.format)
    if args.format == "edgelist":
        raise InputError(f"no such file {source!r}")
    return parse_graph6(source), None


def _perm(text: str, n: int, labeling: VertexLabeling | None):
    return parse_permutation(text, n, labeling)


def _tf_arg(args, g: Graph, labeling) -> TFMap:
    if args.alpha is None or args.beta is None:
        raise InputError("both --alpha and --beta are required")
    return TFMap(_perm(args.alpha, g.n, labeling), _perm(args.beta, g.n, labeling))


def _parse_arcs(text: str, n: int, labeling: VertexLabeling | None) -> list[tuple[int, int]]:
    """``"0,1 2,1 2,3"`` or ``"0>1 2>1"``; names allowed with a labeling."""
    arcs = []
    for tok in text.replace(";", " ").split():
        parts = tok.replace(">", ",").split(",")
        if len(parts) != 2:
            raise InputError(f"bad arc {tok!r}; write u,v")
        if labeling is not None:
            u, v = labeling.index(parts[0]), labeling.index(parts[1])
        else:
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise InputError(f"bad arc {tok!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"arc {tok!r} out of range for n={n}")
        arcs.append((u, v))
    return arcs


def _names(labeling: VertexLabeling | None):
    return labeling.names if labeling is not None else None


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------


def cmd_cover(args) -> None:
    g, _ = _load_graph(args, args.graph)
    dc = build_double_cover(g)
    _emit(args, write_edge_list(dc.graph) if args.format == "edgelist" else write_graph6(dc.graph))


def cmd_aut(args) -> None:
    g, labeling = _load_graph(args, args.graph)
    target = build_double_cover(g).graph if args.cover else g
    ag = automorphism_group(target, enum_cap=args.enum_cap)
    names = None if args.cover else _names(labeling)
    _emit(args, {
        "n": target.n,
        "order": ag.order,
        "generators": [p.cycle_string(names) for p in ag.generators],
        "base": list(ag.base),
        "orbit_lengths": [len(t) for t in ag.transversals],
    })


def cmd_tf(args) -> None:
    g, labeling = _load_graph(args, args.graph)
    if args.brute_force:
        group = tf_group_brute_force(g, bound=args.oracle_bound, enum_cap=args.enum_cap)
        method = "brute_force"
    else:
        group = tf_group_via_cover(g, enum_cap=args.enum_cap)
        method = "cover"
    nontrivial = group.nontrivial()
    out = {"method": method, "order": group.order, "nontrivial_count": len(nontrivial)}
    if args.list:
        out["elements"] = [t.notation(_names(labeling)) for t in group]
    _emit(args, out)


def cmd_stability(args) -> None:
    g, labeling = _load_graph(args, args.graph)
    _emit(args, stability_verdict(g, enum_cap=args.enum_cap).to_dict(labeling))


def cmd_triangles(args) -> None:
    g, labeling = _load_graph(args, args.graph)
    if args.all:
        maps = tf_group_via_cover(g, enum_cap=args.enum_cap).nontrivial()
    else:
        t = _tf_arg(args, g, labeling)
        if not is_tf_automorphism(g, t):
            raise InputError("the supplied pair is not a TF-automorphism of the graph")
        maps = [t]
    results = []
    failed = False
    for t in maps:
        for tri in triangles_of(g):
            img = classify_triangle_image(g, t, tri, check=False)
            entry = {"map": t.notation(_names(labeling)), **img.to_dict()}
            if img.config is None:
                failed = True
            elif img.config != TriangleConfig.UNDIRECTED:
                partner = find_image_partner(g, t, tri)
                entry["partner"] = partner.to_dict()
                failed |= partner.falsified
            results.append(entry)
    _emit(args, {"triangles": len(triangles_of(g)), "maps": len(maps), "images": results})
    if failed:
        raise _Failed


def cmd_ztrail(args) -> None:
    g, labeling = _load_graph(args, args.graph)
    z = validate_ztrail(_parse_arcs(args.arcs, g.n, labeling), host=g)
    out = {"arcs": [list(a) for a in z.arcs], "walk": list(z.walk), "length": len(z), "class": z.closure.value}
    if args.alpha is not None or args.beta is not None:
        t = _tf_arg(args, g, labeling)
        img = map_ztrail(t, z, host=g)
        out["image"] = {
            "arcs": [list(a) for a in img.arcs],
            "walk": list(img.walk),
            "class": img.closure.value,
            "class_preserved": img.closure == z.closure,
        }
    _emit(args, out)


def _demo_link(base: Graph, base_name: str, args, labeling=None) -> TFMap:
    if args.alpha is not None or args.beta is not None:
        return _tf_arg(args, base, labeling)
    name = base_name.strip().lower()
    if name.startswith("cycle:"):
        return parity_shift(base.n)
    raise InputError("give --alpha/--beta for the link unless the base is an even cycle")


def cmd_construct(args) -> None:
    if args.mode == "demo":
        base = families.from_name(args.base)
        if base is None:
            raise InputError(f"unknown base graph {args.base!r}")
        link = _demo_link(base, args.base, args)
        _, lg, tf = layered_demo(args.m, base, link)
    else:
        with open(args.spec) as fh:
            spec = parse_layered_spec(fh.read())
        lg = build_layered_graph(spec)
        if spec.links is None:
            tf = TFMap.identity(lg.graph.n)
        else:
            tf = assemble_tf(spec, lg, require_identity_product=not args.allow_nonidentity_product)
    report = verify_layered_graph(lg, tf)
    out = report.to_dict()
    out["tf"] = tf.to_dict()
    out["graph6"] = write_graph6(lg.graph)
    if args.mode == "spec" and spec.links is not None:
        out["cyclic_product_identity"] = cyclic_product(spec.links).is_identity()
    _emit(args, out)
    if not (report.tf_valid and report.every_edge_on_triangle and report.floor_matches):
        raise _Failed


def cmd_verify_counterexample(args) -> None:
    base = families.from_name(args.base)
    if base is None:
        base, _ = _load_graph(args, args.base)
    link = _demo_link(base, args.base, args)
    summary = check_counterexample(args.m, base, link)
    out = summary.to_dict()
    if not args.include_graph:
        out.pop("graph6")
    _emit(args, out)
    if not summary.passed:
        raise _Failed


def cmd_census(args) -> None:
    if args.input in (None, "-"):
        lines = sys.stdin.readlines()
    else:
        with open(args.input) as fh:
            lines = fh.readlines()
    stream = run_census(lines, oracle_bound=args.oracle_bound, enum_cap=args.enum_cap, jobs=args.jobs)
    errors = 0
    if args.minimal is None:
        with _output(args.out) as fh:
            for rec in stream:
                errors += isinstance(rec, CensusError)
                fh.write(rec.to_json() + "\n")
    else:
        records: list[CensusRecord] = []
        for rec in stream:
            if isinstance(rec, CensusError):
                errors += 1
                sys.stderr.write(rec.to_json() + "\n")
            else:
                records.append(rec)
        hits = find_minimal(records, args.minimal)
        with _output(args.out) as fh:
            for rec in hits:
                fh.write(rec.to_json() + "\n")
        if not hits:
            raise _Failed
    if errors:
        sys.stderr.write(f"{errors} input line(s) could not be processed\n")


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twofold", description="Graph stability via two-fold automorphisms.")
    ap.add_argument("--oracle-bound", type=int, default=DEFAULT_ORACLE_BOUND,
                    help="largest n for brute-force oracles (default %(default)s)")
    ap.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP,
                    help="largest group order to enumerate (default %(default)s)")
    ap.add_argument("--format", choices=("g6", "edgelist"), default="g6", help="graph file format")
    ap.add_argument("--out", help="write output to FILE instead of stdout")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for census")
    ap.add_argument("--max-n", type=int, default=_graph.DEFAULT_MAX_N, help="largest supported vertex count")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="family name (cycle:8), file, '-' or graph6 string")
        p.set_defaults(fn=fn)
        return p

    def tf_opts(p):
        p.add_argument("--alpha", help="permutation: cycles '(0 2)(1 3)', 'id' or '[images]'")
        p.add_argument("--beta", help="permutation, same syntax as --alpha")

    graph_cmd("cover", cmd_cover, "emit the canonical double cover")
    p = graph_cmd("aut", cmd_aut, "automorphism group order and generators")
    p.add_argument("--cover", action="store_true", help="use the double cover instead")
    p = graph_cmd("tf", cmd_tf, "group of TF-automorphisms")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--brute-force", action="store_true", help="scan Sym(n) x Sym(n)")
    m.add_argument("--via-cover", action="store_true", help="project the cover class stabiliser (default)")
    p.add_argument("--list", action="store_true", help="list every element")
    graph_cmd("stability", cmd_stability, "stability report as JSON")
    p = graph_cmd("triangles", cmd_triangles, "triangle image configurations under a TF-map")
    tf_opts(p)
    p.add_argument("--all", action="store_true", help="every non-trivial TF-automorphism")
    p = graph_cmd("ztrail", cmd_ztrail, "validate, classify and map a Z-trail")
    p.add_argument("--arcs", required=True, help="arc sequence, e.g. '0,1 2,1 2,3'")
    tf_opts(p)

    p = sub.add_parser("construct", help="build a layered graph and verify it")
    csub = p.add_subparsers(dest="mode", required=True)
    d = csub.add_parser("demo", help="m copies of a base graph")
    d.add_argument("--m", type=int, default=8)
    d.add_argument("--base", default="cycle:8")
    tf_opts(d)
    d.set_defaults(fn=cmd_construct)
    s = csub.add_parser("spec", help="from a layered-spec file")
    s.add_argument("spec")
    s.add_argument("--allow-nonidentity-product", action="store_true",
                   help="assemble even if the links do not multiply to the identity")
    s.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify-counterexample", help="check the large-diameter unstable construction")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--base", default="cycle:8")
    p.add_argument("--include-graph", action="store_true", help="include the graph6 string")
    tf_opts(p)
    p.set_defaults(fn=cmd_verify_counterexample)

    p = sub.add_parser("census", help="JSON-lines records for a graph6 corpus")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    p.add_argument("--minimal", metavar="EXPR", help="only the smallest records satisfying EXPR")
    p.set_defaults(fn=cmd_census)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _graph.set_max_n(args.max_n)
        args.fn(args)
    except _Failed:
        return EXIT_FALSIFIED
    except Falsified as e:
        print(f"falsified: {e}", file=sys.stderr)
        return EXIT_FALSIFIED
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        _graph.set_max_n(_graph.DEFAULT_MAX_N)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
