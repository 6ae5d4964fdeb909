"""Acceptance suite: twelve end-to-end criteria, each printing one PASS/FAIL line.

Every check is exact.  Sweeps run over the bundled exhaustive corpora.
"""
from __future__ import annotations

import json
import random
import time

import numpy as np
import pytest

from twofold import families as F
from twofold.aut import automorphism_group
from twofold.cli import main
from twofold.construction import LayeredSpec, build_layered_graph
from twofold.corpus import corpus, corpus_lines, corpus_up_to
from twofold.double_cover import build_double_cover
from twofold.formats import parse_graph6, write_graph6
from twofold.graph import (
    Graph,
    Permutation,
    VertexLabeling,
    diameter,
    is_bipartite,
    is_connected,
    is_vertex_determining,
    parse_permutation,
    triangles_of,
)
from twofold.tf import (
    TFMap,
    anti_automorphisms_brute_force,
    instability_from_anti,
    is_anti_automorphism,
    stability_verdict,
    tf_from_cover_automorphism,
    tf_group_brute_force,
    tf_group_via_cover,
    tf_order_brute_force,
    twin_free_violations,
)
from twofold.ztrail import ClosureClass, classify_triangle_image, map_ztrail, random_ztrail

from conftest import brute_automorphisms


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} :: {detail}")
    return emit


def connected_non_bipartite(max_n: int, min_n: int = 3) -> list[Graph]:
    return [g for g in corpus_up_to(max_n, min_n) if is_connected(g) and is_bipartite(g) is None]


# ----------------------------------------------------------------------------


def test_01_cover_order_is_twice_the_tf_order(report):
    start = time.perf_counter()
    graphs = connected_non_bipartite(7)
    bad = []
    for g in graphs:
        cover = automorphism_group(build_double_cover(g).graph).order
        if cover != 2 * tf_order_brute_force(g):
            bad.append(write_graph6(g))
    secs = time.perf_counter() - start
    ok = not bad and secs < 600
    report(1, "|Aut B(G)| = 2|Aut^TF G| on connected non-bipartite graphs, 3 <= n <= 7", ok,
           f"{len(graphs)} graphs, {len(bad)} exceptions, {secs:.1f} s")
    assert not bad, bad[:5]
    assert secs < 600


def test_02_instability_iff_nontrivial_tf(report):
    graphs = connected_non_bipartite(7)
    bad = []
    for g in graphs:
        aut = automorphism_group(g).order
        cover = automorphism_group(build_double_cover(g).graph).order
        unstable = cover > 2 * aut
        nontrivial = tf_order_brute_force(g) > aut
        if unstable != nontrivial:
            bad.append(write_graph6(g))
    # outside the class: a single edge, everything by brute force
    k2 = F.complete(2)
    k2_aut = len(brute_automorphisms(k2))
    k2_cover = len(brute_automorphisms(build_double_cover(k2).graph))
    k2_tf = tf_group_brute_force(k2)
    k2_unstable = k2_cover > 2 * k2_aut
    k2_nontrivial = bool(k2_tf.nontrivial())
    verdict = stability_verdict(k2)
    k2_ok = (
        k2_unstable and not k2_nontrivial
        and verdict.unstable_by_definition == k2_unstable
        and verdict.has_nontrivial_tf == k2_nontrivial
        and not verdict.criteria_agree
    )
    ok = not bad and k2_ok
    report(2, "unstable <=> non-trivial TF-automorphism; K2 breaks it outside the class", ok,
           f"{len(graphs)} graphs, {len(bad)} exceptions; K2 |Aut B|={k2_cover}, |Aut|={k2_aut}, "
           f"|Aut^TF|={k2_tf.order}, unstable={k2_unstable}, non-trivial TF={k2_nontrivial}")
    assert not bad, bad[:5]
    assert k2_ok


def test_03_brute_force_and_cover_routes_agree(report):
    start = time.perf_counter()
    graphs = [g for g in corpus_up_to(6, 3) if is_connected(g)]
    bad = [write_graph6(g) for g in graphs if tf_group_brute_force(g).as_set() != tf_group_via_cover(g).as_set()]
    secs = time.perf_counter() - start
    ok = not bad and secs < 1800
    report(3, "TF group by brute force equals TF group via the cover, connected 3 <= n <= 6", ok,
           f"{len(graphs)} graphs, {len(bad)} mismatches, {secs:.1f} s")
    assert not bad, bad[:5]


def test_04_petersen_is_stable(report):
    start = time.perf_counter()
    r = stability_verdict(F.petersen())
    secs = time.perf_counter() - start
    ok = (
        not r.unstable_by_definition and not r.has_nontrivial_tf
        and (r.aut_order, r.cover_aut_order, r.tf_order) == (120, 240, 120)
        and secs < 5
    )
    report(4, "Petersen graph stable with orders 120 / 240 / 120", ok,
           f"aut={r.aut_order}, cover={r.cover_aut_order}, tf={r.tf_order}, "
           f"unstable={r.unstable_by_definition}, {secs:.2f} s")
    assert ok


def test_05_cover_automorphism_splits_into_swaps_on_the_path(report):
    # base graph: the path a-b-c-d-e; cover vertex (v, e) is named v0 / v1
    base = VertexLabeling(tuple("abcde"))
    cover_names = VertexLabeling(tuple(f"{v}{e}" for e in "01" for v in "abcde"))
    dc = build_double_cover(F.path(5))
    sigma = parse_permutation("(a0)(b1)(c0)(d1)(a1 e1)(b0 d0)(c1)(e0)", 10, cover_names)
    t = tf_from_cover_automorphism(dc, sigma)
    want_alpha = parse_permutation("(b d)", 5, base)
    want_beta = parse_permutation("(a e)", 5, base)
    ok = t.alpha == want_alpha and t.beta == want_beta
    report(5, "class-preserving cover automorphism projects to alpha=(b d), beta=(a e)", ok,
           f"got {t.notation(base.names)}")
    assert ok


def test_06_every_triangle_image_classifies(report):
    total = unclassified = graphs = 0
    for g in corpus_up_to(6):
        tris = triangles_of(g)
        if not tris:
            continue
        graphs += 1
        for t in tf_group_brute_force(g).nontrivial():
            for tri in tris:
                total += 1
                if classify_triangle_image(g, t, tri, check=False).config is None:
                    unclassified += 1
    ok = unclassified == 0
    report(6, "triangle images fall in exactly one of four shapes, n <= 6", ok,
           f"{graphs} graphs with triangles, {total} images, {unclassified} unclassified")
    assert ok


def test_07_twin_free_graphs_have_no_forbidden_tf_maps(report):
    checked = violations = 0
    for g in corpus_up_to(7):
        if not is_vertex_determining(g):
            continue
        group = tf_group_via_cover(g)
        if not group.nontrivial():
            continue
        checked += 1
        violations += len(twin_free_violations(g, group).violations)
    ok = violations == 0
    report(7, "vertex-determining graphs: non-trivial TF maps never pair automorphisms or unequal orders", ok,
           f"{checked} graphs with non-trivial TF maps, {violations} violations")
    assert ok


def test_08_anti_automorphism_of_order_above_two_iff_nontrivial_tf(report):
    mismatches = []
    for g in corpus_up_to(6):
        has_anti = any(gamma.order() > 2 for gamma in anti_automorphisms_brute_force(g))
        if has_anti != stability_verdict(g).has_nontrivial_tf:
            mismatches.append(write_graph6(g))
    c4 = F.cycle(4)
    r = Permutation.from_cycles(4, [(0, 1, 2, 3)])
    cert = instability_from_anti(c4, r) if is_anti_automorphism(c4, r) else None
    fixture_ok = cert == TFMap(r, Permutation.from_cycles(4, [(0, 3, 2, 1)]))
    total = sum(len(corpus(n)) for n in range(1, 7))
    ok = not mismatches and fixture_ok
    report(8, "anti-automorphism of order > 2 exists <=> non-trivial TF map, n <= 6", ok,
           f"{len(mismatches)}/{total} graphs disagree (e.g. {', '.join(mismatches[:3])}); "
           f"C4 rotation certificate {'ok' if fixture_ok else 'wrong'}: {cert.notation() if cert else None}")
    assert fixture_ok
    assert not mismatches, f"{len(mismatches)} graphs disagree"


def test_09_layered_octagon_demo(report, capsys):
    start = time.perf_counter()
    code = main(["construct", "demo", "--m", "8", "--base", "cycle:8"])
    d = json.loads(capsys.readouterr().out)
    secs = time.perf_counter() - start
    g = parse_graph6(d["graph6"])
    demo_ok = (
        code == 0 and d["n"] == 64 and d["tf_valid"] and d["tf_nontrivial"]
        and d["diameter"] == 4 and d["every_edge_on_triangle"] and is_vertex_determining(g)
        and secs < 10
    )
    code7 = main(["construct", "demo", "--m", "7", "--base", "cycle:8"])
    d7 = json.loads(capsys.readouterr().out)
    seven_ok = code7 == 0 and d7["diameter"] == 3 and d7["formula_discrepancy"] and not d7["ceil_formula_matches"]
    ok = demo_ok and seven_ok
    report(9, "m=8 octagon layers: 64 vertices, valid non-trivial TF map, diameter 4; m=7 flags the formula gap", ok,
           f"n={d['n']}, diameter={d['diameter']}, triangles={d['every_edge_on_triangle']}, "
           f"vertex-determining={is_vertex_determining(g)}, {secs:.2f} s; m=7 diameter={d7['diameter']}, "
           f"ceil formula={d7['diameter_ceil_formula']}")
    assert demo_ok
    assert seven_ok


def test_10_layered_diameter_is_half_the_layer_count(report):
    layers = {"K2": F.complete(2), "P3": F.path(3), "C4": F.cycle(4), "C8": F.cycle(8)}
    bad = []
    for m in range(4, 13):
        for name, h in layers.items():
            d = diameter(build_layered_graph(LayeredSpec((h,) * m)).graph)
            if d != m // 2:
                bad.append((m, name, d))
    ok = not bad
    report(10, "diameter = floor(m/2) for m in 4..12 and layers K2, P3, C4, C8", ok,
           f"36 graphs, {len(bad)} mismatches {bad[:3]}")
    assert ok


def test_11_tf_maps_preserve_trail_class_and_length(report):
    rng = random.Random(2024)
    pairs = class_changes = length_changes = parity_breaks = 0
    examples: dict[tuple[str, str], str] = {}
    for g in corpus_up_to(6):
        if not g.edge_count:
            continue
        trails = [random_ztrail(g, rng) for _ in range(100)]
        for t in tf_group_brute_force(g):
            for z in trails:
                img = map_ztrail(t, z, host=g)
                pairs += 1
                if len(img) != len(z):
                    length_changes += 1
                if img.closure != z.closure:
                    class_changes += 1
                    key = (z.closure.value, img.closure.value)
                    examples.setdefault(key, f"{write_graph6(g)} {t.notation()} {list(z.arcs)}")
                odd = len(img) % 2 == 1
                if (img.closure == ClosureClass.SEMI_CLOSED and not odd) or (img.closure == ClosureClass.CLOSED and odd):
                    parity_breaks += 1
    ok = not (class_changes or length_changes or parity_breaks)
    kinds = ", ".join(f"{a}->{b}" for a, b in sorted(examples))
    report(11, "TF maps preserve Z-trail closure class and length; parity constraints hold", ok,
           f"{pairs} (map, trail) pairs: {class_changes} class changes ({kinds}), "
           f"{length_changes} length changes, {parity_breaks} parity breaks")
    assert length_changes == 0 and parity_breaks == 0
    assert class_changes == 0, f"{class_changes} class changes, e.g. {examples}"


def _random_graph(rng: np.random.Generator, n: int) -> Graph:
    upper = np.triu(rng.random((n, n)) < rng.random(), 1)
    adj = upper | upper.T
    rows = tuple(int.from_bytes(np.packbits(r[::-1]).tobytes(), "big") >> (-n % 8) for r in adj) if n else ()
    return Graph(n, rows)


def test_12_graph6_round_trip(report):
    corpus_bad = 0
    corpus_count = 0
    for n in range(1, 8):
        for s in corpus_lines(n):
            corpus_count += 1
            g = parse_graph6(s)
            if write_graph6(g) != s or parse_graph6(write_graph6(g)) != g:
                corpus_bad += 1
    rng = np.random.default_rng(12)
    random_bad = 0
    for _ in range(10_000):
        g = _random_graph(rng, int(rng.integers(0, 101)))
        s = write_graph6(g)
        if parse_graph6(s) != g or write_graph6(parse_graph6(s)) != s:
            random_bad += 1
    ok = corpus_bad == 0 and random_bad == 0
    report(12, "graph6 decode(encode(g)) = g, byte-exact", ok,
           f"{corpus_count} corpus graphs ({corpus_bad} bad), 10000 random graphs n <= 100 ({random_bad} bad)")
    assert ok
