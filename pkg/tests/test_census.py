from __future__ import annotations

import json

import pytest

from twofold import families as F
from twofold.census import CensusError, census_record, compile_predicate, find_minimal, run_census
from twofold.corpus import corpus, corpus_lines, corpus_up_to
from twofold.errors import InputError
from twofold.formats import write_graph6


def records(max_n: int):
    lines = [s for n in range(1, max_n + 1) for s in corpus_lines(n)]
    return [r for r in run_census(lines)]


def test_corpus_sizes():
    assert [len(corpus(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]
    from twofold.graph import is_connected

    assert [sum(map(is_connected, corpus(n))) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]
    with pytest.raises(InputError):
        corpus(8)


def test_square_record():
    r = census_record(F.cycle(4))
    assert r.unstable_by_definition and r.has_nontrivial_tf
    assert (r.aut_order, r.cover_aut_order, r.tf_order) == (8, 128, 32)
    assert r.tf_method == "brute_force"


def test_petersen_record_uses_the_cover_route():
    r = census_record(F.petersen())
    assert not r.unstable_by_definition
    assert (r.aut_order, r.cover_aut_order, r.tf_order) == (120, 240, 120)
    assert r.tf_method == "cover"


def test_order_four_records_are_consistent():
    for r in records(4):
        assert r.unstable_by_definition == (r.cover_aut_order > 2 * r.aut_order)
        assert r.has_nontrivial_tf == (r.tf_order > r.aut_order)
        if r.connected and not r.bipartite:
            assert r.criteria_agree


def test_errors_carry_line_numbers_and_processing_continues():
    out = list(run_census(["A_", "", "bogus!", "Bw"]))
    assert [type(x).__name__ for x in out] == ["CensusRecord", "CensusError", "CensusRecord"]
    err = out[1]
    assert isinstance(err, CensusError) and err.line == 3
    assert [x.index for x in out] == [0, 1, 2]


def test_empty_input_gives_no_records():
    assert list(run_census([])) == []


def test_parallel_output_matches_serial():
    lines = corpus_lines(5)
    serial = [r.to_json() for r in run_census(lines, jobs=1)]
    parallel = [r.to_json() for r in run_census(lines, jobs=2)]
    assert serial == parallel


def test_records_are_json_lines():
    r = census_record(F.cycle(5))
    d = json.loads(r.to_json())
    assert d["graph6"] == write_graph6(F.cycle(5)) and d["criteria_agree"] is True


def test_minimal_matches():
    recs = records(6)
    assert [r.graph6 for r in find_minimal(recs, "unstable and has_triangle and shared_edge > 0")] == ["C|"]
    assert [r.graph6 for r in find_minimal(recs, "unstable and has_triangle and shared_vertex > 0")] == ["D`{"]
    assert [r.graph6 for r in find_minimal(recs, "unstable and has_triangle and closed_z6 > 0")] == ["EhNG"]
    assert find_minimal(recs, "n > 100") == []
    square = write_graph6(F.cycle(4))
    assert square in {r.graph6 for r in recs if compile_predicate("unstable and n == 4")(r)}
    assert square in {r.graph6 for r in find_minimal(recs, "unstable and connected and edge_count == 4")}


def test_minimal_ties_sorted_by_graph6():
    recs = records(4)
    hits = find_minimal(recs, "n == 4 and edge_count == 3")
    assert [r.graph6 for r in hits] == sorted(r.graph6 for r in hits) and len(hits) == 3


def test_predicate_errors():
    with pytest.raises(InputError):
        find_minimal([], "unstable")
    recs = records(2)
    for bad in ("__import__('os')", "unstable and", "nosuchfield", "n.real", "[n]"):
        with pytest.raises(InputError):
            find_minimal(recs, bad)


def test_corpus_helpers():
    assert len(corpus_up_to(4)) == 18
