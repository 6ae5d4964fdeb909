"""Regenerate the bundled graph6 corpora (all graphs on 1..7 vertices up to
isomorphism) from the networkx graph atlas.  Development-time only."""
from __future__ import annotations

import argparse
from pathlib import Path

import networkx as nx

from twofold.formats import write_graph6
from twofold.graph import from_edge_list

EXPECTED = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src/twofold/data")
    args = ap.parse_args()
    by_n: dict[int, list[str]] = {n: [] for n in EXPECTED}
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n in by_n:
            by_n[n].append(write_graph6(from_edge_list(n, G.edges())))
    args.out.mkdir(parents=True, exist_ok=True)
    for n, lines in by_n.items():
        assert len(lines) == EXPECTED[n], (n, len(lines))
        (args.out / f"graphs{n}.g6").write_text("\n".join(lines) + "\n")
        print(f"graphs{n}.g6: {len(lines)}")


if __name__ == "__main__":
    main()
