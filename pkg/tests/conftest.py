from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from twofold.graph import Graph, Permutation, from_edge_list


def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def brute_automorphisms(g: Graph, colours=None) -> list[Permutation]:
    """Every (colour-preserving) automorphism by scanning Sym(n); n <= 8."""
    assert g.n <= 8
    if g.n == 0:
        return [Permutation(())]
    a = adjacency(g)
    perms = np.array(list(itertools.permutations(range(g.n))), dtype=np.int64)
    ok = (a[perms[:, :, None], perms[:, None, :]] == a[None]).all(axis=(1, 2))
    if colours is not None:
        col = np.asarray(colours)
        ok &= (col[perms] == col[None]).all(axis=1)
    return [Permutation(tuple(p)) for p in perms[ok].tolist()]


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def permutations(draw, n: int) -> Permutation:
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def graph_and_perm(draw, min_n: int = 1, max_n: int = 7):
    g = draw(graphs(min_n, max_n))
    return g, draw(permutations(g.n))


@pytest.fixture(scope="session")
def small_corpus():
    from twofold.corpus import corpus_up_to

    return corpus_up_to(6)
