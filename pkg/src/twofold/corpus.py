"""Bundled exhaustive corpora: every graph on 1..7 vertices up to isomorphism."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import InputError
from .formats import parse_graph6
from .graph import Graph

CORPUS_MAX_N = 7


def corpus_lines(n: int) -> list[str]:
    if not 1 <= n <= CORPUS_MAX_N:
        raise InputError(f"bundled corpora cover 1 <= n <= {CORPUS_MAX_N}, not {n}")
    text = resources.files("twofold").joinpath(f"data/graphs{n}.g6").read_text()
    return [s for s in text.split() if s]


@lru_cache(maxsize=None)
def corpus(n: int) -> tuple[Graph, ...]:
    return tuple(parse_graph6(s) for s in corpus_lines(n))


def corpus_up_to(max_n: int, min_n: int = 1) -> list[Graph]:
    return [g for n in range(min_n, max_n + 1) for g in corpus(n)]
