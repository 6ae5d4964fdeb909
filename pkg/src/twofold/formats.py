"""graph6 and edge-list text formats.

graph6 stores ``n`` in a size header and then the upper triangle of the
adjacency matrix column by column (``x(0,1) x(0,2) x(1,2) x(0,3) ...``),
packed six bits per printable byte (value + 63), zero padded.
"""
from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from . import graph as _graph
from .errors import InputError
from .graph import Graph, VertexLabeling, from_edge_list, iter_bits

HEADER = ">>graph6<<"
_SMALL = 62
_MEDIUM = 258047


def _encode_n(n: int) -> str:
    if n <= _SMALL:
        return chr(n + 63)
    if n <= _MEDIUM:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        col = g.rows[j] & ((1 << j) - 1)
        # least significant vertex first
        bits.append(format(col, f"0{j}b")[::-1])
    s = "".join(bits)
    s += "0" * (-len(s) % 6)
    body = "".join(chr(int(s[k : k + 6], 2) + 63) for k in range(0, len(s), 6))
    return (HEADER if header else "") + _encode_n(g.n) + body


def _decode_n(s: str) -> tuple[int, int]:
    if not s:
        raise InputError("malformed graph6: empty string")
    if s[0] != "~":
        return ord(s[0]) - 63, 1
    if len(s) > 1 and s[1] == "~":
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(s) < start + width:
        raise InputError("malformed graph6: truncated size header")
    n = 0
    for c in s[start : start + width]:
        n = (n << 6) | (ord(c) - 63)
    return n, start + width


def parse_graph6(line: str, *, max_n: int | None = None) -> Graph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s:
        raise InputError("malformed graph6: empty string")
    bad = [c for c in s if not 63 <= ord(c) <= 126]
    if bad:
        raise InputError(f"malformed graph6: invalid character {bad[0]!r}")
    n, pos = _decode_n(s)
    bound = _graph.MAX_N if max_n is None else max_n
    if n > bound:
        raise InputError(f"graph6 declares n={n}, above the bound {bound}")
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != nchars:
        kind = "trailing garbage" if len(body) > nchars else "truncated body"
        raise InputError(f"malformed graph6: {kind} (expected {nchars} data bytes, got {len(body)})")
    bitstr = "".join(format(ord(c) - 63, "06b") for c in body)
    if "1" in bitstr[nbits:]:
        raise InputError("malformed graph6: non-zero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        chunk = bitstr[k : k + j]
        k += j
        col = int(chunk[::-1], 2) if chunk else 0
        rows[j] |= col
        for i in iter_bits(col):
            rows[i] |= 1 << j
    return Graph(n, tuple(rows))


def iter_graph6(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Non-blank lines with their 1-based line numbers."""
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if s:
            yield lineno, s


# ----------------------------------------------------------------------------
# Edge lists
# ----------------------------------------------------------------------------


def parse_edge_list(text: str) -> tuple[Graph, VertexLabeling | None]:
    """``n m`` then ``m`` lines ``u v``.  Vertices are ``0..n-1`` or, if any
    token is not an integer, names numbered in order of first appearance."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            rows.append((lineno, s.split()))
    if not rows:
        raise InputError("empty edge list")
    lineno, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise InputError(f"line {lineno}: header must be 'n m'") from None
    if n < 0 or m < 0:
        raise InputError(f"line {lineno}: negative count in header")
    body = rows[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    for lineno, toks in body:
        if len(toks) != 2:
            raise InputError(f"line {lineno}: expected 'u v'")
    named = any(not t.lstrip("-").isdigit() for _, toks in body for t in toks)
    labeling = None
    if named:
        names: dict[str, int] = {}
        for _, toks in body:
            for t in toks:
                names.setdefault(t, len(names))
        if len(names) > n:
            raise InputError(f"{len(names)} distinct names but n={n}")
        ordered = list(names) + [str(i) for i in range(len(names), n)]
        if len(set(ordered)) != n:
            raise InputError("vertex names collide with padding names")
        labeling = VertexLabeling(tuple(ordered))
        edges = [(names[a], names[b]) for _, (a, b) in body]
    else:
        edges = [(int(a), int(b)) for _, (a, b) in body]
    seen = set()
    for (lineno, _), (u, v) in zip(body, edges):
        e = (min(u, v), max(u, v))
        if e in seen:
            raise InputError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
    return from_edge_list(n, edges), labeling


def write_edge_list(g: Graph, labeling: VertexLabeling | None = None) -> str:
    edges = g.edges()
    name = (lambda v: labeling[v]) if labeling is not None else str
    lines = [f"{g.n} {len(edges)}"] + [f"{name(u)} {name(v)}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_graph(text: str, fmt: str = "g6") -> tuple[Graph, VertexLabeling | None]:
    """A single graph from file contents; for graph6 the first non-blank line."""
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt != "g6":
        raise InputError(f"unknown format {fmt!r}")
    for _, s in iter_graph6(text.splitlines()):
        return parse_graph6(s), None
    raise InputError("malformed graph6: empty input")


def read_graph6_file(fh: TextIO) -> list[Graph]:
    out = []
    for lineno, s in iter_graph6(fh):
        try:
            out.append(parse_graph6(s))
        except InputError as e:
            raise InputError(f"line {lineno}: {e}") from None
    return out
