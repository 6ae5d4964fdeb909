"""Canonical double cover B(G) = G x K2.

Cover vertex ``(v, e)`` is stored at index ``v + e*n``, so colour class
``V_0`` is exactly the indices below ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .graph import Graph, Permutation


@dataclass(frozen=True)
class DoubleCover:
    base: Graph
    graph: Graph

    @property
    def base_n(self) -> int:
        return self.base.n

    def encode(self, v: int, colour: int) -> int:
        if not 0 <= v < self.base_n or colour not in (0, 1):
            raise InputError(f"({v}, {colour}) is not a cover vertex")
        return v + colour * self.base_n

    def colouring(self) -> list[int]:
        n = self.base_n
        return [0] * n + [1] * n


def build_double_cover(g: Graph) -> DoubleCover:
    n = g.n
    low = (1 << n) - 1
    rows = [0] * (2 * n)
    for v, r in enumerate(g.rows):
        rows[v] = r << n          # (v,0) ~ (u,1)
        rows[v + n] = r & low     # (v,1) ~ (u,0)
    return DoubleCover(g, Graph(2 * n, tuple(rows)))


def project(dc: DoubleCover, index: int) -> tuple[int, int]:
    n = dc.base_n
    if not 0 <= index < 2 * n:
        raise InputError(f"cover index {index} out of range 0..{2 * n - 1}")
    return index % n, index // n


def swap_map(dc: DoubleCover) -> Permutation:
    n = dc.base_n
    return Permutation(tuple(range(n, 2 * n)) + tuple(range(n)))


def lift(dc: DoubleCover, alpha: Permutation, beta: Permutation, swap: bool = False) -> Permutation:
    """Cover permutation acting as ``alpha`` on V_0 and ``beta`` on V_1, then
    optionally exchanging the classes.  No validation."""
    n = dc.base_n
    shift = n if swap else 0
    a = [x + shift for x in alpha.images]
    b = [x + n - shift for x in beta.images]
    return Permutation(tuple(a + b))


def lift_automorphism(dc: DoubleCover, a: Permutation, swap: bool = False) -> Permutation:
    from .aut import is_automorphism

    if len(a) != dc.base_n:
        raise InputError("permutation size does not match the base graph")
    if not is_automorphism(dc.base, a):
        raise PreconditionError(f"{a} is not an automorphism of the base graph")
    return lift(dc, a, a, swap)


def preserves_classes(dc: DoubleCover, sigma: Permutation) -> bool:
    n = dc.base_n
    return all(x < n for x in sigma.images[:n])


def swaps_classes(dc: DoubleCover, sigma: Permutation) -> bool:
    n = dc.base_n
    return all(x >= n for x in sigma.images[:n])


def is_lifted(dc: DoubleCover, sigma: Permutation) -> bool:
    """True iff ``sigma`` lies in the expected group Aut(G) x Z_2 (given it is
    an automorphism of the cover)."""
    n = dc.base_n
    imgs = sigma.images
    if preserves_classes(dc, sigma):
        return all(imgs[v] == imgs[v + n] - n for v in range(n))
    if swaps_classes(dc, sigma):
        return all(imgs[v] - n == imgs[v + n] for v in range(n))
    return False
