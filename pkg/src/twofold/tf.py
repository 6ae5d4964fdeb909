"""Two-fold automorphisms, stability verdicts and anti-automorphisms.

A TF-map ``(alpha, beta)`` sends the arc ``(u, v)`` to ``(alpha(u), beta(v))``.
Products follow the global right-to-left convention:
``(a1, b1) * (a2, b2) == (a1∘a2, b1∘b2)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .aut import DEFAULT_ENUM_CAP, AutGroup, automorphism_group, colour_class_stabiliser, is_automorphism
from .double_cover import DoubleCover, build_double_cover, is_lifted, lift, preserves_classes
from .errors import CapExceeded, InputError, PreconditionError
from .graph import Graph, Permutation, VertexLabeling, compose, inverse, is_vertex_determining, iter_bits

DEFAULT_ORACLE_BOUND = 7


@dataclass(frozen=True)
class TFMap:
    alpha: Permutation
    beta: Permutation

    def __post_init__(self) -> None:
        if len(self.alpha) != len(self.beta):
            raise InputError("alpha and beta act on different vertex counts")

    @classmethod
    def identity(cls, n: int) -> TFMap:
        e = Permutation.identity(n)
        return cls(e, e)

    @classmethod
    def diagonal(cls, a: Permutation) -> TFMap:
        return cls(a, a)

    @property
    def n(self) -> int:
        return len(self.alpha)

    def __mul__(self, other: TFMap) -> TFMap:
        return TFMap(compose(self.alpha, other.alpha), compose(self.beta, other.beta))

    def inverse(self) -> TFMap:
        return TFMap(inverse(self.alpha), inverse(self.beta))

    def is_trivial(self) -> bool:
        return self.alpha == self.beta

    def is_identity(self) -> bool:
        return self.alpha.is_identity() and self.beta.is_identity()

    def arc_image(self, u: int, v: int) -> tuple[int, int]:
        return self.alpha(u), self.beta(v)

    def key(self) -> tuple:
        """Ordering used to pick deterministic certificates.

        Compares cycle notation, beta first, so maps that move only
        alpha (twin swaps) come first.
        """
        return (self.beta.cycles(), self.alpha.cycles())

    def notation(self, names: Sequence[str] | None = None) -> str:
        return f"({self.alpha.cycle_string(names)}, {self.beta.cycle_string(names)})"

    def to_dict(self, labeling: VertexLabeling | None = None) -> dict:
        names = labeling.names if labeling is not None else None
        return {
            "alpha": list(self.alpha.images),
            "beta": list(self.beta.images),
            "notation": self.notation(names),
        }

    def __str__(self) -> str:
        return self.notation()


@dataclass(frozen=True)
class TFGroup:
    elements: tuple[TFMap, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_set(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {(t.alpha.images, t.beta.images) for t in self.elements}

    def nontrivial(self) -> list[TFMap]:
        return [t for t in self.elements if not t.is_trivial()]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _check_size(g: Graph, *perms: Permutation) -> None:
    for p in perms:
        if len(p) != g.n:
            raise InputError(f"permutation on {len(p)} points, graph has {g.n} vertices")


def is_tf_isomorphism(g: Graph, h: Graph, t: TFMap) -> bool:
    """True iff ``(u, v)`` is an arc of ``g`` exactly when its image is an arc of ``h``."""
    if g.n != h.n:
        return False
    _check_size(g, t.alpha, t.beta)
    if g.edge_count != h.edge_count:
        return False
    a, b = t.alpha.images, t.beta.images
    for u, r in enumerate(g.rows):
        target = h.rows[a[u]]
        for v in iter_bits(r):
            if not target >> b[v] & 1:
                return False
    return True


def is_tf_automorphism(g: Graph, t: TFMap) -> bool:
    # arcs go to arcs and the arc set is finite, so the arc map is onto
    return is_tf_isomorphism(g, g, t)


def tf_from_cover_automorphism(dc: DoubleCover, sigma: Permutation) -> TFMap:
    """Split a class-preserving cover automorphism into its actions on V_0 and V_1."""
    n = dc.base_n
    if len(sigma) != 2 * n:
        raise InputError(f"expected a permutation on {2 * n} cover vertices")
    if not preserves_classes(dc, sigma):
        raise PreconditionError("permutation does not preserve the colour class V_0")
    if not is_automorphism(dc.graph, sigma):
        raise PreconditionError("permutation is not an automorphism of the cover")
    imgs = sigma.images
    return TFMap(Permutation(imgs[:n]), Permutation(tuple(x - n for x in imgs[n:])))


def lift_tf(dc: DoubleCover, t: TFMap) -> Permutation:
    """The class-preserving cover automorphism corresponding to ``t``."""
    return lift(dc, t.alpha, t.beta)


def _split_rows(arr: np.ndarray, n: int) -> list[TFMap]:
    out = []
    for row in arr.tolist():
        out.append(TFMap(Permutation(tuple(row[:n])), Permutation(tuple(x - n for x in row[n:]))))
    return out


def tf_group_via_cover(g: Graph, *, enum_cap: int = DEFAULT_ENUM_CAP, stabiliser: AutGroup | None = None) -> TFGroup:
    """Aut^TF(g) as the image of the colour-class stabiliser of the cover."""
    if g.n == 0:
        return TFGroup((TFMap.identity(0),))
    dc = build_double_cover(g)
    sigma = stabiliser if stabiliser is not None else colour_class_stabiliser(dc, enum_cap=enum_cap)
    if sigma.order > enum_cap:
        raise CapExceeded(f"class stabiliser has order {sigma.order} > enumeration cap {enum_cap}")
    arr = sigma.element_array()
    order = np.lexsort(arr.T[::-1])
    return TFGroup(tuple(_split_rows(arr[order], g.n)))


def tf_order(g: Graph) -> int:
    return colour_class_stabiliser(build_double_cover(g)).order


def _adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _brute_force_buckets(g: Graph, bound: int) -> tuple[np.ndarray, list[tuple[list[int], list[int]]]]:
    """Pairs ``(alpha, beta)`` with ``A[alpha(u), beta(v)] == A[u, v]`` for all
    ``u, v``, grouped as (alphas, betas) blocks whose full product qualifies.

    The condition says the columns of ``A`` permuted by ``beta`` equal the rows
    of ``A`` permuted by ``alpha^-1``, so both sides are bucketed on that
    matrix instead of comparing pairs one at a time.
    """
    n = g.n
    if n > bound:
        raise CapExceeded(f"n={n} exceeds the brute-force oracle bound {bound}")
    a = _adjacency(g)
    perms = _all_perms(n)
    inv = np.argsort(perms, axis=1)
    col_keys = np.packbits(a[:, perms].transpose(1, 0, 2).reshape(len(perms), -1), axis=1)
    row_keys = np.packbits(a[inv].reshape(len(perms), -1), axis=1)
    rows: dict[bytes, list[int]] = {}
    cols: dict[bytes, list[int]] = {}
    for i, k in enumerate(row_keys):
        rows.setdefault(k.tobytes(), []).append(i)
    for j, k in enumerate(col_keys):
        cols.setdefault(k.tobytes(), []).append(j)
    blocks = [(alphas, cols[k]) for k, alphas in rows.items() if k in cols]
    return perms, blocks


def tf_order_brute_force(g: Graph, *, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    if g.n == 0:
        return 1
    _, blocks = _brute_force_buckets(g, bound)
    return sum(len(x) * len(y) for x, y in blocks)


def tf_group_brute_force(
    g: Graph, *, bound: int = DEFAULT_ORACLE_BOUND, enum_cap: int = DEFAULT_ENUM_CAP
) -> TFGroup:
    """Aut^TF(g) by exhausting Sym(n) x Sym(n), without the cover."""
    if g.n == 0:
        return TFGroup((TFMap.identity(0),))
    perms, blocks = _brute_force_buckets(g, bound)
    total = sum(len(x) * len(y) for x, y in blocks)
    if total > enum_cap:
        raise CapExceeded(f"TF group has {total} elements > enumeration cap {enum_cap}")
    plist = [Permutation(tuple(p)) for p in perms.tolist()]
    elems = [TFMap(plist[i], plist[j]) for alphas, betas in blocks for i in alphas for j in betas]
    elems.sort(key=lambda t: (t.alpha.images, t.beta.images))
    return TFGroup(tuple(elems))


# ----------------------------------------------------------------------------
# Stability
# ----------------------------------------------------------------------------


@dataclass
class StabilityReport:
    aut_order: int
    cover_aut_order: int
    tf_order: int
    unstable_by_definition: bool
    has_nontrivial_tf: bool
    criteria_agree: bool
    certificate: TFMap | None = None
    anti_automorphism: Permutation | None = None
    cover_witness: Permutation | None = None

    def to_dict(self, labeling: VertexLabeling | None = None) -> dict:
        names = labeling.names if labeling is not None else None
        d = {
            "unstable": self.unstable_by_definition,
            "aut_order": self.aut_order,
            "cover_aut_order": self.cover_aut_order,
            "tf_order": self.tf_order,
            "unstable_by_definition": self.unstable_by_definition,
            "has_nontrivial_tf": self.has_nontrivial_tf,
            "criteria_agree": self.criteria_agree,
            "certificate": self.certificate.to_dict(labeling) if self.certificate else None,
            "anti_automorphism": None,
            "cover_witness": list(self.cover_witness.images) if self.cover_witness else None,
        }
        if self.anti_automorphism is not None:
            d["anti_automorphism"] = {
                "images": list(self.anti_automorphism.images),
                "notation": self.anti_automorphism.cycle_string(names),
                "order": self.anti_automorphism.order(),
            }
        return d


def least_nontrivial(maps: Iterable[TFMap]) -> TFMap | None:
    cands = [t for t in maps if not t.is_trivial()]
    return min(cands, key=TFMap.key) if cands else None


def stability_verdict(g: Graph, *, enum_cap: int = DEFAULT_ENUM_CAP) -> StabilityReport:
    """Decide stability both from cover group orders and from TF-automorphisms.

    ``unstable_by_definition`` compares ``|Aut B(G)|`` with ``2|Aut G|``;
    ``has_nontrivial_tf`` compares ``|Aut^TF G|`` with ``|Aut G|``.  The two
    agree on connected non-bipartite graphs but not in general.
    """
    aut = automorphism_group(g, enum_cap=enum_cap)
    dc = build_double_cover(g)
    cover = automorphism_group(dc.graph, enum_cap=enum_cap)
    sigma = colour_class_stabiliser(dc, enum_cap=enum_cap)
    unstable = cover.order > 2 * aut.order
    nontrivial = sigma.order > aut.order
    report = StabilityReport(
        aut_order=aut.order,
        cover_aut_order=cover.order,
        tf_order=sigma.order,
        unstable_by_definition=unstable,
        has_nontrivial_tf=nontrivial,
        criteria_agree=unstable == nontrivial,
    )
    if nontrivial:
        if sigma.order <= enum_cap:
            cert = least_nontrivial(tf_group_via_cover(g, enum_cap=enum_cap, stabiliser=sigma))
        else:
            # some generator must be off the diagonal when the group is
            cert = least_nontrivial(tf_from_cover_automorphism(dc, s) for s in sigma.generators)
        report.certificate = cert
        report.anti_automorphism = anti_automorphism_from_tf(cert)
    if unstable and not nontrivial:
        outside = [s for s in cover.generators if not is_lifted(dc, s)]
        report.cover_witness = min(outside, key=lambda p: p.images)
    return report


# ----------------------------------------------------------------------------
# Anti-automorphisms
# ----------------------------------------------------------------------------


def anti_automorphism_from_tf(t: TFMap) -> Permutation:
    """``alpha∘beta^-1``."""
    return compose(t.alpha, inverse(t.beta))


def is_anti_automorphism(g: Graph, gamma: Permutation) -> bool:
    """True iff ``{gamma(x), gamma^-1(y)}`` is an edge for every arc ``(x, y)``."""
    _check_size(g, gamma)
    return is_tf_automorphism(g, TFMap(gamma, inverse(gamma)))


def instability_from_anti(g: Graph, gamma: Permutation) -> TFMap | None:
    """The non-trivial TF-map ``(gamma, gamma^-1)`` when ``gamma`` has order > 2."""
    if not is_anti_automorphism(g, gamma):
        raise PreconditionError(f"{gamma} is not an anti-automorphism")
    if gamma.order() <= 2:
        return None
    t = TFMap(gamma, inverse(gamma))
    assert is_tf_automorphism(g, t) and not t.is_trivial()
    return t


def anti_automorphisms_brute_force(g: Graph, *, bound: int = DEFAULT_ORACLE_BOUND) -> list[Permutation]:
    """Every anti-automorphism of ``g``, by scanning Sym(n)."""
    n = g.n
    if n > bound:
        raise CapExceeded(f"n={n} exceeds the brute-force oracle bound {bound}")
    if n == 0:
        return [Permutation(())]
    a = _adjacency(g)
    perms = _all_perms(n)
    inv = np.argsort(perms, axis=1)
    # A[gamma(x), gamma^-1(y)] == A[x, y] for all x, y
    imgs = a[perms[:, :, None], inv[:, None, :]]
    ok = (imgs == a[None]).all(axis=(1, 2))
    return [Permutation(tuple(p)) for p in perms[ok].tolist()]


# ----------------------------------------------------------------------------
# Twin-free constraints on TF-maps
# ----------------------------------------------------------------------------


@dataclass
class TwinFreeCheck:
    applicable: bool
    violations: list[TFMap] = field(default_factory=list)


def twin_free_violations(g: Graph, tf: TFGroup | Iterable[TFMap]) -> TwinFreeCheck:
    """Non-trivial TF-maps of a twin-free graph with both parts automorphisms,
    or with parts of different order.  Any hit is a counterexample to the
    fact that such maps force twins; the list should always be empty.
    """
    if not is_vertex_determining(g):
        return TwinFreeCheck(applicable=False)
    bad = []
    for t in tf:
        if t.is_trivial():
            continue
        both_aut = is_automorphism(g, t.alpha) and is_automorphism(g, t.beta)
        if both_aut or t.alpha.order() != t.beta.order():
            bad.append(t)
    return TwinFreeCheck(applicable=True, violations=bad)

