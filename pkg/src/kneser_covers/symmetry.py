"""Isomorphism, automorphism groups and symmetric-group centralizers."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from .canon import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_VERTEX_BUDGET,
    CanonicalForm,
    canonical_structure,
    structure_isomorphism,
)
from .graph import Graph, GraphMap, categorical_product, complete_graph
from .perm import Perm, PermGroup, group_order, involution_class_index, symmetric_group

__all__ = [
    "canonical_form",
    "are_isomorphic",
    "automorphism_group",
    "group_order",
    "centralizer_in_symmetric",
    "centralizer_order_formula",
    "brute_force_centralizer",
    "phi_embedding",
    "block_involution",
    "block_to_adjacent_pairs",
    "star_monomorphism",
    "involution_class_index",
]


def _loop_colors(g: Graph) -> list[int]:
    return [1 if g.has_loop(v) else 0 for v in range(g.n)]


def canonical_form(
    g: Graph,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CanonicalForm:
    return canonical_structure(g.n, [g.adj], _loop_colors(g), vertex_budget, node_budget)


def are_isomorphic(g: Graph, h: Graph, **budget) -> GraphMap | None:
    """An isomorphism ``g -> h`` verified edge by edge, or None."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    iso = structure_isomorphism(canonical_form(g, **budget), canonical_form(h, **budget))
    if iso is None:
        return None
    f = GraphMap(g, h, iso.images)
    if not f.is_isomorphism():
        raise AssertionError("canonical forms agreed but the induced map is not an isomorphism")
    return f


def automorphism_group(g: Graph, **budget) -> PermGroup:
    cf = canonical_form(g, **budget)
    for a in cf.generators:
        GraphMap(g, g, a.images)
    return PermGroup(g.n, cf.generators)


# -- centralizers in S_n ----------------------------------------------------


def centralizer_order_formula(n: int, m: int) -> int:
    """|Z_{S_n}(sigma_m)| = 2^m * m! * (n - 2m)!."""
    return 2**m * factorial(m) * factorial(n - 2 * m)


def centralizer_in_symmetric(sigma: Perm) -> PermGroup:
    """Centralizer of ``sigma`` in S_n, built from generators.

    For each cycle length, the generators rotate one cycle and permute the
    cycles of that length among themselves (a wreath product); the full
    centralizer is the direct product over cycle lengths.
    """
    n = sigma.degree
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in sigma.cycles():
        by_len.setdefault(len(c), []).append(c)
    fixed = [x for x in range(n) if sigma.images[x] == x]
    gens = list(symmetric_group(len(fixed), fixed, n))
    for length, cycs in sorted(by_len.items()):
        gens.append(Perm.from_cycles(n, [cycs[0]], one_based=False))
        if len(cycs) >= 2:
            gens.append(_swap_cycles(n, cycs[0], cycs[1]))
        if len(cycs) >= 3:
            img = list(range(n))
            for a, b in zip(cycs, cycs[1:] + cycs[:1]):
                for x, y in zip(a, b):
                    img[x] = y
            gens.append(Perm(tuple(img)))
    gens = [g for g in gens if not g.is_identity()]
    for g in gens:
        assert g.commutes_with(sigma)
    return PermGroup(n, gens)


def _swap_cycles(n, a, b):
    img = list(range(n))
    for x, y in zip(a, b):
        img[x] = y
        img[y] = x
    return Perm(tuple(img))


def all_permutations(n: int) -> np.ndarray:
    """Every permutation of 0..n-1 as rows of an (n!, n) int8 array."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for m in range(n):
        rows = perms.shape[0]
        out = np.empty((rows * (m + 1), m + 1), dtype=np.int8)
        for pos in range(m + 1):
            block = out[pos * rows : (pos + 1) * rows]
            block[:, :pos] = perms[:, :pos]
            block[:, pos] = m
            block[:, pos + 1 :] = perms[:, pos:]
        perms = out
    return perms


def brute_force_centralizer(sigma: Perm, perms: np.ndarray | None = None) -> np.ndarray:
    """All p in S_n with p * sigma == sigma * p, by exhaustive filtering."""
    n = sigma.degree
    if perms is None:
        perms = all_permutations(n)
    s = np.asarray(sigma.images, dtype=np.intp)
    lhs = perms[:, s]  # p(sigma(x))
    rhs = s[perms]  # sigma(p(x))
    return perms[(lhs == rhs).all(axis=1)]


# -- the map (x, s) -> eps_1^x_1 ... eps_m^x_m * s~ ---------------------------


def block_involution(m: int) -> Perm:
    """(1,m+1)(2,m+2)...(m,2m) in S_{2m}."""
    return Perm.from_cycles(2 * m, [(i, m + i) for i in range(1, m + 1)])


def phi_embedding(bits: Sequence[int], s: Perm) -> Perm:
    """Image of ``(bits, s)`` in Z_{S_{2m}}((1,m+1)...(m,2m)).

    ``eps_i`` swaps ``i`` and ``m+i``; ``s~`` acts as ``s`` on both halves.
    """
    m = len(bits)
    if s.degree != m:
        raise ValueError("bit vector and permutation sizes differ")
    doubled = list(s.images) + [s.images[i] + m for i in range(m)]
    out = Perm(tuple(doubled))
    for i in reversed(range(m)):
        if bits[i] % 2:
            out = Perm.from_cycles(2 * m, [(i, m + i)], one_based=False) * out
    return out


def block_to_adjacent_pairs(m: int) -> Perm:
    """Conjugator c with c (1,m+1)...(m,2m) c^-1 = (1,2)(3,4)...(2m-1,2m)."""
    img = [0] * (2 * m)
    for j in range(m):
        img[j] = 2 * j
        img[m + j] = 2 * j + 1
    return Perm(tuple(img))


# -- the monomorphism Z_2 x Aut(G) -> Aut(K_2 x G) ----------------------------


@dataclass
class StarReport:
    graph: Graph
    aut_order: int
    cover_aut_order: int
    surjective: bool

    def embed(self, flip: bool, f: Perm) -> Perm:
        """The automorphism (flip or id) x f of K_2 x G."""
        n = self.graph.n
        img = [0] * (2 * n)
        for layer in range(2):
            dst = 1 - layer if flip else layer
            for v in range(n):
                img[layer * n + v] = dst * n + f.images[v]
        return Perm(tuple(img))


def star_monomorphism(g: Graph, **budget) -> StarReport:
    """Compare 2 |Aut(G)| with |Aut(K_2 x G)|; equal means Z_2 x Aut(G) -> Aut(K_2 x G) is onto."""
    aut_g = automorphism_group(g, **budget)
    cover = categorical_product(complete_graph(2), g)
    aut_x = automorphism_group(cover, **budget)
    rep = StarReport(g, aut_g.order, aut_x.order, 2 * aut_g.order == aut_x.order)
    for flip in (False, True):
        for f in aut_g.generators or [Perm.identity(g.n)]:
            if rep.embed(flip, f) not in aut_x:
                raise AssertionError("embedded element is not an automorphism of the cover")
    return rep
