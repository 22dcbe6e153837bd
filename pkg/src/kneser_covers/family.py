"""The Kneser-cover family: sigma_i, H(n,k) and G_i(n,k) = H(n,k)/(tau x sigma_i).

Vertex ids follow the colex ranking of k-subsets, so G_i(n-1,k) is the
induced subgraph of G_i(n,k) on the first C(n-1,k) vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .cover import (
    Bigraph,
    GraphMap,
    Involution,
    Quotient,
    descend_map,
    kronecker_cover,
    quotient,
    quotient_is_simple,
)
from .graph import Graph, colex_rank, colex_subsets, format_subset, kneser_graph
from .perm import Perm, PermGroup
from .symmetry import block_to_adjacent_pairs, centralizer_order_formula, phi_embedding


def check_index(n: int, k: int, i: int | None = None) -> None:
    if k < 1 or n < 2 * k:
        raise ValueError(f"need n >= 2k >= 2, got n={n}, k={k}")
    if i is not None and not 0 <= i <= n // 2:
        raise ValueError(f"need 0 <= i <= n/2, got i={i}")


def sigma(i: int, n: int) -> Perm:
    """(1,2)(3,4)...(2i-1,2i) in S_n."""
    if not 0 <= i <= n // 2:
        raise ValueError(f"sigma needs 0 <= i <= {n // 2}, got {i}")
    return Perm.from_cycles(n, [(2 * j - 1, 2 * j) for j in range(1, i + 1)])


def apply_to_subset(p: Perm, s) -> frozenset:
    """Image of a 1-based subset under a 0-based permutation."""
    return frozenset(p.images[x - 1] + 1 for x in s)


@lru_cache(maxsize=64)
def bipartite_kneser(n: int, k: int) -> tuple[Bigraph, Involution]:
    """H(n,k) as K_2 x K(n,k), with its layer swap."""
    check_index(n, k)
    return kronecker_cover(kneser_graph(n, k))


def subset_permutation(n: int, k: int, p: Perm) -> list[int]:
    """The action of p in S_n on colex ids of k-subsets."""
    return [colex_rank(apply_to_subset(p, s)) for s in colex_subsets(n, k)]


def tau_times(n: int, k: int, p: Perm, flip: bool = True) -> Involution | GraphMap:
    """(tau or id) x p acting on H(n,k); an Involution whenever p is one."""
    x, _ = bipartite_kneser(n, k)
    sub = subset_permutation(n, k, p)
    N = len(sub)
    img = []
    for layer in range(2):
        dst = 1 - layer if flip else layer
        img.extend(dst * N + sub[v] for v in range(N))
    if (p * p).is_identity():
        return Involution(x.graph, img)
    return GraphMap(x.graph, x.graph, img)


def bipartite_kneser_subset_form(n: int, k: int) -> Graph:
    """k- and (n-k)-subsets of [n], adjacent under proper containment.

    k-subsets come first (colex ids), then (n-k)-subsets in colex order.
    """
    if k < 1 or n <= 2 * k:
        raise ValueError(f"subset form needs n > 2k >= 2, got n={n}, k={k}")
    small = colex_subsets(n, k)
    large = colex_subsets(n, n - k)
    N = len(small)
    large_id = {frozenset(s): N + j for j, s in enumerate(large)}
    edges = []
    full = frozenset(range(1, n + 1))
    for a, s in enumerate(small):
        rest = full - set(s)
        for extra in colex_subsets(len(rest), n - 2 * k):
            pool = sorted(rest)
            sup = frozenset(s) | {pool[e - 1] for e in extra}
            edges.append((a, large_id[sup]))
    labels = [frozenset(s) for s in small] + [frozenset(s) for s in large]
    return Graph(N + len(large), edges, labels)


def subset_form_iso(n: int, k: int) -> GraphMap:
    """(1,s) -> s and (2,s) -> [n] \\ s, from H(n,k) onto the subset form."""
    x, _ = bipartite_kneser(n, k)
    target = bipartite_kneser_subset_form(n, k)
    ids = {lab: v for v, lab in enumerate(target.labels)}
    full = frozenset(range(1, n + 1))
    img = []
    for layer, s in x.graph.labels:
        img.append(ids[s] if layer == 1 else ids[full - s])
    f = GraphMap(x.graph, target, img)
    if not f.is_isomorphism():
        raise AssertionError("cover form and subset form are not isomorphic via complements")
    return f


@lru_cache(maxsize=256)
def g_quotient(n: int, k: int, i: int) -> Quotient:
    check_index(n, k, i)
    x, _ = bipartite_kneser(n, k)
    return quotient(x, tau_times(n, k, sigma(i, n)))


def g_graph(n: int, k: int, i: int) -> Graph:
    """G_i(n,k); vertex v is the orbit {(1,s), (2,sigma_i s)} with s of colex id v."""
    return g_quotient(n, k, i).graph


def orbit_label(n: int, k: int, i: int, v: int) -> str:
    s = colex_subsets(n, k)[v]
    t = apply_to_subset(sigma(i, n), s)
    return f"{format_subset(s)} | {format_subset(t)}"


def simplicity_threshold(n: int, k: int) -> list[bool]:
    """Is G_i(n,k) simple, for i = 0..floor(n/2)."""
    check_index(n, k)
    x, _ = bipartite_kneser(n, k)
    return [quotient_is_simple(x, tau_times(n, k, sigma(i, n))) for i in range(n // 2 + 1)]


def loop_witness(n: int, k: int, i: int) -> frozenset | None:
    """{1,3,...,2k-1} when it is a loop of G_i(n,k), else None."""
    v = frozenset(range(1, 2 * k, 2))
    if not v & apply_to_subset(sigma(i, n), v):
        return v
    return None


def new_layer_vertices(n: int, k: int, i: int) -> list[int]:
    """Vertices of G_i(n,k) whose k-subset contains n (those not in G_i(n-1,k))."""
    check_index(n, k, i)
    return list(range(comb(n - 1, k), comb(n, k)))


# -- generator-level map onto Aut(G_i) -----------------------------------------


@dataclass
class AutStructure:
    """Images in Aut(G_i(n,k)) of generators of (Z_2^i x| S_i) x S_{n-2i}."""

    n: int
    k: int
    i: int
    source_generators: list[tuple[tuple[int, ...], Perm, Perm]]
    sn_images: list[Perm]
    graph_images: list[Perm]

    @property
    def abstract_order(self) -> int:
        return centralizer_order_formula(self.n, self.i)

    def image_group(self) -> PermGroup:
        return PermGroup(comb(self.n, self.k), self.graph_images)


def aut_structure_map(n: int, k: int, i: int) -> AutStructure:
    """Send ((x, s), r) to the automorphism of G_i induced by id x p.

    p is phi(x, s) moved onto the pairs {1,2},...,{2i-1,2i} and combined with
    r acting on {2i+1,...,n}.  Even automorphisms commuting with tau x sigma_i
    descend to G_i, which makes the whole map a homomorphism.
    """
    check_index(n, k, i)
    q = g_quotient(n, k, i)
    sig = sigma(i, n)
    conj = block_to_adjacent_pairs(i) if i else None
    rest = n - 2 * i
    gens: list[tuple[tuple[int, ...], Perm, Perm]] = []
    if i:
        ident_i = Perm.identity(i)
        ident_r = Perm.identity(rest)
        gens.append((tuple([1] + [0] * (i - 1)), ident_i, ident_r))
        if i >= 2:
            gens.append((tuple([0] * i), Perm.from_cycles(i, [(1, 2)]), ident_r))
        if i >= 3:
            gens.append((tuple([0] * i), Perm.from_cycles(i, [tuple(range(1, i + 1))]), ident_r))
    if rest >= 2:
        ident_i = Perm.identity(i)
        gens.append((tuple([0] * i), ident_i, Perm.from_cycles(rest, [(1, 2)])))
        if rest >= 3:
            gens.append((tuple([0] * i), ident_i, Perm.from_cycles(rest, [tuple(range(1, rest + 1))])))
    sn_images = []
    graph_images = []
    for bits, s, r in gens:
        img = list(range(n))
        if i:
            block = conj * phi_embedding(bits, s) * conj.inverse()
            img[: 2 * i] = block.images
        for j in range(rest):
            img[2 * i + j] = 2 * i + r.images[j]
        p = Perm(tuple(img))
        if not p.commutes_with(sig):
            raise AssertionError(f"{p} does not commute with sigma_{i}")
        sn_images.append(p)
        f = tau_times(n, k, p, flip=False)
        graph_images.append(Perm(descend_map(f, q, q).assignment))
    return AutStructure(n, k, i, gens, sn_images, graph_images)
