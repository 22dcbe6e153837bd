"""Bigraphs, odd involutions, quotients and the lifting calculus.

A bigraph is a graph with a proper 2-coloring ``parity`` taking values 1/2.
For an odd involution ``alpha`` the quotient ``X/alpha`` has the alpha-orbits
as vertices; orbits are adjacent when some cross pair is adjacent in ``X``,
so a loop appears exactly where ``x ~ alpha(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .canon import BudgetExceeded, canonical_structure, structure_isomorphism
from .graph import Graph, GraphMap, categorical_product, complete_graph, is_bipartite_with_parts
from .perm import Perm, PermGroup
from .symmetry import automorphism_group, star_monomorphism

EVEN, ODD, NEITHER = "even", "odd", "neither"


class Bigraph:
    __slots__ = ("graph", "parity")

    def __init__(self, graph: Graph, parity: Sequence[int]):
        parity = tuple(parity)
        if len(parity) != graph.n or any(p not in (1, 2) for p in parity):
            raise ValueError("parity must map every vertex to 1 or 2")
        for u, v in graph.edges:
            if parity[u] == parity[v]:
                raise ValueError(f"parity is not a proper 2-coloring at edge ({u}, {v})")
        self.graph = graph
        self.parity = parity

    @classmethod
    def from_graph(cls, graph: Graph) -> Bigraph:
        parity = is_bipartite_with_parts(graph)
        if parity is None:
            raise ValueError("graph is not bipartite")
        return cls(graph, parity)

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self):
        return f"Bigraph(n={self.graph.n}, m={self.graph.num_edges})"

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["parity"] = list(self.parity)
        return d


class Involution(GraphMap):
    """An automorphism equal to its own inverse."""

    __slots__ = ()

    def __init__(self, graph: Graph, assignment: Sequence[int]):
        super().__init__(graph, graph, assignment)
        if not self.is_bijective():
            raise ValueError("not a bijection")
        a = self.assignment
        if any(a[a[x]] != x for x in range(graph.n)):
            raise ValueError("map does not square to the identity")

    @property
    def perm(self) -> Perm:
        return Perm(self.assignment)

    def to_list(self) -> list[int]:
        return list(self.assignment)


def parity_of_map(f: GraphMap, source: Bigraph, target: Bigraph) -> str:
    src, dst = source.parity, target.parity
    same = [src[x] == dst[f(x)] for x in range(source.n)]
    if all(same):
        return EVEN
    if not any(same):
        return ODD
    return NEITHER


def _require_odd(x: Bigraph, alpha: GraphMap) -> Involution:
    if alpha.source != x.graph or alpha.target != x.graph:
        raise ValueError("involution must act on the bigraph")
    if not isinstance(alpha, Involution):
        alpha = Involution(x.graph, alpha.assignment)
    if parity_of_map(alpha, x, x) != ODD:
        raise ValueError("involution is not odd")
    return alpha


def kronecker_cover(g: Graph) -> tuple[Bigraph, Involution]:
    """K_2 x G with parity (i, v) -> i and the layer swap.

    Vertex ``(i, v)`` has id ``(i - 1) * |V(G)| + v``.
    """
    if not g.is_simple():
        raise ValueError("kronecker_cover needs a loop-free graph")
    prod = categorical_product(complete_graph(2), g)
    base = g.labels if g.labels is not None else range(g.n)
    labels = [(layer, lab) for layer in (1, 2) for lab in base]
    prod = prod.with_labels(labels)
    n = g.n
    parity = [1] * n + [2] * n
    swap = Involution(prod, [v + n for v in range(n)] + list(range(n)))
    return Bigraph(prod, parity), swap


def product_involution(g_n: int, cover: Graph, flip: bool, f: Perm | Sequence[int]) -> Involution:
    """(tau or id) x f on a cover built by :func:`kronecker_cover`."""
    images = f.images if isinstance(f, Perm) else tuple(f)
    img = []
    for layer in range(2):
        dst = 1 - layer if flip else layer
        img.extend(dst * g_n + images[v] for v in range(g_n))
    return Involution(cover, img)


@dataclass
class Quotient:
    """X/alpha together with the data needed to lift and descend maps."""

    cover: Bigraph
    involution: Involution
    graph: Graph
    projection: tuple[int, ...]
    fibers: tuple[tuple[int, int], ...]

    @property
    def pi(self) -> GraphMap:
        return GraphMap(self.cover.graph, self.graph, self.projection)

    def member(self, orbit: int, parity: int) -> int:
        a, b = self.fibers[orbit]
        return a if self.cover.parity[a] == parity else b


def quotient(x: Bigraph, alpha: GraphMap) -> Quotient:
    """X/alpha; orbit ids follow the order of each orbit's smaller member."""
    alpha = _require_odd(x, alpha)
    a = alpha.assignment
    fibers = sorted((v, a[v]) for v in range(x.n) if v < a[v])
    proj = [0] * x.n
    for i, (u, v) in enumerate(fibers):
        proj[u] = proj[v] = i
    edges = {(proj[u], proj[v]) for u, v in x.graph.edges}
    labels = None
    if x.graph.labels is not None:
        labels = [(x.graph.labels[u], x.graph.labels[v]) for u, v in fibers]
    g = Graph(len(fibers), edges, labels)
    q = Quotient(x, alpha, g, tuple(proj), tuple(fibers))
    q.pi  # homomorphism check
    return q


def quotient_is_simple(x: Bigraph, alpha: GraphMap) -> bool:
    alpha = _require_odd(x, alpha)
    return not any(x.graph.adjacent(v, alpha(v)) for v in range(x.n))


def _layered_cover(g: Graph) -> Bigraph:
    # K_2 x G for any G; a loop at v becomes the edge (1,v) ~ (2,v)
    prod = categorical_product(complete_graph(2), g)
    return Bigraph(prod, [1] * g.n + [2] * g.n)


def canonical_cover_iso(x: Bigraph, alpha: GraphMap) -> tuple[GraphMap, Bigraph]:
    """x -> (parity(x), pi(x)) as an even isomorphism onto K_2 x (X/alpha)."""
    q = quotient(x, alpha)
    cover = _layered_cover(q.graph)
    m = q.graph.n
    f = GraphMap(x.graph, cover.graph, [(x.parity[v] - 1) * m + q.projection[v] for v in range(x.n)])
    if not f.is_isomorphism() or parity_of_map(f, x, cover) != EVEN:
        raise AssertionError("(parity, pi) failed to be an even isomorphism")
    return f, cover


def descend_map(f: GraphMap, qx: Quotient, qy: Quotient) -> GraphMap:
    """The unique f-bar with pi_Y f = f-bar pi_X (requires f alpha = beta f)."""
    a, b = qx.involution.assignment, qy.involution.assignment
    if any(f(a[v]) != b[f(v)] for v in range(qx.cover.n)):
        raise ValueError("f does not intertwine the involutions")
    img = [qy.projection[f(u)] for u, _ in qx.fibers]
    fbar = GraphMap(qx.graph, qy.graph, img)
    if f.is_isomorphism() and not fbar.is_isomorphism():
        raise AssertionError("descent of an isomorphism is not an isomorphism")
    return fbar


def lift_map(f: GraphMap, qx: Quotient, qy: Quotient) -> GraphMap:
    """The unique even f-tilde with pi_Y f-tilde = f pi_X."""
    if f.source != qx.graph or f.target != qy.graph:
        raise ValueError("map must go between the two quotients")
    img = [qy.member(f(qx.projection[v]), qx.cover.parity[v]) for v in range(qx.cover.n)]
    ft = GraphMap(qx.cover.graph, qy.cover.graph, img)
    if f.is_isomorphism() != ft.is_isomorphism():
        raise AssertionError("lift and base map disagree on being isomorphisms")
    return ft


# -- conjugacy ------------------------------------------------------------


def _matching_masks(alpha: GraphMap) -> list[int]:
    return [1 << alpha(v) for v in range(alpha.source.n)]


def involution_structure(x: Bigraph, alpha: GraphMap, even: bool = True, **budget):
    """Canonical form of X with alpha's orbit matching as a second relation.

    An automorphism of this structure is exactly an automorphism of X
    commuting with alpha (preserving parity too when ``even``).
    """
    colors = list(x.parity) if even else None
    return canonical_structure(x.n, [x.graph.adj, _matching_masks(alpha)], colors, **budget)


def are_evenly_conjugate(x: Bigraph, alpha: GraphMap, beta: GraphMap, **budget) -> Perm | None:
    """An even automorphism f with f alpha = beta f, or None."""
    alpha, beta = _require_odd(x, alpha), _require_odd(x, beta)
    f = structure_isomorphism(involution_structure(x, alpha, **budget), involution_structure(x, beta, **budget))
    if f is None:
        return None
    fm = GraphMap(x.graph, x.graph, f.images)
    if parity_of_map(fm, x, x) != EVEN or any(f(alpha(v)) != beta(f(v)) for v in range(x.n)):
        raise AssertionError("conjugacy witness failed verification")
    return f


def are_conjugate(x: Bigraph, alpha: GraphMap, beta: GraphMap, group: PermGroup | None = None) -> Perm | None:
    """Any automorphism f with f alpha = beta f, by scanning all of Aut(X)."""
    if group is None:
        group = automorphism_group(x.graph)
    a, b = alpha.assignment, beta.assignment
    for f in group.elements():
        img = f.images
        if all(img[a[v]] == b[img[v]] for v in range(x.n)):
            return f
    return None


def enumerate_odd_involutions(x: Bigraph, group: PermGroup | None = None, max_order: int = 10**7) -> list[Involution]:
    """Every odd involution of X, sorted by image array."""
    if group is None:
        group = automorphism_group(x.graph)
    if group.order > max_order:
        raise BudgetExceeded(f"|Aut| = {group.order} exceeds {max_order}")
    par = x.parity
    out = []
    for g in group.elements():
        img = g.images
        if all(par[img[v]] != par[v] for v in range(x.n)) and all(img[img[v]] == v for v in range(x.n)):
            out.append(img)
    out.sort()
    return [Involution(x.graph, img) for img in out]


def even_centralizer(x: Bigraph, alpha: GraphMap, **budget) -> PermGroup:
    """The even automorphisms of X commuting with alpha."""
    alpha = _require_odd(x, alpha)
    cf = involution_structure(x, alpha, **budget)
    for g in cf.generators:
        GraphMap(x.graph, x.graph, g.images)
    return PermGroup(x.n, cf.generators)


def decompose_odd_involution(g: Graph, alpha: GraphMap, check_star: bool = True) -> tuple[bool, Perm]:
    """Write an odd involution of K_2 x G as tau x alpha'.

    Returns ``(True, alpha')``.  With ``check_star`` the monomorphism
    Z_2 x Aut(G) -> Aut(K_2 x G) is first confirmed to be onto.
    """
    n = g.n
    if check_star and not star_monomorphism(g).surjective:
        raise ValueError("Z_2 x Aut(G) -> Aut(K_2 x G) is not onto; decomposition not guaranteed")
    a = alpha.assignment
    if len(a) != 2 * n:
        raise ValueError("involution does not act on K_2 x G")
    if any(a[v] < n for v in range(n)) or any(a[n + v] >= n for v in range(n)):
        raise ValueError("involution does not swap the two layers")
    prime = [a[v] - n for v in range(n)]
    if any(a[n + v] != prime[v] for v in range(n)):
        raise ValueError("involution is not of product form")
    p = Perm(tuple(prime))
    Involution(g, p.images)
    return True, p


def brute_force_homomorphisms(source: Graph, target: Graph, node_cap: int = 2_000_000):
    """Yield every homomorphism source -> target by backtracking."""
    n = source.n
    order = list(range(n))
    earlier = [[u for u in source.neighbors(v) if u < v] for v in order]
    loops = [source.has_loop(v) for v in order]
    img = [0] * n
    nodes = 0

    def rec(i):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise RuntimeError("homomorphism enumeration cap reached")
        if i == n:
            yield GraphMap(source, target, img, check=False)
            return
        for w in range(target.n):
            if loops[i] and not target.has_loop(w):
                continue
            if all(target.adjacent(img[u], w) for u in earlier[i]):
                img[i] = w
                yield from rec(i + 1)

    yield from rec(0)
