"""Finite graphs as symmetric relations on 0..n-1 (loops allowed).

Adjacency is kept twice: a sorted edge list (the canonical serialization) and
one bitmask per vertex for fast set operations in the search code.
"""

from __future__ import annotations

import json
from collections import deque
from itertools import combinations
from math import comb
from typing import Any, Iterable, Sequence


class Graph:
    """Immutable simple-or-looped graph on vertices ``0..n-1``.

    ``edges`` holds pairs ``(u, v)`` with ``u <= v``; ``(v, v)`` is a loop.
    ``labels`` is an optional tuple of per-vertex annotations.
    """

    __slots__ = ("n", "edges", "adj", "labels", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[Any] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add((u, v) if u <= v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj: tuple[int, ...] = tuple(adj)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must be in bijection with vertices")
        self.labels = labels
        self._hash = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def neighbors(self, v: int) -> list[int]:
        m = self.adj[v]
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return self.adjacent(v, v)

    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges)

    def loops(self) -> list[int]:
        return [u for u, v in self.edges if u == v]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        # a loop counts once
        return self.adj[v].bit_count()

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        labels = None
        if self.labels is not None:
            labels = [None] * self.n
            for v, lab in enumerate(self.labels):
                labels[perm[v]] = lab
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges), labels)

    def with_labels(self, labels: Sequence[Any] | None) -> Graph:
        return Graph(self.n, self.edges, labels)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = [_label_json(lab) for lab in self.labels]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        return cls(d["n"], [tuple(e) for e in d["edges"]], d.get("labels"))

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G", label_fn=None) -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            if self.labels is not None:
                text = label_fn(self.labels[v]) if label_fn else str(self.labels[v])
                text = text.replace('"', '\\"')
                lines.append(f'  {v} [label="{text}"];')
            else:
                lines.append(f"  {v};")
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dimacs(self, comment: str | None = None) -> str:
        lines = []
        if comment:
            lines.extend(f"c {ln}" for ln in comment.splitlines())
        lines.append(f"p edge {self.n} {len(self.edges)}")
        lines.extend(f"e {u + 1} {v + 1}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> Graph:
        n = None
        edges = []
        for line in text.splitlines():
            parts = line.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "p":
                if len(parts) < 4 or parts[1] not in ("edge", "col"):
                    raise ValueError(f"bad DIMACS problem line: {line!r}")
                n = int(parts[2])
            elif parts[0] == "e":
                if n is None:
                    raise ValueError("edge line before problem line")
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise ValueError(f"unrecognized DIMACS line: {line!r}")
        if n is None:
            raise ValueError("missing DIMACS problem line")
        return cls(n, edges)


def _label_json(lab):
    if isinstance(lab, (frozenset, set)):
        return sorted(lab)
    if isinstance(lab, tuple):
        return [_label_json(x) for x in lab]
    return lab


# -- k-subsets in colex order ----------------------------------------------


def colex_rank(subset: Iterable[int]) -> int:
    """Colex rank of a set of positive integers (1-based elements)."""
    return sum(comb(x - 1, j) for j, x in enumerate(sorted(subset), start=1))


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] (1-based, sorted tuples) listed by colex rank."""
    out = [tuple(sorted(c)) for c in combinations(range(1, n + 1), k)]
    out.sort(key=lambda s: tuple(reversed(s)))
    return out


def format_subset(s: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


# -- constructors ------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, [])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete_graph needs n >= 1")
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle_graph needs n >= 3")
    return Graph(n, [(v, (v + 1) % n) for v in range(n)])


def kneser_graph(n: int, k: int) -> Graph:
    """K(n,k): k-subsets of [n], adjacent when disjoint.  ``n == 2k`` is allowed."""
    if k <= 0 or n < 2 * k:
        raise ValueError(f"kneser_graph needs k >= 1 and n >= 2k, got n={n}, k={k}")
    subsets = colex_subsets(n, k)
    masks = [sum(1 << x for x in s) for s in subsets]
    edges = [
        (a, b)
        for a in range(len(masks))
        for b in range(a + 1, len(masks))
        if not masks[a] & masks[b]
    ]
    return Graph(len(subsets), edges, [frozenset(s) for s in subsets])


def categorical_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(a, b)`` gets id ``a * h.n + b``; labels are pairs."""
    m = h.n
    edges = []
    for u1, v1 in g.edges:
        for u2, v2 in h.edges:
            edges.append((u1 * m + u2, v1 * m + v2))
            edges.append((u1 * m + v2, v1 * m + u2))
    la = g.labels if g.labels is not None else range(g.n)
    lb = h.labels if h.labels is not None else range(h.n)
    labels = [(a, b) for a in la for b in lb]
    return Graph(g.n * m, edges, labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.n
    edges = list(g.edges) + [(u + off, v + off) for u, v in h.edges]
    return Graph(g.n + h.n, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Restriction to ``vertices``, renumbered in increasing order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    labels = [g.labels[v] for v in vs] if g.labels is not None else None
    return Graph(len(vs), edges, labels)


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degree(v) for v in range(g.n))


def is_bipartite_with_parts(g: Graph) -> list[int] | None:
    """A proper 2-coloring with values 1/2, or None.

    BFS from the least uncolored vertex of each component, which gets parity 1.
    """
    if not g.is_simple():
        return None
    parity = [0] * g.n
    for s in range(g.n):
        if parity[s]:
            continue
        parity[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not parity[w]:
                    parity[w] = 3 - parity[u]
                    queue.append(w)
                elif parity[w] == parity[u]:
                    return None
    return parity


def distances_from(g: Graph, source: int) -> list[int]:
    """BFS distances; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    return g.n == 0 or min(distances_from(g, 0)) >= 0


class NotAHomomorphism(ValueError):
    pass


class GraphMap:
    """A vertex map between graphs, checked to be a homomorphism.

    Loops count as edges, so a looped vertex must land on a looped vertex.
    """

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: Graph, target: Graph, assignment: Sequence[int], check: bool = True):
        assignment = tuple(assignment)
        if len(assignment) != source.n:
            raise ValueError("assignment must be total on the source")
        self.source = source
        self.target = target
        self.assignment = assignment
        if check:
            for v in assignment:
                if not 0 <= v < target.n:
                    raise ValueError(f"image {v} outside target")
            for u, v in source.edges:
                if not target.adjacent(assignment[u], assignment[v]):
                    raise NotAHomomorphism(f"edge ({u}, {v}) is not preserved")

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def __repr__(self):
        return f"GraphMap({self.source!r} -> {self.target!r})"

    def __eq__(self, other):
        return (
            isinstance(other, GraphMap)
            and self.assignment == other.assignment
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.assignment)

    def compose(self, other: GraphMap) -> GraphMap:
        """``self after other``."""
        return GraphMap(other.source, self.target, [self.assignment[v] for v in other.assignment], check=False)

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.assignment)) == self.source.n

    def is_isomorphism(self) -> bool:
        # bijective + homomorphism + equal edge counts forces the inverse to be one too
        return self.is_bijective() and self.source.num_edges == self.target.num_edges

    def inverse(self) -> GraphMap:
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.target.n
        for v, w in enumerate(self.assignment):
            inv[w] = v
        return GraphMap(self.target, self.source, inv)

    @classmethod
    def identity(cls, g: Graph) -> GraphMap:
        return cls(g, g, range(g.n), check=False)
