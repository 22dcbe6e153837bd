"""Canonical labeling and automorphism search by individualization-refinement.

The engine works on a *structure*: ``n`` points, an initial coloring, and one
or more symmetric adjacency relations ("layers") given as bitmasks.  Graph
isomorphism, bigraph conjugacy (parity coloring plus the matching of an
involution as a second layer) and complex isomorphism (vertex/facet
incidence) all reduce to it.

Refinement is 1-dimensional Weisfeiler-Leman to an equitable partition.  The
search individualizes vertices of the first smallest non-singleton cell,
prunes children by orbits of automorphisms fixing the current prefix, and
backjumps to the common ancestor whenever a leaf reproduces the first or best
leaf.  Canonicity is decided by comparing full leaf certificates, so equal
certificates mean isomorphic, never just "probably".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import cache
from .perm import Perm, PermGroup, orbits_of

DEFAULT_VERTEX_BUDGET = 256
DEFAULT_NODE_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """A search hit its configured size or node cap."""


@dataclass
class CanonicalForm:
    """Result of a canonical search.

    ``labeling`` sends each vertex to its canonical position; ``certificate``
    is the relabeled structure and is a complete isomorphism invariant.
    """

    labeling: Perm
    certificate: tuple
    generators: list[Perm] = field(repr=False)
    nodes: int = 0

    def group(self) -> PermGroup:
        return PermGroup(self.labeling.degree, self.generators)


def _edges_of(masks: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for u, m in enumerate(masks):
        m >>= u
        v = u
        while m:
            if m & 1:
                out.append((u, v))
            m >>= 1
            v += 1
    return out


class _Search:
    def __init__(self, n, layers, colors, node_budget):
        self.n = n
        self.layers = [tuple(L) for L in layers]
        self.layer_edges = [_edges_of(L) for L in self.layers]
        self.colors = list(colors)
        self.node_budget = node_budget
        self.nodes = 0
        self.gens: list[Perm] = []
        self.first_path = None
        self.first_lab = None
        self.first_cert = None
        self.best_path = None
        self.best_lab = None
        self.best_cert = None

    # A partition is (lab, cellof, end): lab lists vertices by position,
    # cellof[v] is the start of v's cell, end[s] is the end of the cell at s.

    def initial_partition(self):
        order = sorted(range(self.n), key=lambda v: (self.colors[v], v))
        lab = list(order)
        cellof = [0] * self.n
        end = [0] * (self.n + 1)
        s = 0
        while s < self.n:
            e = s
            while e < self.n and self.colors[lab[e]] == self.colors[lab[s]]:
                e += 1
            for p in range(s, e):
                cellof[lab[p]] = s
            end[s] = e
            s = e
        starts = []
        s = 0
        while s < self.n:
            starts.append(s)
            s = end[s]
        self.refine(lab, cellof, end, starts)
        return lab, cellof, end

    def refine(self, lab, cellof, end, queue):
        n = self.n
        in_queue = set(queue)
        queue = list(queue)
        layers = self.layers
        qi = 0
        while qi < len(queue):
            w = queue[qi]
            qi += 1
            in_queue.discard(w)
            wmask = 0
            for p in range(w, end[w]):
                wmask |= 1 << lab[p]
            for L in layers:
                s = 0
                while s < n:
                    e = end[s]
                    if e - s > 1:
                        counts = {}
                        for p in range(s, e):
                            v = lab[p]
                            counts.setdefault((L[v] & wmask).bit_count(), []).append(v)
                        if len(counts) > 1:
                            was_queued = s in in_queue
                            keys = sorted(counts)
                            pos = s
                            frags = []
                            for key in keys:
                                grp = counts[key]
                                for v in grp:
                                    lab[pos] = v
                                    cellof[v] = pos
                                    pos += 1
                                frags.append((pos - len(grp), pos))
                            for a, b in frags:
                                end[a] = b
                                for p in range(a, b):
                                    cellof[lab[p]] = a
                            if was_queued:
                                for a, _ in frags[1:]:
                                    queue.append(a)
                                    in_queue.add(a)
                            else:
                                big = max(range(len(frags)), key=lambda i: (frags[i][1] - frags[i][0], -i))
                                for i, (a, _) in enumerate(frags):
                                    if i != big:
                                        queue.append(a)
                                        in_queue.add(a)
                    s = e

    def target_cell(self, lab, end):
        best = None
        s = 0
        while s < self.n:
            e = end[s]
            size = e - s
            if size > 1 and (best is None or size < best[1] - best[0]):
                best = (s, e)
                if size == 2:
                    break
            s = e
        return best

    def certificate(self, lab):
        pos = [0] * self.n
        for p, v in enumerate(lab):
            pos[v] = p
        parts = [tuple(self.colors[v] for v in lab)]
        for edges in self.layer_edges:
            parts.append(tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges)))
        return tuple(parts)

    def stab_orbits(self, prefix):
        gens = [g for g in self.gens if all(g.images[x] == x for x in prefix)]
        if not gens:
            return None
        orbit_id = {}
        for i, orb in enumerate(orbits_of(self.n, gens)):
            for x in orb:
                orbit_id[x] = i
        return orbit_id

    def leaf(self, lab, path):
        cert = self.certificate(lab)
        if self.first_cert is None:
            self.first_path, self.first_lab, self.first_cert = list(path), list(lab), cert
            self.best_path, self.best_lab, self.best_cert = list(path), list(lab), cert
            return None
        if cert == self.first_cert:
            self._record_automorphism(self.first_lab, lab)
            return _common_prefix(path, self.first_path)
        if cert == self.best_cert:
            self._record_automorphism(self.best_lab, lab)
            return _common_prefix(path, self.best_path)
        if cert > self.best_cert:
            self.best_path, self.best_lab, self.best_cert = list(path), list(lab), cert
        return None

    def _record_automorphism(self, lab1, lab2):
        img = [0] * self.n
        for a, b in zip(lab1, lab2):
            img[a] = b
        g = Perm(tuple(img))
        if not g.is_identity():
            self.gens.append(g)

    def dfs(self, part, path):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"canonical search exceeded {self.node_budget} nodes")
        lab, cellof, end = part
        cell = self.target_cell(lab, end)
        if cell is None:
            return self.leaf(lab, path)
        level = len(path)
        s, e = cell
        children = sorted(lab[s:e])
        explored: list[int] = []
        seen_gens = -1
        orbit_id = None
        for v in children:
            if explored:
                if seen_gens != len(self.gens):
                    orbit_id = self.stab_orbits(path)
                    seen_gens = len(self.gens)
                if orbit_id is not None and any(orbit_id[v] == orbit_id[u] for u in explored):
                    continue
            child = self.individualize(lab, cellof, end, s, e, v)
            jump = self.dfs(child, path + [v])
            explored.append(v)
            if jump is not None and jump < level:
                return jump
        return None

    def individualize(self, lab, cellof, end, s, e, v):
        lab = list(lab)
        cellof = list(cellof)
        end = list(end)
        p = lab.index(v, s, e)
        lab[s], lab[p] = lab[p], lab[s]
        end[s] = s + 1
        end[s + 1] = e
        for q in range(s + 1, e):
            cellof[lab[q]] = s + 1
        cellof[v] = s
        self.refine(lab, cellof, end, [s])
        return lab, cellof, end

    def run(self) -> CanonicalForm:
        part = self.initial_partition()
        self.dfs(part, [])
        img = [0] * self.n
        for p, v in enumerate(self.best_lab):
            img[v] = p
        return CanonicalForm(Perm(tuple(img)), self.best_cert, list(self.gens), self.nodes)


def _common_prefix(a, b) -> int:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return i


def canonical_structure(
    n: int,
    layers: Sequence[Sequence[int]],
    colors: Sequence | None = None,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CanonicalForm:
    """Canonical form of ``n`` points with colored vertices and bitmask layers.

    Colors must be mutually comparable; points are only ever mapped to points
    of the same color.
    """
    if n > vertex_budget:
        raise BudgetExceeded(f"{n} vertices exceeds the budget of {vertex_budget}")
    if colors is None:
        colors = [0] * n
    if n == 0:
        return CanonicalForm(Perm(()), ((),) + tuple(() for _ in layers), [], 0)
    store = cache.active()
    key = None
    if store is not None:
        key = cache.structure_key(n, layers, colors)
        hit = store.get(key)
        if hit is not None:
            return _from_cache(hit)
    cf = _Search(n, layers, colors, node_budget).run()
    if store is not None:
        store.put(key, _to_cache(cf))
    return cf


def _to_cache(cf: CanonicalForm) -> dict:
    return {
        "labeling": list(cf.labeling.images),
        "certificate": [list(part) for part in cf.certificate],
        "generators": [list(g.images) for g in cf.generators],
        "nodes": cf.nodes,
    }


def _from_cache(d: dict) -> CanonicalForm:
    colors, *layers = d["certificate"]
    cert = (tuple(_tuplify(c) for c in colors),) + tuple(tuple(tuple(e) for e in L) for L in layers)
    return CanonicalForm(
        Perm(tuple(d["labeling"])),
        cert,
        [Perm(tuple(g)) for g in d["generators"]],
        d["nodes"],
    )


def _tuplify(x):
    return tuple(_tuplify(y) for y in x) if isinstance(x, list) else x


def structure_isomorphism(cf1: CanonicalForm, cf2: CanonicalForm) -> Perm | None:
    """The map from structure 1 to structure 2 induced by canonical labelings."""
    if cf1.certificate != cf2.certificate:
        return None
    return cf2.labeling.inverse() * cf1.labeling
