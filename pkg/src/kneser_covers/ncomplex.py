"""Neighborhood complexes, integer homology and connectivity evidence.

Homology is computed over Z: boundary matrices are reduced by sparse
elimination on unit pivots, and whatever is left goes through a dense Smith
normal form, so torsion is reported rather than lost.  Python integers never
overflow, which covers the fraction-free growth of pivots.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .canon import BudgetExceeded, canonical_structure, structure_isomorphism
from .graph import Graph

DEFAULT_SIMPLEX_BUDGET = 200_000


class SimplicialComplex:
    """An abstract complex stored by its facets (inclusion-maximal simplices)."""

    __slots__ = ("vertices", "facets")

    def __init__(self, facets: Iterable[Iterable[int]]):
        sets = {frozenset(f) for f in facets}
        sets.discard(frozenset())
        maximal = [f for f in sets if not any(f < g for g in sets)]
        self.facets: tuple[tuple[int, ...], ...] = tuple(sorted(tuple(sorted(f)) for f in maximal))
        self.vertices: tuple[int, ...] = tuple(sorted({v for f in self.facets for v in f}))

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def simplices(self, dim: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> list[tuple[int, ...]]:
        """All simplices of dimension ``dim`` (sorted vertex tuples), sorted."""
        out = set()
        for f in self.facets:
            if len(f) > dim:
                out.update(combinations(f, dim + 1))
                if len(out) > budget:
                    raise BudgetExceeded(f"more than {budget} simplices in dimension {dim}")
        return sorted(out)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> SimplicialComplex:
        return cls(d["facets"])


def neighborhood_complex(g: Graph) -> SimplicialComplex:
    """Facets are the inclusion-maximal vertex neighborhoods N(v)."""
    if not g.is_simple():
        raise ValueError("neighborhood complex of a looped graph is not defined here")
    return SimplicialComplex(g.neighbors(v) for v in range(g.n))


def complexes_isomorphic(k: SimplicialComplex, l: SimplicialComplex, **budget) -> dict[int, int] | None:
    """A vertex bijection carrying facets onto facets, or None."""
    if len(k.vertices) != len(l.vertices) or len(k.facets) != len(l.facets):
        return None
    if sorted(map(len, k.facets)) != sorted(map(len, l.facets)):
        return None
    cf1, cf2 = _incidence_form(k, **budget), _incidence_form(l, **budget)
    iso = structure_isomorphism(cf1, cf2)
    if iso is None:
        return None
    nv = len(k.vertices)
    witness = {k.vertices[a]: l.vertices[iso.images[a]] for a in range(nv)}
    mapped = {tuple(sorted(witness[v] for v in f)) for f in k.facets}
    if mapped != set(l.facets):
        raise AssertionError("incidence isomorphism does not carry facets onto facets")
    return witness


def _incidence_form(k: SimplicialComplex, **budget):
    nv = len(k.vertices)
    pos = {v: i for i, v in enumerate(k.vertices)}
    masks = [0] * (nv + len(k.facets))
    for j, f in enumerate(k.facets):
        fid = nv + j
        for v in f:
            masks[pos[v]] |= 1 << fid
            masks[fid] |= 1 << pos[v]
    colors = [0] * nv + [1] * len(k.facets)
    return canonical_structure(len(masks), [masks], colors, **budget)


# -- Smith normal form -----------------------------------------------------------


def smith_invariants(entries: dict[tuple[int, int], int]) -> tuple[int, list[int]]:
    """Rank and the invariant factors > 1 of a sparse integer matrix."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    rank = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            if c not in cols:
                continue
            units = [r for r in cols[c] if abs(rows[r][c]) == 1]
            if not units:
                continue
            p = min(units, key=lambda r: (len(rows[r]), r))
            _eliminate(rows, cols, p, c)
            rank += 1
            progress = True
    if not rows:
        return rank, []
    rlist = sorted(rows)
    clist = sorted(cols)
    ci = {c: j for j, c in enumerate(clist)}
    dense = [[0] * len(clist) for _ in rlist]
    for a, r in enumerate(rlist):
        for c, v in rows[r].items():
            dense[a][ci[c]] = v
    diag = dense_smith_diagonal(dense)
    rank += len(diag)
    return rank, [d for d in diag if d > 1]


def _eliminate(rows, cols, p, c):
    prow = rows.pop(p)
    u = prow[c]  # +-1, its own inverse
    for r in list(cols[c]):
        if r == p:
            continue
        row = rows[r]
        factor = row[c] * u
        for cc, pv in prow.items():
            nv = row.get(cc, 0) - factor * pv
            if nv:
                if cc not in row:
                    cols[cc].add(r)
                row[cc] = nv
            elif cc in row:
                del row[cc]
                cols[cc].discard(r)
        if not row:
            del rows[r]
    for cc in prow:
        cols[cc].discard(p)
        if not cols[cc]:
            del cols[cc]
    cols.pop(c, None)


def dense_smith_diagonal(a: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, each entry positive."""
    a = [row[:] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        done = False
                        a[t], a[i] = a[i], a[t]
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
                        for row in a:
                            row[t], row[j] = row[j], row[t]
            if not done:
                continue
            piv = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            i, _ = bad
            for j in range(t, n):
                a[t][j] += a[i][j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


# -- homology -----------------------------------------------------------------------


@dataclass
class HomologyReport:
    betti: list[int]
    torsion: list[list[int]]
    simplex_counts: list[int] = field(default_factory=list)

    def vanishes_through(self, m: int) -> bool:
        return all(self.betti[j] == 0 and not self.torsion[j] for j in range(0, min(m, len(self.betti) - 1) + 1))

    def to_dict(self) -> dict:
        return {
            "dimensions": [
                {"dim": j, "betti": b, "torsion": t} for j, (b, t) in enumerate(zip(self.betti, self.torsion))
            ]
        }


def boundary_entries(lower: Sequence[tuple[int, ...]], upper: Sequence[tuple[int, ...]]) -> dict:
    index = {s: i for i, s in enumerate(lower)}
    out = {}
    for c, s in enumerate(upper):
        for t in range(len(s)):
            face = s[:t] + s[t + 1 :]
            out[(index[face], c)] = -1 if t % 2 else 1
    return out


def reduced_homology(k: SimplicialComplex, up_to: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> HomologyReport:
    """Reduced integral homology in dimensions 0..up_to."""
    if up_to < 0:
        raise ValueError("up_to must be >= 0")
    faces = [k.simplices(j, budget) for j in range(up_to + 2)]
    # rank of d_j : C_j -> C_{j-1}; d_0 is the augmentation
    ranks = []
    torsions = []
    for j in range(up_to + 2):
        if j == 0:
            ranks.append(1 if faces[0] else 0)
            torsions.append([])
            continue
        r, tors = smith_invariants(boundary_entries(faces[j - 1], faces[j]))
        ranks.append(r)
        torsions.append(tors)
    betti = [len(faces[j]) - ranks[j] - ranks[j + 1] for j in range(up_to + 1)]
    torsion = [sorted(torsions[j + 1]) for j in range(up_to + 1)]
    return HomologyReport(betti, torsion, [len(f) for f in faces[: up_to + 1]])


def euler_characteristic(k: SimplicialComplex, budget: int = DEFAULT_SIMPLEX_BUDGET) -> int:
    """Unreduced Euler characteristic from simplex counts."""
    total = 0
    for j in range(k.dimension + 1):
        total += (-1) ** j * len(k.simplices(j, budget))
    return total


# -- fundamental group -----------------------------------------------------------------


def _free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _substitute(word, gen, replacement):
    inv = [-x for x in reversed(replacement)]
    out = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return _free_reduce(out)


def edge_path_presentation(k: SimplicialComplex, budget: int = DEFAULT_SIMPLEX_BUDGET):
    """Generators and relators of pi_1 of the 2-skeleton (first component).

    Spanning-tree edges are trivial; every other edge is a generator and each
    triangle gives one relator.  Generators are numbered from 1, inverses are
    negated.
    """
    edges = k.simplices(1, budget)
    tris = k.simplices(2, budget)
    if not k.vertices:
        return 0, []
    adj: dict[int, list[int]] = {v: [] for v in k.vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = k.vertices[0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                queue.append(w)
    gen_of = {}
    for e in edges:
        if e not in tree and e[0] in seen:
            gen_of[e] = len(gen_of) + 1
    relators = []
    for a, b, c in tris:
        if a not in seen:
            continue
        word = [gen_of.get((a, b), 0), gen_of.get((b, c), 0), -gen_of.get((a, c), 0)]
        relators.append(_free_reduce([x for x in word if x]))
    return len(gen_of), relators


def simplify_presentation(ngens: int, relators: list[list[int]], max_length: int = 64, max_rounds: int = 10_000):
    """Tietze elimination; returns the surviving generators and relators.

    A generator occurring exactly once in some relator is solved for and
    substituted everywhere, as long as no relator grows past ``max_length``.
    """
    gens = set(range(1, ngens + 1))
    rels = [r for r in (_free_reduce(list(r)) for r in relators) if r]
    for _ in range(max_rounds):
        if not gens:
            break
        rels.sort(key=len)
        progress = False
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            solo = [g for g, c in counts.items() if c == 1]
            if not solo:
                continue
            g = min(solo)
            pos = next(t for t, x in enumerate(r) if abs(x) == g)
            rest = r[pos + 1 :] + r[:pos]  # r = g^e * rest (cyclically)
            if r[pos] > 0:
                replacement = [-x for x in reversed(rest)]
            else:
                replacement = list(rest)
            new_rels = []
            too_long = False
            for j, s in enumerate(rels):
                if j == idx:
                    continue
                t = _substitute(s, g, replacement)
                if len(t) > max_length:
                    too_long = True
                    break
                if t:
                    new_rels.append(t)
            if too_long:
                continue
            rels = new_rels
            gens.discard(g)
            progress = True
            break
        if not progress:
            break
    return gens, rels


@dataclass
class ConnectivityEvidence:
    m: int
    connected: bool
    homology_vanishes: bool | None
    pi1: str  # "verified", "inconclusive" or "not-needed"
    homology: HomologyReport | None
    verdict: str  # "proved", "consistent" or "refuted"

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "connected": self.connected,
            "homology_vanishes_to_m": self.homology_vanishes,
            "pi1_trivial": self.pi1,
            "verdict": self.verdict,
            "homology": self.homology.to_dict() if self.homology else None,
        }


def connectivity_evidence(k: SimplicialComplex, m: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> ConnectivityEvidence:
    """Graded evidence that ``k`` is m-connected.

    Path-connectedness and vanishing homology are necessary conditions; a
    fully reduced edge-path presentation additionally proves simple
    connectivity.  "proved" is only returned for m <= 1.
    """
    if m < -1:
        raise ValueError("m must be >= -1")
    nonempty = bool(k.vertices)
    if m == -1:
        return ConnectivityEvidence(m, nonempty, None, "not-needed", None, "proved" if nonempty else "refuted")
    connected = nonempty and _one_skeleton_connected(k)
    hom = reduced_homology(k, m, budget)
    vanish = hom.vanishes_through(m)
    pi1 = "not-needed"
    if m >= 1 and connected:
        ngens, rels = edge_path_presentation(k, budget)
        left, _ = simplify_presentation(ngens, rels)
        pi1 = "verified" if not left else "inconclusive"
    if not connected or not vanish:
        verdict = "refuted"
    elif m == 0 or (m == 1 and pi1 == "verified"):
        verdict = "proved"
    else:
        verdict = "consistent"
    return ConnectivityEvidence(m, connected, vanish, pi1, hom, verdict)


def _one_skeleton_connected(k: SimplicialComplex) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in k.vertices}
    for f in k.facets:
        for v in f:
            adj[v].update(f)
    start = k.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(k.vertices)
