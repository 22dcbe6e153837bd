"""Permutations of {0, ..., n-1} and permutation groups.

Permutations are stored 0-based as image tuples.  Cycle notation at the
boundary is 1-based, e.g. ``"(1,2)(3,4)"``.  Composition follows the
functional convention: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], one_based: bool = True) -> Perm:
        img = list(range(n))
        off = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, n: int, text: str) -> Perm:
        """Parse 1-based cycle notation such as ``"(1,2)(3,4)"`` or ``"()"``."""
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            if body:
                cycles.append([int(t) for t in re.split(r"[,\s]+", body)])
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        a = self.images
        return Perm(tuple(a[j] for j in other.images))

    def __pow__(self, e: int) -> Perm:
        if e < 0:
            return self.inverse() ** (-e)
        out = Perm.identity(self.degree)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its least element."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(c + 1) for c in cy) + ")" for cy in cyc)

    def __str__(self):
        return self.to_cycle_string()

    def commutes_with(self, other: Perm) -> bool:
        a, b = self.images, other.images
        return all(a[b[x]] == b[a[x]] for x in range(len(a)))


def involution_class_index(p: Perm) -> int:
    """Number of transpositions in an involution's cycle decomposition."""
    if not (p * p).is_identity():
        raise ValueError(f"{p} is not an involution")
    return len(p.cycles())


# -- Schreier-Sims ----------------------------------------------------------


def _orbit_transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, Perm]:
    trans = {point: Perm.identity(degree)}
    queue = [point]
    while queue:
        p = queue.pop()
        u = trans[p]
        for g in gens:
            q = g.images[p]
            if q not in trans:
                trans[q] = g * u
                queue.append(q)
    return trans


@dataclass
class PermGroup:
    """A permutation group given by generators.

    A base and strong generating set are built eagerly with deterministic
    Schreier-Sims, so ``order`` and membership are exact.
    """

    degree: int
    generators: list[Perm]
    base: list[int] = field(default_factory=list, repr=False)
    strong_gens: list[Perm] = field(default_factory=list, repr=False)
    transversals: list[dict[int, Perm]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")
        self._build()

    def _level_gens(self, i: int) -> list[Perm]:
        fixed = self.base[:i]
        return [s for s in self.strong_gens if all(s.images[b] == b for b in fixed)]

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            u = self.transversals[i].get(g.images[self.base[i]])
            if u is None:
                return g, i
            g = u.inverse() * g
        return g, len(self.base)

    def _build(self):
        self.strong_gens = [g for g in self.generators if not g.is_identity()]
        self.base = []
        for s in self.strong_gens:
            if all(s.images[b] == b for b in self.base):
                self.base.append(next(x for x in range(self.degree) if s.images[x] != x))
        self.transversals = [
            _orbit_transversal(b, self._level_gens(i), self.degree) for i, b in enumerate(self.base)
        ]
        i = len(self.base) - 1
        while i >= 0:
            b = self.base[i]
            trans = self.transversals[i]
            residue = None
            for p, u in trans.items():
                for s in self._level_gens(i):
                    su = s * u
                    sch = trans[su.images[b]].inverse() * su
                    h, j = self._sift(sch, i + 1)
                    if not h.is_identity():
                        residue = (h, j)
                        break
                if residue:
                    break
            if residue is None:
                i -= 1
                continue
            h, j = residue
            self.strong_gens.append(h)
            if j == len(self.base):
                self.base.append(next(x for x in range(self.degree) if h.images[x] != x))
                self.transversals.append({})
            for lvl in range(i + 1, j + 1):
                self.transversals[lvl] = _orbit_transversal(self.base[lvl], self._level_gens(lvl), self.degree)
            i = j

    @property
    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def __contains__(self, g: Perm) -> bool:
        h, _ = self._sift(g)
        return h.is_identity()

    def __len__(self) -> int:
        return self.order

    def elements(self) -> Iterator[Perm]:
        """Every group element, each exactly once."""
        transversals = [list(t.values()) for t in self.transversals]
        ident = Perm.identity(self.degree)
        for combo in product(*transversals):
            g = ident
            for u in combo:
                g = g * u
            yield g

    def orbits(self) -> list[list[int]]:
        return orbits_of(self.degree, self.generators)


def orbits_of(degree: int, gens: Sequence[Perm]) -> list[list[int]]:
    """Orbits of the group generated by ``gens``, as sorted lists."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in enumerate(g.images):
            a, b = find(x), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(degree):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def group_order(generators: Sequence[Perm], degree: int | None = None) -> int:
    if degree is None:
        if not generators:
            return 1
        degree = generators[0].degree
    return PermGroup(degree, list(generators)).order


def symmetric_group(n: int, points: Sequence[int] | None = None, degree: int | None = None) -> list[Perm]:
    """Generators (a transposition and a long cycle) of Sym(points) inside S_degree."""
    if points is None:
        points = list(range(n))
    if degree is None:
        degree = n
    pts = list(points)
    if len(pts) < 2:
        return []
    t = Perm.from_cycles(degree, [pts[:2]], one_based=False)
    if len(pts) == 2:
        return [t]
    c = Perm.from_cycles(degree, [pts], one_based=False)
    return [t, c]
