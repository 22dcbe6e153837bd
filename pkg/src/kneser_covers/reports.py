"""Claim registry: each claim recomputes one fact and compares it to its value.

A run produces :class:`VerificationReport` records.  Apart from
``wall_time`` they are deterministic, so two runs emit identical JSON.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Any, Callable, Iterable, Iterator

from . import cache
from .canon import DEFAULT_NODE_BUDGET, DEFAULT_VERTEX_BUDGET, BudgetExceeded
from .coloring import DEFAULT_SOLVER_NODES, chromatic_number_exact, inductive_coloring, is_proper
from .cover import (
    Bigraph,
    are_conjugate,
    are_evenly_conjugate,
    brute_force_homomorphisms,
    canonical_cover_iso,
    decompose_odd_involution,
    descend_map,
    enumerate_odd_involutions,
    even_centralizer,
    kronecker_cover,
    lift_map,
    quotient,
    quotient_is_simple,
)
from .family import (
    aut_structure_map,
    bipartite_kneser,
    g_graph,
    loop_witness,
    sigma,
    simplicity_threshold,
    subset_permutation,
    tau_times,
)
from .graph import (
    GraphMap,
    categorical_product,
    colex_subsets,
    complete_graph,
    cycle_graph,
    disjoint_union,
    distances_from,
    kneser_graph,
)
from .ncomplex import DEFAULT_SIMPLEX_BUDGET, complexes_isomorphic, connectivity_evidence, neighborhood_complex
from .perm import Perm, involution_class_index
from .symmetry import (
    all_permutations,
    are_isomorphic,
    automorphism_group,
    block_involution,
    brute_force_centralizer,
    canonical_form,
    centralizer_in_symmetric,
    centralizer_order_formula,
    phi_embedding,
    star_monomorphism,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

ACCEPTANCE_GRID = [(5, 2), (6, 2), (7, 2), (7, 3), (8, 3)]


@dataclass
class Budget:
    vertices: int = DEFAULT_VERTEX_BUDGET
    canon_nodes: int = DEFAULT_NODE_BUDGET
    solver_nodes: int = DEFAULT_SOLVER_NODES
    simplices: int = DEFAULT_SIMPLEX_BUDGET

    @property
    def canon(self) -> dict:
        return {"vertex_budget": self.vertices, "node_budget": self.canon_nodes}


@dataclass
class VerificationReport:
    claim: str
    params: dict
    statement: str
    expected: Any
    computed: Any
    verdict: str
    wall_time: float = 0.0
    note: str = ""

    def to_dict(self, with_time: bool = True) -> dict:
        d = {
            "claim": self.claim,
            "params": self.params,
            "statement": self.statement,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": self.verdict,
        }
        if self.note:
            d["note"] = self.note
        if with_time:
            d["wall_time"] = round(self.wall_time, 4)
        return d

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.to_dict(with_time), sort_keys=True)


@dataclass
class Claim:
    claim_id: str
    statement: str
    criterion: int
    tasks: Callable[[list[tuple[int, int]]], list[dict]]
    check: Callable[..., tuple[Any, Any, str | None]]


def grid_pairs(max_n: int, max_k: int) -> list[tuple[int, int]]:
    """All (n, k) with 2 <= k <= max_k and 2k < n <= max_n."""
    return [(n, k) for k in range(2, max_k + 1) for n in range(2 * k + 1, max_n + 1)]


def _family(grid):
    return [{"n": n, "k": k, "i": i} for n, k in grid for i in range(k)]


def _pairs(grid):
    return [{"n": n, "k": k} for n, k in grid]


def _fixed(items):
    return lambda grid: [dict(d) for d in items]


def _eq(expected, computed):
    return expected, computed, None


# -- individual checks ------------------------------------------------------------------------
# Each returns (expected, computed, verdict or None); None means compare for equality.


def check_simplicity(n, k, budget):
    table = simplicity_threshold(n, k)
    expected = [i < k for i in range(n // 2 + 1)]
    witnesses_ok = all(loop_witness(n, k, i) is not None for i in range(k, n // 2 + 1))
    return _eq({"table": expected, "loop_witnesses": True}, {"table": table, "loop_witnesses": witnesses_ok})


def check_cover(n, k, i, budget):
    x, _ = bipartite_kneser(n, k)
    f, cov = canonical_cover_iso(x, tau_times(n, k, sigma(i, n)))
    direct, _ = kronecker_cover(g_graph(n, k, i))
    same = direct.graph == cov.graph
    witness = are_isomorphic(direct.graph, x.graph, **budget.canon)
    return _eq(
        {"explicit_witness": True, "search_witness": True},
        {"explicit_witness": same and f.is_isomorphism(), "search_witness": witness is not None},
    )


def check_distinct(n, k, budget):
    graphs = [g_graph(n, k, i) for i in range(k)]
    certs = [canonical_form(g, **budget.canon).certificate for g in graphs]
    iso_pairs = []
    for a in range(k):
        for b in range(a + 1, k):
            if certs[a] == certs[b] or are_isomorphic(graphs[a], graphs[b], **budget.canon) is not None:
                iso_pairs.append([a, b])
    return _eq({"distinct_certificates": k, "isomorphic_pairs": []}, {"distinct_certificates": len(set(certs)), "isomorphic_pairs": iso_pairs})


def involution_count(n: int) -> int:
    """Involutions (identity included) in S_n."""
    return sum(factorial(n) // (2**j * factorial(j) * factorial(n - 2 * j)) for j in range(n // 2 + 1))


def check_exhaustive(n, k, budget):
    x, _ = bipartite_kneser(n, k)
    group = automorphism_group(x.graph, **budget.canon)
    kn = kneser_graph(n, k)
    invs = enumerate_odd_involutions(x, group)
    classes = set()
    unmatched = 0
    for alpha in invs:
        _, prime = decompose_odd_involution(kn, alpha, check_star=False)
        i = point_involution_class(n, k, prime)
        rep = tau_times(n, k, sigma(i, n))
        if are_evenly_conjugate(x, alpha, rep, **budget.canon) is None:
            unmatched += 1
        classes.add(i)
    return _eq(
        {"odd_involutions": involution_count(n), "classes": n // 2 + 1, "unmatched": 0},
        {"odd_involutions": len(invs), "classes": len(classes), "unmatched": unmatched},
    )


def point_involution_class(n, k, subset_perm: Perm) -> int:
    """Class index of the point permutation inducing ``subset_perm`` on k-subsets.

    Point x goes to the one point shared by the images of all subsets
    containing x.
    """
    subsets = [frozenset(s) for s in colex_subsets(n, k)]
    img = []
    for x in range(1, n + 1):
        common = frozenset(range(1, n + 1))
        for v, s in enumerate(subsets):
            if x in s:
                common &= subsets[subset_perm.images[v]]
        if len(common) != 1:
            raise AssertionError("automorphism is not induced by a point permutation")
        img.append(next(iter(common)) - 1)
    p = Perm(tuple(img))
    if subset_permutation(n, k, p) != list(subset_perm.images):
        raise AssertionError("recovered point permutation does not match")
    return involution_class_index(p)


def check_aut_order(n, k, i, budget):
    aut = automorphism_group(g_graph(n, k, i), **budget.canon)
    return _eq(centralizer_order_formula(n, i), aut.order)


def check_aut_structure(n, k, i, budget):
    s = aut_structure_map(n, k, i)
    aut = automorphism_group(g_graph(n, k, i), **budget.canon)
    members = all(g in aut for g in s.graph_images)
    img_order = s.image_group().order
    return _eq(
        {"abstract_order": s.abstract_order, "image_order": s.abstract_order, "images_are_automorphisms": True},
        {"abstract_order": s.abstract_order, "image_order": img_order, "images_are_automorphisms": members},
    )


_PERM_TABLES: dict[int, Any] = {}


def check_centralizer_order(n, budget):
    perms = _PERM_TABLES.get(n)
    if perms is None:
        perms = _PERM_TABLES[n] = all_permutations(n)
    expected, computed = [], []
    for m in range(n // 2 + 1):
        s = sigma(m, n)
        formula = centralizer_order_formula(n, m)
        brute = len(brute_force_centralizer(s, perms))
        gens = centralizer_in_symmetric(s).order
        expected.append([m, formula, formula])
        computed.append([m, brute, gens])
    return _eq(expected, computed)


def check_phi(m, budget):
    tau = block_involution(m)
    image = set()
    elems = [(bits, Perm(p)) for bits in _bitvectors(m) for p in permutations(range(m))]
    for bits, s in elems:
        image.add(phi_embedding(bits, s).images)
    brute = {tuple(int(x) for x in row) for row in brute_force_centralizer(tau)}
    hom_ok = True
    if m <= 3:
        for bx, sx in elems:
            px = phi_embedding(bx, sx)
            for by, sy in elems:
                moved = [by[sx.inverse().images[j]] for j in range(m)]
                prod_bits = tuple((a + b) % 2 for a, b in zip(bx, moved))
                if phi_embedding(prod_bits, sx * sy) != px * phi_embedding(by, sy):
                    hom_ok = False
                    break
            if not hom_ok:
                break
    return _eq(
        {"injective": True, "image_equals_centralizer": True, "homomorphism": True},
        {"injective": len(image) == len(elems), "image_equals_centralizer": image == brute, "homomorphism": hom_ok},
    )


def _bitvectors(m):
    for x in range(2**m):
        yield tuple(x >> j & 1 for j in range(m))


def check_cover_aut_order(n, k, budget):
    x, _ = bipartite_kneser(n, k)
    return _eq(2 * factorial(n), automorphism_group(x.graph, **budget.canon).order)


def check_star_iso(n, k, budget):
    rep = star_monomorphism(kneser_graph(n, k), **budget.canon)
    return _eq({"surjective": True}, {"surjective": rep.surjective})


def check_star_not_iso(n, k, i, budget):
    rep = star_monomorphism(g_graph(n, k, i), **budget.canon)
    return _eq({"surjective": False}, {"surjective": rep.surjective})


def _test_bigraph(name):
    if name == "H(5,2)":
        x, _ = bipartite_kneser(5, 2)
        return x
    if name == "K2xC5":
        x, _ = kronecker_cover(cycle_graph(5))
        return x
    if name == "C6":
        return Bigraph(cycle_graph(6), [1 + v % 2 for v in range(6)])
    raise ValueError(name)


def check_prop7(bigraph, budget):
    x = _test_bigraph(bigraph)
    group = automorphism_group(x.graph, **budget.canon)
    invs = enumerate_odd_involutions(x, group)
    qcerts = [canonical_form(quotient(x, a).graph, **budget.canon).certificate for a in invs]
    disagree = 0
    counts = {"isomorphic": 0, "evenly_conjugate": 0, "conjugate": 0}
    for ai, a in enumerate(invs):
        for bi, b in enumerate(invs):
            iso = qcerts[ai] == qcerts[bi]
            if iso:
                iso = are_isomorphic(quotient(x, a).graph, quotient(x, b).graph, **budget.canon) is not None
            even = are_evenly_conjugate(x, a, b, **budget.canon) is not None
            conj = are_conjugate(x, a, b, group) is not None
            counts["isomorphic"] += iso
            counts["evenly_conjugate"] += even
            counts["conjugate"] += conj
            if not iso == even == conj:
                disagree += 1
    n = len(invs)
    computed = {"pairs": n * n, "disagreements": disagree, "true_counts": counts}
    return {"pairs": n * n, "disagreements": 0}, computed, PASS if disagree == 0 else FAIL


def check_prop8(n, k, i, budget):
    x, _ = bipartite_kneser(n, k)
    cen = even_centralizer(x, tau_times(n, k, sigma(i, n)), **budget.canon)
    aut = automorphism_group(g_graph(n, k, i), **budget.canon)
    return _eq(aut.order, cen.order)


def check_chi(n, k, i, budget):
    res = chromatic_number_exact(g_graph(n, k, i), node_budget=budget.solver_nodes)
    return _eq(n - 2 * k + 2, res.value)


def check_constructive(n, k, i, budget):
    c = inductive_coloring(n, k, i)
    ok = is_proper(g_graph(n, k, i), c)
    return _eq(
        {"proper": True, "palette": n - 2 * k + 2, "colors_used": n - 2 * k + 2},
        {"proper": ok, "palette": c.palette_size, "colors_used": c.colors_used()},
    )


def check_counterexample(n, budget):
    k2 = complete_graph(2)
    kn = complete_graph(n)
    lhs = categorical_product(k2, categorical_product(k2, kn))
    rhs = categorical_product(k2, disjoint_union(kn, kn))
    witness = are_isomorphic(lhs, rhs, **budget.canon)
    chi_cover = chromatic_number_exact(categorical_product(k2, kn)).value
    chi_union = chromatic_number_exact(disjoint_union(kn, kn)).value
    return _eq(
        {"covers_isomorphic": True, "chi_K2xKn": 2, "chi_Kn_union_Kn": n},
        {"covers_isomorphic": witness is not None, "chi_K2xKn": chi_cover, "chi_Kn_union_Kn": chi_union},
    )


def check_complex_iso(n, k, i, budget):
    a = neighborhood_complex(g_graph(n, k, i))
    b = neighborhood_complex(kneser_graph(n, k))
    return _eq(True, complexes_isomorphic(a, b, **budget.canon) is not None)


def check_kneser_homology(n, k, budget):
    m = n - 2 * k - 1
    hom = connectivity_evidence(neighborhood_complex(kneser_graph(n, k)), m, budget.simplices).homology
    zeros = [[0, []] for _ in range(m + 1)]
    return _eq(zeros, [[hom.betti[j], hom.torsion[j]] for j in range(m + 1)])


def check_pi1(n, k, budget):
    m = n - 2 * k - 1
    ev = connectivity_evidence(neighborhood_complex(kneser_graph(n, k)), m, budget.simplices)
    verdict = None
    if not ev.connected or not ev.homology_vanishes:
        verdict = FAIL
    elif ev.pi1 != "verified":
        verdict = INCONCLUSIVE
    return "verified", ev.pi1, verdict


def check_complete_unique(n, budget):
    kn = complete_graph(n)
    x, swap = kronecker_cover(kn)
    group = automorphism_group(x.graph, **budget.canon)
    invs = enumerate_odd_involutions(x, group)
    simple = [a for a in invs if quotient_is_simple(x, a)]
    quotient_ok = len(simple) == 1 and are_isomorphic(quotient(x, simple[0]).graph, kn, **budget.canon) is not None
    dist_ok = True
    for v in range(x.n):
        d = distances_from(x.graph, v)
        far = [w for w in range(x.n) if d[w] > 2 and d[w] % 2 == 1]
        if len(far) != 1 or (simple and far[0] != simple[0](v)):
            dist_ok = False
    return _eq(
        {"simple_quotients": 1, "quotient_is_Kn": True, "distance_characterization": True},
        {"simple_quotients": len(simple), "quotient_is_Kn": quotient_ok, "distance_characterization": dist_ok},
    )


def check_lifting_uniqueness(bigraph, budget):
    x = _test_bigraph(bigraph)
    invs = enumerate_odd_involutions(x)
    homs = list(brute_force_homomorphisms(x.graph, x.graph))
    descents = lifts = 0
    bad = 0
    for alpha in invs:
        qa = quotient(x, alpha)
        for beta in invs:
            qb = quotient(x, beta)
            for f in homs:
                if any(f(alpha(v)) != beta(f(v)) for v in range(x.n)):
                    continue
                descents += 1
                found = _brute_descents(f, qa, qb)
                if len(found) != 1 or found[0] != descend_map(f, qa, qb).assignment:
                    bad += 1
            for g in brute_force_homomorphisms(qa.graph, qb.graph):
                lifts += 1
                found = _brute_even_lifts(g, qa, qb)
                if len(found) != 1 or found[0] != lift_map(g, qa, qb).assignment:
                    bad += 1
    computed = {"failures": bad, "descents_checked": descents, "lifts_checked": lifts}
    verdict = PASS if bad == 0 and descents and lifts else FAIL
    return {"failures": 0}, computed, verdict


def _brute_descents(f, qa, qb):
    na, nb = qa.graph.n, qb.graph.n
    out = []
    for img in product(range(nb), repeat=na):
        if all(qb.projection[f(v)] == img[qa.projection[v]] for v in range(qa.cover.n)):
            try:
                GraphMap(qa.graph, qb.graph, img)
            except ValueError:
                continue
            out.append(tuple(img))
    return out


def _brute_even_lifts(g, qa, qb):
    x, y = qa.cover, qb.cover
    fibers = [qb.fibers[g(qa.projection[v])] for v in range(x.n)]
    out = []
    for choice in product((0, 1), repeat=x.n):
        img = tuple(fibers[v][choice[v]] for v in range(x.n))
        if any(y.parity[img[v]] != x.parity[v] for v in range(x.n)):
            continue
        if all(y.graph.adjacent(img[u], img[v]) for u, v in x.graph.edges):
            out.append(img)
    return out


# -- registry --------------------------------------------------------------------------------


CLAIMS: list[Claim] = [
    Claim("thm1.simplicity", "G_i(n,k) is simple exactly when i < k", 1, _pairs, check_simplicity),
    Claim("thm1.cover", "K_2 x G_i(n,k) is isomorphic to H(n,k)", 2, _family, check_cover),
    Claim("thm1.distinct", "G_0(n,k), ..., G_{k-1}(n,k) are pairwise non-isomorphic", 3, _pairs, check_distinct),
    Claim(
        "thm1.exhaustive",
        "every odd involution of H(n,k) is evenly conjugate to some tau x sigma_i",
        4,
        _fixed([{"n": 5, "k": 2}, {"n": 6, "k": 2}]),
        check_exhaustive,
    ),
    Claim("thm2.order", "|Aut(G_i(n,k))| = 2^i i! (n-2i)!", 5, _family, check_aut_order),
    Claim(
        "thm2.homomorphism",
        "generators of (Z_2^i x| S_i) x S_{n-2i} map onto a group of the same order inside Aut(G_i(n,k))",
        5,
        _family,
        check_aut_structure,
    ),
    Claim(
        "centralizer.order",
        "|Z_{S_n}(sigma_m)| = 2^m m! (n-2m)!",
        6,
        _fixed([{"n": n} for n in range(1, 11)]),
        check_centralizer_order,
    ),
    Claim(
        "centralizer.phi",
        "phi is an injective homomorphism onto the centralizer of (1,m+1)...(m,2m)",
        6,
        _fixed([{"m": m} for m in range(1, 5)]),
        check_phi,
    ),
    Claim(
        "mirafzal.order",
        "|Aut(H(n,k))| = 2 n!",
        7,
        _fixed([{"n": 5, "k": 2}, {"n": 6, "k": 2}, {"n": 7, "k": 2}, {"n": 7, "k": 3}]),
        check_cover_aut_order,
    ),
    Claim(
        "mirafzal.star_iso",
        "Z_2 x Aut(K(n,k)) -> Aut(H(n,k)) is onto",
        7,
        _fixed([{"n": 5, "k": 2}, {"n": 6, "k": 2}, {"n": 7, "k": 2}, {"n": 7, "k": 3}]),
        check_star_iso,
    ),
    Claim(
        "remark1.star_not_iso",
        "Z_2 x Aut(G_i(n,k)) -> Aut(H(n,k)) is not onto for i >= 1",
        7,
        lambda grid: [d for d in _family(grid) if d["i"] >= 1],
        check_star_not_iso,
    ),
    Claim(
        "prop7.equiv",
        "isomorphic quotients, even conjugacy and conjugacy of odd involutions agree",
        8,
        _fixed([{"bigraph": "H(5,2)"}, {"bigraph": "K2xC5"}]),
        check_prop7,
    ),
    Claim("prop8.order", "|even centralizer of tau x sigma_i in Aut(H(n,k))| = |Aut(G_i(n,k))|", 9, _family, check_prop8),
    Claim("thm3.chi", "chi(G_i(n,k)) = n - 2k + 2 by exact search", 10, _family, check_chi),
    Claim(
        "thm3.constructive",
        "the inductive coloring of G_i(n,k) is proper with n - 2k + 2 colors",
        11,
        lambda grid: _family(sorted(set(grid) | {(9, 3), (9, 4)})),
        check_constructive,
    ),
    Claim(
        "sec1.counterexample",
        "K_2 x (K_2 x K_n) = K_2 x (K_n + K_n) while chi(K_2 x K_n) = 2 and chi(K_n + K_n) = n",
        12,
        _fixed([{"n": 4}]),
        check_counterexample,
    ),
    Claim("lem3_3.iso", "N(G_i(n,k)) is isomorphic to N(K(n,k))", 13, _family, check_complex_iso),
    Claim(
        "thm3_2.homology",
        "reduced homology of N(K(n,k)) vanishes through dimension n - 2k - 1",
        14,
        lambda grid: _pairs(sorted({(5, 2), (6, 2), (7, 3)} | {p for p in grid if p[0] - 2 * p[1] <= 3})),
        check_kneser_homology,
    ),
    Claim(
        "thm3_2.pi1",
        "the edge-path group of N(K(n,k)) reduces to the trivial group",
        14,
        _fixed([{"n": 6, "k": 2}]),
        check_pi1,
    ),
    Claim(
        "remark_k1.unique",
        "K_2 x K_n has exactly one odd involution with simple quotient, namely the one with quotient K_n",
        15,
        _fixed([{"n": n} for n in range(4, 9)]),
        check_complete_unique,
    ),
    Claim(
        "lem5_6.unique",
        "descents and even lifts of maps between quotients exist uniquely",
        16,
        _fixed([{"bigraph": "C6"}, {"bigraph": "K2xC5"}]),
        check_lifting_uniqueness,
    ),
]

CLAIMS_BY_ID = {c.claim_id: c for c in CLAIMS}


def select_claims(only: Iterable[str] | None = None) -> list[Claim]:
    if not only:
        return list(CLAIMS)
    prefixes = list(only)
    out = [c for c in CLAIMS if any(c.claim_id == p or c.claim_id.startswith(p.rstrip(".") + ".") for p in prefixes)]
    if not out:
        raise ValueError(f"no claim matches {prefixes}")
    return out


def run_one(claim_id: str, params: dict, budget: Budget | None = None) -> VerificationReport:
    claim = CLAIMS_BY_ID[claim_id]
    budget = budget or Budget()
    start = time.perf_counter()
    note = ""
    try:
        expected, computed, verdict = claim.check(**params, budget=budget)
        if verdict is None:
            verdict = PASS if expected == computed else FAIL
    except BudgetExceeded as exc:
        expected, computed, verdict, note = None, None, INCONCLUSIVE, str(exc)
    return VerificationReport(
        claim_id, params, claim.statement, expected, computed, verdict, time.perf_counter() - start, note
    )


def plan(grid: list[tuple[int, int]], only: Iterable[str] | None = None) -> list[tuple[str, dict]]:
    return [(c.claim_id, params) for c in select_claims(only) for params in c.tasks(grid)]


def _worker(args):
    claim_id, params, budget, cache_dir = args
    cache.configure(cache_dir)
    return run_one(claim_id, params, budget)


def run_all(
    grid: list[tuple[int, int]],
    only: Iterable[str] | None = None,
    budget: Budget | None = None,
    jobs: int = 1,
) -> Iterator[VerificationReport]:
    """Yield reports in registry order, computing with up to ``jobs`` processes."""
    budget = budget or Budget()
    tasks = plan(grid, only)
    if jobs <= 1:
        for claim_id, params in tasks:
            yield run_one(claim_id, params, budget)
        return
    store = cache.active()
    cache_dir = str(store.directory) if store else None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_worker, [(c, p, budget, cache_dir) for c, p in tasks])
