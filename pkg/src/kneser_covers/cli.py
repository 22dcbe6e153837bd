"""Command-line entry point: build, classify, aut, chroma, ncomplex, verify-all.

Exit codes: 0 pass, 1 a verdict failed, 2 usage or range error,
3 a budget was exhausted and the answer is inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import cache
from .canon import BudgetExceeded
from .coloring import chromatic_number_exact, inductive_coloring, is_proper, lovasz_bound
from .cover import are_evenly_conjugate, decompose_odd_involution, enumerate_odd_involutions
from .family import (
    bipartite_kneser,
    check_index,
    g_graph,
    orbit_label,
    sigma,
    simplicity_threshold,
    tau_times,
)
from .graph import format_subset, kneser_graph
from .ncomplex import complexes_isomorphic, connectivity_evidence, neighborhood_complex
from .reports import FAIL, INCONCLUSIVE, PASS, Budget, grid_pairs, point_involution_class, run_all
from .symmetry import automorphism_group, canonical_form, centralizer_order_formula

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _budget(args) -> Budget:
    return Budget(args.budget_vertices, args.budget_nodes, args.budget_solver, args.budget_simplices)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, rows: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        _emit(json.dumps(rows, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(text_lines) + "\n", args.out)


def _verdict_code(verdict: str) -> int:
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_BUDGET}[verdict]


def _cert_digest(cf) -> str:
    return hashlib.sha256(repr(cf.certificate).encode()).hexdigest()[:16]


# -- commands ---------------------------------------------------------------------


def cmd_build(args) -> int:
    n, k, i = args.n, args.k, args.i
    if args.family == "g":
        if i is None:
            raise ValueError("build g needs n k i")
        check_index(n, k, i)
        g = g_graph(n, k, i)
        labels = [orbit_label(n, k, i, v) for v in range(g.n)]
        name = f"G{i}_{n}_{k}"
        parity = None
    elif args.family == "kneser":
        check_index(n, k)
        g = kneser_graph(n, k)
        labels = [format_subset(s) for s in g.labels]
        name = f"K_{n}_{k}"
        parity = None
    else:
        check_index(n, k)
        x, _ = bipartite_kneser(n, k)
        g = x.graph
        labels = [f"({layer},{format_subset(s)})" for layer, s in g.labels]
        name = f"H_{n}_{k}"
        parity = list(x.parity)
    if args.format == "json":
        d = {"name": name, "n": g.n, "edges": [list(e) for e in g.edges], "labels": labels}
        if parity is not None:
            d["parity"] = parity
        text = json.dumps(d, sort_keys=True) + "\n"
    elif args.format == "dot":
        text = g.with_labels(labels).to_dot(name, label_fn=str)
    else:
        text = g.to_dimacs(comment=name)
    _emit(text, args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    n, k = args.n, args.k
    check_index(n, k)
    budget = _budget(args)
    simple = simplicity_threshold(n, k)
    rows = []
    lines = [f"H({n},{k}): quotients by tau x sigma_i", "i  simple  |V|  |E|  certificate"]
    for i, ok in enumerate(simple):
        g = g_graph(n, k, i)
        cert = _cert_digest(canonical_form(g, **budget.canon))
        rows.append({"i": i, "simple": ok, "vertices": g.n, "edges": g.num_edges, "certificate": cert})
        lines.append(f"{i}  {'yes' if ok else 'no ':3}     {g.n}  {g.num_edges}  {cert}")
    result = {"n": n, "k": k, "classes": rows, "simple_classes": sum(simple)}
    lines.append(f"simple classes: {sum(simple)}, non-simple: {len(simple) - sum(simple)}")
    if args.exhaustive:
        x, _ = bipartite_kneser(n, k)
        invs = enumerate_odd_involutions(x, automorphism_group(x.graph, **budget.canon))
        kn = kneser_graph(n, k)
        counts = [0] * len(simple)
        unmatched = 0
        for alpha in invs:
            _, prime = decompose_odd_involution(kn, alpha, check_star=False)
            i = point_involution_class(n, k, prime)
            if are_evenly_conjugate(x, alpha, tau_times(n, k, sigma(i, n)), **budget.canon) is None:
                unmatched += 1
            counts[i] += 1
        result["exhaustive"] = {
            "odd_involutions": len(invs),
            "classes": sum(1 for c in counts if c),
            "class_sizes": counts,
            "unmatched": unmatched,
        }
        lines.append(
            f"odd involutions: {len(invs)}, even-conjugacy classes: {sum(1 for c in counts if c)}, "
            f"sizes {counts}, unmatched {unmatched}"
        )
        if unmatched:
            _emit_report(args, result, lines)
            return EXIT_FAIL
    _emit_report(args, result, lines)
    return EXIT_OK


def cmd_aut(args) -> int:
    n, k, i = args.n, args.k, args.i
    check_index(n, k, i)
    if i >= k:
        raise ValueError("aut needs i < k")
    computed = automorphism_group(g_graph(n, k, i), **_budget(args).canon).order
    formula = centralizer_order_formula(n, i)
    verdict = PASS if computed == formula else FAIL
    rows = {"n": n, "k": k, "i": i, "computed": computed, "formula": formula, "verdict": verdict}
    _emit_report(args, rows, [f"|Aut(G_{i}({n},{k}))| = {computed}, 2^{i} {i}! {n - 2 * i}! = {formula}: {verdict}"])
    return _verdict_code(verdict)


def cmd_chroma(args) -> int:
    n, k, i = args.n, args.k, args.i
    check_index(n, k, i)
    if i >= k:
        raise ValueError("chroma needs i < k")
    target = n - 2 * k + 2
    g = g_graph(n, k, i)
    rows = {"n": n, "k": k, "i": i, "expected": target}
    lines = []
    verdicts = []
    if args.mode in ("exact", "both"):
        try:
            res = chromatic_number_exact(g, node_budget=args.budget_solver)
            rows["exact"] = res.value
            rows["clique_bound"] = res.clique_bound
            verdicts.append(PASS if res.value == target else FAIL)
            lines.append(f"exact chi = {res.value}")
        except BudgetExceeded as exc:
            rows["exact"] = None
            rows["note"] = str(exc)
            verdicts.append(INCONCLUSIVE)
            lines.append(f"exact chi: inconclusive ({exc})")
    if args.mode in ("constructive", "both"):
        col = inductive_coloring(n, k, i)
        ok = is_proper(g, col)
        rows["constructive"] = col.palette_size
        rows["constructive_proper"] = ok
        verdicts.append(PASS if ok and col.palette_size == target else FAIL)
        lines.append(f"constructive palette = {col.palette_size}, proper: {ok}")
        if args.coloring_out:
            Path(args.coloring_out).write_text(col.to_sol())
    verdict = FAIL if FAIL in verdicts else INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS
    rows["verdict"] = verdict
    lines.append(f"expected n-2k+2 = {target}: {verdict}")
    _emit_report(args, rows, lines)
    return _verdict_code(verdict)


def cmd_ncomplex(args) -> int:
    n, k, i = args.n, args.k, args.i
    check_index(n, k, i)
    if i >= k:
        raise ValueError("ncomplex needs i < k")
    budget = _budget(args)
    depth = args.depth if args.depth is not None else n - 2 * k - 1
    try:
        nc = neighborhood_complex(g_graph(n, k, i))
        iso = complexes_isomorphic(nc, neighborhood_complex(kneser_graph(n, k)), **budget.canon)
        ev = connectivity_evidence(nc, depth, budget.simplices)
    except BudgetExceeded as exc:
        _emit_report(args, {"verdict": INCONCLUSIVE, "note": str(exc)}, [f"inconclusive: {exc}"])
        return EXIT_BUDGET
    certified = depth if ev.verdict == "proved" else min(depth, 0) if ev.connected else -1
    rows = {
        "n": n,
        "k": k,
        "i": i,
        "depth": depth,
        "isomorphic_to_kneser_complex": iso is not None,
        "evidence": ev.to_dict(),
        "certified_connectivity": certified,
        "chromatic_lower_bound": lovasz_bound(certified),
    }
    lines = [f"N(G_{i}({n},{k})) ~ N(K({n},{k})): {'yes' if iso is not None else 'no'}"]
    if ev.homology is not None:
        for j, (b, t) in enumerate(zip(ev.homology.betti, ev.homology.torsion)):
            lines.append(f"reduced H_{j}: rank {b}, torsion {t}")
    lines.append(f"pi_1: {ev.pi1}; evidence: {ev.verdict}")
    lines.append(f"chromatic lower bound from certified connectivity {certified}: {lovasz_bound(certified)}")
    _emit_report(args, rows, lines)
    if iso is None or ev.verdict == "refuted":
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify_all(args) -> int:
    grid = grid_pairs(*args.grid)
    only = args.only.split(",") if args.only else None
    counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rep in run_all(grid, only, _budget(args), args.jobs):
            counts[rep.verdict] += 1
            out.write(rep.to_json(with_time=not args.no_time) + "\n")
            out.flush()
    finally:
        if args.out:
            out.close()
    print(
        f"pass {counts[PASS]}, fail {counts[FAIL]}, inconclusive {counts[INCONCLUSIVE]}",
        file=sys.stderr,
    )
    return EXIT_FAIL if counts[FAIL] else EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    budget = Budget()
    p = argparse.ArgumentParser(prog="kneser-covers", description=__doc__.splitlines()[0])
    p.add_argument("--cache-dir", default=None, help=f"canonical-form cache directory (env {cache.ENV_VAR})")
    p.add_argument("--budget-vertices", type=int, default=budget.vertices)
    p.add_argument("--budget-nodes", type=int, default=budget.canon_nodes, help="canonical search node cap")
    p.add_argument("--budget-solver", type=int, default=budget.solver_nodes, help="coloring search node cap")
    p.add_argument("--budget-simplices", type=int, default=budget.simplices)
    sub = p.add_subparsers(dest="command", required=True)

    def report_cmd(name, help_text, with_i=True):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("n", type=int)
        s.add_argument("k", type=int)
        if with_i:
            s.add_argument("i", type=int)
        s.add_argument("--format", choices=["text", "json"], default="text")
        s.add_argument("--out", default=None)
        return s

    s = sub.add_parser("build", help="write K(n,k), H(n,k) or G_i(n,k)")
    s.add_argument("family", choices=["kneser", "bipartite", "g"])
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    s.add_argument("i", type=int, nargs="?")
    s.add_argument("--format", choices=["json", "dot", "dimacs"], default="json")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_build)

    s = report_cmd("classify", "quotients of H(n,k) by tau x sigma_i", with_i=False)
    s.add_argument("--exhaustive", action="store_true", help="enumerate every odd involution")
    s.set_defaults(func=cmd_classify)

    report_cmd("aut", "automorphism group order of G_i(n,k)").set_defaults(func=cmd_aut)

    s = report_cmd("chroma", "chromatic number of G_i(n,k)")
    s.add_argument("--mode", choices=["exact", "constructive", "both"], default="both")
    s.add_argument("--coloring-out", default=None, help="write the constructive coloring (.sol)")
    s.set_defaults(func=cmd_chroma)

    s = report_cmd("ncomplex", "neighborhood complex of G_i(n,k)")
    s.add_argument("--depth", type=int, default=None, help="connectivity level to test (default n-2k-1)")
    s.set_defaults(func=cmd_ncomplex)

    s = sub.add_parser("verify-all", help="run the claim registry as JSON lines")
    s.add_argument("--grid", type=int, nargs=2, default=[7, 3], metavar=("MAX_N", "MAX_K"))
    s.add_argument("--only", default=None, help="comma-separated claim ids or prefixes")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", default=None)
    s.add_argument("--no-time", action="store_true", help="omit wall_time for byte-stable output")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_dir = args.cache_dir or os.environ.get(cache.ENV_VAR)
    cache.configure(cache_dir)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        cache.configure(None)


if __name__ == "__main__":
    sys.exit(main())
