"""Command-line surface: compute, solve, and verification campaigns.

Exit codes: 0 all checks pass, 1 verification failure, 2 unknown outcome or
budget exhaustion, 3 usage error.  `--json` emits the full machine-readable
report; the default is a human-readable table.  Reports are deterministic
given identical inputs, seed and version, except for the "timing" block.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, _backend
from .distributions import format_distribution, parse_distribution
from .exact import (DEFAULT_BUDGET, max_unsolvable, pebbling_number,
                    pebbling_number_rooted, sample_verify_solvable)
from .extremal import (build_dstar, build_greedy_counterexample,
                       build_jahangir_lower_bound, build_path_class_extremal)
from .formulas import (FormulaError, alpha, check_cycle_convexity,
                       cycle_pebbling_formula, j2m_formula,
                       jahangir_pebbling_formula, max_path_partition,
                       t_pebbling_even_cycle, tree_pebbling_formula,
                       validate_t_fold_rule)
from .graphs import GraphError, parse_family_spec, tree_catalog
from .solver import SolveQuery, is_solvable

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="pebbling", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="visited-state cap for search campaigns")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker processes for campaigns")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--backend", choices=["python", "c"], default=None,
                   help="force a solver backend (default: best available)")
    sub = p.add_subparsers(dest="cmd", required=True)

    num = sub.add_parser("number", help="brute-force pebbling number of a graph")
    num.add_argument("spec", help="graph spec, e.g. cycle:6 or jahangir:2,3")
    num.add_argument("--root", help="vertex label for the rooted number")
    num.add_argument("--t", type=int, default=1, help="fold count")
    num.add_argument("--policy", choices=["unrestricted", "greedy"],
                     default="unrestricted")
    num.add_argument("--method", choices=["auto", "enumerate", "dfs"], default="auto")

    form = sub.add_parser("formula", help="closed-form evaluations")
    form.add_argument("name", choices=["tree", "cycle", "alpha", "jahangir",
                                       "j2m", "tcycle"])
    form.add_argument("params", nargs="+",
                      help="tree: <tree-spec> <root-label>; cycle: <k>; "
                           "alpha/jahangir: <n> <m>; j2m: <m>; tcycle: <k> <t>")

    sol = sub.add_parser("solve", help="solve one distribution/root query")
    sol.add_argument("spec", help="graph spec")
    sol.add_argument("dist", help="distribution text, JSON, or a file path")
    sol.add_argument("--root", required=True, help="target vertex label")
    sol.add_argument("--t", type=int, default=1)
    sol.add_argument("--policy", choices=["unrestricted", "greedy"],
                     default="unrestricted")

    ver = sub.add_parser("verify", help="named verification suites")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("--max-k", type=int, default=8, help="cycles: largest cycle")
    ver.add_argument("--max-vertices", type=int, default=8, help="trees: catalog size")
    ver.add_argument("--max-n", type=int, default=12, help="lemma28: largest n")
    ver.add_argument("--max-m", type=int, default=3, help="gm: largest clone count")
    ver.add_argument("--n", type=int, default=2, help="Jahangir segment length")
    ver.add_argument("--m", type=int, default=8, help="Jahangir segment count")
    ver.add_argument("--size", type=int, default=None,
                     help="thm210-sample: distribution size (default: closed form)")
    ver.add_argument("--trials", type=int, default=10000,
                     help="thm210-sample: number of random distributions")
    return p


# ---------------------------------------------------------------------------
# command implementations, each returning (results_dict, exit_code)
# ---------------------------------------------------------------------------


def _graph_for(spec_text: str):
    spec = parse_family_spec(spec_text)
    return spec.build_with_layout()


def cmd_number(args) -> tuple[dict, int]:
    g, _ = _graph_for(args.spec)
    if args.root is not None:
        root = g.vertex(args.root)
        res = pebbling_number_rooted(g, root, t=args.t, policy=args.policy,
                                     method=args.method, budget=args.budget,
                                     threads=args.threads, backend=args.backend)
    else:
        res = pebbling_number(g, t=args.t, policy=args.policy, method=args.method,
                              budget=args.budget, threads=args.threads,
                              backend=args.backend)
    results = {
        "graph": args.spec,
        "root": args.root,
        "t": args.t,
        "policy": args.policy,
        "value": res.value,
        "exhaustive": res.exhaustive,
        "provenance": "exhaustive-search" if res.exhaustive else "partial-search",
        "method": res.method,
        "visited": res.visited,
        "witnessing_distribution":
            None if res.witness_distribution is None
            else format_distribution(g, res.witness_distribution),
    }
    if res.per_root:
        results["per_root"] = {g.labels[r]: v for r, v in res.per_root.items()}
    return results, EXIT_PASS if res.exhaustive else EXIT_UNKNOWN


def cmd_formula(args) -> tuple[dict, int]:
    name, params = args.name, args.params
    results: dict = {"formula": name, "params": params}
    try:
        if name == "cycle":
            (k,) = map(int, params)
            results["value"] = cycle_pebbling_formula(k)
            results["provenance"] = "convention" if k == 2 else "paper-theorem"
        elif name == "tree":
            spec_text, root_label = params
            g, _ = _graph_for(spec_text)
            root = g.vertex(root_label)
            partition = max_path_partition(g, root)
            results["value"] = tree_pebbling_formula(g, root)
            results["partition"] = list(partition.sizes)
            results["provenance"] = "paper-theorem"
        elif name == "alpha":
            n, m = map(int, params)
            br = alpha(n, m)
            results["value"] = br.alpha
            results["breakdown"] = {"S": br.s_max, "M": br.m_max, "L": br.l_max}
            results["provenance"] = "paper-theorem"
        elif name == "jahangir":
            n, m = map(int, params)
            results["value"] = jahangir_pebbling_formula(n, m)
            br = alpha(n, m)
            results["breakdown"] = {
                "t_fold_term": t_pebbling_even_cycle(n // 2 + 1, 2 ** (n // 2 + 1) - 1),
                "alpha": br.alpha,
            }
            results["provenance"] = "external-validated"
        elif name == "j2m":
            (m,) = map(int, params)
            results["value"] = j2m_formula(m)
            results["provenance"] = "paper-theorem"
        elif name == "tcycle":
            k, t = map(int, params)
            results["value"] = t_pebbling_even_cycle(k, t)
            results["cycle"] = 2 * k
            results["provenance"] = "external-validated"
    except (ValueError, GraphError) as e:
        raise UsageError(str(e)) from None
    return results, EXIT_PASS


def cmd_solve(args) -> tuple[dict, int]:
    g, _ = _graph_for(args.spec)
    text = args.dist
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    d = parse_distribution(g, text)
    q = SolveQuery(root=g.vertex(args.root), t=args.t, policy=args.policy)
    res = is_solvable(g, d, q, budget=args.budget, backend=args.backend)
    results = {
        "graph": args.spec,
        "distribution": format_distribution(g, d),
        "root": args.root,
        "t": args.t,
        "policy": args.policy,
        "status": res.status,
        "certificate": res.certificate,
        "visited": res.visited,
        "witness": None if res.witness is None else res.witness.serialize(g),
    }
    code = EXIT_PASS if res.status in ("solvable", "unsolvable") else EXIT_UNKNOWN
    return results, code


# ---------------------------------------------------------------------------
# verify suites (1:1 with the acceptance criteria they back)
# ---------------------------------------------------------------------------


def _check(name: str, ok: bool, unknown: bool = False, **details) -> dict:
    status = "unknown" if unknown else ("pass" if ok else "fail")
    return {"name": name, "status": status, **details}


def suite_cycles(args) -> list[dict]:
    checks = []
    for k in range(3, args.max_k + 1):
        res = pebbling_number(parse_family_spec(f"cycle:{k}").build(),
                              budget=args.budget, backend=args.backend)
        expect = cycle_pebbling_formula(k)
        checks.append(_check(f"cycle:{k}", res.exhaustive and res.value == expect,
                             unknown=not res.exhaustive,
                             brute_force=res.value, formula=expect))
    return checks


def suite_trees(args) -> list[dict]:
    checks = []
    for g in tree_catalog(args.max_vertices):
        ok, unknown = True, False
        detail = {}
        for root in range(g.vertex_count):
            res = pebbling_number_rooted(g, root, budget=args.budget,
                                         backend=args.backend)
            expect = tree_pebbling_formula(g, root)
            detail[g.labels[root]] = {"brute_force": res.value, "formula": expect}
            unknown = unknown or not res.exhaustive
            ok = ok and res.exhaustive and res.value == expect
        spec = "tree:" + ",".join(
            str(p) for p in _parents_of(g)) if g.vertex_count > 1 else "tree:"
        checks.append(_check(spec, ok, unknown=unknown, roots=detail))
    return checks


def _parents_of(g) -> list[int]:
    parent = {0: -1}
    order = [0]
    for v in order:
        for w in g.adjacency[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    return [parent[v] for v in range(1, g.vertex_count)]


def suite_lemma27(args) -> list[dict]:
    from .graphs import build_path

    checks = []
    for n in (2, 4):
        path = build_path(n)
        bounds = [
            ("S", [(0, 1), (n, 1)], cycle_pebbling_formula(n) - 1),
            ("M", [(0, 1), (n, 2)], cycle_pebbling_formula(n + 1) - 1),
            ("L", [(0, 2), (n, 2)], cycle_pebbling_formula(n + 2) - 1),
        ]
        for label, roots, expect in bounds:
            res = max_unsolvable(path, roots, budget=args.budget,
                                 backend=args.backend)
            checks.append(_check(
                f"path:{n} profile {label}",
                res.exhaustive and res.value == expect,
                unknown=not res.exhaustive,
                maximum=res.value, expected=expect,
                witness=format_distribution(path, res.witness_distribution)))
    return checks


def suite_lemma28(args) -> list[dict]:
    return [_check(f"n={r['n']}", r["holds"], lhs=r["lhs"], rhs=r["rhs"])
            for r in check_cycle_convexity(range(3, args.max_n + 1))]


def suite_lemma29(args) -> list[dict]:
    checks = []
    for n in (2, 4, 6):
        for m in range(8, 13):
            case = build_dstar(n, m, backend=args.backend)
            expect = alpha(n, m).alpha
            checks.append(_check(f"|dstar({n},{m})| = alpha", case.dist.size == expect,
                                 size=case.dist.size, alpha=expect))
    for m in (8, 9):
        case = build_dstar(2, m, backend=args.backend)
        for rec in case.verify(budget=min(args.budget, 10**7), backend=args.backend):
            checks.append(_check(
                f"dstar(2,{m}) root {rec['root']} unreachable", rec["ok"],
                unknown=rec["observed"] == "unknown", observed=rec["observed"],
                visited=rec["visited"]))
    return checks


def suite_thm23(args) -> list[dict]:
    case = build_greedy_counterexample("J23", backend=args.backend)
    checks = []
    for rec in case.verify(budget=args.budget, backend=args.backend):
        checks.append(_check(
            f"J(2,3) root {rec['root']} {rec['policy']} -> {rec['expected']}",
            rec["ok"], unknown=rec["observed"] == "unknown",
            observed=rec["observed"]))
    return checks


def suite_thm210_lower(args) -> list[dict]:
    case = build_jahangir_lower_bound(args.n, args.m, backend=args.backend)
    checks = []
    for rec in case.verify(budget=args.budget, backend=args.backend):
        checks.append(_check(
            f"lower-bound witness size {case.dist.size} root {rec['root']}",
            rec["ok"], unknown=rec["observed"] == "unknown",
            observed=rec["observed"], visited=rec["visited"],
            certificate=rec["certificate"]))
    return checks


def suite_thm210_sample(args) -> list[dict]:
    g, _ = _graph_for(f"jahangir:{args.n},{args.m}")
    size = args.size if args.size is not None else jahangir_pebbling_formula(args.n, args.m)
    report = sample_verify_solvable(g, size, trials=args.trials, seed=args.seed,
                                    budget=args.budget, threads=args.threads,
                                    backend=args.backend)
    return [_check(
        f"{args.trials} random size-{size} distributions solvable",
        not report.failures and not report.unknowns,
        unknown=bool(report.unknowns) and not report.failures,
        failures=len(report.failures), unknowns=len(report.unknowns),
        visited=report.visited)]


def suite_gm(args) -> list[dict]:
    checks = []
    for m in range(1, args.max_m + 1):
        case = build_greedy_counterexample("Gm", m=m, backend=args.backend)
        for rec in case.verify(budget=args.budget, backend=args.backend):
            checks.append(_check(
                f"G_{m} size {case.dist.size} root {rec['root']}"
                f" {rec['policy']} -> {rec['expected']}",
                rec["ok"], unknown=rec["observed"] == "unknown",
                observed=rec["observed"]))
    g1 = build_greedy_counterexample("Gm", m=1, backend=args.backend)
    res = pebbling_number(g1.graph, method="enumerate", budget=args.budget,
                          threads=args.threads, backend=args.backend)
    checks.append(_check(
        "f(G_1) computed by full enumeration (reported, not asserted)",
        res.exhaustive, unknown=not res.exhaustive, value=res.value,
        witnessing_distribution=format_distribution(
            g1.graph, res.witness_distribution)))
    return checks


SUITES = {
    "cycles": suite_cycles,
    "trees": suite_trees,
    "lemma27": suite_lemma27,
    "lemma28": suite_lemma28,
    "lemma29": suite_lemma29,
    "thm23": suite_thm23,
    "thm210-lower": suite_thm210_lower,
    "thm210-sample": suite_thm210_sample,
    "gm": suite_gm,
}


def cmd_verify(args) -> tuple[dict, int]:
    checks = SUITES[args.suite](args)
    statuses = {c["status"] for c in checks}
    if "fail" in statuses:
        code = EXIT_FAIL
    elif "unknown" in statuses:
        code = EXIT_UNKNOWN
    else:
        code = EXIT_PASS
    summary = {
        "suite": args.suite,
        "checks": checks,
        "passed": sum(1 for c in checks if c["status"] == "pass"),
        "failed": sum(1 for c in checks if c["status"] == "fail"),
        "unknown": sum(1 for c in checks if c["status"] == "unknown"),
    }
    return summary, code


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _render_human(report: dict) -> str:
    lines = []
    results = report["results"]
    if "checks" in results:
        for c in results["checks"]:
            mark = {"pass": "PASS", "fail": "FAIL", "unknown": "????"}[c["status"]]
            detail = ", ".join(f"{k}={v}" for k, v in c.items()
                               if k not in ("name", "status") and not isinstance(v, dict))
            lines.append(f"[{mark}] {c['name']}" + (f"  ({detail})" if detail else ""))
        lines.append(f"passed={results['passed']} failed={results['failed']}"
                     f" unknown={results['unknown']}")
    else:
        for k, v in results.items():
            lines.append(f"{k}: {v}")
    lines.append(f"elapsed: {report['timing']['elapsed_s']:.3f}s")
    return "\n".join(lines)


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        if args.cmd == "number":
            results, code = cmd_number(args)
        elif args.cmd == "formula":
            results, code = cmd_formula(args)
        elif args.cmd == "solve":
            results, code = cmd_solve(args)
        else:
            results, code = cmd_verify(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, FormulaError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": [args.cmd] + [a for a in (argv if argv is not None else sys.argv[1:])
                                 if a != args.cmd],
        "version": __version__,
        "backend": args.backend or _backend.backend_name(),
        "seed": args.seed,
        "budget": args.budget,
        "results": results,
        "timing": {"elapsed_s": time.perf_counter() - t0},
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_render_human(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
