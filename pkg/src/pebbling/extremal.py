"""Extremal and counterexample distributions, each bundled with the
verification queries it must pass or fail.

The constructions:

* `build_dstar`: the tight distribution realizing alpha(n, m) on J(n, m) —
  empty first segment, then alternating small/large segment loads placed at
  segment midpoints (plus one middle-class segment when m is odd, found by
  exhaustive search).  Expected: hub, v_0 and v_n all unreachable.
* `build_jahangir_lower_bound`: dstar plus a t-fold even-cycle load on the
  midpoint of segment 4; one pebble short of the closed form, expected
  unsolvable for the target v_{n/2}.
* `build_path_class_extremal`: maximum distributions on a path with exact
  endpoint-reachability profiles S, M or L.
* `build_greedy_counterexample`: the distribution on J(2, 3) (and its
  hub-cloned extensions G_m) that is solvable for v4 but not with greedy
  moves only, exhibiting non-greedy bipartite graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .distributions import Distribution, distribution, format_distribution
from .exact import classify_path_segment, max_unsolvable
from .formulas import alpha, cycle_pebbling_formula, t_pebbling_even_cycle
from .graphs import (Graph, JahangirLayout, build_jahangir, build_path,
                     clone_vertex)
from .solver import Engine, SolveQuery, SolveResult


class ExtremalError(ValueError):
    pass


@dataclass(frozen=True)
class VerificationQuery:
    root: int
    t: int
    policy: str
    expect: str  # "solvable" | "unsolvable"


@dataclass
class ExtremalCase:
    """A graph + distribution + the query outcomes that define the case."""

    graph_spec: str
    graph: Graph
    dist: Distribution
    queries: list[VerificationQuery]
    note: str
    layout: JahangirLayout | None = None

    def verify(self, budget: int | None = None, backend=None) -> list[dict]:
        """Run every verification query; each record reports expected vs
        observed status ("unknown" never counts as a match)."""
        engine = Engine(self.graph, backend=backend)
        out = []
        for q in self.queries:
            res: SolveResult = engine.solve(
                self.dist, SolveQuery(root=q.root, t=q.t, policy=q.policy),
                budget=budget)
            out.append({
                "root": self.graph.labels[q.root],
                "t": q.t,
                "policy": q.policy,
                "expected": q.expect,
                "observed": res.status,
                "ok": res.status == q.expect,
                "visited": res.visited,
                "certificate": res.certificate,
            })
        return out

    def to_json(self) -> str:
        return json.dumps({
            "graph": self.graph_spec,
            "distribution": format_distribution(self.graph, self.dist),
            "size": self.dist.size,
            "queries": [{
                "root": self.graph.labels[q.root], "t": q.t,
                "policy": q.policy, "expect": q.expect,
            } for q in self.queries],
            "note": self.note,
        }, sort_keys=True)


def _m_segment_counts(n: int, backend=None) -> list[int]:
    """Maximum distribution on the path v0..vn whose right endpoint is
    reachable but not 2-reachable while the left endpoint is unreachable.

    Found by exhaustive search (the class bound is f(C_{n+1}) - 1, which
    strictly exceeds the neither-endpoint bound, so any maximum is a true
    middle-class distribution)."""
    path = build_path(n)
    res = max_unsolvable(path, [(0, 1), (n, 2)], backend=backend)
    if not res.exhaustive:
        raise ExtremalError("middle-segment search ran out of budget")
    counts = list(res.witness_distribution.counts)
    profile = classify_path_segment(n, res.witness_distribution, backend=backend)
    if profile != "M":
        raise ExtremalError(f"middle-segment search produced profile {profile}")
    return counts


def build_dstar(n: int, m: int, backend=None) -> ExtremalCase:
    """Tight distribution for alpha(n, m): segment pattern 0,S,L,S,...,S
    (even m) or 0,S,L,...,S,L,M,S (odd m), loads at segment midpoints."""
    breakdown = alpha(n, m)  # validates n even >= 2, m >= 8
    graph, layout = build_jahangir(n, m)
    counts = [0] * graph.vertex_count
    pattern = _dstar_pattern(m)
    m_note = ""
    for i, cls in enumerate(pattern):
        seg = layout.segments[i]
        if cls == "S":
            counts[seg[n // 2]] += breakdown.s_max
        elif cls == "L":
            counts[seg[n // 2]] += breakdown.l_max
        elif cls == "M":
            local = _m_segment_counts(n, backend=backend)
            for j, c in enumerate(local):
                counts[seg[j]] += c
            m_note = (" middle segment %d realized as %s (exhaustive search,"
                      " right-endpoint solvable)." %
                      (i, {j: c for j, c in enumerate(local) if c}))
    d = distribution(graph, counts)
    if d.size != breakdown.alpha:
        raise ExtremalError(
            f"construction size {d.size} != alpha {breakdown.alpha}")
    queries = [VerificationQuery(root=r, t=1, policy="unrestricted", expect="unsolvable")
               for r in (layout.hub, 0, n)]
    return ExtremalCase(
        graph_spec=f"jahangir:{n},{m}", graph=graph, dist=d, queries=queries,
        layout=layout,
        note=(f"tight distribution meeting alpha({n},{m}) = {breakdown.alpha};"
              f" segment pattern {''.join(pattern)} with S={breakdown.s_max},"
              f" M={breakdown.m_max}, L={breakdown.l_max} at midpoints."
              + m_note))


def _dstar_pattern(m: int) -> list[str]:
    pattern = ["0"]
    for i in range(1, m):
        pattern.append("S" if i % 2 == 1 else "L")
    if m % 2 == 1:
        pattern[m - 2] = "M"
        pattern[m - 1] = "S"
    return pattern


def build_jahangir_lower_bound(n: int, m: int, backend=None) -> ExtremalCase:
    """dstar(n, m) plus the t-fold even-cycle load on the midpoint of
    segment 4; total is one less than the Jahangir closed form and the case
    expects unsolvability for root v_{n/2}."""
    from .formulas import jahangir_pebbling_formula

    base = build_dstar(n, m, backend=backend)
    extra = t_pebbling_even_cycle(n // 2 + 1, 2 ** (n // 2 + 1) - 1)
    loaded = 4 * n + n // 2  # midpoint of segment 4
    d = base.dist.with_added(base.graph, loaded, extra)
    expected_total = jahangir_pebbling_formula(n, m) - 1
    if d.size != expected_total:
        raise ExtremalError(
            f"lower-bound size {d.size} != formula - 1 = {expected_total}")
    queries = [VerificationQuery(root=n // 2, t=1, policy="unrestricted",
                                 expect="unsolvable")]
    return ExtremalCase(
        graph_spec=base.graph_spec, graph=base.graph, dist=d, queries=queries,
        layout=base.layout,
        note=(f"lower-bound witness: dstar({n},{m}) + {extra} pebbles on the"
              f" midpoint of segment 4; size {d.size} shows the pebbling"
              f" number exceeds {d.size}."))


_PROFILE_BY_CASE = {1: "S", 2: "M", 3: "L"}


def build_path_class_extremal(n: int, case: int, backend=None) -> ExtremalCase:
    """Maximum distribution on the path v0..vn with an exact endpoint
    profile: case 1 = S (neither endpoint reachable, f(C_n)-1 pebbles at
    the midpoint), case 2 = M (exactly one endpoint reachable, not
    2-reachable; placement found by search, oriented so v0 is the reachable
    endpoint), case 3 = L (both reachable, neither 2-reachable,
    f(C_{n+2})-1 at the midpoint)."""
    if n < 2 or n % 2 != 0:
        raise ExtremalError("path length must be even and >= 2")
    if case not in _PROFILE_BY_CASE:
        raise ExtremalError("case must be 1, 2 or 3")
    path = build_path(n)
    counts = [0] * (n + 1)
    if case == 1:
        counts[n // 2] = cycle_pebbling_formula(n) - 1
        queries = [VerificationQuery(0, 1, "unrestricted", "unsolvable"),
                   VerificationQuery(n, 1, "unrestricted", "unsolvable")]
    elif case == 3:
        counts[n // 2] = cycle_pebbling_formula(n + 2) - 1
        queries = [VerificationQuery(0, 1, "unrestricted", "solvable"),
                   VerificationQuery(n, 1, "unrestricted", "solvable"),
                   VerificationQuery(0, 2, "unrestricted", "unsolvable"),
                   VerificationQuery(n, 2, "unrestricted", "unsolvable")]
    else:
        counts = _m_segment_counts(n, backend=backend)[::-1]  # orient toward v0
        queries = [VerificationQuery(0, 1, "unrestricted", "solvable"),
                   VerificationQuery(0, 2, "unrestricted", "unsolvable"),
                   VerificationQuery(n, 1, "unrestricted", "unsolvable")]
    d = distribution(path, counts)
    profile = _PROFILE_BY_CASE[case]
    observed = classify_path_segment(n, d, backend=backend)
    if observed != profile:
        raise ExtremalError(f"built profile {observed}, wanted {profile}")
    return ExtremalCase(
        graph_spec=f"path:{n}", graph=path, dist=d, queries=queries,
        note=(f"maximum size-{d.size} distribution on the length-{n} path"
              f" with endpoint profile {profile}."))


def build_greedy_counterexample(kind: str = "J23", m: int = 1,
                                backend=None) -> ExtremalCase:
    """The non-greedy witness: on J(2, 3) the distribution
    v2=3, v6=3, v1=1, u=1 can reach v4, but not with greedy moves only.
    kind "Gm" clones the hub m times (clones keep one pebble each) and
    asserts the same greedy failure."""
    base, layout = build_jahangir(2, 3)
    counts = {base.vertex("v2"): 3, base.vertex("v6"): 3,
              base.vertex("v1"): 1, base.vertex("u"): 1}
    root = base.vertex("v4")
    if kind == "J23":
        graph, spec_text = base, "jahangir:2,3"
        note = ("reaching v4 requires a move that increases distance to v4,"
                " so greedy moves cannot solve this size-8 distribution.")
    elif kind == "Gm":
        if m < 1:
            raise ExtremalError("Gm needs m >= 1")
        graph = clone_vertex(base, layout.hub, m)
        spec_text = f"clone:jahangir:2,3@hub*{m}"
        for v in range(base.vertex_count, graph.vertex_count):
            counts[v] = 1
        note = (f"hub cloned {m} times, one pebble per clone (size {8 + m});"
                " greedy moves still cannot reach v4.")
    else:
        raise ExtremalError("kind must be J23 or Gm")
    d = distribution(graph, counts)
    queries = [VerificationQuery(root, 1, "greedy", "unsolvable"),
               VerificationQuery(root, 1, "unrestricted", "solvable")]
    return ExtremalCase(graph_spec=spec_text, graph=graph, dist=d,
                        queries=queries, layout=layout, note=note)


def greedy_counterexample_rotation_scan(backend=None) -> dict[int, dict]:
    """Fallback oracle for the J(2,3) labelling ambiguity: re-place the
    counterexample under every rotation of the pebble pattern around the
    cycle and record greedy/unrestricted outcomes for each."""
    graph, layout = build_jahangir(2, 3)
    engine = Engine(graph, backend=backend)
    out = {}
    for r in range(6):
        counts = [0] * graph.vertex_count
        for fig, c in ((2, 3), (6, 3), (1, 1)):
            counts[(fig - 1 + r) % 6] = c
        counts[layout.hub] = 1
        root = (3 + r) % 6
        d = distribution(graph, counts)
        greedy = engine.solve(d, SolveQuery(root=root, t=1, policy="greedy"))
        unrestricted = engine.solve(d, SolveQuery(root=root, t=1))
        out[r] = {
            "root": graph.labels[root],
            "greedy": greedy.status,
            "unrestricted": unrestricted.status,
            "counterexample": (greedy.status == "unsolvable"
                               and unrestricted.status == "solvable"),
        }
    return out
