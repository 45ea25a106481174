"""Brute-force exact pebbling numbers and extremal-distribution search.

Everything here reduces to exhaustive work driven through the solver:

* `pebbling_number_rooted` / `pebbling_number`: smallest k such that every
  size-k distribution is t-fold solvable.  Two interchangeable methods
  (cross-checked in tests) both rest on downward-closedness of
  unsolvability (removing a pebble never makes a distribution solvable):

  - "enumerate": scan every size-k distribution for k = 1, 2, ...; the
    first k with no unsolvable distribution is the answer.
  - "dfs": depth-first search for a maximum unsolvable distribution over
    per-vertex-capped count vectors (any unsolvable D has
    D(v) < t * 2^dist(v, root), else v's pile alone solves);
    the answer is 1 + max.  This is what makes trees with pebbling
    numbers in the hundreds feasible.

* `max_unsolvable`: maximum distribution unsolvable for every query in a
  set, with optional support constraints; same capped DFS.

* `sample_verify_solvable`: randomized spot-check that size-k distributions
  are solvable, for instances beyond exhaustive enumeration.

Budgets are visited-solver-state caps.  Exceeding one never produces a
wrong value: campaigns return explicit partial results.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ._kernel_py import STATUS_SOLVABLE, STATUS_UNKNOWN, STATUS_UNSOLVABLE
from .distributions import (Distribution, composition_count, compositions,
                            distribution, unrank_composition)
from .graphs import Graph, build_path, distances_from
from .solver import BudgetExceeded, Engine, SolveQuery

DEFAULT_BUDGET = 10**8
# auto method: switch to DFS when a maximum unsolvable distribution could
# exceed this size (enumerating all compositions of larger sizes explodes)
ENUMERATION_SIZE_LIMIT = 24


class ExactError(ValueError):
    pass


@dataclass
class ExactResult:
    """A computed exact value with its witnessing extremal distribution."""

    value: int
    witness_distribution: Distribution | None
    exhaustive: bool
    method: str = ""
    visited: int = 0
    elapsed: float = 0.0
    per_root: dict[int, int] | None = None

    def __repr__(self):
        flag = "exhaustive" if self.exhaustive else "PARTIAL (lower bound)"
        return f"ExactResult({self.value}, {flag}, method={self.method})"


@dataclass
class SampleReport:
    """Outcome of a randomized solvability campaign."""

    trials: int
    size: int
    seed: int
    failures: list[tuple[Distribution, int]] = field(default_factory=list)
    unknowns: list[tuple[Distribution, int]] = field(default_factory=list)
    visited: int = 0
    elapsed: float = 0.0

    @property
    def clean(self) -> bool:
        return not self.failures and not self.unknowns


class _Budget:
    """Mutable campaign-wide state budget."""

    def __init__(self, limit: int | None):
        self.limit = DEFAULT_BUDGET if limit is None else limit
        self.used = 0

    @property
    def remaining(self) -> int:
        return max(self.limit - self.used, 0)

    def charge(self, states: int) -> None:
        self.used += states

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit


def _caps_for(g: Graph, queries: list[SolveQuery]) -> list[int]:
    caps = []
    dists = {q.root: distances_from(g, q.root) for q in queries}
    for v in range(g.vertex_count):
        caps.append(min(q.t * (1 << dists[q.root][v]) - 1 for q in queries))
    return caps


# ---------------------------------------------------------------------------
# Method "enumerate": the k-loop over full composition scans
# ---------------------------------------------------------------------------


def _scan_size_k(engine: Engine, q: SolveQuery, k: int, support: list[int],
                 budget: _Budget, threads: int = 1):
    """First (lex order) unsolvable size-k distribution on `support`, or None.

    Returns (counts_or_None, complete).  complete=False means the budget ran
    out before the scan finished.
    """
    n = engine.graph.vertex_count
    parts = len(support)
    total = composition_count(k, parts)
    if threads > 1 and total >= 4 * threads:
        return _scan_size_k_parallel(engine, q, k, support, budget, threads)
    counts = [0] * n
    for comp in compositions(k, parts):
        if budget.exhausted:
            return None, False
        for v, c in zip(support, comp):
            counts[v] = c
        status, _, visited = engine.solve_counts(counts, q, budget=budget.remaining)
        budget.charge(visited)
        for v in support:
            counts[v] = 0
        if status == STATUS_UNSOLVABLE:
            out = [0] * n
            for v, c in zip(support, comp):
                out[v] = c
            return out, True
        if status == STATUS_UNKNOWN:
            return None, False
    return None, True


def _scan_chunk(args):
    (g, q, k, support, lo, hi, budget_states) = args
    engine = Engine(g)
    parts = len(support)
    n = g.vertex_count
    comp = list(unrank_composition(lo, k, parts))
    counts = [0] * n
    used = 0
    for rank in range(lo, hi):
        for v, c in zip(support, comp):
            counts[v] = c
        status, _, visited = engine.solve_counts(counts, q, budget=budget_states - used)
        used += visited
        for v in support:
            counts[v] = 0
        if status == STATUS_UNSOLVABLE:
            return rank, list(comp), used, True
        if status == STATUS_UNKNOWN or used >= budget_states:
            return None, None, used, False
        _composition_successor(comp)
    return None, None, used, True


def _composition_successor(c: list[int]) -> None:
    i = len(c) - 1
    while c[i] == 0:
        i -= 1
    if i == 0:
        return
    v = c[i]
    c[i] = 0
    c[i - 1] += 1
    c[-1] = v - 1


def _scan_size_k_parallel(engine: Engine, q: SolveQuery, k: int, support, budget, threads):
    g = engine.graph
    n = g.vertex_count
    total = composition_count(k, len(support))
    chunk = (total + threads - 1) // threads
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    per_chunk_budget = max(budget.remaining // len(bounds), 1)
    jobs = [(g, q, k, list(support), lo, hi, per_chunk_budget) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_scan_chunk, jobs))
    complete = True
    best = None
    for rank, comp, used, ok in results:
        budget.charge(used)
        complete = complete and ok
        if rank is not None and (best is None or rank < best[0]):
            best = (rank, comp)
    if best is not None:
        out = [0] * n
        for v, c in zip(support, best[1]):
            out[v] = c
        return out, True
    return None, complete


def _rooted_enumerate(engine: Engine, q: SolveQuery, support, budget, threads) -> ExactResult:
    g = engine.graph
    support = sorted(support if support is not None else range(g.vertex_count))
    last_unsolvable = None
    k = 1
    while True:
        found, complete = _scan_size_k(engine, q, k, support, budget, threads)
        if found is None:
            witness = (distribution(g, last_unsolvable)
                       if last_unsolvable is not None else None)
            return ExactResult(value=k, witness_distribution=witness,
                               exhaustive=complete, method="enumerate")
        last_unsolvable = found
        k += 1


# ---------------------------------------------------------------------------
# Method "dfs": maximum-unsolvable search over capped count vectors
# ---------------------------------------------------------------------------


def _max_unsolvable_dfs(g: Graph, queries: list[SolveQuery], caps: list[int],
                        budget: _Budget, backend=None):
    """DFS over capped count vectors for a maximum distribution that is
    unsolvable for every query.  Returns (best_size, best_vector, complete).

    Vertices are assigned far-to-near (sum of query distances); a prefix
    that is already solvable for some query is pruned (extensions only add
    pebbles, and solvability is monotone), as is any prefix that cannot
    beat the incumbent even at full remaining caps.
    """
    n = g.vertex_count
    engine = Engine(g, backend=backend)
    dist_sum = [0] * n
    for q in queries:
        d = engine.distances(q.root)
        for v in range(n):
            dist_sum[v] += d[v]
    order = sorted((v for v in range(n) if caps[v] > 0),
                   key=lambda v: (-dist_sum[v], v))
    suffix_caps = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_caps[i] = suffix_caps[i + 1] + caps[order[i]]

    best_size = 0
    best_vec = [0] * n
    cur = [0] * n
    complete = True

    def unsolvable_for_all(counts) -> bool:
        for q in queries:
            status, _, visited = engine.solve_counts(counts, q, budget=budget.remaining)
            budget.charge(visited)
            if status == STATUS_SOLVABLE:
                return False
            if status == STATUS_UNKNOWN:
                raise BudgetExceeded
        return True

    # iterative DFS: stack of (position, count to try next)
    def rec(i: int, acc: int) -> None:
        nonlocal best_size, best_vec, complete
        if acc > best_size:
            best_size = acc
            best_vec = list(cur)
        if i == len(order) or acc + suffix_caps[i] <= best_size:
            return
        v = order[i]
        for c in range(caps[v], -1, -1):
            cur[v] = c
            if c == 0:
                rec(i + 1, acc)
            else:
                if budget.exhausted:
                    complete = False
                    break
                try:
                    ok = unsolvable_for_all(cur)
                except BudgetExceeded:
                    complete = False
                    break
                if ok:
                    rec(i + 1, acc + c)
        cur[v] = 0

    # the all-zero assignment is unsolvable for every query since t >= 1
    rec(0, 0)
    return best_size, best_vec, complete


def _rooted_dfs(engine: Engine, q: SolveQuery, support, budget) -> ExactResult:
    g = engine.graph
    caps = _caps_for(g, [q])
    if support is not None:
        allowed = set(support)
        caps = [c if v in allowed else 0 for v, c in enumerate(caps)]
    size, vec, complete = _max_unsolvable_dfs(g, [q], caps, budget,
                                              backend=engine.backend)
    witness = distribution(g, vec) if size > 0 else distribution(g)
    return ExactResult(value=size + 1, witness_distribution=witness,
                       exhaustive=complete, method="dfs")


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def pebbling_number_rooted(g: Graph, root: int, t: int = 1,
                           policy: str = "unrestricted", method: str = "auto",
                           support=None, budget: int | None = None,
                           threads: int = 1, backend=None) -> ExactResult:
    """Exact rooted pebbling number: least k such that every size-k
    distribution (on `support`, default all vertices) is t-fold
    root-solvable under the policy."""
    q = SolveQuery(root=root, t=t, policy=policy)
    b = _Budget(budget)
    engine = Engine(g, backend=backend)
    if method == "auto":
        cap_total = sum(_caps_for(g, [q]))
        method = "dfs" if cap_total > ENUMERATION_SIZE_LIMIT else "enumerate"
    t0 = time.perf_counter()
    if method == "enumerate":
        result = _rooted_enumerate(engine, q, support, b, threads)
    elif method == "dfs":
        result = _rooted_dfs(engine, q, support, b)
    else:
        raise ExactError(f"unknown method {method!r}")
    result.visited = b.used
    result.elapsed = time.perf_counter() - t0
    return result


def pebbling_number(g: Graph, t: int = 1, policy: str = "unrestricted",
                    method: str = "auto", budget: int | None = None,
                    threads: int = 1, backend=None) -> ExactResult:
    """Exact pebbling number: max of the rooted values over all roots."""
    t0 = time.perf_counter()
    b = _Budget(budget)
    per_root: dict[int, int] = {}
    best: ExactResult | None = None
    roots = list(range(g.vertex_count))
    if threads > 1 and g.vertex_count > 1:
        jobs = [(g, r, t, policy, method, b.limit // len(roots) or 1, backend)
                for r in roots]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_rooted_job, jobs))
    else:
        results = []
        for r in roots:
            results.append(pebbling_number_rooted(
                g, r, t=t, policy=policy, method=method,
                budget=b.remaining, backend=backend))
            b.charge(results[-1].visited)
    exhaustive = True
    visited = 0
    for r, res in zip(roots, results):
        per_root[r] = res.value
        visited += res.visited
        exhaustive = exhaustive and res.exhaustive
        if best is None or res.value > best.value:
            best = res
    return ExactResult(value=best.value, witness_distribution=best.witness_distribution,
                       exhaustive=exhaustive, method=best.method, visited=visited,
                       elapsed=time.perf_counter() - t0, per_root=per_root)


def _rooted_job(args):
    g, r, t, policy, method, budget, backend = args
    return pebbling_number_rooted(g, r, t=t, policy=policy, method=method,
                                  budget=budget, backend=backend)


def max_unsolvable(g: Graph, roots, t=1, support=None, zero=None,
                   budget: int | None = None, backend=None) -> ExactResult:
    """Maximum-size distribution unsolvable for every root in `roots`.

    `roots` is a vertex iterable, or (vertex, fold) pairs for per-root fold
    counts (a pair (r, 2) demands r not be 2-reachable).  `support` limits
    where pebbles may sit; `zero` forces named vertices to zero.
    """
    queries = []
    for item in roots:
        if isinstance(item, tuple):
            r, tq = item
        else:
            r, tq = item, t
        queries.append(SolveQuery(root=r, t=tq))
    if not queries:
        raise ExactError("at least one root required")
    t0 = time.perf_counter()
    caps = _caps_for(g, queries)
    if support is not None:
        allowed = set(support)
        caps = [c if v in allowed else 0 for v, c in enumerate(caps)]
    if zero is not None:
        for v in zero:
            caps[v] = 0
    b = _Budget(budget)
    size, vec, complete = _max_unsolvable_dfs(g, queries, caps, b, backend=backend)
    return ExactResult(value=size, witness_distribution=distribution(g, vec),
                       exhaustive=complete, method="dfs", visited=b.used,
                       elapsed=time.perf_counter() - t0)


def classify_path_segment(pathlen: int, d: Distribution, backend=None) -> str:
    """Classify a distribution on the path v0..v{pathlen} by endpoint
    reachability: S (neither endpoint reachable), M (exactly one, not
    2-reachable), L (both, neither 2-reachable), or "over" (some endpoint
    2-reachable)."""
    path = build_path(pathlen)
    d.check_graph(path)
    engine = Engine(path, backend=backend)

    def reach(v, t):
        status, _, _ = engine.solve_counts(list(d.counts), SolveQuery(root=v, t=t))
        if status == STATUS_UNKNOWN:
            raise BudgetExceeded("path classification ran out of budget")
        return status == STATUS_SOLVABLE

    left, right = 0, pathlen
    r1 = reach(left, 1)
    r2 = reach(right, 1)
    if (r1 and reach(left, 2)) or (r2 and reach(right, 2)):
        return "over"
    if r1 and r2:
        return "L"
    if r1 or r2:
        return "M"
    return "S"


def sample_verify_solvable(g: Graph, size: int, trials: int, seed: int = 0,
                           t: int = 1, policy: str = "unrestricted",
                           budget: int | None = None, threads: int = 1,
                           backend=None) -> SampleReport:
    """Draw `trials` random size-`size` distributions with random roots and
    report every one the solver proves unsolvable (plus any "unknown"
    outcomes, listed separately).  Deterministic per-trial seeds make the
    sample independent of thread count."""
    t0 = time.perf_counter()
    report = SampleReport(trials=trials, size=size, seed=seed)
    b = _Budget(budget)
    if threads > 1:
        chunk = (trials + threads - 1) // threads
        bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
        jobs = [(g, size, seed, lo, hi, t, policy, b.limit // len(bounds), backend)
                for lo, hi in bounds]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for fails, unknowns, used in pool.map(_sample_chunk, jobs):
                report.failures.extend(fails)
                report.unknowns.extend(unknowns)
                b.charge(used)
    else:
        fails, unknowns, used = _sample_chunk(
            (g, size, seed, 0, trials, t, policy, b.limit, backend))
        report.failures.extend(fails)
        report.unknowns.extend(unknowns)
        b.charge(used)
    report.failures.sort(key=lambda fr: fr[1])
    report.unknowns.sort(key=lambda fr: fr[1])
    report.visited = b.used
    report.elapsed = time.perf_counter() - t0
    return report


def _trial_instance(g: Graph, size: int, seed: int, index: int):
    rng = random.Random((seed * 2654435761 + index) & (2**63 - 1))
    rank = rng.randrange(composition_count(size, g.vertex_count))
    counts = unrank_composition(rank, size, g.vertex_count)
    root = rng.randrange(g.vertex_count)
    return list(counts), root


def _sample_chunk(args):
    g, size, seed, lo, hi, t, policy, budget_states, backend = args
    engine = Engine(g, backend=backend)
    fails, unknowns = [], []
    used = 0
    for i in range(lo, hi):
        counts, root = _trial_instance(g, size, seed, i)
        q = SolveQuery(root=root, t=t, policy=policy)
        status, _, visited = engine.solve_counts(counts, q, budget=budget_states - used)
        used += visited
        if status == STATUS_UNSOLVABLE:
            fails.append((distribution(g, counts), root))
        elif status == STATUS_UNKNOWN:
            unknowns.append((distribution(g, counts), root))
        if used >= budget_states:
            for j in range(i + 1, hi):
                counts, root = _trial_instance(g, size, seed, j)
                unknowns.append((distribution(g, counts), root))
            break
    return fails, unknowns, used
