"""Pebbling-move semantics and the exact decision engine.

A pebbling move removes two pebbles from a vertex and places one on an
adjacent vertex.  The engine decides whether a distribution can deliver t
pebbles to a root, either unrestricted or with greedy moves only (each move
must strictly decrease distance to the root).  Decisions are exact: a
"solvable" answer carries a replayable witness, an "unsolvable" answer
carries a certificate tag, and running out of budget yields an explicit
"unknown", never a guess.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from . import _backend, _kernel_py
from ._kernel_py import (CERT_EXHAUSTED, CERT_NONE, CERT_WEIGHT,
                         STATUS_SOLVABLE, STATUS_UNKNOWN, STATUS_UNSOLVABLE,
                         KernelLimit)
from .distributions import Distribution, DistributionError, distribution
from .graphs import Graph, distances_from

POLICIES = ("unrestricted", "greedy")

CERT_NAMES = {CERT_WEIGHT: "weight-bound", CERT_EXHAUSTED: "exhausted-search"}


class SolverError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when an operation that requires an exact answer ran out of
    search budget."""


@dataclass(frozen=True)
class Move:
    """One pebbling move along an edge: two off `src`, one onto `dst`."""

    src: int
    dst: int


@dataclass(frozen=True)
class SolveQuery:
    root: int
    t: int = 1
    policy: str = "unrestricted"

    def __post_init__(self):
        if self.t < 1:
            raise SolverError("fold count t must be >= 1")
        if self.policy not in POLICIES:
            raise SolverError(f"unknown policy {self.policy!r}")


@dataclass(frozen=True)
class Witness:
    """An ordered, replayable move sequence from `start` to `end`."""

    moves: tuple[Move, ...]
    start: Distribution
    end: Distribution

    @property
    def cost(self) -> int:
        return self.start.size - self.end.size

    def serialize(self, g: Graph) -> list[str]:
        return [f"{g.labels[m.src]}->{g.labels[m.dst]}" for m in self.moves]


@dataclass
class MoveDigraph:
    """Directed multigraph induced by a witness: one directed edge per move,
    multiplicities aggregated."""

    edge_multiset: dict[tuple[int, int], int]
    vertex_count: int

    @property
    def edge_count(self) -> int:
        return sum(self.edge_multiset.values())

    def in_degree(self, v: int) -> int:
        return sum(c for (a, b), c in self.edge_multiset.items() if b == v)

    def out_degree(self, v: int) -> int:
        return sum(c for (a, b), c in self.edge_multiset.items() if a == v)

    def is_acyclic(self) -> bool:
        adj: dict[int, list[int]] = {}
        indeg: dict[int, int] = {}
        for (a, b), c in self.edge_multiset.items():
            if c <= 0:
                continue
            adj.setdefault(a, []).append(b)
            indeg[b] = indeg.get(b, 0) + 1
            indeg.setdefault(a, 0)
        queue = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in adj.get(v, ()):
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(indeg)

    def single_direction_per_edge(self) -> bool:
        return not any(
            (b, a) in self.edge_multiset and self.edge_multiset[(b, a)] > 0
            for (a, b), c in self.edge_multiset.items() if c > 0
        )


@dataclass
class SolveResult:
    """Outcome of one solvability query."""

    status: str  # "solvable" | "unsolvable" | "unknown"
    witness: Witness | None = None
    certificate: str | None = None  # "weight-bound" | "exhausted-search"
    visited: int = 0
    elapsed: float = 0.0

    @property
    def solvable(self) -> bool:
        if self.status == "unknown":
            raise BudgetExceeded("search budget exceeded; outcome unknown")
        return self.status == "solvable"


def apply_move(g: Graph, d: Distribution, mv: Move) -> Distribution:
    """Apply one pebbling move; validates adjacency and supply."""
    d.check_graph(g)
    if mv.dst not in g.adjacency[mv.src]:
        raise SolverError(f"vertices {mv.src} and {mv.dst} are not adjacent")
    if d.counts[mv.src] < 2:
        raise SolverError(f"vertex {mv.src} has {d.counts[mv.src]} pebbles, needs 2")
    counts = list(d.counts)
    counts[mv.src] -= 2
    counts[mv.dst] += 1
    return Distribution(tuple(counts), d.graph_fingerprint)


def replay(g: Graph, start: Distribution, moves) -> Distribution:
    """Replay a move sequence from `start`; raises if any move is illegal."""
    d = start
    for mv in moves:
        d = apply_move(g, d, mv)
    return d


def make_witness(g: Graph, start: Distribution, moves) -> Witness:
    moves = tuple(Move(*m) if not isinstance(m, Move) else m for m in moves)
    end = replay(g, start, moves)
    return Witness(moves=moves, start=start, end=end)


def move_digraph(g: Graph, w: Witness) -> MoveDigraph:
    edges: dict[tuple[int, int], int] = {}
    for mv in w.moves:
        edges[(mv.src, mv.dst)] = edges.get((mv.src, mv.dst), 0) + 1
    return MoveDigraph(edge_multiset=edges, vertex_count=g.vertex_count)


def sinks_and_sources(md: MoveDigraph) -> tuple[set[int], set[int]]:
    """(sources, sinks): out>0/in=0 and in>0/out=0; isolated vertices in
    neither."""
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for (a, b), c in md.edge_multiset.items():
        if c <= 0:
            continue
        outdeg[a] = outdeg.get(a, 0) + c
        indeg[b] = indeg.get(b, 0) + c
    touched = set(indeg) | set(outdeg)
    sources = {v for v in touched if outdeg.get(v, 0) > 0 and indeg.get(v, 0) == 0}
    sinks = {v for v in touched if indeg.get(v, 0) > 0 and outdeg.get(v, 0) == 0}
    return sources, sinks


def weight_certificate(g: Graph, d: Distribution, root: int, t: int = 1):
    """Distance-weight unsolvability certificate, or None.

    A move from a to b turns 2*2^-dist(a) of weighted mass into 2^-dist(b)
    <= 2*2^-dist(a), so the weighted sum never increases; if it starts below
    t the root can never hold t pebbles.  Exact integer arithmetic.
    """
    d.check_graph(g)
    dist = distances_from(g, root)
    md = max(dist)
    weight = sum(c << (md - dv) for c, dv in zip(d.counts, dist))
    if weight < (t << md):
        return {
            "kind": "weight-bound",
            "weight_numerator": weight,
            "weight_denominator": 1 << md,
            "t": t,
        }
    return None


def _session_for(g: Graph, q: SolveQuery, backend=None):
    """Build a kernel session; instances beyond the compiled kernel's
    capacity fall back to the pure-Python kernel transparently."""
    kernel = _backend.get_kernel(backend)
    dist = distances_from(g, q.root)
    try:
        return kernel.SolveSession(g.adjacency, dist, q.root, q.t,
                                   greedy=(q.policy == "greedy"))
    except KernelLimit:
        return _kernel_py.SolveSession(g.adjacency, dist, q.root, q.t,
                                       greedy=(q.policy == "greedy"))


def is_solvable(g: Graph, d: Distribution, q: SolveQuery, budget: int | None = None,
                want_witness: bool = True, backend=None) -> SolveResult:
    """Exact t-fold solvability decision for one query.

    A distribution with d[root] >= t is solvable with the empty witness.
    When `budget` (visited-state cap) is exceeded the result status is
    "unknown" with honest stats, never a wrong boolean.
    """
    d.check_graph(g)
    if not 0 <= q.root < g.vertex_count:
        raise SolverError(f"root {q.root} out of range")
    session = _session_for(g, q, backend=backend)
    return _run_session(g, session, d, q, budget, want_witness)


def _pure_session_like(g: Graph, q: SolveQuery):
    return _kernel_py.SolveSession(g.adjacency, distances_from(g, q.root),
                                   q.root, q.t, greedy=(q.policy == "greedy"))


def _run_session(g: Graph, session, d: Distribution, q: SolveQuery,
                 budget, want_witness) -> SolveResult:
    t0 = time.perf_counter()
    try:
        status, cert, visited, moves = session.solve(
            list(d.counts), budget=budget, want_witness=want_witness)
    except KernelLimit:
        session = _pure_session_like(g, q)
        status, cert, visited, moves = session.solve(
            list(d.counts), budget=budget, want_witness=want_witness)
    elapsed = time.perf_counter() - t0
    if status == STATUS_SOLVABLE:
        witness = make_witness(g, d, moves) if moves is not None else None
        if witness is not None and witness.end.counts[q.root] < q.t:
            raise SolverError("engine returned a witness that misses the goal")
        return SolveResult("solvable", witness=witness, visited=visited, elapsed=elapsed)
    if status == STATUS_UNSOLVABLE:
        return SolveResult("unsolvable", certificate=CERT_NAMES[cert],
                           visited=visited, elapsed=elapsed)
    return SolveResult("unknown", visited=visited, elapsed=elapsed)


class Engine:
    """Session cache for repeated queries against one graph.

    Reuses kernel transposition tables across solves with the same
    (root, t, policy); this is what makes brute-force campaigns cheap.
    """

    def __init__(self, g: Graph, backend=None, budget: int | None = None):
        self.graph = g
        self.backend = backend
        self.budget = budget
        self._sessions: dict[tuple[int, int, str], object] = {}
        self._dists: dict[int, list[int]] = {}

    def distances(self, root: int) -> list[int]:
        if root not in self._dists:
            self._dists[root] = distances_from(self.graph, root)
        return self._dists[root]

    def session(self, q: SolveQuery):
        key = (q.root, q.t, q.policy)
        if key not in self._sessions:
            kernel = _backend.get_kernel(self.backend)
            try:
                self._sessions[key] = kernel.SolveSession(
                    self.graph.adjacency, self.distances(q.root), q.root, q.t,
                    greedy=(q.policy == "greedy"))
            except KernelLimit:
                self._sessions[key] = self._pure_session(q)
        return self._sessions[key]

    def _pure_session(self, q: SolveQuery):
        return _kernel_py.SolveSession(
            self.graph.adjacency, self.distances(q.root), q.root, q.t,
            greedy=(q.policy == "greedy"))

    def solve(self, d: Distribution, q: SolveQuery, budget: int | None = None,
              want_witness: bool = False) -> SolveResult:
        d.check_graph(self.graph)
        budget = self.budget if budget is None else budget
        return _run_session(self.graph, self.session(q), d, q, budget, want_witness)

    def solve_counts(self, counts, q: SolveQuery, budget: int | None = None):
        """Raw-kernel fast path: counts list in, (status, cert, visited) out."""
        budget = self.budget if budget is None else budget
        try:
            status, cert, visited, _ = self.session(q).solve(counts, budget=budget)
        except KernelLimit:
            self._sessions[(q.root, q.t, q.policy)] = self._pure_session(q)
            status, cert, visited, _ = self.session(q).solve(counts, budget=budget)
        return status, cert, visited

    @property
    def total_visited(self) -> int:
        return sum(s.total_visited for s in self._sessions.values())


def blind_is_solvable(g: Graph, d: Distribution, q: SolveQuery,
                      state_cap: int | None = None) -> bool:
    """Reference oracle: blind breadth-first search over every reachable
    distribution, no pruning of any kind.  Exponential; keep instances tiny."""
    d.check_graph(g)
    start = d.counts
    if start[q.root] >= q.t:
        return True
    gdist = distances_from(g, q.root) if q.policy == "greedy" else None
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for v in range(g.vertex_count):
            if state[v] < 2:
                continue
            for w in g.adjacency[v]:
                if gdist is not None and not gdist[w] < gdist[v]:
                    continue
                child = list(state)
                child[v] -= 2
                child[w] += 1
                if child[q.root] >= q.t:
                    return True
                tchild = tuple(child)
                if tchild not in seen:
                    seen.add(tchild)
                    queue.append(tchild)
                    if state_cap is not None and len(seen) > state_cap:
                        raise BudgetExceeded("blind oracle state cap exceeded")
    return False


# ---------------------------------------------------------------------------
# Witness normalization: cancel opposing move pairs and directed move cycles,
# then reschedule topologically.  The result uses each edge in at most one
# direction, induces an acyclic move digraph, never costs more than the
# input, and delivers at least as much to every vertex.
# ---------------------------------------------------------------------------


def normalize_witness(g: Graph, w: Witness) -> Witness:
    replayed = replay(g, w.start, w.moves)
    if replayed.counts != w.end.counts:
        raise SolverError("witness does not replay to its end distribution")

    edges: dict[tuple[int, int], int] = {}
    for mv in w.moves:
        edges[(mv.src, mv.dst)] = edges.get((mv.src, mv.dst), 0) + 1

    changed = False
    # cancel two-cycles (opposing pairs along one edge)
    for (a, b) in list(edges):
        if a < b and (b, a) in edges:
            k = min(edges[(a, b)], edges[(b, a)])
            if k:
                edges[(a, b)] -= k
                edges[(b, a)] -= k
                changed = True
    # cancel longer directed cycles until the digraph is acyclic
    while True:
        cycle = _find_cycle(edges)
        if cycle is None:
            break
        for e in cycle:
            edges[e] -= 1
        changed = True

    if not changed:
        return w  # already acyclic with one direction per edge: fixed point

    moves = _schedule_topologically(g, w.start, edges)
    out = make_witness(g, w.start, moves)
    # each cancellation only returns pebbles, so delivery cannot drop
    if any(oc < wc for oc, wc in zip(out.end.counts, w.end.counts)):
        raise SolverError("normalization lost pebbles; this is a bug")
    return out


def _find_cycle(edges: dict[tuple[int, int], int]):
    adj: dict[int, list[int]] = {}
    for (a, b), c in edges.items():
        if c > 0:
            adj.setdefault(a, []).append(b)
    state: dict[int, int] = {}  # 1 in progress, 2 done
    parent: dict[int, int] = {}

    for start in adj:
        if state.get(start):
            continue
        stack = [(start, iter(adj.get(start, ())))]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            found = None
            for w in it:
                if state.get(w) == 1:
                    found = w
                    break
                if not state.get(w):
                    parent[w] = v
                    state[w] = 1
                    stack.append((w, iter(adj.get(w, ()))))
                    found = -1
                    break
            if found is None:
                state[v] = 2
                stack.pop()
            elif found != -1:
                cycle = [(v, found)]
                cur = v
                while cur != found:
                    cycle.append((parent[cur], cur))
                    cur = parent[cur]
                return cycle
    return None


def _schedule_topologically(g: Graph, start: Distribution, edges) -> list[Move]:
    """Order an acyclic move multiset: process vertices in topological order
    of the move digraph; every out-move of a vertex runs after all its
    in-moves, so supply D(v) + in(v) - 2*out(v) >= 0 is available on time."""
    indeg: dict[int, int] = {}
    outs: dict[int, list[tuple[int, int]]] = {}
    vertices = set()
    for (a, b), c in edges.items():
        if c <= 0:
            continue
        vertices.update((a, b))
        indeg[b] = indeg.get(b, 0) + c
        indeg.setdefault(a, 0)
        outs.setdefault(a, []).append((b, c))
    order = deque(sorted(v for v in vertices if indeg[v] == 0))
    moves: list[Move] = []
    while order:
        v = order.popleft()
        for b, c in sorted(outs.get(v, ())):
            moves.extend([Move(v, b)] * c)
            indeg[b] -= c
            if indeg[b] == 0:
                order.append(b)
    if len(moves) != sum(c for c in edges.values() if c > 0):
        raise SolverError("move digraph still has a cycle; this is a bug")
    return moves
