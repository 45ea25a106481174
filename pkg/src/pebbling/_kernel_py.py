"""Pure-Python exact-search kernel.

This is the fallback twin of the compiled kernel in _kernel_c.pyx; both
implement the identical search (same move ordering, same pruning order,
same memo/dominance policies) so results, witnesses and visited-state
counts match exactly between backends.

Search shape: depth-first over distributions.  Moves strictly decrease the
pebble total, so depth is bounded by |D| and memoizing unsolvable states is
safe.  Pruning, in check order:
  1. goal: counts[root] >= t               -> solvable
  2. weight bound: sum(c * 2^(md-dist)) < t*2^md  -> unsolvable (certified)
  3. transposition table hit               -> unsolvable
  4. dominance: state <= a known maximal unsolvable state -> unsolvable
The weight is maintained incrementally in exact integer arithmetic.
"""

from __future__ import annotations

BACKEND_NAME = "python"

STATUS_UNSOLVABLE = 0
STATUS_SOLVABLE = 1
STATUS_UNKNOWN = 2


class KernelLimit(Exception):
    """An instance exceeds a compiled-kernel capacity limit (vertex count,
    pebble total, or graph diameter); callers fall back to this pure kernel,
    which has no such limits."""

CERT_NONE = 0
CERT_WEIGHT = 1
CERT_EXHAUSTED = 2

DEFAULT_MEMO_CAP = 1 << 22
DEFAULT_DOM_CAP = 32


def ordered_moves(adjacency, dist, greedy):
    """Directed moves (from, to), greedy-first, deterministic order."""
    moves = []
    for a in range(len(adjacency)):
        for b in adjacency[a]:
            if greedy and not dist[b] < dist[a]:
                continue
            moves.append((a, b))
    moves.sort(key=lambda ab: (dist[ab[1]] - dist[ab[0]], dist[ab[1]], ab[0], ab[1]))
    return moves


class SolveSession:
    """Reusable exact solver for one (graph, root, t, policy) query.

    The transposition table persists across solve() calls: unsolvability of
    a state is a fact about the query, not about one start distribution.
    """

    def __init__(self, adjacency, dist, root, t, greedy=False,
                 memo_cap=DEFAULT_MEMO_CAP, dom_cap=DEFAULT_DOM_CAP):
        if t < 1:
            raise ValueError("fold count t must be >= 1")
        self.n = len(adjacency)
        self.root = root
        self.t = t
        self.greedy = bool(greedy)
        self.dist = list(dist)
        md = max(self.dist)
        self.threshold = t << md
        self.weights = [1 << (md - d) for d in self.dist]
        self.moves = ordered_moves(adjacency, self.dist, greedy)
        self.memo_cap = memo_cap
        self.dom_cap = dom_cap
        self.memo = set()
        self.dominance = []
        self.total_visited = 0

    # -- pruning helpers ---------------------------------------------------

    def _dominated(self, key):
        for entry in self.dominance:
            if all(a <= b for a, b in zip(key, entry)):
                return True
        return False

    def _record_unsolvable(self, key):
        if len(self.memo) < self.memo_cap:
            self.memo.add(key)
        kept = [e for e in self.dominance
                if not all(a <= b for a, b in zip(e, key))]
        if len(kept) < self.dom_cap:
            kept.append(key)
        self.dominance = kept

    # -- main search -------------------------------------------------------

    def solve(self, counts, budget=None, want_witness=False):
        """Decide t-fold root-solvability of `counts`.

        Returns (status, certificate, visited, witness_moves).
        """
        counts = list(counts)
        if counts[self.root] >= self.t:
            return STATUS_SOLVABLE, CERT_NONE, 0, [] if want_witness else None
        weight = sum(c * w for c, w in zip(counts, self.weights))
        if weight < self.threshold:
            return STATUS_UNSOLVABLE, CERT_WEIGHT, 0, None
        key = tuple(counts)
        if key in self.memo or self._dominated(key):
            return STATUS_UNSOLVABLE, CERT_EXHAUSTED, 0, None

        budget = float("inf") if budget is None else budget
        moves = self.moves
        weights = self.weights
        root, t, threshold = self.root, self.t, self.threshold
        visited = 0
        # frame: [move_index, move_that_entered_this_state]
        stack = [[0, None]]
        visited += 1
        path_weight = [weight]

        while stack:
            frame = stack[-1]
            mi = frame[0]
            advanced = False
            while mi < len(moves):
                a, b = moves[mi]
                mi += 1
                if counts[a] < 2:
                    continue
                counts[a] -= 2
                counts[b] += 1
                if counts[root] >= t:
                    witness = None
                    if want_witness:
                        witness = [f[1] for f in stack if f[1] is not None]
                        witness.append((a, b))
                    self.total_visited += visited
                    return STATUS_SOLVABLE, CERT_NONE, visited, witness
                w2 = path_weight[-1] - 2 * weights[a] + weights[b]
                if w2 < threshold:
                    counts[a] += 2
                    counts[b] -= 1
                    continue
                key = tuple(counts)
                if key in self.memo or self._dominated(key):
                    counts[a] += 2
                    counts[b] -= 1
                    continue
                if visited >= budget:
                    self.total_visited += visited
                    return STATUS_UNKNOWN, CERT_NONE, visited, None
                frame[0] = mi
                stack.append([0, (a, b)])
                path_weight.append(w2)
                visited += 1
                advanced = True
                break
            if advanced:
                continue
            # state exhausted: it is unsolvable
            self._record_unsolvable(tuple(counts))
            stack.pop()
            path_weight.pop()
            if frame[1] is not None:
                a, b = frame[1]
                counts[a] += 2
                counts[b] -= 1
        self.total_visited += visited
        return STATUS_UNSOLVABLE, CERT_EXHAUSTED, visited, None


def solve_once(adjacency, dist, root, t, greedy, counts, budget=None,
               want_witness=False, memo_cap=DEFAULT_MEMO_CAP, dom_cap=DEFAULT_DOM_CAP):
    """One-shot convenience wrapper around SolveSession."""
    session = SolveSession(adjacency, dist, root, t, greedy,
                           memo_cap=memo_cap, dom_cap=dom_cap)
    return session.solve(counts, budget=budget, want_witness=want_witness)
