# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact-search kernel.

Twin of _kernel_py: identical search order, pruning order, memoization and
dominance policies, so statuses, witnesses and visited-state counts match
the pure-Python kernel exactly.  States are packed into 16-bit lanes (four
counts per 64-bit word) for an open-addressing transposition table.

Capacity limits (raise KernelLimit; callers fall back to the pure kernel):
at most 32 vertices, pebble totals below 65536, graph diameter at most 40.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

from pebbling._kernel_py import (CERT_EXHAUSTED, CERT_NONE, CERT_WEIGHT,
                                 DEFAULT_DOM_CAP, DEFAULT_MEMO_CAP,
                                 STATUS_SOLVABLE, STATUS_UNKNOWN,
                                 STATUS_UNSOLVABLE, KernelLimit,
                                 ordered_moves)

BACKEND_NAME = "c"

cdef enum:
    MAXWORDS = 8          # 16-bit lanes, 4 per word: up to 32 vertices
    LANE_LIMIT = 65536    # counts (hence totals) must stay below this

cdef long long BIG = (<long long>1) << 62


cdef inline unsigned long long _mix(unsigned long long h, unsigned long long x):
    h ^= x
    h *= <unsigned long long>0xBF58476D1CE4E5B9
    h ^= h >> 29
    return h


cdef class SolveSession:
    """Reusable exact solver for one (graph, root, t, policy) query."""

    cdef int n, root, t, greedy, n_moves, words
    cdef int dom_cap, dom_len
    cdef long long threshold
    cdef long long memo_cap
    cdef public long long total_visited
    cdef int* mv_a
    cdef int* mv_b
    cdef long long* weights
    cdef long long* dom            # dom_cap * n counts
    cdef unsigned long long* keys  # table_capacity * words
    cdef unsigned char* used
    cdef long long table_capacity, table_len
    cdef long long* counts         # scratch, length n
    cdef object py_moves

    def __cinit__(self, adjacency, dist, root, t, greedy=False,
                  memo_cap=DEFAULT_MEMO_CAP, dom_cap=DEFAULT_DOM_CAP):
        cdef int i, v
        if t < 1:
            raise ValueError("fold count t must be >= 1")
        if t >= LANE_LIMIT:
            raise KernelLimit("fold count too large for the compiled kernel")
        self.n = len(adjacency)
        if self.n > 4 * MAXWORDS:
            raise KernelLimit("too many vertices for the compiled kernel")
        self.root = root
        self.t = t
        self.greedy = 1 if greedy else 0
        self.words = (self.n + 3) >> 2
        cdef int md = 0
        for i in range(self.n):
            if dist[i] > md:
                md = dist[i]
        if md > 40:
            raise KernelLimit("graph diameter too large for the compiled kernel")
        self.threshold = (<long long>t) << md
        self.weights = <long long*>malloc(self.n * sizeof(long long))
        self.counts = <long long*>malloc(self.n * sizeof(long long))
        for i in range(self.n):
            self.weights[i] = (<long long>1) << (md - dist[i])
        self.py_moves = ordered_moves(adjacency, list(dist), bool(greedy))
        self.n_moves = len(self.py_moves)
        self.mv_a = <int*>malloc(max(self.n_moves, 1) * sizeof(int))
        self.mv_b = <int*>malloc(max(self.n_moves, 1) * sizeof(int))
        for i, (a, b) in enumerate(self.py_moves):
            self.mv_a[i] = a
            self.mv_b[i] = b
        self.memo_cap = memo_cap
        self.dom_cap = dom_cap
        self.dom_len = 0
        self.dom = <long long*>malloc(max(dom_cap, 1) * self.n * sizeof(long long))
        self.table_capacity = 1 << 12
        self.table_len = 0
        self.keys = <unsigned long long*>calloc(self.table_capacity * self.words,
                                                sizeof(unsigned long long))
        self.used = <unsigned char*>calloc(self.table_capacity, 1)
        self.total_visited = 0

    def __dealloc__(self):
        free(self.mv_a)
        free(self.mv_b)
        free(self.weights)
        free(self.counts)
        free(self.dom)
        free(self.keys)
        free(self.used)

    @property
    def moves(self):
        return self.py_moves

    # -- transposition table -------------------------------------------------

    cdef inline void _pack(self, long long* counts, unsigned long long* key):
        cdef int v
        for v in range(self.words):
            key[v] = 0
        for v in range(self.n):
            key[v >> 2] |= (<unsigned long long>counts[v]) << ((v & 3) << 4)

    cdef inline unsigned long long _hash(self, unsigned long long* key):
        cdef unsigned long long h = <unsigned long long>0x9E3779B97F4A7C15
        cdef int w
        for w in range(self.words):
            h = _mix(h, key[w])
        return h

    cdef bint _memo_contains(self, unsigned long long* key):
        cdef unsigned long long mask = self.table_capacity - 1
        cdef unsigned long long idx = self._hash(key) & mask
        cdef int w, same
        while self.used[idx]:
            same = 1
            for w in range(self.words):
                if self.keys[idx * self.words + w] != key[w]:
                    same = 0
                    break
            if same:
                return True
            idx = (idx + 1) & mask
        return False

    cdef void _memo_insert(self, unsigned long long* key):
        if self.table_len >= self.memo_cap:
            return
        if 4 * (self.table_len + 1) > 3 * self.table_capacity:
            self._grow()
        cdef unsigned long long mask = self.table_capacity - 1
        cdef unsigned long long idx = self._hash(key) & mask
        cdef int w, same
        while self.used[idx]:
            same = 1
            for w in range(self.words):
                if self.keys[idx * self.words + w] != key[w]:
                    same = 0
                    break
            if same:
                return
            idx = (idx + 1) & mask
        self.used[idx] = 1
        for w in range(self.words):
            self.keys[idx * self.words + w] = key[w]
        self.table_len += 1

    cdef void _grow(self):
        cdef long long old_capacity = self.table_capacity
        cdef unsigned long long* old_keys = self.keys
        cdef unsigned char* old_used = self.used
        self.table_capacity = old_capacity * 2
        self.keys = <unsigned long long*>calloc(self.table_capacity * self.words,
                                                sizeof(unsigned long long))
        self.used = <unsigned char*>calloc(self.table_capacity, 1)
        cdef unsigned long long mask = self.table_capacity - 1
        cdef long long slot
        cdef unsigned long long idx
        cdef int w
        for slot in range(old_capacity):
            if not old_used[slot]:
                continue
            idx = self._hash(old_keys + slot * self.words) & mask
            while self.used[idx]:
                idx = (idx + 1) & mask
            self.used[idx] = 1
            for w in range(self.words):
                self.keys[idx * self.words + w] = old_keys[slot * self.words + w]
        free(old_keys)
        free(old_used)

    # -- dominance antichain ---------------------------------------------------

    cdef bint _dominated(self, long long* counts):
        cdef int e, v, ok
        for e in range(self.dom_len):
            ok = 1
            for v in range(self.n):
                if counts[v] > self.dom[e * self.n + v]:
                    ok = 0
                    break
            if ok:
                return True
        return False

    cdef void _record_unsolvable(self, long long* counts):
        cdef unsigned long long key[MAXWORDS]
        self._pack(counts, key)
        self._memo_insert(key)
        # drop entries the new state dominates, then append if room
        cdef int e, v, keep, out = 0
        for e in range(self.dom_len):
            keep = 0
            for v in range(self.n):
                if self.dom[e * self.n + v] > counts[v]:
                    keep = 1
                    break
            if keep:
                if out != e:
                    memcpy(self.dom + out * self.n, self.dom + e * self.n,
                           self.n * sizeof(long long))
                out += 1
        self.dom_len = out
        if self.dom_len < self.dom_cap:
            memcpy(self.dom + self.dom_len * self.n, counts,
                   self.n * sizeof(long long))
            self.dom_len += 1

    # -- search ---------------------------------------------------------------

    def solve(self, counts_list, budget=None, want_witness=False):
        """Decide t-fold root-solvability; mirrors the pure kernel.

        Returns (status, certificate, visited, witness_moves).
        """
        cdef long long budget_ll = BIG if budget is None else <long long>min(budget, BIG)
        cdef int n = self.n
        cdef int v, a, b, mi
        cdef long long total = 0
        cdef long long* counts = self.counts
        for v in range(n):
            counts[v] = counts_list[v]
            total += counts[v]
        if counts[self.root] >= self.t:
            return STATUS_SOLVABLE, CERT_NONE, 0, [] if want_witness else None
        if total >= LANE_LIMIT:
            raise KernelLimit("pebble total too large for the compiled kernel")
        cdef long long weight = 0
        for v in range(n):
            weight += counts[v] * self.weights[v]
        if weight < self.threshold:
            return STATUS_UNSOLVABLE, CERT_WEIGHT, 0, None
        cdef unsigned long long key[MAXWORDS]
        self._pack(counts, key)
        if self._memo_contains(key) or self._dominated(counts):
            return STATUS_UNSOLVABLE, CERT_EXHAUSTED, 0, None

        cdef int depth_cap = <int>total + 2
        cdef int* stack_mi = <int*>malloc(depth_cap * sizeof(int))
        cdef int* stack_mv = <int*>malloc(depth_cap * sizeof(int))
        cdef long long* path_w = <long long*>malloc(depth_cap * sizeof(long long))
        cdef int sp = 0
        stack_mi[0] = 0
        stack_mv[0] = -1
        path_w[0] = weight
        cdef long long visited = 1
        cdef long long w2
        cdef int advanced, mvidx
        cdef int root = self.root, t = self.t, n_moves = self.n_moves
        cdef long long threshold = self.threshold
        witness = None

        try:
            while sp >= 0:
                mi = stack_mi[sp]
                advanced = 0
                while mi < n_moves:
                    a = self.mv_a[mi]
                    b = self.mv_b[mi]
                    mi += 1
                    if counts[a] < 2:
                        continue
                    counts[a] -= 2
                    counts[b] += 1
                    if counts[root] >= t:
                        if want_witness:
                            witness = []
                            for v in range(1, sp + 1):
                                mvidx = stack_mv[v]
                                witness.append((self.mv_a[mvidx], self.mv_b[mvidx]))
                            witness.append((a, b))
                        self.total_visited += visited
                        return STATUS_SOLVABLE, CERT_NONE, visited, witness
                    w2 = path_w[sp] - 2 * self.weights[a] + self.weights[b]
                    if w2 < threshold:
                        counts[a] += 2
                        counts[b] -= 1
                        continue
                    self._pack(counts, key)
                    if self._memo_contains(key) or self._dominated(counts):
                        counts[a] += 2
                        counts[b] -= 1
                        continue
                    if visited >= budget_ll:
                        self.total_visited += visited
                        return STATUS_UNKNOWN, CERT_NONE, visited, None
                    stack_mi[sp] = mi
                    sp += 1
                    stack_mi[sp] = 0
                    stack_mv[sp] = mi - 1
                    path_w[sp] = w2
                    visited += 1
                    advanced = 1
                    break
                if advanced:
                    continue
                self._record_unsolvable(counts)
                mvidx = stack_mv[sp]
                sp -= 1
                if mvidx >= 0:
                    counts[self.mv_a[mvidx]] += 2
                    counts[self.mv_b[mvidx]] -= 1
            self.total_visited += visited
            return STATUS_UNSOLVABLE, CERT_EXHAUSTED, visited, None
        finally:
            free(stack_mi)
            free(stack_mv)
            free(path_w)


def solve_once(adjacency, dist, root, t, greedy, counts, budget=None,
               want_witness=False, memo_cap=DEFAULT_MEMO_CAP, dom_cap=DEFAULT_DOM_CAP):
    """One-shot convenience wrapper around SolveSession."""
    session = SolveSession(adjacency, dist, root, t, greedy,
                           memo_cap=memo_cap, dom_cap=dom_cap)
    return session.solve(counts, budget=budget, want_witness=want_witness)
