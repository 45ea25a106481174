"""Undirected simple graphs and the graph families used by the toolkit.

Vertices are integer indices 0..n-1; every vertex carries a display label.
All constructors produce connected graphs, and the spec parser rejects
disconnected input, so distance tables are always total.

Jahangir graphs J(n, m) are a cycle of length n*m plus a hub vertex adjacent
to every n-th cycle vertex.  Cycle vertices are indexed 0..nm-1 in cycle
order and the hub is index nm; the hub's neighbours are the indices n*i.
Display labels for Jahangir graphs are 1-based ("v1".."v{nm}", hub "u"),
which is the labelling used by all textual I/O.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from itertools import product


class GraphError(ValueError):
    """Invalid graph construction parameters or malformed graph text."""


class SpecSyntaxError(GraphError):
    """Family-spec text that does not parse; carries the offending position."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} (at position {pos} in {text!r})")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph with labelled vertices."""

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.vertex_count) for w in self.adjacency[v] if v < w]

    def vertex(self, label: str) -> int:
        """Resolve a display label to a vertex index ("hub" aliases "u")."""
        try:
            return self.labels.index(label)
        except ValueError:
            if label == "hub" and "u" in self.labels:
                return self.labels.index("u")
            raise GraphError(f"unknown vertex label {label!r}") from None

    @property
    def fingerprint(self) -> str:
        """Stable digest of the structure; distributions carry it to detect
        cross-graph misuse."""
        h = hashlib.blake2b(digest_size=8)
        h.update(repr((self.adjacency, self.labels)).encode())
        return h.hexdigest()

    def __repr__(self) -> str:  # keep pytest output readable
        return f"Graph({self.vertex_count} vertices, {self.edge_count} edges)"


@dataclass(frozen=True)
class JahangirLayout:
    """Index bookkeeping for a Jahangir graph J(n, m).

    segments[i] is the path of cycle vertices from hub-neighbour n*i to
    hub-neighbour n*(i+1) (indices mod nm); consecutive segments share one
    endpoint and their union is the outer cycle.
    """

    n: int
    m: int
    hub: int
    cycle_order: tuple[int, ...]
    segments: tuple[tuple[int, ...], ...]

    def segment_midpoint(self, i: int) -> int:
        """Interior midpoint of segment i (requires even n)."""
        if self.n % 2 != 0:
            raise GraphError("segment midpoint needs even segment length")
        return self.segments[i][self.n // 2]


def _freeze(adj: list[set[int]], labels: list[str]) -> Graph:
    g = Graph(tuple(tuple(sorted(s)) for s in adj), tuple(labels))
    _check_invariants(g)
    return g


def _check_invariants(g: Graph) -> None:
    n = g.vertex_count
    for v, nbrs in enumerate(g.adjacency):
        if v in nbrs:
            raise GraphError(f"self-loop at vertex {v}")
        if len(set(nbrs)) != len(nbrs):
            raise GraphError(f"duplicate neighbour at vertex {v}")
        for w in nbrs:
            if not 0 <= w < n:
                raise GraphError(f"neighbour {w} out of range")
            if v not in g.adjacency[w]:
                raise GraphError(f"asymmetric adjacency {v}->{w}")
    if n and len(_component_of(g, 0)) != n:
        raise GraphError("graph is not connected")


def _component_of(g: Graph, src: int) -> set[int]:
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def build_path(length: int) -> Graph:
    """Path with `length` edges, vertices v0..v{length}."""
    if length < 0:
        raise GraphError("path length must be >= 0")
    n = length + 1
    adj = [set(j for j in (i - 1, i + 1) if 0 <= j < n) for i in range(n)]
    return _freeze(adj, [f"v{i}" for i in range(n)])


def build_cycle(k: int) -> Graph:
    """Cycle on k >= 3 vertices v0..v{k-1}."""
    if k < 3:
        raise GraphError("cycle needs k >= 3")
    adj = [{(i - 1) % k, (i + 1) % k} for i in range(k)]
    return _freeze(adj, [f"v{i}" for i in range(k)])


def build_tree(parents: list[int]) -> Graph:
    """Tree from a parent list: vertex 0 is the root, vertex i+1 hangs off
    parents[i].  parents[i] must refer to an earlier vertex."""
    n = len(parents) + 1
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, p in enumerate(parents):
        child = i + 1
        if not 0 <= p < child:
            raise GraphError(f"parent {p} of vertex {child} must be an earlier vertex")
        adj[p].add(child)
        adj[child].add(p)
    return _freeze(adj, [f"v{i}" for i in range(n)])


def build_jahangir(n: int, m: int) -> tuple[Graph, JahangirLayout]:
    """Jahangir graph J(n, m): cycle of length n*m plus a hub adjacent to
    every n-th cycle vertex.  Returns the graph and its layout."""
    if n < 1:
        raise GraphError("segment length n must be >= 1")
    if m < 3:
        raise GraphError("segment count m must be >= 3")
    nm = n * m
    hub = nm
    adj: list[set[int]] = [set() for _ in range(nm + 1)]
    for i in range(nm):
        adj[i].add((i + 1) % nm)
        adj[(i + 1) % nm].add(i)
    for i in range(m):
        adj[hub].add(n * i)
        adj[n * i].add(hub)
    labels = [f"v{i + 1}" for i in range(nm)] + ["u"]
    segments = tuple(
        tuple((n * i + j) % nm for j in range(n + 1)) for i in range(m)
    )
    layout = JahangirLayout(n=n, m=m, hub=hub, cycle_order=tuple(range(nm)), segments=segments)
    return _freeze(adj, labels), layout


def clone_vertex(g: Graph, v: int, count: int = 1) -> Graph:
    """Add `count` new vertices, each adjacent to exactly N(v), the open
    neighbourhood of v in g.  Clones are labelled after v's label."""
    if not 0 <= v < g.vertex_count:
        raise GraphError(f"vertex {v} out of range")
    if count < 1:
        raise GraphError("clone count must be >= 1")
    if g.degree(v) == 0:
        raise GraphError("cannot clone an isolated vertex")
    adj = [set(a) for a in g.adjacency]
    labels = list(g.labels)
    nbrs = g.adjacency[v]
    for c in range(count):
        new = len(adj)
        adj.append(set(nbrs))
        for w in nbrs:
            adj[w].add(new)
        labels.append(f"{g.labels[v]}'{c + 1}" if count > 1 else f"{g.labels[v]}'")
    return _freeze(adj, labels)


def distances_from(g: Graph, src: int) -> list[int]:
    """Unweighted shortest-path distances from src (breadth-first)."""
    if not 0 <= src < g.vertex_count:
        raise GraphError(f"vertex {src} out of range")
    dist = [-1] * g.vertex_count
    dist[src] = 0
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def eccentricity(g: Graph, src: int) -> int:
    return max(distances_from(g, src))


def two_coloring(g: Graph) -> list[int] | None:
    """2-colouring if g is bipartite, else None."""
    color = [-1] * g.vertex_count
    color[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    nxt.append(w)
                elif color[w] == color[v]:
                    return None
        frontier = nxt
    return color


# ---------------------------------------------------------------------------
# Family specs: textual grammar
#
#   path:<len> | cycle:<k> | tree:<p1>,<p2>,... | jahangir:<n>,<m>
#   | clone:<base-spec>@<vertex-label>*<count>
# ---------------------------------------------------------------------------

_KINDS = ("path", "cycle", "tree", "jahangir", "clone")


@dataclass(frozen=True)
class FamilySpec:
    """Parsed description of a graph family instance."""

    kind: str
    params: tuple[int, ...] = ()
    base: "FamilySpec | None" = None
    clone_label: str = ""
    clone_count: int = 0

    def render(self) -> str:
        """Canonical text form (inverse of parse_family_spec)."""
        if self.kind == "clone":
            return f"clone:{self.base.render()}@{self.clone_label}*{self.clone_count}"
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"

    def build(self) -> Graph:
        g, _ = self.build_with_layout()
        return g

    def build_with_layout(self) -> tuple[Graph, JahangirLayout | None]:
        if self.kind == "path":
            return build_path(self.params[0]), None
        if self.kind == "cycle":
            return build_cycle(self.params[0]), None
        if self.kind == "tree":
            return build_tree(list(self.params)), None
        if self.kind == "jahangir":
            return build_jahangir(*self.params)
        base, layout = self.base.build_with_layout()
        return clone_vertex(base, base.vertex(self.clone_label), self.clone_count), layout


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the graph-spec grammar; raises SpecSyntaxError with position."""
    spec, pos = _parse_spec_at(text, 0)
    if pos != len(text):
        raise SpecSyntaxError("trailing input after spec", text, pos)
    return spec


def _parse_spec_at(text: str, pos: int) -> tuple[FamilySpec, int]:
    rest = text[pos:]
    kind = next((k for k in _KINDS if rest.startswith(k + ":")), None)
    if kind is None:
        raise SpecSyntaxError("expected one of " + "|".join(_KINDS), text, pos)
    pos += len(kind) + 1
    if kind == "clone":
        base, pos = _parse_spec_at(text, pos)
        if pos >= len(text) or text[pos] != "@":
            raise SpecSyntaxError("expected '@vertex*count' after clone base", text, pos)
        pos += 1
        at = text.find("*", pos)
        if at < 0:
            raise SpecSyntaxError("expected '*count' after clone vertex", text, pos)
        label = text[pos:at]
        if not label:
            raise SpecSyntaxError("empty clone vertex label", text, pos)
        pos = at + 1
        count, pos = _parse_int(text, pos)
        if count < 1:
            raise SpecSyntaxError("clone count must be >= 1", text, pos)
        spec = FamilySpec("clone", base=base, clone_label=label, clone_count=count)
    else:
        params = []
        val, pos = _parse_int(text, pos)
        params.append(val)
        while pos < len(text) and text[pos] == ",":
            val, pos = _parse_int(text, pos + 1)
            params.append(val)
        spec = FamilySpec(kind, params=tuple(params))
    _validate_spec(spec, text, pos)
    return spec, pos


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise SpecSyntaxError("expected an integer", text, pos)
    return int(text[pos:end]), end


def _validate_spec(spec: FamilySpec, text: str, pos: int) -> None:
    try:
        if spec.kind == "path":
            if len(spec.params) != 1:
                raise GraphError("path takes one parameter")
        elif spec.kind == "cycle":
            if len(spec.params) != 1:
                raise GraphError("cycle takes one parameter")
            if spec.params[0] < 3:
                raise GraphError("cycle needs k >= 3")
        elif spec.kind == "jahangir":
            if len(spec.params) != 2:
                raise GraphError("jahangir takes two parameters")
            n, m = spec.params
            if n < 1 or m < 3:
                raise GraphError("jahangir needs n >= 1, m >= 3")
        elif spec.kind == "tree":
            build_tree(list(spec.params))
        elif spec.kind == "clone":
            base = spec.base.build()
            base.vertex(spec.clone_label)
    except GraphError as e:
        raise SpecSyntaxError(str(e), text, pos) from None


# ---------------------------------------------------------------------------
# Tree catalog: all non-isomorphic trees up to a vertex count, generated by
# Pruefer-sequence enumeration and de-duplicated with AHU canonical encoding.
# ---------------------------------------------------------------------------


def _tree_from_pruefer(seq: tuple[int, ...], n: int) -> list[list[int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    adj: list[list[int]] = [[] for _ in range(n)]
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        adj[leaf].append(v)
        adj[v].append(leaf)
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    adj[a].append(b)
    adj[b].append(a)
    return adj


def _ahu_canonical(adj: list[list[int]]) -> str:
    """Canonical string of an unrooted tree (rooted at its centroid set)."""

    def encode(root: int, parent: int) -> str:
        subs = sorted(encode(w, root) for w in adj[root] if w != parent)
        return "(" + "".join(subs) + ")"

    n = len(adj)
    # find centroid(s)
    size = [0] * n

    def calc(v: int, p: int) -> None:
        size[v] = 1
        for w in adj[v]:
            if w != p:
                calc(w, v)
                size[v] += size[w]

    calc(0, -1)
    centroids = []
    for v in range(n):
        heaviest = n - size[v]
        for w in adj[v]:
            if size[w] < size[v]:
                heaviest = max(heaviest, size[w])
        if heaviest <= n // 2:
            centroids.append(v)
    return min(encode(c, -1) for c in centroids)


def _parents_from_adj(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    parents_by_child = {}
    order = [0]
    seen = {0}
    for v in order:
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parents_by_child[w] = v
                order.append(w)
    relabel = {v: i for i, v in enumerate(order)}
    parents = [0] * (n - 1)
    for child, parent in parents_by_child.items():
        parents[relabel[child] - 1] = relabel[parent]
    return parents


def tree_catalog(max_vertices: int) -> list[Graph]:
    """All non-isomorphic trees with 1..max_vertices vertices."""
    out = [build_tree([])]
    for n in range(2, max_vertices + 1):
        seen: set[str] = set()
        trees = []
        if n == 2:
            seqs: list[tuple[int, ...]] = [()]
        else:
            seqs = list(product(range(n), repeat=n - 2))
        for seq in seqs:
            adj = _tree_from_pruefer(seq, n)
            key = _ahu_canonical(adj)
            if key not in seen:
                seen.add(key)
                trees.append(build_tree(_parents_from_adj(adj)))
        out.extend(trees)
    return out
