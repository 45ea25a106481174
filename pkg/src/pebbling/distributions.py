"""Pebbling distributions: per-vertex pebble counts tied to a specific graph.

Distributions are value objects.  They carry the fingerprint of the graph
they were created for, and refuse to be combined across graphs.

Text format: comma-separated "label=count" pairs, omitted labels mean zero,
e.g. "v2=3,v6=3,v1=1,u=1".  A JSON object {label: count} is also accepted
and emitted.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import comb

from .graphs import Graph, GraphError

# Counts are plain Python integers (no wraparound); arithmetic that would be
# nonsensical (negative counts) raises instead.
COUNT_LIMIT = 10**12


class DistributionError(ValueError):
    """Malformed distribution or graph/distribution mismatch."""


@dataclass(frozen=True)
class Distribution:
    """Pebble counts per vertex, aligned with one graph's vertex indexing."""

    counts: tuple[int, ...]
    graph_fingerprint: str

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def check_graph(self, g: Graph) -> None:
        if self.graph_fingerprint != g.fingerprint:
            raise DistributionError("distribution belongs to a different graph")

    def with_added(self, g: Graph, v: int, amount: int) -> "Distribution":
        self.check_graph(g)
        c = list(self.counts)
        c[v] += amount
        if c[v] < 0:
            raise DistributionError(f"negative count at vertex {v}")
        if c[v] > COUNT_LIMIT:
            raise DistributionError("count overflow")
        return Distribution(tuple(c), self.graph_fingerprint)

    def support(self) -> list[int]:
        return [v for v, c in enumerate(self.counts) if c > 0]


def distribution(g: Graph, counts_by_vertex: dict[int, int] | list[int] | None = None) -> Distribution:
    """Make a Distribution for g from a dense list or a sparse {vertex: count}."""
    n = g.vertex_count
    if counts_by_vertex is None:
        counts = [0] * n
    elif isinstance(counts_by_vertex, dict):
        counts = [0] * n
        for v, c in counts_by_vertex.items():
            if not 0 <= v < n:
                raise DistributionError(f"vertex {v} out of range")
            counts[v] = c
    else:
        if len(counts_by_vertex) != n:
            raise DistributionError("dense counts must cover every vertex")
        counts = list(counts_by_vertex)
    for v, c in enumerate(counts):
        if c < 0:
            raise DistributionError(f"negative count at vertex {v}")
        if c > COUNT_LIMIT:
            raise DistributionError("count overflow")
    return Distribution(tuple(counts), g.fingerprint)


def total_on(d: Distribution, subset) -> int:
    """Total pebbles on a set of vertices."""
    return sum(d.counts[v] for v in subset)


def contains(d: Distribution, other: Distribution) -> bool:
    """Pointwise >= comparison; both distributions must share a graph."""
    if d.graph_fingerprint != other.graph_fingerprint:
        raise DistributionError("cannot compare distributions from different graphs")
    return all(a >= b for a, b in zip(d.counts, other.counts))


# ---------------------------------------------------------------------------
# Enumeration and sampling of weak compositions
# ---------------------------------------------------------------------------


def composition_count(total: int, parts: int) -> int:
    """Number of weak compositions of `total` into `parts` parts."""
    if parts == 0:
        return 1 if total == 0 else 0
    return comb(total + parts - 1, parts - 1)


def compositions(total: int, parts: int):
    """Yield weak compositions of `total` into `parts` parts, ascending
    lexicographic order over count vectors."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    c = [0] * parts
    c[-1] = total
    if total == 0:
        yield tuple(c)
        return
    while True:
        yield tuple(c)
        # successor: pull one unit left of the rightmost nonzero entry,
        # dump the remainder of that entry back into the last slot
        i = parts - 1
        while c[i] == 0:
            i -= 1
        if i == 0:
            return
        v = c[i]
        c[i] = 0
        c[i - 1] += 1
        c[-1] = v - 1


def unrank_composition(rank: int, total: int, parts: int) -> tuple[int, ...]:
    """The rank-th composition in the order produced by compositions()."""
    if not 0 <= rank < composition_count(total, parts):
        raise ValueError("rank out of range")
    out = []
    remaining = total
    for i in range(parts - 1):
        c = 0
        while True:
            block = composition_count(remaining - c, parts - i - 1)
            if rank < block:
                break
            rank -= block
            c += 1
        out.append(c)
        remaining -= c
    out.append(remaining)
    return tuple(out)


def enumerate_distributions(g: Graph, size: int, support=None):
    """Every distribution on g of total size exactly `size` whose pebbles lie
    on `support` (default all vertices), each exactly once, lexicographic."""
    if size < 0:
        raise DistributionError("size must be >= 0")
    n = g.vertex_count
    supp = list(range(n)) if support is None else sorted(support)
    fp = g.fingerprint
    for comp in compositions(size, len(supp)):
        counts = [0] * n
        for v, c in zip(supp, comp):
            counts[v] = c
        yield Distribution(tuple(counts), fp)


def sample_distribution(g: Graph, size: int, seed: int) -> Distribution:
    """Uniform over all weak compositions of `size` into |V| parts,
    deterministic for a fixed seed (rank sampling + unranking)."""
    if size < 0:
        raise DistributionError("size must be >= 0")
    n = g.vertex_count
    rng = random.Random(seed)
    rank = rng.randrange(composition_count(size, n))
    return Distribution(unrank_composition(rank, size, n), g.fingerprint)


# ---------------------------------------------------------------------------
# Text / JSON formats
# ---------------------------------------------------------------------------


def format_distribution(g: Graph, d: Distribution) -> str:
    d.check_graph(g)
    return ",".join(f"{g.labels[v]}={d.counts[v]}" for v in d.support())


def format_distribution_json(g: Graph, d: Distribution) -> str:
    d.check_graph(g)
    return json.dumps({g.labels[v]: d.counts[v] for v in d.support()})


def parse_distribution(g: Graph, text: str) -> Distribution:
    """Parse either the label=count format or a JSON object {label: count}."""
    text = text.strip()
    if not text:
        return distribution(g)
    if text.startswith("{"):
        try:
            pairs = json.loads(text)
        except json.JSONDecodeError as e:
            raise DistributionError(f"bad JSON distribution: {e}") from None
        if not isinstance(pairs, dict):
            raise DistributionError("JSON distribution must be an object")
        items = pairs.items()
    else:
        items = []
        for part in text.split(","):
            if "=" not in part:
                raise DistributionError(f"expected label=count, got {part!r}")
            label, _, value = part.partition("=")
            items.append((label.strip(), value.strip()))
    counts: dict[int, int] = {}
    for label, value in items:
        try:
            v = g.vertex(label)
        except GraphError as e:
            raise DistributionError(str(e)) from None
        try:
            c = int(value)
        except (TypeError, ValueError):
            raise DistributionError(f"bad count {value!r} for {label}") from None
        if v in counts:
            raise DistributionError(f"duplicate vertex {label}")
        counts[v] = c
    return distribution(g, counts)
