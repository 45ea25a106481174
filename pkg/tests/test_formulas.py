from itertools import product

import pytest

from pebbling import (alpha, build_cycle, build_path, build_tree,
                      check_cycle_convexity, cycle_pebbling_formula,
                      j2m_formula, jahangir_pebbling_formula,
                      max_path_partition, t_pebbling_even_cycle,
                      tree_catalog, tree_pebbling_formula,
                      validate_t_fold_rule)
from pebbling.formulas import FormulaError


def all_path_partitions(g, root):
    """Exhaustive oracle: every edge partition of the root-oriented tree into
    directed paths, as a sorted size sequence.

    A partition is a choice, per non-root vertex v, of whether v's outgoing
    edge starts a fresh path or extends the path arriving from one chosen
    child of v."""
    parent = [-2] * g.vertex_count
    parent[root] = -1
    order = [root]
    for v in order:
        for w in g.adjacency[v]:
            if parent[w] == -2:
                parent[w] = v
                order.append(w)
    children = {v: [w for w in g.adjacency[v] if parent[w] == v]
                for v in range(g.vertex_count)}
    non_root = [v for v in order if v != root]
    choices = [([None] + children[v]) for v in non_root]
    for combo in product(*choices):
        # cont[v] = c means c's path continues through v's outgoing edge;
        # each non-root vertex owns one edge (v -> parent[v]), so a path is
        # a maximal chain linked by cont, counted from its topmost edge down
        cont = dict(zip(non_root, combo))
        continued = {c for c in combo if c is not None}
        sizes = []
        for v in non_root:
            if v in continued:
                continue
            length = 1
            cur = v
            while cont.get(cur) is not None:
                length += 1
                cur = cont[cur]
            sizes.append(length)
        yield tuple(sorted(sizes, reverse=True))


def majorizes(a, b):
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return len(a) >= len(b)


class TestMaxPathPartition:
    def test_path_rooted_at_end(self):
        g = build_path(3)
        assert max_path_partition(g, 0).sizes == (3,)

    def test_star_leaf_root(self):
        star = build_tree([0, 0, 0])
        assert max_path_partition(star, 1).sizes == (2, 1)

    def test_single_vertex(self):
        g = build_tree([])
        assert max_path_partition(g, 0).sizes == ()

    def test_sizes_sum_to_edges(self):
        for g in tree_catalog(7):
            for root in range(g.vertex_count):
                assert sum(max_path_partition(g, root).sizes) == g.edge_count

    def test_non_tree_rejected(self):
        with pytest.raises(FormulaError):
            max_path_partition(build_cycle(4), 0)

    def test_majorizes_every_partition_small_trees(self):
        # exhaustive cross-check on every tree with <= 7 edges, every root
        for g in tree_catalog(8):
            if g.edge_count > 7:
                continue
            for root in range(g.vertex_count):
                best = max_path_partition(g, root).sizes
                seen = set(all_path_partitions(g, root))
                assert best in seen
                for other in seen:
                    assert majorizes(best, other), (best, other)


class TestTreeFormula:
    def test_path_length_three(self):
        assert tree_pebbling_formula(build_path(3), 0) == 8

    def test_star_leaf(self):
        assert tree_pebbling_formula(build_tree([0, 0, 0]), 1) == 5

    def test_single_edge(self):
        assert tree_pebbling_formula(build_path(1), 0) == 2

    def test_single_vertex(self):
        assert tree_pebbling_formula(build_tree([]), 0) == 1


class TestCycleFormula:
    @pytest.mark.parametrize("k,expected", [
        (2, 2), (3, 3), (4, 4), (5, 5), (6, 8), (7, 11), (8, 16), (9, 21),
        (10, 32), (12, 64),
    ])
    def test_values(self, k, expected):
        assert cycle_pebbling_formula(k) == expected

    def test_too_small(self):
        with pytest.raises(FormulaError):
            cycle_pebbling_formula(1)


class TestConvexity:
    def test_examples(self):
        rows = {r["n"]: r for r in check_cycle_convexity([3, 4, 6])}
        assert (rows[4]["lhs"], rows[4]["rhs"]) == (8, 8)
        assert (rows[6]["lhs"], rows[6]["rhs"]) == (16, 16)
        assert (rows[3]["lhs"], rows[3]["rhs"]) == (6, 6)

    def test_range_holds(self):
        assert all(r["holds"] for r in check_cycle_convexity(range(3, 13)))


class TestTFoldRule:
    def test_values(self):
        assert t_pebbling_even_cycle(2, 3) == 12
        assert t_pebbling_even_cycle(2, 1) == 4 == cycle_pebbling_formula(4)
        assert t_pebbling_even_cycle(3, 1) == 8 == cycle_pebbling_formula(6)

    def test_out_of_range(self):
        with pytest.raises(FormulaError):
            t_pebbling_even_cycle(0, 1)

    def test_gate_small(self):
        records = validate_t_fold_rule(cases=((2, 1), (2, 2)))
        assert all(r["agrees"] for r in records)


class TestAlpha:
    @pytest.mark.parametrize("n,m,expected", [(2, 8, 13), (2, 9, 15), (4, 8, 33)])
    def test_values(self, n, m, expected):
        br = alpha(n, m)
        assert br.alpha == expected
        assert (br.s_max, br.m_max, br.l_max) == (
            cycle_pebbling_formula(n) - 1,
            cycle_pebbling_formula(n + 1) - 1,
            cycle_pebbling_formula(n + 2) - 1,
        )

    @pytest.mark.parametrize("n,m", [(3, 8), (1, 8), (2, 7), (0, 9)])
    def test_out_of_scope(self, n, m):
        with pytest.raises(FormulaError):
            alpha(n, m)


class TestJahangirFormula:
    @pytest.mark.parametrize("n,m,expected", [(2, 8, 26), (2, 9, 28), (4, 8, 90)])
    def test_values(self, n, m, expected):
        assert jahangir_pebbling_formula(n, m) == expected

    def test_odd_n_rejected(self):
        with pytest.raises(FormulaError):
            jahangir_pebbling_formula(3, 8)

    def test_small_m_rejected(self):
        with pytest.raises(FormulaError):
            jahangir_pebbling_formula(2, 7)


class TestJ2m:
    def test_values(self):
        assert j2m_formula(8) == 26
        assert j2m_formula(10) == 30

    def test_matches_general_formula(self):
        assert j2m_formula(9) == 28 == jahangir_pebbling_formula(2, 9)

    def test_identity_through_64(self):
        for m in range(8, 65):
            assert jahangir_pebbling_formula(2, m) == 2 * m + 10

    def test_out_of_range(self):
        with pytest.raises(FormulaError):
            j2m_formula(7)
