import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_connected_graph, random_counts
from pebbling import (Engine, Move, SolveQuery, Witness, apply_move,
                      blind_is_solvable, build_cycle, build_jahangir,
                      build_path, distribution, is_solvable, move_digraph,
                      normalize_witness, sinks_and_sources,
                      weight_certificate)
from pebbling.solver import (BudgetExceeded, SolverError, make_witness,
                             replay)


@pytest.fixture
def j23():
    g, layout = build_jahangir(2, 3)
    d = distribution(g, {1: 3, 5: 3, 0: 1, 6: 1})  # v2=3,v6=3,v1=1,u=1
    return g, layout, d


class TestApplyMove:
    def test_exact_supply(self):
        g = build_path(2)
        d = apply_move(g, distribution(g, {0: 2}), Move(0, 1))
        assert d.counts == (0, 1, 0)

    def test_leftover(self):
        g = build_path(2)
        d = apply_move(g, distribution(g, {0: 3}), Move(0, 1))
        assert d.counts == (1, 1, 0)

    def test_insufficient_pebbles(self):
        g = build_path(2)
        with pytest.raises(SolverError):
            apply_move(g, distribution(g, {0: 1}), Move(0, 1))

    def test_non_adjacent(self):
        g = build_path(3)
        with pytest.raises(SolverError):
            apply_move(g, distribution(g, {0: 2}), Move(0, 2))


class TestIsSolvable:
    def test_j23_unrestricted_solvable(self, j23):
        g, _, d = j23
        res = is_solvable(g, d, SolveQuery(root=3, t=1))
        assert res.status == "solvable"
        assert res.witness.end.counts[3] >= 1

    def test_j23_greedy_unsolvable(self, j23):
        g, _, d = j23
        res = is_solvable(g, d, SolveQuery(root=3, t=1, policy="greedy"))
        assert res.status == "unsolvable"

    def test_pebbles_already_on_root(self):
        g = build_cycle(5)
        d = distribution(g, {2: 3})
        res = is_solvable(g, d, SolveQuery(root=2, t=3))
        assert res.status == "solvable"
        assert res.witness.moves == ()

    def test_c4_antipode_three_unsolvable(self):
        g = build_cycle(4)
        d = distribution(g, {2: 3})
        res = is_solvable(g, d, SolveQuery(root=0, t=1))
        assert res.status == "unsolvable"
        assert res.certificate == "weight-bound"

    def test_c4_antipode_four_solvable(self):
        g = build_cycle(4)
        res = is_solvable(g, distribution(g, {2: 4}), SolveQuery(root=0))
        assert res.status == "solvable"

    def test_budget_gives_unknown(self):
        g, _ = build_jahangir(2, 8)
        from pebbling.extremal import build_jahangir_lower_bound

        case = build_jahangir_lower_bound(2, 8)
        res = is_solvable(case.graph, case.dist, SolveQuery(root=1), budget=100)
        assert res.status == "unknown"
        assert res.visited == 100
        with pytest.raises(BudgetExceeded):
            res.solvable

    def test_greedy_pre_strict_decrease(self, j23):
        g, _, d = j23
        res = is_solvable(g, d, SolveQuery(root=3, t=1, policy="greedy"),
                          backend="python")
        assert res.status == "unsolvable"
        # every greedy witness move must strictly decrease distance
        d2 = distribution(g, {1: 8})
        res2 = is_solvable(g, d2, SolveQuery(root=3, t=1, policy="greedy"))
        assert res2.status == "solvable"
        from pebbling import distances_from

        dist = distances_from(g, 3)
        for mv in res2.witness.moves:
            assert dist[mv.dst] < dist[mv.src]


class TestWeightCertificate:
    def test_c4_three_on_antipode(self):
        g = build_cycle(4)
        cert = weight_certificate(g, distribution(g, {2: 3}), root=0, t=1)
        assert cert is not None
        assert (cert["weight_numerator"], cert["weight_denominator"]) == (3, 4)

    def test_c4_four_on_antipode_no_certificate(self):
        g = build_cycle(4)
        assert weight_certificate(g, distribution(g, {2: 4}), root=0, t=1) is None
        assert is_solvable(g, distribution(g, {2: 4}), SolveQuery(root=0)).solvable

    def test_root_supply_never_certified(self, rng):
        for _ in range(50):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            t = rng.randrange(1, 4)
            counts = random_counts(rng, g.vertex_count, rng.randrange(0, 6))
            root = rng.randrange(g.vertex_count)
            counts[root] += t
            assert weight_certificate(g, distribution(g, counts), root, t) is None

    def test_certified_instances_are_unsolvable(self, rng):
        for _ in range(200):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            counts = random_counts(rng, g.vertex_count, rng.randrange(0, 7))
            root = rng.randrange(g.vertex_count)
            d = distribution(g, counts)
            if weight_certificate(g, d, root, 1) is not None:
                assert not blind_is_solvable(g, d, SolveQuery(root=root))


class TestSinksSources:
    def test_single_move(self):
        g = build_path(2)
        w = make_witness(g, distribution(g, {0: 2}), [(0, 1)])
        sources, sinks = sinks_and_sources(move_digraph(g, w))
        assert sources == {0}
        assert sinks == {1}

    def test_empty(self):
        g = build_path(2)
        w = make_witness(g, distribution(g, {0: 1}), [])
        sources, sinks = sinks_and_sources(move_digraph(g, w))
        assert sources == set() and sinks == set()

    def test_j23_witness_single_sink(self, j23):
        g, _, d = j23
        res = is_solvable(g, d, SolveQuery(root=3, t=1))
        norm = normalize_witness(g, res.witness)
        md = move_digraph(g, norm)
        assert md.is_acyclic()
        _, sinks = sinks_and_sources(md)
        assert sinks == {3}


class TestNormalize:
    def test_cancels_opposing_pair(self):
        g = build_path(2)
        # a->b, b->a pair plus a real delivery
        d = distribution(g, {0: 2, 1: 5})
        moves = [(1, 0), (0, 1), (1, 2), (1, 2)]
        w = make_witness(g, d, moves)
        norm = normalize_witness(g, w)
        assert norm.cost == w.cost - 2
        assert move_digraph(g, norm).single_direction_per_edge()
        assert norm.end.counts[2] >= w.end.counts[2]

    def test_fixed_point_unchanged(self):
        g = build_path(3)
        w = make_witness(g, distribution(g, {0: 4}), [(0, 1), (0, 1), (1, 2)])
        assert normalize_witness(g, w) is w

    def test_cancels_directed_triangle(self):
        g = build_cycle(3)
        d = distribution(g, {0: 4, 1: 2, 2: 2})
        # a 3-cycle of moves plus a delivery to vertex 1
        moves = [(0, 1), (1, 2), (2, 0), (0, 1)]
        w = make_witness(g, d, moves)
        norm = normalize_witness(g, w)
        md = move_digraph(g, norm)
        assert md.is_acyclic()
        assert md.single_direction_per_edge()
        assert norm.cost <= w.cost - 3
        assert norm.end.counts[1] >= w.end.counts[1]

    def test_invalid_witness_rejected(self):
        g = build_path(2)
        d = distribution(g, {0: 2})
        w = Witness(moves=(Move(0, 1), Move(0, 1)), start=d, end=d)
        with pytest.raises(SolverError):
            normalize_witness(g, w)

    def test_random_witnesses_normalize(self, rng):
        # random walks of legal moves, then normalize and check the contract
        for _ in range(300):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            n = g.vertex_count
            counts = random_counts(rng, n, rng.randrange(2, 12))
            d = distribution(g, counts)
            cur = list(counts)
            moves = []
            for _ in range(rng.randrange(0, 10)):
                movable = [v for v in range(n) if cur[v] >= 2]
                if not movable:
                    break
                a = rng.choice(movable)
                b = rng.choice(g.adjacency[a])
                moves.append((a, b))
                cur[a] -= 2
                cur[b] += 1
            w = make_witness(g, d, moves)
            norm = normalize_witness(g, w)
            md = move_digraph(g, norm)
            assert md.is_acyclic()
            assert md.single_direction_per_edge()
            assert norm.cost <= w.cost
            assert all(a >= b for a, b in zip(norm.end.counts, w.end.counts))


class TestSolverInvariants:
    def test_soundness_witness_replays(self, rng):
        for _ in range(200):
            g = random_connected_graph(rng, rng.randrange(2, 8))
            counts = random_counts(rng, g.vertex_count, rng.randrange(0, 8))
            root = rng.randrange(g.vertex_count)
            t = rng.choice([1, 1, 2])
            d = distribution(g, counts)
            res = is_solvable(g, d, SolveQuery(root=root, t=t))
            if res.status == "solvable":
                end = replay(g, d, res.witness.moves)
                assert end.counts[root] >= t

    def test_policy_containment(self, rng):
        for _ in range(200):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            counts = random_counts(rng, g.vertex_count, rng.randrange(0, 7))
            root = rng.randrange(g.vertex_count)
            d = distribution(g, counts)
            greedy = is_solvable(g, d, SolveQuery(root=root, policy="greedy"))
            if greedy.status == "solvable":
                unrestricted = is_solvable(g, d, SolveQuery(root=root))
                assert unrestricted.status == "solvable"

    def test_exactness_against_blind_oracle(self, rng):
        for _ in range(400):
            g = random_connected_graph(rng, rng.randrange(2, 8))
            counts = random_counts(rng, g.vertex_count, rng.randrange(0, 7))
            root = rng.randrange(g.vertex_count)
            policy = rng.choice(["unrestricted", "greedy"])
            d = distribution(g, counts)
            q = SolveQuery(root=root, policy=policy)
            assert is_solvable(g, d, q).solvable == blind_is_solvable(g, d, q)


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_monotone_under_added_pebbles(data):
    seed = data.draw(st.integers(0, 2**30))
    rng = random.Random(seed)
    g = random_connected_graph(rng, rng.randrange(2, 7))
    n = g.vertex_count
    counts = random_counts(rng, n, rng.randrange(0, 6))
    root = rng.randrange(n)
    d = distribution(g, counts)
    q = SolveQuery(root=root, t=rng.choice([1, 2]),
                   policy=rng.choice(["unrestricted", "greedy"]))
    if is_solvable(g, d, q).solvable:
        extra = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=4))
        bigger = list(counts)
        for v in extra:
            bigger[v] += 1
        assert is_solvable(g, distribution(g, bigger), q).solvable


class TestEngine:
    def test_session_reuse_accumulates(self, j23):
        g, _, d = j23
        engine = Engine(g)
        q = SolveQuery(root=3, t=1, policy="greedy")
        engine.solve(d, q)
        first = engine.total_visited
        engine.solve(d, q)  # memo makes the repeat free
        assert engine.total_visited == first

    def test_kernel_limit_falls_back(self):
        # 90-vertex cycle exceeds the compiled kernel's vertex capacity;
        # the engine must transparently use the pure kernel
        g = build_cycle(90)
        d = distribution(g, {45: 4})
        res = is_solvable(g, d, SolveQuery(root=44), backend=None)
        assert res.status == "solvable"
        res2 = is_solvable(g, d, SolveQuery(root=0))
        assert res2.status == "unsolvable"

    def test_huge_pile_falls_back_mid_session(self):
        # totals beyond the compiled kernel's lane width fall back per call
        g = build_cycle(4)
        engine = Engine(g)
        q = SolveQuery(root=0)
        counts = [0, 0, 70000, 0]
        status, cert, _ = engine.solve_counts(counts, q)
        assert status == 1  # 70000 >= 2^2 pebbles from distance 2
        counts2 = [0, 0, 3, 0]
        status2, cert2, _ = engine.solve_counts(counts2, q)
        assert status2 == 0
