import json

import pytest

from pebbling import (alpha, build_dstar, build_greedy_counterexample,
                      build_jahangir_lower_bound, build_path_class_extremal,
                      classify_path_segment, greedy_counterexample_rotation_scan,
                      jahangir_pebbling_formula, max_unsolvable, total_on)
from pebbling.extremal import ExtremalError


class TestDstar:
    def test_2_8_segment_loads(self):
        case = build_dstar(2, 8)
        loads = [total_on(case.dist, set(seg) - {seg[-1]})
                 for seg in case.layout.segments]
        # half-open segments recover the per-segment pattern 0,S,L,S,L,S,L,S
        assert loads == [0, 1, 3, 1, 3, 1, 3, 1]
        assert case.dist.size == 13 == alpha(2, 8).alpha

    def test_2_8_verification(self):
        case = build_dstar(2, 8)
        records = case.verify(budget=10**7)
        assert [r["root"] for r in records] == ["u", "v1", "v3"]
        assert all(r["ok"] for r in records)

    def test_4_8_total(self):
        assert build_dstar(4, 8).dist.size == 33 == alpha(4, 8).alpha

    @pytest.mark.parametrize("n", [2, 4, 6])
    @pytest.mark.parametrize("m", range(8, 13))
    def test_size_equals_alpha(self, n, m):
        assert build_dstar(n, m).dist.size == alpha(n, m).alpha

    def test_odd_m_pattern(self):
        case = build_dstar(2, 9)
        assert case.dist.size == 15 == alpha(2, 9).alpha
        # middle segment oriented toward its right endpoint
        assert "middle segment 7" in case.note

    def test_out_of_scope(self):
        with pytest.raises(Exception):
            build_dstar(3, 8)
        with pytest.raises(Exception):
            build_dstar(2, 7)


class TestLowerBound:
    def test_2_8_construction(self):
        case = build_jahangir_lower_bound(2, 8)
        assert case.dist.size == 25 == jahangir_pebbling_formula(2, 8) - 1
        assert case.dist.counts[9] == 15  # 3 from dstar + 12 extra

    def test_2_8_unsolvable_for_target(self):
        case = build_jahangir_lower_bound(2, 8)
        records = case.verify(budget=10**8)
        assert len(records) == 1
        assert records[0]["root"] == "v2"  # index n/2 = 1
        assert records[0]["ok"]

    def test_2_9_total(self):
        assert build_jahangir_lower_bound(2, 9).dist.size == 27


class TestPathClassExtremal:
    def test_n2_cases(self):
        assert build_path_class_extremal(2, 1).dist.counts == (0, 1, 0)
        assert build_path_class_extremal(2, 2).dist.counts == (1, 1, 0)
        assert build_path_class_extremal(2, 3).dist.counts == (0, 3, 0)

    @pytest.mark.parametrize("n", [2, 4])
    @pytest.mark.parametrize("case,profile", [(1, "S"), (2, "M"), (3, "L")])
    def test_profile_and_extremality(self, n, case, profile):
        built = build_path_class_extremal(n, case)
        assert classify_path_segment(n, built.dist) == profile
        # no larger distribution shares the profile: the class's defining
        # unsolvability queries cap the maximum exactly at this size
        queries = {
            "S": [(0, 1), (n, 1)],
            "M": [(n, 1), (0, 2)],  # oriented toward v0
            "L": [(0, 2), (n, 2)],
        }[profile]
        assert max_unsolvable(built.graph, queries).value == built.dist.size

    def test_verification_queries_pass(self):
        for case in (1, 2, 3):
            built = build_path_class_extremal(4, case)
            assert all(r["ok"] for r in built.verify())

    def test_odd_length_rejected(self):
        with pytest.raises(ExtremalError):
            build_path_class_extremal(3, 1)


class TestGreedyCounterexample:
    def test_j23(self):
        case = build_greedy_counterexample("J23")
        assert case.dist.size == 8
        records = case.verify()
        by_policy = {r["policy"]: r for r in records}
        assert by_policy["greedy"]["observed"] == "unsolvable"
        assert by_policy["unrestricted"]["observed"] == "solvable"

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_gm(self, m):
        case = build_greedy_counterexample("Gm", m=m)
        assert case.dist.size == 8 + m
        assert all(r["ok"] for r in case.verify())

    def test_gm_clone_pebbles(self):
        case = build_greedy_counterexample("Gm", m=2)
        assert case.graph.vertex_count == 9
        assert case.dist.counts[7] == case.dist.counts[8] == 1

    def test_rotation_scan(self):
        scan = greedy_counterexample_rotation_scan()
        assert scan[0]["counterexample"]
        # rotations by a graph automorphism behave identically
        assert scan[2]["counterexample"] and scan[4]["counterexample"]

    def test_bad_kind(self):
        with pytest.raises(ExtremalError):
            build_greedy_counterexample("nope")


class TestSerialization:
    def test_json_bundle(self):
        case = build_dstar(2, 8)
        data = json.loads(case.to_json())
        assert data["graph"] == "jahangir:2,8"
        assert data["size"] == 13
        assert len(data["queries"]) == 3
        assert all(q["expect"] == "unsolvable" for q in data["queries"])

    def test_json_distribution_parses_back(self):
        from pebbling import parse_distribution

        case = build_greedy_counterexample("J23")
        data = json.loads(case.to_json())
        assert parse_distribution(case.graph, data["distribution"]) == case.dist
