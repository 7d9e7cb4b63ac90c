import time

import pytest

from alpha2minor import (
    PreconditionError,
    SearchDeadlineExceeded,
    check_packing_conditions,
    exchange_improve,
    find_p3_packing,
    named,
    validate_packing,
    verify_packing_characterization,
)
from alpha2minor.graphs import Graph
from alpha2minor.packing import (
    P3Packing,
    minimum_clique_capacity,
    uncovered_outside_neighborhood,
)
from oracles import brute_min_doubled_capacity, brute_packing_exists


class TestFindPacking:
    def test_cycle_single_path(self, c5):
        packing = find_p3_packing(c5, 1)
        assert packing.triples == ((0, 1, 2),)
        assert validate_packing(c5, packing) == []

    def test_complete_graph_has_none(self):
        assert find_p3_packing(named("complete", 7), 1) is None

    def test_five_wheel_has_no_two(self, five_wheel):
        # Cross-checked by an independent combination-based search.
        assert find_p3_packing(five_wheel, 2) is None
        assert not brute_packing_exists(five_wheel, 2)

    def test_zero_is_trivial(self, c5):
        assert find_p3_packing(c5, 0) == P3Packing(())

    def test_agrees_with_combination_oracle(self, universe):
        for n in range(1, 7):
            for g in universe(n):
                for ell in (1, 2):
                    found = find_p3_packing(g, ell)
                    assert (found is not None) == brute_packing_exists(g, ell)
                    if found is not None:
                        assert validate_packing(g, found) == []

    def test_deadline_cancellation(self):
        g = named("petersen_complement")
        with pytest.raises(SearchDeadlineExceeded):
            find_p3_packing(g, 3, deadline=time.monotonic() - 1.0)


class TestConditions:
    def test_cycle(self, c5):
        report = check_packing_conditions(c5, 1)
        assert report.size_ok and report.connectivity_ok
        assert report.capacity_ok and report.anti_matching_ok
        assert not report.five_wheel_exception
        assert report.all_hold
        # At threshold 1 every maximal clique (an edge, doubled capacity 5)
        # clears the bound with margin, so sub-cliques are not scanned.
        assert report.min_doubled_capacity == 5
        # At threshold 2 the margin is gone and the exhaustive scan finds the
        # true minimum: a single cycle vertex with doubled capacity 4.
        tight = check_packing_conditions(c5, 2)
        assert tight.min_doubled_capacity == 4
        assert tight.min_capacity_clique == frozenset({0})
        assert tight.capacity_ok and not tight.size_ok  # 5 < 3 * 2

    def test_complete_fails_anti_matching(self):
        report = check_packing_conditions(named("complete", 6), 1)
        assert not report.anti_matching_ok
        assert not report.all_hold

    def test_five_wheel_exception_case(self, five_wheel):
        report = check_packing_conditions(five_wheel, 2)
        assert report.all_hold
        assert report.five_wheel_exception
        assert find_p3_packing(five_wheel, 2) is None

    def test_capacity_witness_is_clique(self, universe):
        for g in universe(6):
            report = check_packing_conditions(g, 2)
            members = sorted(report.min_capacity_clique)
            assert members
            assert all(
                g.has_edge(u, v) for u in members for v in members if u < v
            )

    def test_minimum_capacity_matches_all_clique_scan(self, universe):
        for n in range(1, 7):
            for g in universe(n):
                expected = brute_min_doubled_capacity(g)
                for ell in (0, 1, 2, 3):
                    got, _ = minimum_clique_capacity(g, ell)
                    assert (got >= 2 * ell) == (expected >= 2 * ell)
                # with a high threshold the scan is fully exhaustive
                got, _ = minimum_clique_capacity(g, n)
                assert got == expected

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            check_packing_conditions(named("cycle", 6), 1)


class TestCharacterization:
    def test_positive_and_negative_sides(self, c5):
        assert verify_packing_characterization(c5, 1)
        assert verify_packing_characterization(named("complete", 6), 1)

    def test_five_wheel_excluded(self, five_wheel):
        with pytest.raises(PreconditionError):
            verify_packing_characterization(five_wheel, 2)
        assert verify_packing_characterization(five_wheel, 1)


def _exchange_instance(extra_edges):
    """Vertices 0..5: edge (0, 1), packed path 2-3-4 inside N[{0, 1}], b = 5
    attached per ``extra_edges``."""
    base = [(0, 1), (2, 3), (3, 4)]
    base += [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
    return Graph.from_edges(6, base + extra_edges)


class TestExchange:
    def test_case_both_endpoints(self):
        g = _exchange_instance([(5, 2), (5, 4)])
        out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
        assert out.triples == ((4, 5, 2),)

    def test_case_first_endpoint_only(self):
        g = _exchange_instance([(5, 2)])
        out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
        assert out.triples == ((3, 2, 5),)

    def test_case_first_endpoint_and_middle(self):
        g = _exchange_instance([(5, 2), (5, 3)])
        out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
        assert out.triples == ((4, 3, 5),)

    def test_mirrored_last_endpoint_only(self):
        g = _exchange_instance([(5, 4)])
        out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
        assert out.triples == ((3, 4, 5),)

    def test_mirrored_last_endpoint_and_middle(self):
        g = _exchange_instance([(5, 4), (5, 3)])
        out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
        assert out.triples == ((2, 3, 5),)

    def test_result_reaches_goal(self):
        for extra in ([(5, 2)], [(5, 4)], [(5, 2), (5, 4)], [(5, 2), (5, 3)]):
            g = _exchange_instance(extra)
            out = exchange_improve(g, (0, 1), P3Packing(((2, 3, 4),)))
            assert validate_packing(g, out) == []
            assert uncovered_outside_neighborhood(g, (0, 1), out) == frozenset()

    def test_errors(self, c5):
        with pytest.raises(PreconditionError):
            exchange_improve(c5, (0, 2), P3Packing(()))  # not an edge
        with pytest.raises(PreconditionError):
            exchange_improve(c5, (0, 1), P3Packing(((0, 1, 2),)))  # overlaps edge
        g = _exchange_instance([(5, 2)])
        with pytest.raises(PreconditionError):
            exchange_improve(g, (0, 1), P3Packing(((2, 4, 3),)))  # not a path
