import pytest

from paritykit.errors import TooLarge
from paritykit.games import ParityGame, ParityGraph, is_even, solve
from paritykit.lab import (
    GenParams,
    brute_solve,
    random_bounded_pair,
    random_even_graph,
    random_game,
    rejecting_vertices,
    run_theorem_battery,
    shrink_game,
)
from paritykit.transduction import n_bound_check


class TestGenerators:
    def test_seed_determinism(self):
        p = GenParams(seed=99)
        assert random_game(p) == random_game(p)
        assert random_even_graph(p) == random_even_graph(p)
        assert random_bounded_pair(p, 1) == random_bounded_pair(p, 1)

    def test_vertex_count_honoured(self):
        for count in (3, 5, 9):
            p = GenParams(seed=5, vertex_count=count)
            assert len(random_game(p).graph.vertices) == count

    def test_no_terminals(self):
        for seed in range(20):
            g = random_game(GenParams(seed=seed)).graph
            assert not g.terminals

    def test_even_graphs_are_even(self):
        for seed in range(20):
            assert is_even(random_even_graph(GenParams(seed=seed)))

    def test_even_graph_shape_census(self):
        # both trivial and multi-vertex strategy graphs occur
        sizes = {
            len(random_even_graph(GenParams(seed=seed)).vertices)
            for seed in range(60)
        }
        assert any(s == 1 for s in sizes)
        assert any(s > 2 for s in sizes)

    def test_bounded_pairs_pass_their_check(self):
        for seed in range(15):
            n = seed % 3
            pair = random_bounded_pair(GenParams(seed=seed), n)
            assert n_bound_check(pair, n)[0]
            assert is_even(pair.graph_i())
            assert is_even(pair.graph_j())


class TestBruteSolve:
    def test_trivial_loops(self):
        g = ParityGraph.make([0], [(0, 0, 2)])
        gm = ParityGame.make(g, {0: "eve"})
        assert brute_solve(gm) == (frozenset({0}), frozenset())
        g1 = ParityGraph.make([0], [(0, 0, 1)])
        gm1 = ParityGame.make(g1, {0: "adam"})
        assert brute_solve(gm1) == (frozenset(), frozenset({0}))

    def test_agrees_with_solve(self):
        for seed in range(60):
            gm = random_game(GenParams(seed=seed, vertex_count=5, priority_cap=4))
            assert brute_solve(gm)[0] == solve(gm)[0]

    def test_size_cap(self):
        g = ParityGraph.make(
            range(12), [(v, w, 0) for v in range(12) for w in range(12)]
        )
        gm = ParityGame.make(g, {v: "eve" for v in range(12)})
        with pytest.raises(TooLarge):
            brute_solve(gm, cap=10_000)


class TestRejectingVertices:
    def test_odd_loop(self):
        g = ParityGraph.make([0, 1], [(0, 1, 2), (1, 1, 1)])
        assert rejecting_vertices(g) == frozenset({0, 1})

    def test_even_graph_has_none(self):
        g = ParityGraph.make([0], [(0, 0, 2)])
        assert rejecting_vertices(g) == frozenset()


class TestShrink:
    def test_preserves_predicate(self):
        gm = random_game(GenParams(seed=4, vertex_count=6))

        def has_odd_cycle(game):
            return not is_even(game.graph)

        if has_odd_cycle(gm):
            small = shrink_game(gm, has_odd_cycle)
            assert has_odd_cycle(small)
            assert len(small.graph.vertices) <= len(gm.graph.vertices)


class TestBattery:
    def test_empty_instance_count(self):
        report = run_theorem_battery(GenParams(instance_count=0))
        assert report.checks == [] and report.ok

    def test_small_battery_passes(self):
        report = run_theorem_battery(GenParams(seed=3, instance_count=4))
        assert report.ok, report.summary()
        assert len(report.checks) == 10
        assert "pass" in report.summary()

    def test_report_structured_emission(self):
        import json

        report = run_theorem_battery(GenParams(seed=3, instance_count=1))
        doc = json.loads(report.to_json())
        assert doc["ok"] is True
        assert len(doc["checks"]) == 10
        assert all("seconds" in c for c in doc["checks"])

    def test_battery_checks_named_after_criteria(self):
        report = run_theorem_battery(GenParams(seed=3, instance_count=2))
        names = [c.name for c in report.checks]
        assert names == [
            "solver-cross-oracle",
            "evenness-decomposition",
            "transduction-soundness",
            "bounded-pair-completeness",
            "strahler-completeness",
            "bounded-pair-low-strahler",
            "universal-trees",
            "composition-correctness",
            "guided-n-bound",
            "mutation-sensitivity",
        ]
