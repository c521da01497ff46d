import random

import pytest

from rmhyper.coloring import (
    Coloring,
    ColoringError,
    EdgeClass,
    PartitionLimitError,
    VerdictStatus,
    classify_edge,
    coloring_is_good,
    enumerate_partitions,
    find_good_coloring,
    find_part_rainbow_bad,
    has_rainbow_edge,
    is_part_rainbow,
    search_order,
    verify_part_rainbow_forced,
    verify_rm_unavoidable,
)
from rmhyper.core import Hypergraph, PartiteHypergraph, complete_hypergraph

from oracles import bell_number, exhaustive_good_verdict, random_graph, random_hypergraph


def triple():
    return Hypergraph([1, 2, 3], [[1, 2, 3]])


def rainbow_path():
    return PartiteHypergraph(
        Hypergraph(["x", "y", "z"], [{"x", "y"}, {"y", "z"}]), [("x", "z"), ("y",)]
    )


class TestClassifyEdge:
    def test_three_kinds(self):
        e = frozenset({1, 2, 3})
        assert classify_edge({1: 0, 2: 0, 3: 0}, e) is EdgeClass.MONOCHROMATIC
        assert classify_edge({1: 0, 2: 1, 3: 2}, e) is EdgeClass.RAINBOW
        assert classify_edge({1: 0, 2: 0, 3: 1}, e) is EdgeClass.MIXED

    def test_uncolored_vertex_raises(self):
        with pytest.raises(ColoringError, match="uncolored"):
            classify_edge({1: 0, 2: 0}, frozenset({1, 2, 3}))

    def test_two_edges_are_never_mixed(self):
        e = frozenset({1, 2})
        assert classify_edge({1: 0, 2: 0}, e) is EdgeClass.MONOCHROMATIC
        assert classify_edge({1: 0, 2: 1}, e) is EdgeClass.RAINBOW


class TestColoringCanonicalForm:
    def test_canonicalises_to_restricted_growth(self):
        h = Hypergraph([0, 1, 2, 3], [[0, 1], [2, 3]])
        c = Coloring.from_assignment(h, {0: 7, 1: 7, 2: 3, 3: 7})
        assert [c.assignment[v] for v in h.vertices] == [0, 0, 1, 0]

    def test_missing_vertex_rejected(self):
        h = Hypergraph([0, 1], [[0, 1]])
        with pytest.raises(ColoringError):
            Coloring.from_assignment(h, {0: 0})

    def test_class_sizes(self):
        h = Hypergraph(range(4), [[0, 1]])
        c = Coloring.from_assignment(h, {0: 5, 1: 5, 2: 9, 3: 9})
        assert c.class_sizes() == (2, 2)
        assert c.num_classes == 2


class TestEnumeratePartitions:
    @pytest.mark.parametrize("n,count", [(1, 1), (3, 5), (5, 52)])
    def test_known_counts(self, n, count):
        assert sum(1 for _ in enumerate_partitions(n)) == count

    def test_matches_bell_numbers(self):
        for n in range(9):
            assert sum(1 for _ in enumerate_partitions(n)) == bell_number(n)

    def test_all_distinct_and_canonical(self):
        seen = set(enumerate_partitions(6))
        assert len(seen) == bell_number(6)
        for rgs in seen:
            top = 0
            for value in rgs:
                assert 0 <= value <= top
                top = max(top, value + 1)

    def test_limit_enforced(self):
        with pytest.raises(PartitionLimitError):
            next(enumerate_partitions(16))


class TestFindGoodColoring:
    def test_single_triple_has_witness(self):
        v = find_good_coloring(triple())
        assert v.status is VerdictStatus.WITNESS_FOUND
        assert coloring_is_good(triple(), v.coloring)

    def test_any_graph_with_an_edge_holds(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph(rng)
            assert verify_rm_unavoidable(g).status is VerdictStatus.PROPERTY_HOLDS

    def test_complete_three_uniform_on_five_holds(self):
        v = find_good_coloring(complete_hypergraph(5, 3))
        assert v.status is VerdictStatus.PROPERTY_HOLDS

    def test_empty_edge_set_any_coloring_is_good(self):
        h = Hypergraph(range(3), [])
        v = find_good_coloring(h)
        assert v.status is VerdictStatus.WITNESS_FOUND

    def test_pigeonhole_sharpness(self):
        # on (r-1)^2 vertices a coloring with r-1 classes of size r-1 is good
        for r in (3, 4):
            tight = find_good_coloring(complete_hypergraph((r - 1) ** 2 + 1, r))
            assert tight.status is VerdictStatus.PROPERTY_HOLDS
            loose = find_good_coloring(complete_hypergraph((r - 1) ** 2, r))
            assert loose.status is VerdictStatus.WITNESS_FOUND
            sizes = loose.coloring.class_sizes()
            assert len(sizes) == r - 1 and all(s == r - 1 for s in sizes)

    def test_planted_good_coloring_is_found(self):
        rng = random.Random(2025)
        for _ in range(25):
            n = rng.randint(4, 9)
            planted = {v: rng.randint(0, 2) for v in range(n)}
            edges = set()
            for _ in range(12):
                size = rng.randint(3, min(4, n))
                e = frozenset(rng.sample(range(n), size))
                distinct = len({planted[v] for v in e})
                if 1 < distinct < len(e):
                    edges.add(e)
            h = Hypergraph(range(n), sorted(tuple(sorted(e)) for e in edges))
            v = find_good_coloring(h)
            assert v.status is VerdictStatus.WITNESS_FOUND
            assert coloring_is_good(h, v.coloring)

    def test_budget_exhaustion_reports_nodes(self):
        h = complete_hypergraph(8, 4)
        v = find_good_coloring(h, budget=5)
        assert v.status is VerdictStatus.BUDGET_EXCEEDED
        assert v.nodes == 6  # the count that crossed the budget is reported

    def test_witness_valid_under_class_relabeling(self):
        h = Hypergraph(range(5), [[0, 1, 2], [2, 3, 4]])
        v = find_good_coloring(h)
        assert v.status is VerdictStatus.WITNESS_FOUND
        relabeled = {vx: 100 - c for vx, c in v.coloring.assignment.items()}
        assert coloring_is_good(h, relabeled)

    def test_verdicts_match_exhaustive_oracle(self):
        expected = {
            "witness": VerdictStatus.WITNESS_FOUND,
            "holds": VerdictStatus.PROPERTY_HOLDS,
        }
        rng = random.Random(77)
        for _ in range(60):
            h = random_hypergraph(rng, max_vertices=7, max_edges=8)
            kind, _ = exhaustive_good_verdict(h)
            assert find_good_coloring(h).status is expected[kind]

    def test_order_strategies_agree(self):
        rng = random.Random(5)
        for _ in range(25):
            h = random_hypergraph(rng, max_vertices=6, max_edges=6)
            a = find_good_coloring(h, order_strategy="connectivity").status
            b = find_good_coloring(h, order_strategy="degree").status
            assert a == b

    def test_unknown_order_rejected(self):
        with pytest.raises(ValueError):
            search_order(triple(), "alphabetical")


class TestPartRainbow:
    def test_rainbow_path_is_forced(self):
        v = find_part_rainbow_bad(rainbow_path())
        assert v.status is VerdictStatus.PROPERTY_HOLDS

    def test_single_cross_part_edge_is_not_forced(self):
        p = PartiteHypergraph(Hypergraph(["u", "v"], [{"u", "v"}]), [("u",), ("v",)])
        v = find_part_rainbow_bad(p)
        assert v.status is VerdictStatus.WITNESS_FOUND
        assert v.coloring.assignment["u"] == v.coloring.assignment["v"]
        assert is_part_rainbow(p, v.coloring)
        assert not has_rainbow_edge(p.base, v.coloring)

    def test_witness_reverifies(self):
        base = Hypergraph(range(4), [[0, 2], [1, 3]])
        p = PartiteHypergraph(base, [(0, 1), (2, 3)])
        v = find_part_rainbow_bad(p)
        assert v.status is VerdictStatus.WITNESS_FOUND
        assert is_part_rainbow(p, v.coloring)
        assert not has_rainbow_edge(base, v.coloring)

    def test_verify_alias(self):
        assert (
            verify_part_rainbow_forced(rainbow_path()).status
            is VerdictStatus.PROPERTY_HOLDS
        )

    def test_part_rainbow_exhausts_against_bruteforce(self):
        # brute force: enumerate partitions, filter part-rainbow, look for one
        # with no rainbow edge
        rng = random.Random(31)
        from oracles import iter_rgs, random_partite

        for _ in range(40):
            p = random_partite(rng)
            n = p.num_vertices
            order = {v: i for i, v in enumerate(p.vertices)}
            found = None
            for rgs in iter_rgs(n):
                assignment = {v: rgs[order[v]] for v in p.vertices}
                if not is_part_rainbow(p, assignment):
                    continue
                if not has_rainbow_edge(p.base, assignment):
                    found = assignment
                    break
            got = find_part_rainbow_bad(p)
            if found is None:
                assert got.status is VerdictStatus.PROPERTY_HOLDS
            else:
                assert got.status is VerdictStatus.WITNESS_FOUND
