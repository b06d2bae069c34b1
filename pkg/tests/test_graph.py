"""Parsing, component decomposition, and mask bookkeeping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netdismantle import (
    ComponentDecomposition,
    Graph,
    ParseError,
    components,
    full_mask,
    gcc_size,
    parse_edge_list,
)
from netdismantle.oracles import bfs_components

from conftest import random_graph


class TestParsing:
    def test_basic_two_column(self):
        g = parse_edge_list("1 2\n2 3\n")
        assert g.n == 3
        assert g.m == 2
        assert g.labels == ("1", "2", "3")

    def test_comments_and_blank_lines(self):
        g = parse_edge_list("% a comment\n# another\n\na b\nb c\n")
        assert g.n == 3
        assert g.m == 2

    def test_first_appearance_ids(self):
        g = parse_edge_list("z y\ny x\n")
        assert g.id_map == {"z": 0, "y": 1, "x": 2}

    def test_duplicate_edges_and_orientation_collapse(self):
        g = parse_edge_list("a b\nb a\na b\n")
        assert g.m == 1

    def test_self_loops_dropped(self):
        g = parse_edge_list("a a\na b\n")
        assert g.m == 1
        assert g.n == 2

    def test_extra_tokens_ignored(self):
        g = parse_edge_list("1 2 1.5 2009-01-01\n2 3 0.2\n")
        assert g.m == 2

    def test_short_line_rejected_with_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_edge_list("1 2\nxyz\n")
        assert "line 2" in str(err.value)

    def test_no_edges_rejected(self):
        with pytest.raises(ParseError):
            parse_edge_list("% only comments\n")
        with pytest.raises(ParseError):
            parse_edge_list("a a\n")

    def test_edges_lexicographically_sorted_and_canonical(self):
        g = parse_edge_list("5 1\n3 2\n5 2\n")
        e = g.edges
        assert (e[:, 0] < e[:, 1]).all()
        assert (np.diff(e[:, 0]) >= 0).all()


class TestGraphShape:
    def test_degree_and_neighbors(self):
        g = Graph.from_edges([(0, 1), (1, 2), (1, 3)])
        assert g.degree.tolist() == [1, 3, 1, 1]
        assert sorted(g.neighbors(1).tolist()) == [0, 2, 3]

    def test_stats(self):
        g = Graph.from_edges([(0, 1), (1, 2)], n=4)
        assert g.stats() == {"n": 4, "m": 2, "degree_min": 0, "degree_max": 2}

    def test_explicit_n_too_small(self):
        with pytest.raises(ValueError):
            Graph.from_edges([(0, 5)], n=3)

    def test_negative_ids_rejected(self):
        with pytest.raises(ValueError):
            Graph.from_edges([(-1, 2)])


class TestComponents:
    def test_path_all_active(self):
        g = Graph.from_edges([(0, 1), (1, 2)])
        dec = components(g, full_mask(3))
        assert dec.gcc_id == 0
        assert dec.gcc_size == 3
        assert dec.sizes == {0: 3}

    def test_component_ids_are_min_member(self):
        g = Graph.from_edges([(0, 1), (2, 3), (4, 5)], n=6)
        dec = components(g, full_mask(6))
        assert dec.component_id.tolist() == [0, 0, 2, 2, 4, 4]
        # three size-2 components tie; smallest id wins
        assert dec.gcc_id == 0

    def test_mask_removal_splits(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
        mask = full_mask(4)
        mask[1] = False
        dec = components(g, mask)
        assert dec.sizes == {0: 1, 2: 2}
        assert dec.gcc_id == 2
        assert dec.gcc_size == 2
        assert dec.component_id[1] == -1

    def test_empty_mask(self):
        g = Graph.from_edges([(0, 1)])
        dec = components(g, np.zeros(2, dtype=bool))
        assert dec.gcc_id == -1
        assert dec.gcc_size == 0
        assert dec.sizes == {}

    def test_star_hub_inactive_gcc_is_one(self):
        # star S5: removing the hub isolates every leaf
        g = Graph.from_edges([(0, i) for i in range(1, 6)])
        mask = full_mask(6)
        mask[0] = False
        assert gcc_size(g, mask) == 1

    def test_members_sorted(self):
        g = Graph.from_edges([(3, 5), (5, 9)], n=10)
        dec = components(g, full_mask(10))
        assert dec.members(3).tolist() == [3, 5, 9]

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(1, 40), drop=st.integers(0, 30))
    def test_matches_bfs_oracle(self, seed, n, drop):
        g = random_graph(seed, n, 0.12)
        rng = np.random.default_rng(seed + 1)
        mask = full_mask(n)
        if drop and n > 1:
            mask[rng.choice(n, size=min(drop, n - 1), replace=False)] = False
        dec = components(g, mask)
        oracle = {frozenset(c) for c in bfs_components(g, mask)}
        mine = {
            frozenset(int(v) for v in dec.members(c)) for c in dec.sizes
        }
        assert mine == oracle
        if oracle:
            assert dec.gcc_size == max(len(c) for c in oracle)
        for comp_id, size in dec.sizes.items():
            assert comp_id == min(int(v) for v in dec.members(comp_id))
            assert size == len(dec.members(comp_id))

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(2, 30))
    def test_gcc_monotone_under_removal(self, seed, n):
        g = random_graph(seed, n, 0.15)
        rng = np.random.default_rng(seed)
        mask = full_mask(n)
        previous = gcc_size(g, mask)
        for v in rng.permutation(n):
            mask[v] = False
            current = gcc_size(g, mask)
            assert current <= previous
            previous = current
