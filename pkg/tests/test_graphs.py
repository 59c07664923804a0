import math

import pytest

from graphroots.graphs import (
    Graph,
    Graph6Error,
    RngSpec,
    StepGraphon,
    add_edges,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_empty,
    gen_er,
    gen_path,
    parse_graph6,
    sample_graphon,
    write_graph6,
)


def random_graph(rng: RngSpec, idx: int, n: int, p: float = 0.5) -> Graph:
    return gen_er(n, p, rng, sample_index=idx)


class TestGraph6:
    # expected strings decoded by hand from the published format definition
    def test_triangle(self):
        g = parse_graph6("Bw")
        assert g.n == 3 and sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]
        assert write_graph6(gen_complete(3)) == "Bw"

    def test_empty_three(self):
        g = parse_graph6("B?")
        assert g.n == 3 and g.edge_count == 0

    def test_single_vertex(self):
        assert write_graph6(Graph(1, (0,))) == "@"
        assert parse_graph6("@").n == 1

    def test_path(self):
        assert write_graph6(gen_path(3)) == "Bg"
        assert sorted(parse_graph6("Bg").edges()) == [(0, 1), (1, 2)]

    def test_header_byte_out_of_range(self):
        with pytest.raises(Graph6Error) as ei:
            parse_graph6("\x1fw")
        assert ei.value.offset == 0

    def test_trailing_garbage(self):
        with pytest.raises(Graph6Error) as ei:
            parse_graph6("Bww")
        assert ei.value.offset == 2

    def test_nonzero_padding(self):
        # K2 needs 1 bit; the other 5 must be zero padding
        with pytest.raises(Graph6Error):
            parse_graph6("A" + chr(63 + 0b111111))

    def test_truncated(self):
        with pytest.raises(Graph6Error):
            parse_graph6("C")

    def test_large_order_header(self):
        g = gen_empty(100)
        text = write_graph6(g)
        assert text.startswith("~")
        back = parse_graph6(text)
        assert back.n == 100 and back.edge_count == 0

    def test_roundtrip_10000_random(self):
        rng = RngSpec(20260810)
        for i in range(10_000):
            n = 1 + i % 30
            g = random_graph(rng, i, n, p=0.1 + 0.08 * (i % 10))
            assert parse_graph6(write_graph6(g)).rows == g.rows

    def test_interop_with_reference_codec(self):
        # byte-for-byte agreement with networkx's graph6 writer
        import networkx as nx
        rng = RngSpec(314)
        for i in range(300):
            n = 1 + i % 25
            g = random_graph(rng, i, n, p=0.4)
            ref = nx.empty_graph(n)
            ref.add_edges_from(g.edges())
            theirs = nx.to_graph6_bytes(ref, header=False).decode().strip()
            assert write_graph6(g) == theirs
            assert parse_graph6(theirs).rows == g.rows


class TestGenerators:
    def test_path_edges(self):
        assert sorted(gen_path(3).edges()) == [(0, 1), (1, 2)]

    def test_cycle_edges(self):
        assert sorted(gen_cycle(4).edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_cycle_too_small(self):
        with pytest.raises(ValueError):
            gen_cycle(2)

    def test_complete_edge_count(self):
        for n in range(1, 9):
            assert gen_complete(n).edge_count == n * (n - 1) // 2

    def test_complete_bipartite_is_c4(self):
        from graphroots.enumeration import canonical_form
        assert canonical_form(gen_complete_bipartite(2, 2)) == canonical_form(gen_cycle(4))

    def test_degree_sum(self):
        rng = RngSpec(5)
        for i in range(200):
            g = random_graph(rng, i, 2 + i % 12)
            assert sum(g.degrees()) == 2 * g.edge_count

    def test_graph_invariants_enforced(self):
        with pytest.raises(ValueError):
            Graph(2, (1, 0))  # self-loop bit
        with pytest.raises(ValueError):
            Graph(2, (2, 0))  # asymmetric


class TestRandomModels:
    def test_er_p_zero_one(self):
        rng = RngSpec(1)
        assert gen_er(12, 0.0, rng).edge_count == 0
        assert gen_er(12, 1.0, rng).edge_count == 66

    def test_er_p_out_of_range(self):
        with pytest.raises(ValueError):
            gen_er(5, 1.5, RngSpec(0))

    def test_er_reproducible(self):
        a = gen_er(15, 0.4, RngSpec(77), sample_index=3)
        b = gen_er(15, 0.4, RngSpec(77), sample_index=3)
        c = gen_er(15, 0.4, RngSpec(77), sample_index=4)
        assert a.rows == b.rows
        assert a.rows != c.rows

    def test_er_mean_edges(self):
        # binomial mean C(20,2)/2 = 95, sd of the 1000-sample mean ~ 6.9/sqrt(1000)
        rng = RngSpec(424242)
        mean = sum(gen_er(20, 0.5, rng, i).edge_count for i in range(1000)) / 1000
        assert abs(mean - 95.0) <= 3 * math.sqrt(190 * 0.25 / 1000)

    def test_graphon_constant_matches_er(self):
        w = StepGraphon.constant(0.5)
        rng = RngSpec(9)
        mean = sum(sample_graphon(w, 20, rng, i).edge_count for i in range(1000)) / 1000
        assert abs(mean - 95.0) <= 3 * math.sqrt(190 * 0.25 / 1000)

    def test_graphon_zero(self):
        w = StepGraphon.constant(0.0)
        for i in range(5):
            assert sample_graphon(w, 10, RngSpec(2), i).edge_count == 0

    def test_graphon_two_block_bipartite(self):
        w = StepGraphon(((0.0, 1.0), (1.0, 0.0)), (0.5, 0.5))
        rng = RngSpec(31)
        for i in range(20):
            g = sample_graphon(w, 12, rng, i)
            # no odd cycles possible: zero diagonal forces bipartite
            colors = _two_color(g)
            assert colors is not None

    def test_graphon_validation(self):
        with pytest.raises(ValueError):
            StepGraphon(((0.5, 0.2), (0.3, 0.5)), (0.5, 0.5))  # asymmetric
        with pytest.raises(ValueError):
            StepGraphon(((1.5,),), (1.0,))
        with pytest.raises(ValueError):
            StepGraphon(((0.5,),), (0.9,))


def _two_color(g: Graph):
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in range(g.n):
                if g.has_edge(v, u):
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        return None
    return color


class TestAddEdges:
    def test_close_path(self):
        g2, inc = add_edges(gen_path(3), [(0, 2)])
        assert sorted(g2.edges()) == sorted(gen_cycle(3).edges())
        assert inc == (1, 0, 1)

    def test_existing_edge_noop(self):
        g = gen_path(3)
        g2, inc = add_edges(g, [(0, 1)])
        assert g2.rows == g.rows and inc == (0, 0, 0)

    def test_perfect_matching_to_k4(self):
        c4 = gen_cycle(4)
        g2, inc = add_edges(c4, [(0, 2), (1, 3)])
        assert g2.rows == gen_complete(4).rows
        assert inc == (1, 1, 1, 1)

    def test_rejects_loops_and_range(self):
        with pytest.raises(ValueError):
            add_edges(gen_path(3), [(1, 1)])
        with pytest.raises(ValueError):
            add_edges(gen_path(3), [(0, 5)])
