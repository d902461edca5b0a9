from hypothesis import given, settings

from mbea.graphs import GenConfig, Graph, complete_graph, generate_er, path_graph
from mbea.leaf_removal import core_subgraph, leaf_removal_ranks

from conftest import graphs, trees

# two pendants share a petiole, then a leaf pair, then a final leaf pair
THREE_LEAF_EXAMPLE = Graph(7, [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)])


def test_worked_example_ranks():
    r = leaf_removal_ranks(THREE_LEAF_EXAMPLE)
    assert r.rank == (1, 1, 2, 3, 4, 5, 6)
    assert not any(r.in_core)
    assert r.max_rank == 6


def test_complete_graph_is_all_core():
    r = leaf_removal_ranks(complete_graph(5))
    assert all(r.in_core)
    assert sorted(r.rank) == [1, 2, 3, 4, 5]
    assert r.rank == (1, 2, 3, 4, 5)  # whole graph core: ranks by ascending id


def test_single_edge_tie_break():
    r = leaf_removal_ranks(Graph(2, [(0, 1)]))
    assert r.rank == (1, 2)  # lower id is the pendant
    assert not any(r.in_core)


def test_isolated_node_is_an_odd_rank_pendant():
    r = leaf_removal_ranks(Graph(1, []))
    assert r.rank == (1,)
    assert r.in_core == (False,)


def test_multi_pendant_same_round():
    star = Graph(4, [(0, 3), (1, 3), (2, 3)])
    r = leaf_removal_ranks(star)
    assert r.rank == (1, 1, 1, 2)


def test_second_round_ranks():
    r = leaf_removal_ranks(path_graph(5))
    assert r.rank == (1, 2, 3, 2, 1)


@given(trees(max_n=12))
def test_trees_are_fully_removable(g):
    r = leaf_removal_ranks(g)
    assert r.core_empty
    assert all(rank >= 1 for rank in r.rank)


@given(graphs(max_n=12))
def test_core_has_min_degree_two(g):
    r = leaf_removal_ranks(g)
    core, old_ids = core_subgraph(g, r)
    assert all(core.degree(u) >= 2 for u in range(core.n))
    assert len(old_ids) == core.n


@given(graphs(max_n=12))
def test_core_extraction_idempotent(g):
    r = leaf_removal_ranks(g)
    core, _ = core_subgraph(g, r)
    r2 = leaf_removal_ranks(core)
    assert all(r2.in_core)


@given(graphs(max_n=12))
def test_pendant_petiole_rank_relation(g):
    r = leaf_removal_ranks(g)
    for u in range(g.n):
        if not r.in_core[u]:
            assert r.rank[u] >= 1
            if r.rank[u] % 2 == 1 and g.degree(u) > 0:
                # a pendant's petiole (if any) sits one rank above
                mates = [
                    w
                    for w in g.adjacency[u]
                    if not r.in_core[w] and r.rank[w] == r.rank[u] + 1
                ]
                isolated_at_removal = all(
                    r.in_core[w] or r.rank[w] < r.rank[u] for w in g.adjacency[u]
                )
                assert mates or isolated_at_removal


def test_core_subgraph_mapping():
    g = Graph(6, [(0, 1), (2, 3), (3, 4), (4, 2)])
    r = leaf_removal_ranks(g)
    core, old_ids = core_subgraph(g, r)
    assert old_ids == (2, 3, 4)
    assert core == Graph(3, [(0, 1), (1, 2), (0, 2)])


def test_core_transition_statistics():
    """Below the transition cores are rare and tiny, above it they dominate.

    Exact emptiness below the transition is limited by finite-size cycle
    components (mostly triangles), so the empty fraction sits near 0.7 at
    n = 2000 rather than near 1; any surviving core stays sublinear.
    """
    n, seeds = 2000, 200
    empty_at_2 = 0
    core_nodes_at_2 = 0
    for s in range(seeds):
        r = leaf_removal_ranks(generate_er(GenConfig(n=n, mean_degree=2.0, seed=s)))
        empty_at_2 += r.core_empty
        core_nodes_at_2 += sum(r.in_core)
    empty_at_4 = sum(
        leaf_removal_ranks(generate_er(GenConfig(n=n, mean_degree=4.0, seed=s))).core_empty
        for s in range(seeds)
    )
    assert empty_at_2 / seeds > 0.5
    assert core_nodes_at_2 / (seeds * n) < 0.01
    assert empty_at_4 / seeds < 0.1
