"""Graphs, marks, matching, node assignment."""
import pytest

from mckay import ade, characters
from conftest import A_TRIPLES, DE_TRIPLES


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_affine_kernel_is_one_dimensional_positive(triple):
    g = ade.build_graph(triple)
    assert len(g.nodes) == sum(triple) - 1
    assert all(m > 0 for m in g.marks)
    assert g.marks[g.index("0")] == 1
    # C * marks = 0
    C = g.cartan()
    for row in C:
        assert sum(x * m for x, m in zip(row, g.marks)) == 0
    # the extending node has exactly one neighbor
    assert len(g.neighbors("0")) == 1


def test_e8_marks():
    g = ade.build_graph((5, 3, 2))
    assert dict(zip(g.nodes, g.marks)) == {
        "0": 1, "A1": 2, "A2": 3, "A3": 4, "A4": 5,
        "B1": 2, "B2": 4, "C1": 3, "*": 6}


def test_d4_star_graph():
    g = ade.build_graph((2, 2, 2))
    assert sorted(g.neighbors("*")) == ["0", "A1", "B1", "C1"]
    assert dict(zip(g.nodes, g.marks))["*"] == 2


def test_cycle_graphs():
    g = ade.build_graph((5,))
    assert g.is_cycle and g.marks == (1,) * 5
    with pytest.raises(ade.GraphError):
        ade.build_graph((2,))


@pytest.mark.parametrize("triple,count", [
    ((5, 3, 2), 1),      # trivial graph symmetry
    ((3, 3, 2), 2),      # A/B branch swap
    ((2, 2, 2), 6),      # S3 on the outer nodes with 0 pinned
])
def test_matching_counts(triple, count, ctx_factory):
    ctx = ctx_factory(triple)
    assert len(ctx.matchings) == count


def test_matching_identity_on_cartan_matrix():
    g = ade.build_graph((4, 3, 2))
    n = len(g.nodes)
    M = [[2 * (i == j) - (2 * (i == j) - g.adjacency[i][j]) for j in range(n)]
         for i in range(n)]  # 2I - C = adjacency
    trivial = g.index("0")
    ms = ade.match_graph(M, list(g.marks), trivial, g)
    ident = {v: g.index(v) for v in g.nodes}
    assert ident in ms


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_matchings_preserve_marks_and_adjacency(triple, ctx_factory):
    ctx = ctx_factory(triple)
    g, M = ctx.graph, ctx.mckay
    assert ctx.matchings
    for iota in ctx.matchings:
        assert iota["0"] == ctx.table.trivial_index
        for u in g.nodes:
            assert ctx.table.degrees[iota[u]] == g.marks[g.index(u)]
            for v in g.nodes:
                assert (M[iota[u]][iota[v]]
                        == g.adjacency[g.index(u)][g.index(v)])


@pytest.mark.parametrize("triple", A_TRIPLES)
def test_cycle_matching_nonempty(triple, ctx_factory):
    ctx = ctx_factory(triple)
    assert ctx.matchings


def test_perturbed_matrix_fails_to_match(e8):
    M = [row[:] for row in e8.mckay]
    M[0][3] ^= 1
    M[3][0] ^= 1
    assert ade.match_graph(M, e8.table.degrees, e8.table.trivial_index,
                           e8.graph) == []


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_node_assignment(triple, ctx_factory):
    ctx = ctx_factory(triple)
    nc = ctx.node_class
    where = {c.id: c for c in ctx.classes}
    assert where[nc["0"]].order == 1
    assert where[nc["*"]].order == 2
    assert len(set(nc.values())) == len(nc)
    # star node maps to the singleton class of -1
    assert where[nc["*"]].size == 1


def test_e6_assignment_coupling(e6):
    K, nc = e6.K, e6.node_class
    ea, eb, _ = K.e_indices
    from mckay.klein import class_index_map
    where = class_index_map(e6.classes)
    # class(e_B^n) = class(e_A^{-n})
    assert nc["B1"] == where[K.inverse[ea]]
    assert nc["A1"] == where[ea]
    assert nc["B1"] != nc["A1"]


@pytest.mark.parametrize("triple", DE_TRIPLES)
def test_inversion_is_graph_automorphism(triple, ctx_factory):
    ctx = ctx_factory(triple)
    perm = ade.graph_automorphism_from_inversion(ctx.graph, ctx.node_class,
                                                 ctx.classes)
    moved = {k for k, v in perm.items() if v != k}
    for node in moved:
        assert node[0] in ctx.graph.coupled_branches
    # swapping coupled branches: A1 <-> B1 for E6, B1 <-> C1 for odd D
    if ctx.graph.coupled_branches:
        bx, by = ctx.graph.coupled_branches
        assert perm[f"{bx}1"] == f"{by}1"
