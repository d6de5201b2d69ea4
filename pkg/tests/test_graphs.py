import numpy as np
import pytest

from qaoadec.bits import BitVector
from qaoadec.graphs import (
    Graph,
    brute_force_maxcut,
    cut_size,
    load_graph,
    maxcut_to_decoding,
    parse_edge_list,
)

TRIANGLE = Graph(3, ((1, 2), (2, 3), (1, 3)))


def test_graph_validation():
    with pytest.raises(ValueError, match="self-loop"):
        Graph(3, ((1, 1),))
    with pytest.raises(ValueError, match="duplicate"):
        Graph(3, ((1, 2), (2, 1)))
    with pytest.raises(ValueError, match="outside"):
        Graph(3, ((1, 4),))


def test_parse_edge_list():
    g = parse_edge_list("1 2\n\n# comment\n2 3\n1 3\n")
    assert g.num_vertices == 3 and g.num_edges == 3
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("1 2\n1 2 3\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_edge_list("a b\n")
    with pytest.raises(ValueError, match="1-indexed"):
        parse_edge_list("0 1\n")
    with pytest.raises(ValueError, match="no edges"):
        parse_edge_list("# nothing\n")


def test_load_graph_errors_carry_path(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("1 2\nbroken\n")
    with pytest.raises(ValueError, match="line 2"):
        load_graph(path)


def test_incidence_reduction_shape():
    G, z = maxcut_to_decoding(TRIANGLE)
    assert G.nrows == 3 and G.ncols == 3
    assert z.weight() == 3
    # each edge column touches exactly its two endpoints
    for j, (a, b) in enumerate(TRIANGLE.edges, start=1):
        col = G.column(j)
        assert col.weight() == 2
        assert col.bit(a) == 1 and col.bit(b) == 1


def test_cut_identity_on_random_graphs():
    rng = np.random.default_rng(0)
    for _ in range(100):
        v = int(rng.integers(2, 9))
        possible = [(a, b) for a in range(1, v + 1) for b in range(a + 1, v + 1)]
        take = rng.permutation(len(possible))[: max(1, int(rng.integers(1, len(possible) + 1)))]
        edges = tuple(possible[i] for i in sorted(take))
        g = Graph(v, edges)
        G, z = maxcut_to_decoding(g)
        u = BitVector(int(rng.integers(0, 1 << v)), v)
        lhs = cut_size(g, u)
        assert lhs == g.num_edges - (G.left_mul(u) ^ z).weight()


def test_single_edge_cut():
    g = Graph(2, ((1, 2),))
    assert cut_size(g, BitVector.from_string("10")) == 1
    assert cut_size(g, BitVector.from_string("11")) == 0


def test_brute_force_known_optima():
    opt, assign = brute_force_maxcut(TRIANGLE)
    assert opt == 2
    assert cut_size(TRIANGLE, assign) == 2
    ring5 = Graph(5, ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1)))
    assert brute_force_maxcut(ring5)[0] == 4
    with pytest.raises(ValueError, match="cap"):
        brute_force_maxcut(Graph(21, tuple((i, i + 1) for i in range(1, 21))))


def test_maxcut_objective_alignment():
    # maximizing the generator objective maximizes the cut: the top of the
    # spectrum sits exactly at 2*maxcut - E
    from qaoadec.hamiltonian import classical_generator_cost

    G, z = maxcut_to_decoding(TRIANGLE)
    ham = classical_generator_cost(G, z)
    vmax, argmax, _ = ham.spectrum_extrema()
    opt, _ = brute_force_maxcut(TRIANGLE)
    assert vmax == 2 * opt - TRIANGLE.num_edges
    for u in argmax:
        assert cut_size(TRIANGLE, BitVector(int(u), 3)) == opt
