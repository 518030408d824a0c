import pytest

from oracles import is_proper
from trycolor.errors import GraphFormatError, ParameterError, StructuralError
from trycolor.graph import (
    Coloring, Graph, dumps_coloring, dumps_graph, generate, greedy_input_coloring, load,
    loads_coloring, loads_graph, path_graph, save,
)


def test_ring_and_complete():
    ring = generate("ring", 5, 2, 0)
    assert [ring.degree(v) for v in range(5)] == [2] * 5
    assert ring.edge_count == 5
    k4 = generate("complete", 4, 3, 0)
    assert k4.edge_count == 6


def test_random_is_deterministic_and_bounded():
    a = generate("random_bounded_degree", 100, 8, 7)
    b = generate("random_bounded_degree", 100, 8, 7)
    assert a.edges() == b.edges()
    assert a.max_degree() <= 8
    assert generate("random_bounded_degree", 100, 8, 8).edges() != a.edges()


@pytest.mark.parametrize("kind,n,delta", [("complete", 5, 3), ("star", 5, 2), ("ring", 2, 2), ("bogus", 5, 4)])
def test_generate_rejects_infeasible(kind, n, delta):
    with pytest.raises(ParameterError):
        generate(kind, n, delta, 0)


def test_greedy_input_coloring_examples():
    assert greedy_input_coloring(generate("ring", 4, 2)).colors == (0, 1, 0, 1)
    k4 = greedy_input_coloring(generate("complete", 4, 3))
    assert sorted(k4.colors) == [0, 1, 2, 3]
    g = generate("random_bounded_degree", 30, 4, 1)
    ident = greedy_input_coloring(g, identity=True)
    assert ident.colors == tuple(range(30)) and ident.palette_size == 30


def test_greedy_input_coloring_proper_and_bounded():
    for seed in range(5):
        g = generate("random_bounded_degree", 200, 6, seed)
        c = greedy_input_coloring(g)
        assert is_proper(g, c.colors)
        assert c.palette_size <= g.delta + 1


def test_save_load_roundtrip(tmp_path):
    g = generate("ring", 5, 2)
    path = tmp_path / "ring.txt"
    save(g, path)
    h = load(path)
    assert (h.n, h.delta, h.adjacency) == (g.n, g.delta, g.adjacency)


def test_coloring_roundtrip():
    c = Coloring(7, (0, 6, 3))
    assert loads_coloring(dumps_coloring(c)) == c


@pytest.mark.parametrize("text,line", [
    ("graph 3 1 2\ne 1 1\n", 2),
    ("graph 4 3 2\ne 0 1\ne 0 2\ne 0 3\n", 4),
    ("grph 3 0 2\n", 1),
    ("graph 3 2 2\ne 0 1\n", 1),
    ("graph 3 1 2\ne 0 x\n", 2),
    ("graph 3 2 2\ne 0 1\ne 0 1\n", 3),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(GraphFormatError) as err:
        loads_graph(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_graph_invariants_enforced():
    with pytest.raises(StructuralError):
        Graph(2, ((1,), ()), 1)
    with pytest.raises(StructuralError):
        Graph.from_edges(3, [(0, 1), (0, 2)], 1)


def test_subgraph_by_class_keeps_only_same_class_edges():
    g = path_graph(4)
    sub = g.subgraph_by_class([0, 0, 1, 1])
    assert sub.edges() == [(0, 1), (2, 3)]
    assert dumps_graph(sub).startswith("graph 4 2 2")
