from itertools import combinations, product

from pyamalgam.graph import Graph
import pyamalgam.graphDB as graphs
from pyamalgam.action import Action
from pyamalgam.misc import compose_maps
from pyamalgam.exception import (
    AutomorphismError,
    GraphFormatError,
    LoopError,
    NoPathError,
)

import networkx as nx
import pytest


def test_from_json_edges_and_adjacency_agree():
    G = Graph.from_json({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]})
    H = Graph.from_json({"n": 4, "adjacency": [[1], [0, 2], [1, 3], [2]]})
    assert G == H
    assert G == graphs.Path(4)


def test_from_json_isolated_vertices_and_labels():
    G = Graph.from_json({"n": 3, "edges": [], "labels": {"2": "c"}})
    assert G.vertex_list() == [0, 1, 2]
    assert G.number_of_edges() == 0
    assert G.nodes[2]["label"] == "c"
    assert G.to_json() == {"n": 3, "edges": [], "labels": {"2": "c"}}


@pytest.mark.parametrize(
    "data, violation",
    [
        ({"n": 3, "edges": [[0, 1], [1, 1]]}, "self-loop at 1"),
        ({"n": 3, "edges": [[0, 1], [1, 0]]}, "parallel edge (0,1)"),
        ({"n": 2, "edges": [[0, 2]]}, "vertex out of range in edge (0,2)"),
        ({"n": 2, "adjacency": [[1], []]}, "asymmetric edge (0,1)"),
        ({"n": 3, "adjacency": [[2, 1], [0], [0]]}, "unsorted neighbor list of 0"),
        ({"n": 3, "adjacency": [[1], [0]]}, "the adjacency has 2 lists instead of 3"),
        ({"n": -1, "edges": []}, "the vertex count n is not a non-negative integer"),
    ],
)
def test_validate_json(data, violation):
    assert violation in Graph.validate_json(data)
    with pytest.raises(GraphFormatError):
        Graph.from_json(data)


def test_validate_json_accepts_canonical_data():
    assert Graph.validate_json(graphs.Petersen().to_json()) == []
    assert Graph.validate_adjacency(graphs.Cycle(5).adjacency_lists()) == []


def test_to_json_is_canonical():
    G = Graph([(2, 1), (1, 0), (0, 2)])
    assert G.to_json() == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}
    assert G.adjacency_lists() == [[1, 2], [0, 2], [0, 1]]


def test_to_json_needs_dense_vertices():
    with pytest.raises(ValueError):
        Graph([(0, 5)]).to_json()


def test_loop():
    with pytest.raises(LoopError):
        Graph.from_vertices_and_edges([0, 1], [[0, 0]])
    with pytest.raises(ValueError):
        Graph.from_vertices_and_edges([0, 1], [[0, 2]])


def test_induced():
    G = graphs.Cycle(6)
    H = G.induced([1, 2, 3])
    assert H.vertex_list() == [1, 2, 3]
    assert H.edge_list() == [[1, 2], [2, 3]]
    assert G.induced([5, 0, 3], relabel=True).edge_list() == [[0, 2]]


@pytest.mark.parametrize(
    "graph, u, v, interval",
    [
        (graphs.Cycle(6), 0, 3, [0, 1, 2, 3, 4, 5]),
        (graphs.Cycle(6), 0, 2, [0, 1, 2]),
        (graphs.Path(5), 1, 3, [1, 2, 3]),
        (graphs.Grid(3, 3), 0, 8, list(range(9))),
        (graphs.Grid(3, 3), 0, 2, [0, 1, 2]),
        (graphs.Complete(4), 0, 0, [0]),
    ],
)
def test_geodesic_interval(graph, u, v, interval):
    assert sorted(graph.geodesic_interval(u, v)) == interval


def test_all_geodesics():
    assert graphs.Grid(2, 2).all_geodesics(0, 3).items == [[0, 1, 3], [0, 2, 3]]
    assert len(graphs.Grid(3, 3).all_geodesics(0, 8)) == 6
    assert not graphs.Cycle(6).all_geodesics(0, 3, cap=2).truncated


def test_all_geodesics_cap():
    result = graphs.Grid(2, 2).all_geodesics(0, 3, cap=1)
    assert result.truncated
    assert result.items in [[[0, 1, 3]], [[0, 2, 3]]]
    with pytest.raises(ValueError):
        graphs.Grid(2, 2).all_geodesics(0, 3, cap=0)


def test_no_path():
    G = graphs.TwoComponents()
    with pytest.raises(NoPathError):
        G.geodesic_interval(0, 3)
    with pytest.raises(NoPathError):
        G.all_geodesics(1, 4)


def test_shortest_path_data():
    dag = graphs.Grid(3, 3).shortest_path_data(0)
    assert dag.dist[8] == 4
    assert dag.predecessors[4] == [1, 3]
    assert dag.number_of_geodesics(8) == 6
    assert dag.geodesic_to(8) == [0, 1, 2, 5, 8]
    unreachable = graphs.TwoComponents().shortest_path_data(0)
    assert not unreachable.reachable(3)
    assert unreachable.number_of_geodesics(3) == 0
    with pytest.raises(ValueError):
        unreachable.geodesic_to(3)


@pytest.mark.parametrize(
    "graph, perm",
    [
        (graphs.Cycle(5), {i: (i + 1) % 5 for i in range(5)}),
        (graphs.Cycle(6), {i: (-i) % 6 for i in range(6)}),
        (graphs.Path(4), {0: 3, 1: 2, 2: 1, 3: 0}),
        (graphs.Complete(4), {0: 2, 1: 0, 2: 3, 3: 1}),
        (graphs.Petersen(), {i: i for i in range(10)}),
    ],
)
def test_check_automorphism(graph, perm):
    assert graph.check_automorphism(perm) is None


def test_check_automorphism_witness():
    assert graphs.Path(4).check_automorphism({0: 1, 1: 0, 2: 2, 3: 3}) == (0, 2)
    assert graphs.Diamond().check_automorphism({0: 1, 1: 0, 2: 2, 3: 3}) is not None
    shift = {i: (i + 1) % 5 for i in range(5)}
    assert graphs.Path(5).check_automorphism(shift) == (4, 0)


def test_check_automorphism_partial():
    G = graphs.Path(6)
    assert G.check_automorphism({0: 1, 1: 2, 2: 3}, partial=True) is None
    assert G.check_automorphism({0: 1, 1: 3}, partial=True) == (1, 3)
    assert G.check_automorphism({0: 0, 2: 1}, partial=True) == (0, 1)
    with pytest.raises(ValueError):
        G.check_automorphism({0: 1, 1: 2, 2: 3})


def test_check_automorphism_errors():
    G = graphs.Path(3)
    with pytest.raises(ValueError):
        G.check_automorphism({0: 1, 1: 1, 2: 2})
    with pytest.raises(ValueError):
        G.check_automorphism({0: 5, 1: 1, 2: 2})


def test_orbits():
    rotation = Action([{i: (i + 1) % 6 for i in range(6)}])
    assert graphs.Cycle(6).orbits(rotation) == [list(range(6))]
    square = Action([{i: (i + 2) % 6 for i in range(6)}])
    assert graphs.Cycle(6).orbits(square) == [[0, 2, 4], [1, 3, 5]]
    assert graphs.Path(3).number_of_orbits(Action([])) == 3


def test_orbits_partial():
    shift = Action([{i: i + 1 for i in range(5)}])
    assert graphs.Path(6).orbits(shift, partial=True) == [list(range(6))]


def test_orbits_reject_non_automorphism():
    with pytest.raises(AutomorphismError) as error:
        graphs.Path(4).orbits(Action([{0: 1, 1: 0, 2: 2, 3: 3}]))
    assert error.value.witness == (0, 2)


@pytest.mark.parametrize(
    "graph",
    [
        graphs.Cycle(7),
        graphs.Grid(3, 4),
        graphs.Ladder(5),
        graphs.Petersen(),
        graphs.CompleteBipartite(3, 3),
        graphs.Diamond(),
    ],
)
def test_geodesics_against_simple_paths(graph):
    for u, v in combinations(sorted(graph.nodes), 2):
        paths = list(nx.all_simple_paths(graph, u, v))
        shortest = min(len(P) for P in paths)
        expected = sorted(P for P in paths if len(P) == shortest)
        assert graph.all_geodesics(u, v).items == expected
        dag = graph.shortest_path_data(u)
        assert dag.dist[v] == shortest - 1
        assert dag.number_of_geodesics(v) == len(expected)
        assert dag.geodesic_to(v) in expected


@pytest.mark.parametrize(
    "graph, generators",
    [
        (
            graphs.Cycle(6),
            [{i: (i + 2) % 6 for i in range(6)}, {i: (-i) % 6 for i in range(6)}],
        ),
        (graphs.Path(5), [{i: 4 - i for i in range(5)}]),
        (
            graphs.Grid(3, 3),
            [
                {v: (v % 3) * 3 + v // 3 for v in range(9)},
                {v: (2 - v // 3) * 3 + v % 3 for v in range(9)},
            ],
        ),
    ],
)
def test_orbits_stable_under_products(graph, generators):
    products = [compose_maps(g, h) for g, h in product(generators, repeat=2)]
    assert graph.orbits(Action(generators + products)) == graph.orbits(
        Action(generators)
    )
