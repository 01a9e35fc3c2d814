from itertools import combinations

from pyamalgam.hyperbolicity import (
    QuasiGeodesicCert,
    QuasiGeodesicViolation,
    adhesion_diameter,
    amalgam_hyperbolicity_experiment,
    delta_thin,
    geodesic_neighbourhood_constant,
    quasi_geodesic_check,
)
import pyamalgam.graphDB as graphs
import pyamalgam.specDB as specs
from pyamalgam.build import build_amalgam
from pyamalgam.exception import DisconnectedGraphError

import networkx as nx
import pytest


def brute_force_delta(g) -> int:
    """Return delta by enumerating all geodesic triangles."""
    dist = dict(nx.all_pairs_shortest_path_length(g))
    geodesics = {
        (a, b): list(nx.all_shortest_paths(g, a, b)) for a in g.nodes for b in g.nodes
    }
    delta = 0
    for a, b in combinations(sorted(g.nodes), 2):
        for c in g.nodes:
            for P12 in geodesics[(a, b)]:
                for v in P12:
                    far13 = max(min(dist[v][w] for w in P) for P in geodesics[(a, c)])
                    far23 = max(min(dist[v][w] for w in P) for P in geodesics[(b, c)])
                    delta = max(delta, min(far13, far23))
    return delta


@pytest.mark.parametrize(
    "graph, delta",
    [
        [graphs.Path(5), 0],
        [graphs.Star(4), 0],
        [graphs.Complete(4), 0],
        [graphs.Cycle(4), 1],
        [graphs.Diamond(), 1],
    ],
)
def test_delta_thin(graph, delta):
    assert delta_thin(graph).delta == delta


@pytest.mark.parametrize(
    "graph",
    [
        graphs.Cycle(5),
        graphs.Cycle(6),
        graphs.Cycle(7),
        graphs.Grid(3, 3),
        graphs.Ladder(4),
        graphs.Petersen(),
        graphs.CompleteBipartite(2, 3),
    ],
)
def test_delta_thin_agrees_with_enumeration(graph):
    assert delta_thin(graph).delta == brute_force_delta(graph)


def test_delta_thin_witness():
    report = delta_thin(graphs.Cycle(4))
    witness = report.witness
    assert witness["corners"] == [0, 2, 0]
    assert witness["vertex"] == 1
    assert witness["P12"] == [0, 1, 2]
    assert report.restricted_to == [0, 1, 2, 3]
    assert report.to_json()["delta"] == 1


def test_delta_thin_restricted():
    assert delta_thin(graphs.Cycle(4), [0, 1]).delta == 0
    assert delta_thin(graphs.Cycle(6), [0, 3]).delta >= 1
    with pytest.raises(ValueError):
        delta_thin(graphs.Cycle(4), [])
    with pytest.raises(DisconnectedGraphError):
        delta_thin(graphs.TwoComponents())


def test_quasi_geodesic_check():
    cert = quasi_geodesic_check(graphs.Path(5), [0, 1, 2, 3])
    assert isinstance(cert, QuasiGeodesicCert)
    assert cert.worst_ratio == 1.0

    violation = quasi_geodesic_check(graphs.Cycle(3), [0, 1, 2])
    assert isinstance(violation, QuasiGeodesicViolation)
    assert violation.pair == (0, 2)
    assert violation.walk_distance == 2
    assert violation.graph_distance == 1

    cert = quasi_geodesic_check(graphs.Cycle(3), [0, 1, 2], c=1)
    assert cert.worst_pair == (0, 2)
    assert cert.worst_ratio == 2.0
    assert quasi_geodesic_check(graphs.Cycle(3), [0, 1, 2], gamma=2).to_json()[
        "gamma"
    ] == 2


def test_quasi_geodesic_check_backtracking_walk():
    violation = quasi_geodesic_check(graphs.Path(3), [0, 1, 0])
    assert violation.pair == (0, 2)
    assert violation.graph_distance == 0
    cert = quasi_geodesic_check(graphs.Path(3), [0, 1, 0], c=2)
    assert cert.worst_pair == (0, 2)
    assert cert.worst_ratio == float("inf")


@pytest.mark.parametrize(
    "path, gamma, c",
    [
        [[0, 1], 0.5, 0],
        [[0, 1], 1, -1],
        [[], 1, 0],
        [[0, 2], 1, 0],
    ],
)
def test_quasi_geodesic_check_errors(path, gamma, c):
    with pytest.raises(ValueError):
        quasi_geodesic_check(graphs.Path(5), path, gamma, c)


def test_geodesic_neighbourhood_constant():
    assert geodesic_neighbourhood_constant(graphs.Cycle(6), [0, 1, 2, 3, 4]) == 2
    assert geodesic_neighbourhood_constant(graphs.Path(4), range(4)) == 0
    assert geodesic_neighbourhood_constant(graphs.Cycle(4), range(4)) == 1
    with pytest.raises(DisconnectedGraphError):
        geodesic_neighbourhood_constant(graphs.Path(5), [0, 2])


def test_adhesion_diameter():
    assert adhesion_diameter(specs.DoubleRay()) == 0
    assert adhesion_diameter(specs.TriangleCactus()) == 0


def test_amalgam_hyperbolicity_experiment():
    table = amalgam_hyperbolicity_experiment(specs.DoubleRay(), [3, 4])
    assert [(row.factor_deltas, row.delta) for row in table.rows] == [
        ([0, 0], 0),
        ([0, 0], 0),
    ]
    assert [row.inner_radius for row in table.rows] == [2, 3]
    assert all(row.neighbourhood_constant == 0 for row in table.rows)
    assert table.bounded
    assert table.to_json()["bounded"]
    lines = table.to_text().splitlines()
    assert len(lines) == 3
    assert lines[0].split() == ["R", "factor", "deltas", "gamma", "r", "delta", "lambda"]


def test_amalgam_hyperbolicity_experiment_small_radius():
    table = amalgam_hyperbolicity_experiment(specs.DoubleRay(), [0])
    row = table.rows[0]
    assert row.delta is None
    assert row.neighbourhood_constant is None
    assert row.inner_radius == -1
    assert "-" in table.to_text().splitlines()[1].split()


@pytest.mark.slow
@pytest.mark.parametrize("spec", [specs.TriangleCactus(), specs.SquareChain()])
@pytest.mark.parametrize("r", [2, 3])
def test_delta_thin_stable_in_inner_ball(spec, r):
    deltas = []
    for R in (r + 1, r + 2):
        A = build_amalgam(spec, R)
        deltas.append(delta_thin(A.graph, A.patch.ball(r)).delta)
    assert deltas[0] == deltas[1]


@pytest.mark.parametrize(
    "spec",
    [
        specs.DoubleRay(),
        specs.TriangleCactus(),
        specs.SquareChain(),
        specs.HNNEdge(),
        specs.RegularTree4(),
    ],
)
def test_factor_geodesics_are_quasi_geodesics(spec):
    A = build_amalgam(spec, 3)
    gamma = max(1, adhesion_diameter(spec) / 2)
    for t, side in sorted(A.tree_patch.side.items()):
        G = spec.factor(side)
        copy = A.copy_of(t)
        for u, v in combinations(sorted(G.nodes), 2):
            for path in G.all_geodesics(u, v).items:
                result = quasi_geodesic_check(A.graph, [copy[x] for x in path], gamma, 0)
                assert isinstance(result, QuasiGeodesicCert)
