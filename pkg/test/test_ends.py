from pyamalgam.ends import (
    accessibility_probe,
    components_without,
    end_degree_estimate,
    ends_at_scale,
    separation_number,
    tight_separators,
    tight_sides,
)
from pyamalgam.graph import Graph
from pyamalgam.patch import Patch
from pyamalgam.build import build_amalgam
import pyamalgam.graphDB as graphs
import pyamalgam.specDB as specs
from pyamalgam.exception import DisconnectedGraphError, PreconditionError

import pytest


def cycle_with_pendant() -> Graph:
    """Return the 4-cycle 1-2-3-4 with the pendant vertex 0 at 1."""
    return Graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)])


def test_components_without():
    assert components_without(graphs.Path(5), [2]) == [{0, 1}, {3, 4}]
    assert components_without(graphs.Cycle(4), []) == [{0, 1, 2, 3}]
    assert components_without(graphs.Complete(3), [0, 1, 2]) == []


@pytest.mark.parametrize(
    "graph, S, sides",
    [
        [graphs.Path(5), [2], [{0, 1}, {3, 4}]],
        [graphs.Star(3), [0], [{1}, {2}, {3}]],
        [graphs.Path(5), [1, 2], []],
        [graphs.CompleteBipartite(2, 3), [0, 1], [{2}, {3}, {4}]],
        [cycle_with_pendant(), [1, 3], [{2}, {4}]],
    ],
)
def test_tight_sides(graph, S, sides):
    assert tight_sides(graph, S) == sides


def test_tight_separators():
    result = tight_separators(graphs.Path(5), 1)
    assert not result.truncated
    assert [sorted(T.vertices) for T in result] == [[1], [2], [3]]
    assert len(tight_separators(graphs.Cycle(6), 2)) == 9
    assert len(tight_separators(graphs.Complete(4), 3)) == 0


def test_tight_separators_minimal():
    result = tight_separators(cycle_with_pendant(), 2)
    assert [(sorted(T.vertices), T.minimal) for T in result] == [
        ([1], True),
        ([1, 3], False),
        ([2, 4], True),
    ]
    assert result[1].to_json() == {
        "vertices": [1, 3],
        "sides": [[2], [4]],
        "minimal": False,
    }


def test_tight_separators_cap():
    result = tight_separators(graphs.Cycle(6), 2, cap=8)
    assert result.truncated
    assert [sorted(T.vertices) for T in result] == [[0, 2]]
    with pytest.raises(ValueError):
        tight_separators(graphs.Cycle(6), 0)


def test_ends_at_scale():
    P = Patch(graphs.Path(8), boundary=[0, 7], root=3)
    regions = ends_at_scale(P, [3])
    assert [sorted(R.vertices) for R in regions] == [[0, 1, 2], [4, 5, 6, 7]]
    assert all(R.reaches_boundary for R in regions)
    assert regions[0].scale == 3
    regions = ends_at_scale(Patch(graphs.Star(3), boundary=[1], root=0), [0])
    assert [R.reaches_boundary for R in regions] == [True, False, False]
    with pytest.raises(ValueError):
        ends_at_scale(P, [9])


def test_ends_at_scale_disconnected():
    P = Patch(graphs.TwoComponents(), boundary=[2, 4], root=0)
    with pytest.raises(DisconnectedGraphError):
        ends_at_scale(P, [0])


def test_end_degree_estimate():
    G = graphs.Grid(5, 5)
    P = Patch(G, boundary=[v for v in G.nodes if G.degree(v) < 4], root=12)
    region = ends_at_scale(P, [])[0]
    assert end_degree_estimate(P, region, [7, 11, 12, 13, 17]) == 4
    assert end_degree_estimate(P, region, [12]) == 1

    P = Patch(graphs.Path(8), boundary=[0, 7], root=3)
    left, right = ends_at_scale(P, [3])
    assert end_degree_estimate(P, left, [3]) == 1
    assert end_degree_estimate(P, right, [3]) == 1


def test_end_degree_estimate_ladder():
    G = graphs.Ladder(6)
    P = Patch(G, boundary=[0, 5, 6, 11], root=2)
    right = [R for R in ends_at_scale(P, [2, 8]) if 5 in R.vertices][0]
    assert end_degree_estimate(P, right, [2, 8]) == 2


def test_end_degree_estimate_without_boundary():
    P = Patch(graphs.Star(3), boundary=[1], root=0)
    finite = ends_at_scale(P, [0])[1]
    with pytest.raises(PreconditionError):
        end_degree_estimate(P, finite, [0])


@pytest.mark.parametrize(
    "graph, A, B, number",
    [
        [graphs.Path(5), [0], [4], 1],
        [graphs.Cycle(6), [0, 1], [3, 4], 2],
        [graphs.Grid(3, 3), [0, 3, 6], [2, 5, 8], 3],
        [graphs.Ladder(4), [0, 4], [3, 7], 2],
    ],
)
def test_separation_number(graph, A, B, number):
    assert separation_number(graph, A, B) == number


def test_accessibility_probe():
    table = accessibility_probe(specs.DoubleRay(), 1, [3, 4])
    assert table.passes
    assert [row.radius for row in table.rows] == [3, 4]
    assert all(row.regions == 2 for row in table.rows)
    assert all(row.max_separation == 1 for row in table.rows)
    assert table.to_json()["passes"]


def test_accessibility_probe_fails_below_the_separation():
    table = accessibility_probe(specs.DoubleRay(), 0, [3])
    assert not table.passes
    assert table.rows[0].max_separation == 1


def test_accessibility_probe_cactus():
    table = accessibility_probe(specs.TriangleCactus(), 1, [3])
    assert table.passes
    assert table.rows[0].regions >= 2


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
def test_end_degree_bounded_by_adhesion_size(spec):
    A = build_amalgam(spec, 4)
    core = sorted(A.copy_of(0).values())
    regions = [R for R in ends_at_scale(A.patch, core) if R.reaches_boundary]
    assert regions
    for region in regions:
        assert 1 <= end_degree_estimate(A.patch, region, core) <= spec.adhesion_size()


@pytest.mark.slow
@pytest.mark.parametrize("spec", [specs.DoubleRay(), specs.TriangleCactus()])
def test_accessibility_at_radii(spec):
    table = accessibility_probe(spec, 1, [3, 4, 5])
    assert table.passes
    assert [row.radius for row in table.rows] == [3, 4, 5]
    assert all(row.regions == 2 for row in table.rows)
    assert all(row.max_separation == 1 for row in table.rows)
