"""
This is a module for providing common amalgamation specs.
"""

import numpy as np

import pyamalgam.graphDB as graphs
from pyamalgam.action import Action, trivial_action
from pyamalgam.amalgamation import AmalgamationSpec
from pyamalgam.graph import Graph


def _singleton_bondings(adhesions, first, partners):
    return {
        (k, l): {adhesions[k][0]: adhesions[l][0]} for k in first for l in partners(k)
    }


def DoubleRay() -> AmalgamationSpec:
    """
    Return the Type 1 spec of the double ray: two copies of an edge glued
    at single vertices, each copy meeting two others.
    """
    adhesions = {1: [0], 2: [1], 3: [0], 4: [1]}
    swap = Action([{0: 1, 1: 0}], "swap")
    return AmalgamationSpec(
        kind=1,
        factors=[graphs.Complete(2), graphs.Complete(2)],
        index_sets=[[1, 2], [3, 4]],
        adhesions=adhesions,
        bondings=_singleton_bondings(adhesions, [1, 2], lambda k: [3, 4]),
        actions=[swap, Action([{0: 1, 1: 0}], "swap")],
        name="double ray",
    )


def TriangleCactus() -> AmalgamationSpec:
    """
    Return the Type 1 spec of the cactus in which every vertex
    lies on two triangles.
    """
    adhesions = {1: [0], 2: [1], 3: [2], 4: [0], 5: [1], 6: [2]}
    rotation = {0: 1, 1: 2, 2: 0}
    return AmalgamationSpec(
        kind=1,
        factors=[graphs.Cycle(3), graphs.Cycle(3)],
        index_sets=[[1, 2, 3], [4, 5, 6]],
        adhesions=adhesions,
        bondings=_singleton_bondings(adhesions, [1, 2, 3], lambda k: [4, 5, 6]),
        actions=[Action([rotation], "rotation"), Action([rotation], "rotation")],
        name="triangle cactus",
    )


def SquareChain() -> AmalgamationSpec:
    """
    Return the Type 1 spec of the chain of 4-cycles glued at opposite vertices.
    """
    adhesions = {1: [0], 2: [2], 3: [0], 4: [2]}
    reflection = {0: 2, 1: 1, 2: 0, 3: 3}
    return AmalgamationSpec(
        kind=1,
        factors=[graphs.Cycle(4), graphs.Cycle(4)],
        index_sets=[[1, 2], [3, 4]],
        adhesions=adhesions,
        bondings=_singleton_bondings(adhesions, [1, 2], lambda k: [3, 4]),
        actions=[Action([reflection], "reflection"), Action([reflection], "reflection")],
        name="square chain",
    )


def HNNEdge() -> AmalgamationSpec:
    """
    Return the Type 2 spec of the double ray: an edge glued to itself,
    one end to the other.
    """
    return AmalgamationSpec(
        kind=2,
        factors=[graphs.Complete(2)],
        index_sets=[[1, 2]],
        J=[1],
        adhesions={1: [0], 2: [1]},
        bondings={(1, 2): {0: 1}},
        actions=[trivial_action()],
        name="HNN edge",
    )


def RegularTree4() -> AmalgamationSpec:
    """
    Return the Type 2 spec of the subdivided 4-regular tree:
    stars with four leaves glued at their leaves.
    """
    adhesions = {k: [k] for k in range(1, 5)}
    return AmalgamationSpec(
        kind=2,
        factors=[graphs.Star(4)],
        index_sets=[[1, 2, 3, 4]],
        J=[1, 2],
        adhesions=adhesions,
        bondings={(k, l): {k: l} for k in (1, 2) for l in (3, 4)},
        actions=[
            Action(
                [
                    {0: 0, 1: 2, 2: 1, 3: 3, 4: 4},
                    {0: 0, 1: 1, 2: 2, 3: 4, 4: 3},
                ],
                "leaf swaps",
            )
        ],
        name="4-regular tree",
    )


def Trivial() -> AmalgamationSpec:
    """
    Return a trivial spec: a single edge glued to a single edge along
    all of its vertices.
    """
    return AmalgamationSpec(
        kind=1,
        factors=[graphs.Complete(2), graphs.Complete(2)],
        index_sets=[[1], [2]],
        adhesions={1: [0, 1], 2: [0, 1]},
        bondings={(1, 2): {0: 0, 1: 1}},
        actions=[trivial_action(), trivial_action()],
        name="trivial",
    )


def _random_connected_graph(rng: np.random.Generator, n: int) -> Graph:
    G = Graph.from_vertices(range(n))
    for v in range(1, n):
        G.add_edge(v, int(rng.integers(0, v)))
    for u in range(n):
        for v in range(u + 2, n):
            if rng.random() < 0.2:
                G.add_edge(u, v)
    return G


def RandomSpec(seed: int, max_vertices: int = 8, max_indices: int = 3) -> AmalgamationSpec:
    """
    Return a random valid Type 1 spec with trivial actions.

    The factors are connected graphs with at most ``max_vertices``
    vertices and the index sets have at most ``max_indices`` elements.
    """
    rng = np.random.default_rng(seed)
    factors = [
        _random_connected_graph(rng, int(rng.integers(2, max_vertices + 1)))
        for _ in range(2)
    ]
    smallest = min(G.number_of_nodes() for G in factors)
    size = int(rng.integers(1, min(2, smallest) + 1))
    index_sets = [
        list(range(1, int(rng.integers(1, max_indices + 1)) + 1)),
    ]
    offset = len(index_sets[0])
    index_sets.append(
        list(range(offset + 1, offset + int(rng.integers(1, max_indices + 1)) + 1))
    )
    adhesions = {}
    for G, I in zip(factors, index_sets):
        for k in I:
            adhesions[k] = sorted(
                int(v) for v in rng.choice(G.number_of_nodes(), size, replace=False)
            )
    bondings = {}
    for k in index_sets[0]:
        for l in index_sets[1]:
            image = [int(v) for v in rng.permutation(adhesions[l])]
            bondings[(k, l)] = dict(zip(adhesions[k], image))
    return AmalgamationSpec(
        kind=1,
        factors=factors,
        index_sets=index_sets,
        adhesions=adhesions,
        bondings=bondings,
        actions=[trivial_action(), trivial_action()],
        name=f"random {seed}",
    )
