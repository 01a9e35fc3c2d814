"""
This is a module for providing common types of graphs.
"""

import networkx as nx
from pyamalgam.graph import Graph


def Cycle(n: int) -> Graph:
    """Return the cycle graph on n vertices."""
    return Graph(nx.cycle_graph(n))


def Complete(n: int) -> Graph:
    """Return the complete graph on n vertices."""
    return Graph(nx.complete_graph(n))


def Path(n: int) -> Graph:
    """Return the path graph with n vertices."""
    return Graph(nx.path_graph(n))


def Star(n: int) -> Graph:
    """Return the star with center 0 and n leaves."""
    return Graph(nx.star_graph(n))


def CompleteBipartite(m: int, n: int) -> Graph:
    """Return the complete bipartite graph on m+n vertices."""
    return Graph(nx.complete_multipartite_graph(m, n))


def Grid(m: int, n: int) -> Graph:
    """
    Return the m x n grid; the vertex in row i and column j is ``i*n + j``.
    """
    G = nx.grid_2d_graph(m, n)
    return Graph(nx.relabel_nodes(G, {(i, j): i * n + j for i, j in G.nodes}))


def Ladder(n: int) -> Graph:
    """
    Return the ladder with rungs ``(i, n+i)`` for ``i = 0, ..., n-1``.
    """
    return Graph(nx.ladder_graph(n))


def Diamond() -> Graph:
    """Return the complete graph on 4 vertices minus an edge."""
    return Graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def TwoComponents() -> Graph:
    """Return the disjoint union of a triangle and an edge."""
    return Graph.from_vertices_and_edges(
        range(5), [(0, 1), (1, 2), (0, 2), (3, 4)]
    )


def Petersen() -> Graph:
    """Return the Petersen graph."""
    return Graph(nx.petersen_graph())
