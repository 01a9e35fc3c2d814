"""
Module for patches, i.e., finite truncations of possibly infinite graphs.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from pyamalgam.data_type import Vertex, VertexMap
from pyamalgam.exception import DisconnectedGraphError
from pyamalgam.graph import Graph

logger = logging.getLogger(__name__)


class Patch:
    """
    Class representing a finite truncation of a graph around a root.

    Every vertex outside ``boundary`` has its full neighborhood present;
    boundary vertices may miss neighbors of the truncated graph.

    Parameters
    ----------
    graph:
    boundary:
        Vertices whose neighborhoods may be incomplete.
    root:
        The designated root; the smallest vertex if omitted.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> P = Patch(graphs.Path(8), boundary=[0, 7], root=3)
    >>> P.inner_radius
    3
    """

    def __init__(
        self, graph: Graph, boundary: Iterable[Vertex] = (), root: Vertex = None
    ):
        self.graph = graph
        self.boundary = frozenset(boundary)
        if not self.boundary <= set(graph.nodes):
            raise ValueError("The boundary needs to consist of vertices of the graph.")
        if root is None:
            root = min(graph.nodes)
        graph._check_vertex(root)
        self.root = root
        self._root_dist = None

    def __repr__(self) -> str:
        return (
            f"Patch with {self.graph.number_of_nodes()} vertices, "
            f"{len(self.boundary)} boundary vertices and root {self.root}"
        )

    @property
    def root_distances(self) -> dict[Vertex, int | float]:
        if self._root_dist is None:
            self._root_dist = self.graph.distances_from(self.root)
        return self._root_dist

    @property
    def inner_radius(self) -> int:
        """
        The distance from the root to the nearest boundary vertex,
        or the eccentricity of the root if there is no boundary.

        A boundary vertex that cannot be reached from the root
        raises :class:`~pyamalgam.exception.DisconnectedGraphError`.
        """
        dist = self.root_distances
        if self.boundary:
            unreachable = sorted(b for b in self.boundary if dist[b] == math.inf)
            if unreachable:
                raise DisconnectedGraphError(
                    f"The boundary vertices {unreachable} are not reachable "
                    f"from the root {self.root}."
                )
            return min(dist[b] for b in self.boundary)
        return int(max(d for d in dist.values() if d != math.inf))

    def ball(self, radius: int, center: Vertex = None) -> frozenset[Vertex]:
        """
        Return the vertices at distance at most ``radius`` from ``center``,
        the root by default.
        """
        if center is None or center == self.root:
            dist = self.root_distances
        else:
            dist = self.graph.distances_from(center)
        return frozenset(v for v, d in dist.items() if d <= radius)

    def with_root(self, root: Vertex) -> Patch:
        return Patch(self.graph, self.boundary, root)

    def induced(self, identification: VertexMap) -> Patch:
        """
        Return the patch of the induced subgraph on the image of
        ``identification``, pulled back to its domain.

        Only boundary vertices of this patch stay boundary vertices:
        the neighborhood in an induced subgraph of a vertex with full
        neighborhood is full.
        """
        inverse = {v: x for x, v in identification.items()}
        G = Graph.from_vertices_and_edges(
            sorted(identification),
            [
                (inverse[u], inverse[v])
                for u, v in self.graph.subgraph(inverse).edges
            ],
        )
        boundary = {inverse[v] for v in self.boundary if v in inverse}
        return Patch(G, boundary, min(identification))

    def rooted_ball(self, depth: int) -> nx.Graph:
        """
        Return the ball of radius ``depth`` around the root as a graph
        with the node attribute ``dist``.

        Edges between two vertices at distance exactly ``depth``
        are left out, as truncations need not determine them.
        """
        dist = self.root_distances
        H = nx.Graph()
        for v in sorted(v for v, d in dist.items() if d <= depth):
            H.add_node(v, dist=dist[v])
        for u, v in self.graph.edges:
            if u in H and v in H and min(dist[u], dist[v]) < depth:
                H.add_edge(u, v)
        return H

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "boundary": sorted(self.boundary),
            "root": self.root,
        }


def boundary_tolerant_isomorphic(
    pA: Patch, pB: Patch, depth: int
) -> VertexMap | None:
    """
    Return a root-respecting isomorphism of the balls of radius ``depth``,
    or None if there is none.

    The balls are compared as returned by :meth:`Patch.rooted_ball`;
    the search is exhaustive and preserves the distance from the root.
    The identity is returned whenever it is an isomorphism.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> P = Patch(graphs.Path(5), root=0)
    >>> C = Patch(graphs.Cycle(6), root=0)
    >>> boundary_tolerant_isomorphic(P, C, 2) is None
    True
    """
    if depth < 0:
        raise ValueError(f"The depth has to be non-negative, not {depth}.")
    for name, p in (("first", pA), ("second", pB)):
        if depth > p.inner_radius:
            raise ValueError(
                f"The depth {depth} exceeds the inner radius {p.inner_radius} "
                f"of the {name} patch."
            )
    HA = pA.rooted_ball(depth)
    HB = pB.rooted_ball(depth)
    if HA.number_of_nodes() != HB.number_of_nodes():
        return None
    if HA.number_of_edges() != HB.number_of_edges():
        return None
    if pA.root == pB.root and set(HA.nodes) == set(HB.nodes):
        if all(HA.nodes[v]["dist"] == HB.nodes[v]["dist"] for v in HA) and all(
            HB.has_edge(u, v) for u, v in HA.edges
        ):
            return {v: v for v in sorted(HA.nodes)}
    matcher = GraphMatcher(
        HA, HB, node_match=lambda a, b: a["dist"] == b["dist"]
    )
    for mapping in matcher.isomorphisms_iter():
        return {v: mapping[v] for v in sorted(mapping)}
    logger.debug("no rooted isomorphism at depth %d", depth)
    return None
