"""
Module for graphs: distances, geodesics and automorphisms.
"""

from __future__ import annotations

import logging
import math
from itertools import islice
from typing import Any, Iterable, List

import networkx as nx

from pyamalgam.data_type import Edge, Vertex, VertexMap
from pyamalgam.exception import (
    AutomorphismError,
    GraphFormatError,
    LoopError,
    NoPathError,
)
from pyamalgam.geodesic import GeodesicDag
from pyamalgam.misc import (
    CappedResult,
    check_integrality_and_range,
    doc_category,
    generate_category_tables,
)

logger = logging.getLogger(__name__)

DEFAULT_GEODESIC_CAP = 10_000


class Graph(nx.Graph):
    """
    Class representing a finite simple graph with integer vertices.

    One option for *incoming_graph_data* is a list of edges.
    See :class:`networkx.Graph` for the other input formats
    or use class methods :meth:`~Graph.from_vertices_and_edges`
    or :meth:`~Graph.from_json` when specifying the vertex set is needed.
    Optional vertex names are stored in the node attribute ``"label"``.

    Examples
    --------
    >>> from pyamalgam import Graph
    >>> G = Graph([(0,1), (1,2), (2,3), (0,3)])
    >>> print(G)
    Graph with vertices [0, 1, 2, 3] and edges [[0, 1], [0, 3], [1, 2], [2, 3]]

    METHODS

    Notes
    -----
    This class inherits the class :class:`networkx.Graph`.
    Many of the :doc:`NetworkX <networkx:index>` algorithms are implemented as
    functions, namely, a :class:`Graph` instance has to be passed
    as the first parameter, for instance
    :func:`~networkx.algorithms.components.is_connected`.
    """

    def __str__(self) -> str:
        """
        Return the string representation.
        """
        return (
            self.__class__.__name__
            + f" with vertices {self.vertex_list()} and edges {self.edge_list()}"
        )

    def __repr__(self) -> str:
        """
        Return a representation.
        """
        return self.__str__()

    def __eq__(self, other: Graph):
        """
        Return whether the other graph has the same vertices and edges.

        Examples
        --------
        >>> G = Graph([[1,2]])
        >>> H = Graph([[2,1]])
        >>> G == H
        True
        """
        if not isinstance(other, nx.Graph):
            return NotImplemented
        if (
            self.number_of_edges() != other.number_of_edges()
            or self.number_of_nodes() != other.number_of_nodes()
        ):
            return False
        for v in self.nodes:
            if v not in other.nodes:
                return False
        for e in self.edges:
            if not other.has_edge(*e):
                return False
        return True

    __hash__ = None

    @classmethod
    @doc_category("Class methods")
    def from_vertices_and_edges(
        cls, vertices: Iterable[Vertex], edges: Iterable[Edge]
    ) -> Graph:
        """
        Create a graph from a list of vertices and edges.

        Examples
        --------
        >>> Graph.from_vertices_and_edges([0, 1, 2, 3], [[0, 1], [0, 2], [1, 3]])
        Graph with vertices [0, 1, 2, 3] and edges [[0, 1], [0, 2], [1, 3]]
        """
        G = cls()
        G.add_nodes_from(vertices)
        for u, v in edges:
            if u == v:
                raise LoopError(f"The edge {[u, v]} is a loop.")
            if u not in G.nodes or v not in G.nodes:
                raise ValueError(
                    f"The elements of the pair {[u, v]} are not vertices of the graph."
                )
            G.add_edge(u, v)
        return G

    @classmethod
    @doc_category("Class methods")
    def from_vertices(cls, vertices: Iterable[Vertex]) -> Graph:
        """
        Create a graph with no edges from a list of vertices.
        """
        return cls.from_vertices_and_edges(vertices, [])

    @staticmethod
    @doc_category("Input and output")
    def validate_adjacency(adjacency: List[List[Vertex]]) -> list[str]:
        """
        Return the violations of the canonical adjacency-list form.

        The adjacency lists are indexed by the vertices ``0, ..., n-1``.
        They must be symmetric, loop-free, free of repeated entries,
        sorted ascending and refer only to existing vertices.
        The empty list means that the lists describe a simple graph.

        Examples
        --------
        >>> Graph.validate_adjacency([[1], [0, 2], [1]])
        []
        >>> Graph.validate_adjacency([[1], []])
        ['asymmetric edge (0,1)']
        >>> Graph.validate_adjacency([[1, 3], [0, 2], [1, 2, 3], [0, 2]])
        ['self-loop at 2']
        """
        n = len(adjacency)
        violations = []
        neighbor_sets = [set() for _ in range(n)]
        for v, nbrs in enumerate(adjacency):
            for u in nbrs:
                if not isinstance(u, int) or isinstance(u, bool) or u < 0 or u >= n:
                    violations.append(f"vertex out of range {u} in the list of {v}")
                    continue
                if u == v:
                    violations.append(f"self-loop at {v}")
                    continue
                if u in neighbor_sets[v]:
                    violations.append(f"parallel edge ({min(u, v)},{max(u, v)})")
                neighbor_sets[v].add(u)
            numeric = [u for u in nbrs if isinstance(u, int)]
            if numeric != sorted(numeric):
                violations.append(f"unsorted neighbor list of {v}")
        for v in range(n):
            for u in sorted(neighbor_sets[v]):
                if v not in neighbor_sets[u]:
                    violations.append(f"asymmetric edge ({v},{u})")
        return violations

    @classmethod
    @doc_category("Input and output")
    def validate_json(cls, data: dict[str, Any]) -> list[str]:
        """
        Return the violations of the graph JSON data.

        The data is either ``{"n": n, "edges": [[u, v], ...]}``
        or ``{"n": n, "adjacency": [[...], ...]}``, optionally with
        ``"labels": {vertex: name}``.

        Examples
        --------
        >>> Graph.validate_json({"n": 3, "edges": [[0, 1], [1, 1]]})
        ['self-loop at 1']
        """
        n = data.get("n")
        if not isinstance(n, int) or n < 0:
            return ["the vertex count n is not a non-negative integer"]
        if "adjacency" in data:
            adjacency = data["adjacency"]
            if len(adjacency) != n:
                return [f"the adjacency has {len(adjacency)} lists instead of {n}"]
            return cls.validate_adjacency(adjacency)
        violations = []
        seen = set()
        for u, v in data.get("edges", []):
            if not (0 <= u < n and 0 <= v < n):
                violations.append(f"vertex out of range in edge ({u},{v})")
            elif u == v:
                violations.append(f"self-loop at {u}")
            elif (min(u, v), max(u, v)) in seen:
                violations.append(f"parallel edge ({min(u, v)},{max(u, v)})")
            else:
                seen.add((min(u, v), max(u, v)))
        return violations

    @classmethod
    @doc_category("Input and output")
    def from_json(cls, data: dict[str, Any]) -> Graph:
        """
        Create a graph from its JSON data, see :meth:`~Graph.validate_json`.

        Examples
        --------
        >>> Graph.from_json({"n": 3, "edges": [[0, 1], [1, 2]]})
        Graph with vertices [0, 1, 2] and edges [[0, 1], [1, 2]]
        """
        violations = cls.validate_json(data)
        if violations:
            raise GraphFormatError(violations)
        n = data["n"]
        if "adjacency" in data:
            edges = [(v, u) for v, nbrs in enumerate(data["adjacency"]) for u in nbrs]
        else:
            edges = data.get("edges", [])
        G = cls.from_vertices_and_edges(range(n), edges)
        for v, name in data.get("labels", {}).items():
            G.nodes[int(v)]["label"] = str(name)
        return G

    @doc_category("Input and output")
    def to_json(self) -> dict[str, Any]:
        """
        Return the JSON data of the graph.

        Examples
        --------
        >>> Graph([(0, 1), (2, 1)]).to_json()
        {'n': 3, 'edges': [[0, 1], [1, 2]]}
        """
        self._check_dense()
        data = {"n": self.number_of_nodes(), "edges": self.edge_list()}
        labels = {
            str(v): self.nodes[v]["label"]
            for v in self.vertex_list()
            if "label" in self.nodes[v]
        }
        if labels:
            data["labels"] = labels
        return data

    @doc_category("Input and output")
    def adjacency_lists(self) -> list[list[Vertex]]:
        """
        Return the canonical adjacency lists, i.e., sorted neighbor lists.
        """
        self._check_dense()
        return [sorted(self.neighbors(v)) for v in range(self.number_of_nodes())]

    def _check_dense(self) -> None:
        if set(self.nodes) != set(range(self.number_of_nodes())):
            raise ValueError("The vertices need to be 0, ..., n-1.")

    def _check_vertex(self, v: Vertex) -> None:
        if v not in self.nodes:
            raise ValueError(f"The vertex {v} is not a vertex of the graph.")

    @doc_category("Attribute getters")
    def vertex_list(self) -> List[Vertex]:
        """
        Return the sorted list of vertices.
        """
        return sorted(self.nodes)

    @doc_category("Attribute getters")
    def edge_list(self) -> List[List[Vertex]]:
        """
        Return the sorted list of edges, each as a sorted pair.

        Examples
        --------
        >>> G = Graph([[0, 3], [3, 1], [0, 1], [2, 0]])
        >>> G.edge_list()
        [[0, 1], [0, 2], [0, 3], [1, 3]]
        """
        return sorted([sorted(e) for e in self.edges])

    @doc_category("Graph manipulation")
    def induced(self, vertices: Iterable[Vertex], relabel: bool = False) -> Graph:
        """
        Return the induced subgraph as a new graph.

        If ``relabel`` is True, the vertices are renamed to ``0, ..., m-1``
        in increasing order.

        Examples
        --------
        >>> G = Graph([(0, 1), (1, 2), (2, 3)])
        >>> G.induced([3, 1, 2], relabel=True)
        Graph with vertices [0, 1, 2] and edges [[0, 1], [1, 2]]
        """
        vertices = sorted(set(vertices))
        H = Graph()
        if relabel:
            index = {v: i for i, v in enumerate(vertices)}
            H.add_nodes_from(range(len(vertices)))
            H.add_edges_from(
                (index[u], index[v])
                for u, v in self.subgraph(vertices).edges
            )
        else:
            H.add_nodes_from(vertices)
            H.add_edges_from(self.subgraph(vertices).edges)
        return H

    @doc_category("Distances and geodesics")
    def shortest_path_data(self, source: Vertex) -> GeodesicDag:
        """
        Return the geodesic DAG of the breadth-first search from ``source``.

        The predecessor lists are sorted.
        Unreachable vertices have distance ``math.inf``.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> dag = graphs.Cycle(6).shortest_path_data(0)
        >>> dag.dist[3], dag.predecessors[3]
        (3, [2, 4])
        """
        if source not in self.nodes:
            raise ValueError(f"The source {source} is not a vertex of the graph.")
        pred, seen = nx.predecessor(self, source, return_seen=True)
        dist = {v: seen.get(v, math.inf) for v in self.nodes}
        predecessors = {v: sorted(pred.get(v, [])) for v in self.nodes}
        return GeodesicDag(source=source, dist=dist, predecessors=predecessors)

    @doc_category("Distances and geodesics")
    def distances_from(self, source: Vertex) -> dict[Vertex, int | float]:
        """
        Return the distance of every vertex from ``source``,
        ``math.inf`` for unreachable vertices.
        """
        lengths = nx.single_source_shortest_path_length(self, source)
        return {v: lengths.get(v, math.inf) for v in self.nodes}

    @doc_category("Distances and geodesics")
    def geodesic_interval(self, u: Vertex, v: Vertex) -> frozenset[Vertex]:
        """
        Return the set of all vertices lying on some ``u``-``v`` geodesic.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> sorted(graphs.Cycle(6).geodesic_interval(0, 3))
        [0, 1, 2, 3, 4, 5]
        """
        du = self.distances_from(u)
        if du[v] == math.inf:
            raise NoPathError(u, v)
        dv = self.distances_from(v)
        return frozenset(w for w in self.nodes if du[w] + dv[w] == du[v])

    @doc_category("Distances and geodesics")
    def all_geodesics(
        self, u: Vertex, v: Vertex, cap: int = DEFAULT_GEODESIC_CAP
    ) -> CappedResult[list[Vertex]]:
        """
        Return all geodesics between ``u`` and ``v`` in lexicographic order.

        At most ``cap`` geodesics are returned, namely the first ones
        produced by :func:`networkx.all_shortest_paths`;
        the result is flagged as truncated if there are more.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> graphs.Cycle(6).all_geodesics(0, 3).items
        [[0, 1, 2, 3], [0, 5, 4, 3]]
        >>> graphs.Cycle(6).all_geodesics(0, 0).items
        [[0]]
        """
        check_integrality_and_range(cap, "cap", 1)
        self._check_vertex(u)
        self._check_vertex(v)
        if not nx.has_path(self, u, v):
            raise NoPathError(u, v)
        paths = list(islice(nx.all_shortest_paths(self, u, v), cap + 1))
        truncated = len(paths) > cap
        if truncated:
            logger.debug("geodesic enumeration %s-%s hit the cap %d", u, v, cap)
        return CappedResult(sorted(paths[:cap]), truncated)

    @doc_category("Automorphisms")
    def check_automorphism(
        self, perm: VertexMap, partial: bool = False
    ) -> tuple[Vertex, Vertex] | None:
        """
        Return None if ``perm`` preserves adjacency and non-adjacency,
        otherwise a witness pair.

        The witness is a pair of image vertices: the image
        ``(perm[u], perm[v])`` of the first edge ``uv`` in sorted order
        that is not mapped to an edge, or else the first edge
        among the image vertices whose preimage is not an edge.

        Parameters
        ----------
        perm:
            A map on the vertices.
        partial:
            If False (default), the map must be a bijection of the vertex set.
            If True, ``perm`` may be an injective map between vertex subsets;
            then adjacency is compared within its domain.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> graphs.Cycle(4).check_automorphism({0: 1, 1: 2, 2: 3, 3: 0}) is None
        True
        >>> graphs.Path(5).check_automorphism({i: (i + 1) % 5 for i in range(5)})
        (4, 0)
        """
        domain = set(perm)
        if not domain <= set(self.nodes) or not set(perm.values()) <= set(self.nodes):
            raise ValueError("The map is not a map between vertices of the graph.")
        if len(set(perm.values())) != len(perm):
            raise ValueError("The map is not injective.")
        if not partial and domain != set(self.nodes):
            raise ValueError(
                f"The map is defined on {len(domain)} vertices, "
                f"but the graph has {self.number_of_nodes()}."
            )
        inverse = {y: x for x, y in perm.items()}
        for u, v in sorted(tuple(sorted(e)) for e in self.subgraph(domain).edges):
            if not self.has_edge(perm[u], perm[v]):
                return (perm[u], perm[v])
        for x, y in sorted(tuple(sorted(e)) for e in self.subgraph(inverse).edges):
            if not self.has_edge(inverse[x], inverse[y]):
                return (x, y)
        return None

    @doc_category("Automorphisms")
    def orbits(self, action, partial: bool = False) -> list[list[Vertex]]:
        """
        Return the orbits of an action as a partition of the vertices.

        The orbits are the connected components of the Schreier graph
        of the generators, sorted by their minimal vertex.

        Parameters
        ----------
        action:
            An :class:`~pyamalgam.action.Action` on the graph.
        partial:
            Whether the generators may be partial automorphisms.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> from pyamalgam.action import Action
        >>> graphs.Path(5).orbits(Action([{0: 4, 1: 3, 2: 2, 3: 1, 4: 0}]))
        [[0, 4], [1, 3], [2]]
        """
        self._check_dense()
        for g in action.generators:
            witness = self.check_automorphism(g, partial=partial)
            if witness is not None:
                raise AutomorphismError(witness)
        uf = nx.utils.UnionFind(self.nodes)
        for g in action.generators:
            for x, y in g.items():
                uf.union(x, y)
        return sorted((sorted(c) for c in uf.to_sets()), key=lambda c: c[0])

    @doc_category("Automorphisms")
    def number_of_orbits(self, action, partial: bool = False) -> int:
        return len(self.orbits(action, partial=partial))


Graph.__doc__ = Graph.__doc__.replace(
    "METHODS",
    generate_category_tables(
        Graph,
        1,
        [
            "Attribute getters",
            "Class methods",
            "Input and output",
            "Graph manipulation",
            "Distances and geodesics",
            "Automorphisms",
        ],
    ),
)
