"""
Module for tree-decompositions: axioms, geodesic closure, contraction
and the basic property.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable

import networkx as nx

from pyamalgam.data_type import Node, Vertex, VertexMap
from pyamalgam.exception import (
    ActionError,
    DisconnectedGraphError,
    InvariantError,
    NotATreeError,
)
from pyamalgam.graph import Graph
from pyamalgam.misc import doc_category, generate_category_tables

logger = logging.getLogger(__name__)


def _edge(t1: Node, t2: Node) -> tuple[Node, Node]:
    return (t1, t2) if t1 <= t2 else (t2, t1)


@dataclass
class AxiomReport:
    """
    Violations of the axioms of a tree-decomposition with witnesses.

    Attributes
    ----------
    missing_vertices:
        Vertices in no part.
    uncovered_edges:
        Edges contained in no part.
    subtree_violations:
        Triples ``(t1, t2, t3, v)``: the vertex ``v`` lies in the parts of
        ``t1`` and ``t2`` but not in the part of ``t3`` on the tree path.
    separation_violations:
        Pairs of a tree edge and a path of the graph between its two sides
        avoiding the adhesion set.
    """

    missing_vertices: list[Vertex] = field(default_factory=list)
    uncovered_edges: list[tuple[Vertex, Vertex]] = field(default_factory=list)
    subtree_violations: list[tuple[Node, Node, Node, Vertex]] = field(
        default_factory=list
    )
    separation_violations: list[tuple[tuple[Node, Node], list[Vertex]]] = field(
        default_factory=list
    )

    @property
    def valid(self) -> bool:
        return not (
            self.missing_vertices
            or self.uncovered_edges
            or self.subtree_violations
            or self.separation_violations
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "missing_vertices": self.missing_vertices,
            "uncovered_edges": [list(e) for e in self.uncovered_edges],
            "subtree_violations": [list(t) for t in self.subtree_violations],
            "separation_violations": [
                {"tree_edge": list(e), "path": path}
                for e, path in self.separation_violations
            ],
        }


@dataclass
class ConnectedPartsReport:
    """
    Outcome of the check that connected adhesion sets give connected parts.
    """

    disconnected_adhesion_sets: list[tuple[tuple[Node, Node], list[Vertex]]]
    disconnected_parts: list[Node]

    @property
    def hypothesis_holds(self) -> bool:
        return not self.disconnected_adhesion_sets

    @property
    def parts_connected(self) -> bool:
        return not self.disconnected_parts

    @property
    def lemma_violated(self) -> bool:
        return self.hypothesis_holds and not self.parts_connected

    def to_json(self) -> dict[str, Any]:
        return {
            "hypothesis_holds": self.hypothesis_holds,
            "parts_connected": self.parts_connected,
            "disconnected_adhesion_sets": [
                {"tree_edge": list(e), "vertices": X}
                for e, X in self.disconnected_adhesion_sets
            ],
            "disconnected_parts": self.disconnected_parts,
        }


@dataclass
class BasicReport:
    """
    Outcome of the check whether a tree-decomposition is basic at a scale.

    Attributes
    ----------
    finite_adhesion:
        Always True for finite decompositions, reported with ``max_adhesion``.
    edge_orbits:
        Orbits of the induced action on the interior tree edges,
        i.e., edges whose parts avoid the boundary of the patch.
    splitting_edge:
        A tree edge whose adhesion set separates boundary vertices,
        the finite-scale stand-in for distinguishing two ends.
    ties:
        Nodes whose part equals another part; their images were resolved
        to the lowest node.
    scale:
        The inner radius of the patch the check was performed on.
    """

    finite_adhesion: bool
    max_adhesion: int
    edge_orbits: list[list[tuple[Node, Node]]]
    splitting_edge: tuple[Node, Node] | None
    ties: list[Node]
    scale: int

    @property
    def one_edge_orbit(self) -> bool:
        return len(self.edge_orbits) == 1

    @property
    def distinguishes_ends(self) -> bool:
        return self.splitting_edge is not None

    @property
    def basic(self) -> bool:
        return self.finite_adhesion and self.one_edge_orbit and self.distinguishes_ends

    @property
    def failure(self) -> str | None:
        if not self.distinguishes_ends:
            return f"no adhesion set separates the boundary at scale {self.scale}"
        if not self.one_edge_orbit:
            return (
                f"the action has {len(self.edge_orbits)} orbits "
                "on the interior tree edges"
            )
        return None

    def to_json(self) -> dict[str, Any]:
        return {
            "basic": self.basic,
            "finite_adhesion": self.finite_adhesion,
            "max_adhesion": self.max_adhesion,
            "edge_orbits": [[list(e) for e in orbit] for orbit in self.edge_orbits],
            "splitting_edge": (
                None if self.splitting_edge is None else list(self.splitting_edge)
            ),
            "ties": self.ties,
            "scale": self.scale,
        }


class TreeDecomposition:
    """
    Class representing a tree-decomposition of a finite graph.

    Definitions
    -----------
    :prf:ref:`Tree-decomposition <def-tree-decomposition>`

    Parameters
    ----------
    tree:
        A tree whose vertices are the nodes of the decomposition.
    parts:
        The part of every node.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> td = TreeDecomposition(Graph([(0, 1)]), {0: [0, 1, 2, 3], 1: [3, 4, 5, 0]})
    >>> td.verify(graphs.Cycle(6)).valid
    True
    >>> sorted(td.adhesion_set(0, 1))
    [0, 3]

    METHODS
    """

    def __init__(self, tree: Graph, parts: dict[Node, Iterable[Vertex]]):
        if not isinstance(tree, Graph):
            tree = Graph(tree)
        if tree.number_of_nodes() == 0 or not nx.is_tree(tree):
            raise NotATreeError()
        if set(parts) != set(tree.nodes):
            raise ValueError("The parts need to be indexed by the nodes of the tree.")
        self.tree = tree
        self.parts = {t: frozenset(parts[t]) for t in sorted(parts)}

    def __repr__(self) -> str:
        return (
            f"TreeDecomposition with {self.tree.number_of_nodes()} nodes "
            f"and maximal part size {max(len(p) for p in self.parts.values())}"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return self.tree == other.tree and self.parts == other.parts

    __hash__ = None

    @doc_category("Attribute getters")
    def nodes(self) -> list[Node]:
        return sorted(self.tree.nodes)

    @doc_category("Attribute getters")
    def tree_edges(self) -> list[tuple[Node, Node]]:
        return sorted(_edge(*e) for e in self.tree.edges)

    @doc_category("Attribute getters")
    def adhesion_set(self, t1: Node, t2: Node) -> frozenset[Vertex]:
        if not self.tree.has_edge(t1, t2):
            raise ValueError(f"The nodes {t1} and {t2} are not adjacent in the tree.")
        return self.parts[t1] & self.parts[t2]

    @doc_category("Attribute getters")
    def adhesion_sets(self) -> dict[tuple[Node, Node], frozenset[Vertex]]:
        """
        Return the adhesion set of every tree edge.
        """
        return {e: self.adhesion_set(*e) for e in self.tree_edges()}

    @doc_category("Attribute getters")
    def max_adhesion(self) -> int:
        return max((len(X) for X in self.adhesion_sets().values()), default=0)

    @doc_category("Attribute getters")
    def side_of(self, t1: Node, t2: Node) -> set[Node]:
        """
        Return the nodes of the component of ``T - t1t2`` containing ``t1``.
        """
        T = nx.Graph(self.tree)
        T.remove_edge(t1, t2)
        return nx.node_connected_component(T, t1)

    @doc_category("Attribute getters")
    def vertices(self) -> frozenset[Vertex]:
        return frozenset().union(*self.parts.values())

    @doc_category("Axioms")
    def verify(self, g: Graph) -> AxiomReport:
        """
        Return the violations of the axioms of a tree-decomposition of ``g``.

        Besides the three axioms, the separation property is checked:
        the adhesion set of every tree edge separates the vertices
        of the parts on one side from those on the other side.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> td = TreeDecomposition(Graph([(0, 1)]), {0: [0, 1], 1: [2, 3, 4]})
        >>> td.verify(graphs.Path(5)).uncovered_edges
        [(1, 2)]
        """
        report = AxiomReport()
        covered = self.vertices()
        report.missing_vertices = sorted(set(g.nodes) - covered)

        nodes_of = {v: set() for v in g.nodes}
        for t, part in self.parts.items():
            for v in part:
                nodes_of.setdefault(v, set()).add(t)

        for u, v in g.edge_list():
            if not nodes_of.get(u, set()) & nodes_of.get(v, set()):
                report.uncovered_edges.append((u, v))

        for v in sorted(nodes_of):
            nodes = nodes_of[v]
            if len(nodes) < 2:
                continue
            components = sorted(
                (sorted(c) for c in nx.connected_components(self.tree.subgraph(nodes))),
                key=lambda c: c[0],
            )
            if len(components) > 1:
                t1, t2 = components[0][0], components[1][0]
                path = nx.shortest_path(self.tree, t1, t2)
                t3 = next(t for t in path if v not in self.parts[t])
                report.subtree_violations.append((t1, t2, t3, v))

        for t1, t2 in self.tree_edges():
            X = self.adhesion_set(t1, t2)
            side_a = self.side_of(t1, t2)
            A = set().union(*(self.parts[t] for t in side_a)) - X
            B = (
                set().union(
                    *(self.parts[t] for t in self.tree.nodes if t not in side_a)
                )
                - X
            )
            H = g.subgraph(set(g.nodes) - X)
            for component in sorted(nx.connected_components(H), key=min):
                a_side = sorted(component & A)
                b_side = sorted(component & B)
                if a_side and b_side:
                    path = nx.shortest_path(H, a_side[0], b_side[0])
                    report.separation_violations.append(((t1, t2), path))
                    break
        return report

    @doc_category("Geodesic closure")
    def geodesic_closure(self, g: Graph) -> TreeDecomposition:
        """
        Return the tree-decomposition on the same tree obtained by adding,
        for every adhesion set ``X`` contained in a part, all vertices on
        geodesics between vertices of ``X`` to the part.

        The adhesion sets are those of the original decomposition;
        the closure is a single pass.

        Definitions
        -----------
        :prf:ref:`Geodesic closure <def-geodesic-closure>`

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> td = TreeDecomposition(Graph([(0, 1)]), {0: [0, 1, 2, 3], 1: [3, 4, 5, 0]})
        >>> closed = td.geodesic_closure(graphs.Cycle(6))
        >>> sorted(closed.parts[0]), sorted(closed.parts[1])
        ([0, 1, 2, 3, 4, 5], [0, 1, 2, 3, 4, 5])

        Notes
        -----
        The postconditions are asserted: the result is a tree-decomposition,
        its adhesion sets induce connected subgraphs and its parts
        contain the original parts.
        """
        if g.number_of_nodes() == 0 or not nx.is_connected(g):
            raise DisconnectedGraphError(
                "The geodesic closure is defined for connected graphs only."
            )
        if not self.verify(g).valid:
            raise ValueError("The input is not a tree-decomposition of the graph.")

        distances: dict[Vertex, dict[Vertex, int]] = {}

        def dist(v):
            if v not in distances:
                distances[v] = g.distances_from(v)
            return distances[v]

        intervals: dict[tuple[Vertex, Vertex], frozenset[Vertex]] = {}

        def interval(u, v):
            if (u, v) not in intervals:
                du, dv = dist(u), dist(v)
                intervals[(u, v)] = frozenset(
                    w for w in g.nodes if du[w] + dv[w] == du[v]
                )
            return intervals[(u, v)]

        adhesions = set(self.adhesion_sets().values())
        geodesic_hull = {}
        for X in adhesions:
            hull = set(X)
            for u, v in combinations(sorted(X), 2):
                hull |= interval(u, v)
            geodesic_hull[X] = hull

        new_parts = {}
        for t, part in self.parts.items():
            new_part = set(part)
            for X, hull in geodesic_hull.items():
                if X <= part:
                    new_part |= hull
            new_parts[t] = new_part
        closed = TreeDecomposition(self.tree, new_parts)

        if not closed.verify(g).valid:
            raise InvariantError("The geodesic closure violates the axioms.")
        for e, X in closed.adhesion_sets().items():
            if X and not nx.is_connected(g.subgraph(X)):
                raise InvariantError(
                    f"The adhesion set of {e} is disconnected after the closure."
                )
        if any(not self.parts[t] <= closed.parts[t] for t in self.parts):
            raise InvariantError("A part shrank under the geodesic closure.")
        logger.debug(
            "geodesic closure grew the parts by %d vertices in total",
            sum(len(closed.parts[t]) - len(self.parts[t]) for t in self.parts),
        )
        return closed

    @doc_category("Geodesic closure")
    def check_connected_parts(self, g: Graph) -> ConnectedPartsReport:
        """
        Return whether connected adhesion sets yield connected parts.

        If every adhesion set induces a connected subgraph of the connected
        graph ``g``, then every part induces a connected subgraph;
        the report lists the disconnected adhesion sets and parts.

        Examples
        --------
        >>> import pyamalgam.graphDB as graphs
        >>> td = TreeDecomposition(Graph([(0, 1)]), {0: [0, 1, 2, 3], 1: [3, 4, 5, 0]})
        >>> td.check_connected_parts(graphs.Cycle(6)).hypothesis_holds
        False
        """
        disconnected_adhesions = [
            (e, sorted(X))
            for e, X in self.adhesion_sets().items()
            if X and not nx.is_connected(g.subgraph(X))
        ]
        disconnected_parts = [
            t
            for t, part in self.parts.items()
            if part and not nx.is_connected(g.subgraph(part))
        ]
        report = ConnectedPartsReport(disconnected_adhesions, disconnected_parts)
        if report.lemma_violated:
            logger.warning(
                "connected adhesion sets but disconnected parts %s", disconnected_parts
            )
        return report

    @doc_category("Tree operations")
    def contract_edges(
        self, keep: Callable[[tuple[Node, Node]], bool]
    ) -> TreeDecomposition:
        """
        Return the decomposition in which every tree edge rejected by ``keep``
        is contracted.

        Each component of the tree without the kept edges becomes a single
        node, named by its smallest node, whose part is the union of the parts.
        Kept edges and their adhesion sets are unchanged.

        Examples
        --------
        >>> td = TreeDecomposition(Graph([(0, 1), (1, 2)]), {0: [0], 1: [1], 2: [2]})
        >>> td.contract_edges(lambda e: e == (0, 1)).parts
        {0: frozenset({0}), 1: frozenset({1, 2})}
        """
        H = nx.Graph()
        H.add_nodes_from(self.tree.nodes)
        H.add_edges_from(e for e in self.tree_edges() if not keep(e))
        representative = {}
        new_parts = {}
        for component in nx.connected_components(H):
            r = min(component)
            new_parts[r] = set().union(*(self.parts[t] for t in component))
            for t in component:
                representative[t] = r
        new_tree = Graph()
        new_tree.add_nodes_from(new_parts)
        new_tree.add_edges_from(
            (representative[t1], representative[t2])
            for t1, t2 in self.tree_edges()
            if keep((t1, t2))
        )
        return TreeDecomposition(new_tree, new_parts)

    @doc_category("Tree operations")
    def adhesion_subtree_diameters(self) -> dict[frozenset[Vertex], int]:
        """
        Return for every adhesion set ``X`` the diameter of the subtree
        of the nodes whose parts contain ``X``.

        Values above 2 are logged as warnings; for decompositions arising
        from quasi-transitive data they do not occur.

        Examples
        --------
        >>> td = TreeDecomposition(
        ...     Graph([(0, 1), (1, 2)]), {0: [0, 1], 1: [0, 1], 2: [0, 1]}
        ... )
        >>> td.adhesion_subtree_diameters()
        {frozenset({0, 1}): 2}
        """
        result = {}
        for X in sorted(set(self.adhesion_sets().values()), key=sorted):
            nodes = [t for t, part in self.parts.items() if X <= part]
            subtree = self.tree.subgraph(nodes)
            result[X] = nx.diameter(subtree) if len(nodes) > 1 else 0
            if result[X] > 2:
                logger.warning(
                    "adhesion set %s spans a subtree of diameter %d",
                    sorted(X),
                    result[X],
                )
        return result

    @doc_category("Actions")
    def induced_tree_map(
        self, h: VertexMap, generator: int = 0, ties: list[Node] | None = None
    ) -> dict[Node, Node]:
        """
        Return the map of nodes induced by a vertex map.

        A node is mapped if its part lies in the domain of ``h``
        and the image of the part is a part; among equal parts the lowest
        node is taken and the node is recorded in ``ties``.
        If ``h`` is defined on every vertex and the image of some part
        is not a part, the action does not permute the parts.
        """
        by_part: dict[frozenset[Vertex], list[Node]] = {}
        for t, part in self.parts.items():
            by_part.setdefault(part, []).append(t)
        total = self.vertices() <= set(h)
        node_map = {}
        for t, part in self.parts.items():
            if not part <= set(h):
                continue
            image = frozenset(h[v] for v in part)
            candidates = by_part.get(image)
            if candidates is None:
                if total:
                    raise ActionError(generator, t)
                continue
            if len(candidates) > 1 and ties is not None and t not in ties:
                ties.append(t)
            node_map[t] = candidates[0]
        return node_map

    @doc_category("Actions")
    def is_basic(self, action, patch) -> BasicReport:
        """
        Return whether the decomposition of the patch graph is basic
        under the action, at the scale of the patch.

        Three conditions are checked: all adhesion sets are finite,
        the induced action has one orbit on the interior tree edges,
        and some adhesion set separates two boundary vertices of the patch.

        Definitions
        -----------
        :prf:ref:`Basic tree-decomposition <def-basic-td>`

        Parameters
        ----------
        action:
            An :class:`~pyamalgam.action.Action` by (partial) automorphisms
            of ``patch.graph``.
        patch:
            The :class:`~pyamalgam.patch.Patch` whose graph is decomposed.
        """
        ties: list[Node] = []
        edges = self.tree_edges()
        index = {e: i for i, e in enumerate(edges)}
        uf = nx.utils.UnionFind(range(len(edges)))
        for i, h in enumerate(action.with_inverses()):
            node_map = self.induced_tree_map(h, i, ties)
            for t1, t2 in edges:
                if t1 in node_map and t2 in node_map:
                    image = _edge(node_map[t1], node_map[t2])
                    if image not in index:
                        raise ActionError(i, t1)
                    uf.union(index[(t1, t2)], index[image])

        boundary = patch.boundary
        touching = {t for t, part in self.parts.items() if part & boundary}
        interior = [e for e in edges if e[0] not in touching and e[1] not in touching]
        orbits: dict[int, list[tuple[Node, Node]]] = {}
        for e in interior:
            orbits.setdefault(uf[index[e]], []).append(e)

        splitting_edge = None
        for t1, t2 in edges:
            X = self.adhesion_set(t1, t2)
            side = self.side_of(t1, t2)
            A = set().union(*(self.parts[t] for t in side)) - X
            B = set().union(*(self.parts[t] for t in self.tree.nodes if t not in side))
            B -= X
            if A & boundary and B & boundary:
                splitting_edge = (t1, t2)
                break

        report = BasicReport(
            finite_adhesion=True,
            max_adhesion=self.max_adhesion(),
            edge_orbits=sorted(orbits.values()),
            splitting_edge=splitting_edge,
            ties=sorted(ties),
            scale=patch.inner_radius,
        )
        if ties:
            logger.info("equal parts at nodes %s resolved to the lowest node", ties)
        return report

    @doc_category("Input and output")
    def to_json(self) -> dict[str, Any]:
        return {
            "tree": self.tree.to_json(),
            "parts": {str(t): sorted(part) for t, part in self.parts.items()},
        }

    @classmethod
    @doc_category("Input and output")
    def from_json(cls, data: dict[str, Any]) -> TreeDecomposition:
        """
        Create a tree-decomposition from ``{"tree": graph, "parts": {node: [...]}}``.
        """
        tree = Graph.from_json(data["tree"])
        parts = {int(t): [int(v) for v in part] for t, part in data["parts"].items()}
        return cls(tree, parts)


TreeDecomposition.__doc__ = TreeDecomposition.__doc__.replace(
    "METHODS",
    generate_category_tables(
        TreeDecomposition,
        1,
        [
            "Attribute getters",
            "Axioms",
            "Geodesic closure",
            "Tree operations",
            "Actions",
            "Input and output",
        ],
    ),
)
