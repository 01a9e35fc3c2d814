"""
Module for building truncations of tree amalgamations: labelled tree
patches, the copy-and-identify construction and lifts of automorphisms.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
import numpy as np

from pyamalgam.action import DEFAULT_ELEMENT_CAP, Action
from pyamalgam.amalgamation import (
    AmalgamationSpec,
    StarLabelling,
    check_spec,
    consistency_check,
    respects_action,
    star_isomorphism,
    validate_spec,
)
from pyamalgam.data_type import IndexLabel, Node, Vertex, VertexMap
from pyamalgam.exception import InconclusiveError, InvariantError, PreconditionError
from pyamalgam.graph import Graph
from pyamalgam.misc import (
    check_integrality_and_range,
    doc_category,
    generate_category_tables,
    invert_map,
)
from pyamalgam.patch import Patch, boundary_tolerant_isomorphic
from pyamalgam.treedecomp import TreeDecomposition

logger = logging.getLogger(__name__)


@dataclass
class LabelledTreePatch:
    """
    Ball of radius ``radius`` around the root ``0`` of the connecting tree
    of an amalgamation, with its directed edge labels.

    Attributes
    ----------
    tree:
        The ball; nodes are numbered in breadth-first order.
    side:
        The class (1 or 2) of the bipartition of every node; the root is on side 1.
    labels:
        The label ``f(t1 -> t2)`` of every directed tree edge.
    depth:
        The distance of every node from the root.
    radius:
    """

    tree: Graph
    side: dict[Node, int]
    labels: dict[tuple[Node, Node], IndexLabel]
    depth: dict[Node, int]
    radius: int

    def out_labels(self, t: Node) -> dict[IndexLabel, Node]:
        """
        Return the neighbors of ``t`` keyed by the labels of the edges towards them.
        """
        return {self.labels[(t, c)]: c for c in sorted(self.tree.neighbors(t))}

    def parent(self, t: Node) -> Node | None:
        if t == 0:
            return None
        return next(c for c in self.tree.neighbors(t) if self.depth[c] < self.depth[t])

    def is_complete(self, t: Node) -> bool:
        """
        Return whether all outgoing edges of ``t`` are present.
        """
        return self.depth[t] < self.radius

    def missing_labels(self, t: Node, spec: AmalgamationSpec) -> list[IndexLabel]:
        present = self.out_labels(t)
        return [k for k in spec.indices(self.side[t]) if k not in present]

    def star_labelling(self, t: Node) -> StarLabelling:
        """
        Return the labelling of the star at a complete node ``t``.
        """
        return StarLabelling(
            self.side[t], {k: self.labels[(c, t)] for k, c in self.out_labels(t).items()}
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "tree": self.tree.to_json(),
            "side": {str(t): s for t, s in sorted(self.side.items())},
            "labels": [[t1, t2, k] for (t1, t2), k in sorted(self.labels.items())],
            "radius": self.radius,
        }


def build_tree_patch(
    s: AmalgamationSpec, R: int, seed: int | None = 0
) -> LabelledTreePatch:
    """
    Return the ball of radius ``R`` of the labelled connecting tree.

    Every complete node has one outgoing edge per index of its side.
    The label of the reverse of an edge is drawn by a generator seeded
    with ``seed`` among the admissible partner indices.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> T = build_tree_patch(specs.DoubleRay(), 3)
    >>> T.tree.number_of_nodes(), max(d for _, d in T.tree.degree)
    (7, 2)
    """
    check_integrality_and_range(R, "radius R", 0)
    rng = np.random.default_rng(seed)
    tree = Graph.from_vertices([0])
    side = {0: 1}
    depth = {0: 0}
    labels: dict[tuple[Node, Node], IndexLabel] = {}
    queue = deque([0])
    next_id = 1
    while queue:
        t = queue.popleft()
        if depth[t] == R:
            continue
        taken = {labels[(t, c)] for c in tree.neighbors(t) if (t, c) in labels}
        for k in s.indices(side[t]):
            if k in taken:
                continue
            c = next_id
            next_id += 1
            tree.add_edge(t, c)
            side[c] = 3 - side[t]
            depth[c] = depth[t] + 1
            labels[(t, c)] = k
            partners = s.partner_indices(k)
            labels[(c, t)] = int(partners[int(rng.integers(len(partners)))])
            queue.append(c)
    logger.debug("tree patch of radius %d with %d nodes", R, tree.number_of_nodes())
    return LabelledTreePatch(tree, side, labels, depth, R)


@dataclass
class OrbitReport:
    """
    Orbits of the lifted action meeting the ball of radius ``depth``
    compared with the number of vertices of the factors.
    """

    depth: int
    orbits: list[list[Vertex]]
    bound: int

    @property
    def within_bound(self) -> bool:
        return len(self.orbits) <= self.bound


@dataclass
class AmalgamGraph:
    """
    Truncation of a tree amalgamation built from a spec.

    Attributes
    ----------
    spec:
    tree_patch:
        The labelled ball of the connecting tree the copies are placed on.
    patch:
        The quotient graph with its boundary and root.
    provenance:
        For every vertex the sorted pairs ``(node, vertex of the copy)``
        identified to it.
    copy_map:
        The inverse of ``provenance``.
    induced_td:
        The tree-decomposition whose part at a node is the image of its copy.
    identification_lengths:
        For every vertex the diameter of the subtree of its provenance nodes.
    collapsed_loops, collapsed_parallels:
        Numbers of copy edges that became loops or coincided with another edge.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> A = build_amalgam(specs.DoubleRay(), 3)
    >>> A.graph.number_of_nodes(), A.graph.number_of_edges()
    (8, 7)
    >>> A.max_identification_length
    1

    METHODS
    """

    spec: AmalgamationSpec
    tree_patch: LabelledTreePatch
    patch: Patch
    provenance: dict[Vertex, list[tuple[Node, Vertex]]]
    copy_map: dict[tuple[Node, Vertex], Vertex]
    induced_td: TreeDecomposition
    identification_lengths: dict[Vertex, int]
    collapsed_loops: int = 0
    collapsed_parallels: int = 0
    _lifted: Action | None = field(default=None, repr=False)

    @property
    def graph(self) -> Graph:
        return self.patch.graph

    @property
    def max_identification_length(self) -> int:
        return max(self.identification_lengths.values(), default=0)

    @doc_category("Attribute getters")
    def long_identifications(self) -> list[Vertex]:
        """
        Return the vertices of identification length above 2.
        """
        return sorted(v for v, d in self.identification_lengths.items() if d > 2)

    @doc_category("Attribute getters")
    def provenance_nodes(self, v: Vertex) -> frozenset[Node]:
        return frozenset(t for t, _ in self.provenance[v])

    @doc_category("Attribute getters")
    def copy_of(self, t: Node) -> dict[Vertex, Vertex]:
        """
        Return the map from the factor to the vertices of its copy at ``t``.
        """
        G = self.spec.factor(self.tree_patch.side[t])
        return {x: self.copy_map[(t, x)] for x in sorted(G.nodes)}

    @doc_category("Lifts")
    def lift(
        self,
        source: Node,
        target: Node,
        gamma: VertexMap,
        other: AmalgamGraph | None = None,
        cap: int = DEFAULT_ELEMENT_CAP,
    ) -> VertexMap:
        """
        Return the partial isomorphism extending ``gamma`` from the copy
        at ``source`` to the copy at ``target`` of ``other``.

        The map of tree nodes is extended node by node: at every node
        complete in both trees, an isomorphism of the labelled stars is
        chosen that sends the edge back to the parent to the edge back
        to the image of the parent. The resulting vertex map is defined
        on the vertices all of whose copies lie at mapped nodes.

        Parameters
        ----------
        source, target:
            Tree nodes on the same side.
        gamma:
            An element of the action on the factor at ``source``.
        other:
            The build to map into; this build by default.

        Examples
        --------
        >>> import pyamalgam.specDB as specs
        >>> A = build_amalgam(specs.DoubleRay(), 3)
        >>> flip = A.lift(0, 0, {0: 1, 1: 0})
        >>> sorted(flip.items()) == [(v, v ^ 1) for v in range(8)]
        True
        """
        other = self if other is None else other
        T, T2 = self.tree_patch, other.tree_patch
        s = self.spec
        if s.factor_index(T.side[source]) != s.factor_index(T2.side[target]):
            raise ValueError("The nodes are copies of different factors.")
        node_map = {source: target}
        elements = {source: dict(gamma)}
        came_from: dict[Node, Node] = {}
        queue = deque([source])
        while queue:
            t = queue.popleft()
            t2 = node_map[t]
            if not (T.is_complete(t) and T2.is_complete(t2)):
                continue
            pin = None
            if t in came_from:
                p = came_from[t]
                pin = (T.labels[(t, p)], T2.labels[(t2, node_map[p])], invert_map(elements[p]))
            iso = star_isomorphism(
                s, T.star_labelling(t), T2.star_labelling(t2), elements[t], pin, cap
            )
            out, out2 = T.out_labels(t), T2.out_labels(t2)
            for k, c in out.items():
                if c in node_map:
                    continue
                node_map[c] = out2[iso.pi[k]]
                elements[c] = invert_map(iso.elements[k])
                came_from[c] = t
                queue.append(c)

        image_nodes = set(node_map.values())
        result = {}
        for v, pairs in self.provenance.items():
            if any(t not in node_map for t, _ in pairs):
                continue
            images = {other.copy_map[(node_map[t], elements[t][x])] for t, x in pairs}
            if len(images) != 1:
                raise InvariantError(f"The lift splits the vertex {v}.")
            w = images.pop()
            if other.provenance_nodes(w) <= image_nodes:
                result[v] = w
        return result

    @doc_category("Lifts")
    def lifted_action(self) -> Action:
        """
        Return the action on the build generated by lifted automorphisms.

        The generators are the lifts of the factor generators at the root
        (and, for Type 1, at its first neighbor) together with the lifts
        of the identity from the root to every node at distance 2
        (Type 1) or to every neighbor of the root (Type 2).
        """
        if self._lifted is not None:
            return self._lifted
        s, T = self.spec, self.tree_patch
        generators = [self.lift(0, 0, g) for g in s.action(1).generators]
        neighbors = sorted(T.tree.neighbors(0))
        if s.kind == 1:
            if neighbors:
                u = neighbors[0]
                generators += [self.lift(u, u, g) for g in s.action(2).generators]
            translations = sorted(t for t, d in T.depth.items() if d == 2)
        else:
            translations = neighbors
        G = s.factor(1)
        identity = {x: x for x in G.nodes}
        generators += [self.lift(0, u, identity) for u in translations]
        action = Action([g for g in generators if g], "lifted").without_identities()
        logger.debug("lifted action with %d generators", len(action.generators))
        self._lifted = action
        return action

    @doc_category("Lifts")
    def orbit_report(self, depth: int) -> OrbitReport:
        """
        Return the orbits of the lifted action meeting the ball
        of radius ``depth`` around the root.
        """
        ball = self.patch.ball(depth)
        orbits = [
            orbit
            for orbit in self.graph.orbits(self.lifted_action(), partial=True)
            if ball & set(orbit)
        ]
        bound = sum(G.number_of_nodes() for G in self.spec.factors)
        return OrbitReport(depth, orbits, bound)

    @doc_category("Input and output")
    def provenance_json(self) -> dict[str, list[list[int]]]:
        return {str(v): [list(p) for p in pairs] for v, pairs in self.provenance.items()}

    @doc_category("Input and output")
    def to_json(self) -> dict[str, Any]:
        return {
            "spec": self.spec.name,
            "radius": self.tree_patch.radius,
            "graph": self.graph.to_json(),
            "boundary": sorted(self.patch.boundary),
            "root": self.patch.root,
            "provenance": self.provenance_json(),
            "identification_lengths": {
                str(v): d for v, d in self.identification_lengths.items()
            },
            "long_identifications": self.long_identifications(),
            "collapsed_loops": self.collapsed_loops,
            "collapsed_parallels": self.collapsed_parallels,
            "td": self.induced_td.to_json(),
        }


AmalgamGraph.__doc__ = AmalgamGraph.__doc__.replace(
    "METHODS",
    generate_category_tables(
        AmalgamGraph, 1, ["Attribute getters", "Lifts", "Input and output"]
    ),
)


def build_amalgam(s: AmalgamationSpec, R: int, seed: int | None = 0) -> AmalgamGraph:
    """
    Return the truncation of the tree amalgamation at radius ``R``.

    A copy of the factor is placed at every node of the tree patch;
    along every tree edge ``t -> c`` labelled ``k`` with reverse label ``l``,
    the copy of every ``x`` in ``S_k`` at ``t`` is identified with the copy
    of ``phi_{kl}(x)`` at ``c``. Loops and parallel edges of the quotient
    are collapsed and counted.

    Definitions
    -----------
    :prf:ref:`Tree amalgamation <def-tree-amalgamation>`,
    :prf:ref:`Identification length <def-identification-length>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> build_amalgam(specs.TriangleCactus(), 1).graph.number_of_nodes()
    9
    """
    check_spec(s)
    T = build_tree_patch(s, R, seed)
    pairs = [
        (t, x)
        for t in sorted(T.tree.nodes)
        for x in sorted(s.factor(T.side[t]).nodes)
    ]
    index = {p: i for i, p in enumerate(pairs)}
    uf = nx.utils.UnionFind(range(len(pairs)))
    for t1, t2 in T.tree.edges:
        t, c = (t1, t2) if T.depth[t1] < T.depth[t2] else (t2, t1)
        k, l = T.labels[(t, c)], T.labels[(c, t)]
        try:
            phi = s.bonding(k, l)
        except KeyError:
            raise InvariantError(f"The bonding map for the labels {(k, l)} is undefined.")
        for x in s.adhesions[k]:
            uf.union(index[(t, x)], index[(c, phi[x])])

    classes = sorted((sorted(c) for c in uf.to_sets()), key=lambda c: c[0])
    copy_map: dict[tuple[Node, Vertex], Vertex] = {}
    provenance: dict[Vertex, list[tuple[Node, Vertex]]] = {}
    for v, members in enumerate(classes):
        provenance[v] = sorted(pairs[i] for i in members)
        for i in members:
            copy_map[pairs[i]] = v

    G = Graph.from_vertices(range(len(classes)))
    loops = parallels = 0
    for t in sorted(T.tree.nodes):
        for x, y in s.factor(T.side[t]).edge_list():
            u, v = copy_map[(t, x)], copy_map[(t, y)]
            if u == v:
                loops += 1
            elif G.has_edge(u, v):
                parallels += 1
            else:
                G.add_edge(u, v)

    lengths = {}
    for v, members in provenance.items():
        nodes = {t for t, _ in members}
        subtree = T.tree.subgraph(nodes)
        if not nx.is_connected(subtree):
            raise InvariantError(f"The copies of the vertex {v} do not span a subtree.")
        lengths[v] = nx.diameter(subtree) if len(nodes) > 1 else 0

    boundary = set()
    for t in T.tree.nodes:
        if T.is_complete(t):
            continue
        for k in T.missing_labels(t, s):
            boundary |= {copy_map[(t, x)] for x in s.adhesions[k]}

    root = copy_map[(0, min(s.factor(1).nodes))]
    parts = {
        t: [copy_map[(t, x)] for x in s.factor(T.side[t]).nodes] for t in T.tree.nodes
    }
    amalgam = AmalgamGraph(
        spec=s,
        tree_patch=T,
        patch=Patch(G, boundary, root),
        provenance=provenance,
        copy_map=copy_map,
        induced_td=TreeDecomposition(T.tree, parts),
        identification_lengths=lengths,
        collapsed_loops=loops,
        collapsed_parallels=parallels,
    )
    if amalgam.long_identifications():
        logger.info(
            "identification length above 2 at %d vertices",
            len(amalgam.long_identifications()),
        )
    logger.debug(
        "built %r at radius %d: %d vertices, %d boundary vertices",
        s,
        R,
        G.number_of_nodes(),
        len(boundary),
    )
    return amalgam


@dataclass
class RelabelVerdict:
    """
    Outcome of comparing two builds of the same spec under different labellings.

    ``status`` is ``"isomorphic"``, ``"not-isomorphic"`` or ``"inconclusive"``.
    ``lift_agrees`` tells whether the lift of the identity at the roots
    is an isomorphism of the two builds; None if it was not computed.
    """

    status: str
    depth: int | None = None
    mapping: VertexMap | None = None
    reason: str = ""
    pointer: Any = None
    lift_agrees: bool | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "depth": self.depth,
            "reason": self.reason,
            "pointer": self.pointer,
            "lift_agrees": self.lift_agrees,
        }


def check_preconditions(s: AmalgamationSpec) -> RelabelVerdict | None:
    """
    Return an inconclusive verdict if the spec is invalid, does not respect
    its actions or has inconsistent bonding maps, otherwise None.
    """
    report = validate_spec(s)
    if not report.valid:
        return RelabelVerdict(
            "inconclusive", reason="invalid spec", pointer=report.violations
        )
    for side in s.sides():
        for i, g in enumerate(s.action(side).generators):
            respects = respects_action(s, g, side)
            if not respects.holds:
                return RelabelVerdict(
                    "inconclusive",
                    reason=f"generator {i} of side {side} is not respected",
                    pointer=respects.failing_index,
                )
    consistency = consistency_check(s)
    if not consistency.consistent:
        return RelabelVerdict(
            "inconclusive",
            reason=f"bonding maps {consistency.status}",
            pointer=list(consistency.failing_triple),
        )
    return None


def _is_isomorphism(G: Graph, H: Graph, m: VertexMap) -> bool:
    if len(m) != G.number_of_nodes() or G.number_of_nodes() != H.number_of_nodes():
        return False
    if G.number_of_edges() != H.number_of_edges():
        return False
    return all(H.has_edge(m[u], m[v]) for u, v in G.edges)


def relabel_invariance(
    s: AmalgamationSpec, R: int, seed_a: int = 0, seed_b: int = 1
) -> RelabelVerdict:
    """
    Return whether builds under two labellings agree up to isomorphism.

    The builds are compared by :func:`~pyamalgam.patch.boundary_tolerant_isomorphic`
    at depth ``R-1``, bounded by their inner radii.
    The verdict is inconclusive if the spec does not respect its actions
    or its bonding maps are not consistent.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> relabel_invariance(specs.DoubleRay(), 3, 0, 1).status
    'isomorphic'
    """
    verdict = check_preconditions(s)
    if verdict is not None:
        logger.info("labelling invariance inconclusive: %s", verdict.reason)
        return verdict
    A = build_amalgam(s, R, seed_a)
    B = build_amalgam(s, R, seed_b)
    depth = max(0, min(R - 1, A.patch.inner_radius, B.patch.inner_radius))
    mapping = boundary_tolerant_isomorphic(A.patch, B.patch, depth)
    try:
        lifted = A.lift(0, 0, {x: x for x in s.factor(1).nodes}, other=B)
        lift_agrees = _is_isomorphism(A.graph, B.graph, lifted)
    except (InconclusiveError, PreconditionError) as error:
        logger.info("lift between the builds failed: %s", error)
        lift_agrees = None
    return RelabelVerdict(
        "isomorphic" if mapping is not None else "not-isomorphic",
        depth,
        mapping,
        lift_agrees=lift_agrees,
    )
