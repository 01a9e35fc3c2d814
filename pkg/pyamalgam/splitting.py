"""
Module for the splitting direction: from a basic tree-decomposition
of a graph with an action to a tree amalgamation, and processes of
splittings ending in a terminal factorisation.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import networkx as nx

from pyamalgam.action import Action
from pyamalgam.amalgamation import (
    AmalgamationSpec,
    consistency_check,
    is_trivial,
    respects_action,
    validate_spec,
)
from pyamalgam.build import build_amalgam
from pyamalgam.data_type import DirectedEdge, Vertex, VertexMap
from pyamalgam.ends import DEFAULT_SEPARATOR_CAP, components_without, tight_separators
from pyamalgam.exception import (
    ActionError,
    InconclusiveError,
    NoSplitFoundError,
    NonNestedOrbitError,
    NotATreeError,
    NotBasicError,
    PreconditionError,
    SpecError,
)
from pyamalgam.graph import Graph
from pyamalgam.misc import compose_maps, invert_map, is_identity, restrict_map
from pyamalgam.patch import Patch, boundary_tolerant_isomorphic
from pyamalgam.treedecomp import TreeDecomposition

logger = logging.getLogger(__name__)

DEFAULT_SPLIT_ATTEMPTS = 25


@dataclass
class OrientationData:
    """
    Orientation of the tree edges relative to a directed edge ``e0 = (s, t)``.

    Attributes
    ----------
    e0:
    positive:
        The directed edges that are images of ``e0``; the reverses
        of these are the negative ones. Every classified tree edge has
        exactly one positive orientation.
    transversal:
        For every positive edge ``e``, an element mapping ``e0`` to ``e``,
        given on the union of the parts of ``s`` and ``t``.
    K:
        The positive edges starting at ``s``, ``e0`` first.
    L:
        The negative edges starting at ``t``, the reverse of ``e0`` first.
    gamma_st:
        An element mapping the part of ``s`` onto the part of ``t``,
        given on the part of ``s``, or None if there is none.
    stabiliser:
        Elements fixing ``e0`` found as ratios of transversal elements.
    reversal:
        Whether some element reverses a tree edge; then only elements
        preserving the bipartition of the tree are used for the orientation.
    """

    e0: DirectedEdge
    positive: list[DirectedEdge]
    transversal: dict[DirectedEdge, VertexMap]
    K: list[DirectedEdge]
    L: list[DirectedEdge]
    gamma_st: VertexMap | None = None
    stabiliser: list[VertexMap] = field(default_factory=list)
    reversal: bool = False

    @property
    def negative(self) -> list[DirectedEdge]:
        return sorted((b, a) for a, b in self.positive)

    @property
    def kind(self) -> int:
        return 1 if self.gamma_st is None else 2

    def is_positive(self, e: DirectedEdge) -> bool:
        return e in self.transversal

    def to_json(self) -> dict[str, Any]:
        return {
            "e0": list(self.e0),
            "positive": [list(e) for e in self.positive],
            "K": [list(e) for e in self.K],
            "L": [list(e) for e in self.L],
            "type": self.kind,
            "reversal": self.reversal,
            "stabiliser_elements": len(self.stabiliser),
        }


def _default_e0(td: TreeDecomposition, patch: Patch) -> DirectedEdge:
    touching = [t for t, part in td.parts.items() if part & patch.boundary]
    interior = [e for e in td.tree_edges() if e[0] not in touching and e[1] not in touching]
    if not interior:
        raise NotATreeError("The decomposition has no interior tree edge.")
    if touching:
        dist = nx.multi_source_dijkstra_path_length(td.tree, touching)
    else:
        dist = {t: math.inf for t in td.tree.nodes}
    best = max(min(dist[a], dist[b]) for a, b in interior)
    return next(e for e in interior if min(dist[e[0]], dist[e[1]]) == best)


def orient_edges(
    td: TreeDecomposition,
    action: Action,
    patch: Patch,
    e0: DirectedEdge | None = None,
) -> OrientationData:
    """
    Classify the directed tree edges into positively and negatively
    oriented ones and pick an element mapping ``e0`` to every positive edge.

    The images of ``e0`` are found by a breadth-first search over the
    directed edges, moving along the generators and their inverses;
    an element reached twice for the same edge contributes an element
    of the stabiliser of ``e0``. If some element reverses a tree edge,
    only the orientations starting on the side of ``s`` are kept.

    Parameters
    ----------
    td:
        A basic tree-decomposition of ``patch.graph``.
    action:
        The action by (partial) automorphisms of ``patch.graph``.
    patch:
    e0:
        The directed edge to start from; by default the interior edge
        farthest from the parts meeting the boundary, the lowest on ties.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> G = graphs.Path(8)
    >>> td = TreeDecomposition(Graph(graphs.Path(7)), {i: [i, i + 1] for i in range(7)})
    >>> shift = Action([{j: j + 1 for j in range(7)}])
    >>> o = orient_edges(td, shift, Patch(G, [0, 7]))
    >>> o.e0, o.K, o.L, o.kind
    ((2, 3), [(2, 3)], [(3, 2)], 2)
    """
    report = td.is_basic(action, patch)
    if not report.basic:
        raise NotBasicError(report)
    if e0 is None:
        e0 = _default_e0(td, patch)
    elif not td.tree.has_edge(*e0):
        raise ValueError(f"The pair {e0} is not a tree edge.")
    s0, t0 = e0
    D0 = td.parts[s0] | td.parts[t0]

    moves = []
    for i, h in enumerate(action.with_inverses()):
        moves.append((h, td.induced_tree_map(h, i)))
    transversal = {e0: {v: v for v in sorted(D0)}}
    stabiliser: list[VertexMap] = []
    queue = deque([e0])
    while queue:
        a, b = queue.popleft()
        g = transversal[(a, b)]
        for i, (h, node_map) in enumerate(moves):
            if a not in node_map or b not in node_map:
                continue
            image = (node_map[a], node_map[b])
            if not td.tree.has_edge(*image):
                raise ActionError(i, a)
            moved = compose_maps(h, g)
            if image not in transversal:
                transversal[image] = moved
                queue.append(image)
            else:
                element = compose_maps(invert_map(transversal[image]), moved)
                if not is_identity(element) and element not in stabiliser:
                    stabiliser.append(element)

    reversal = any((b, a) in transversal for a, b in transversal)
    if reversal:
        parity = nx.single_source_shortest_path_length(td.tree, s0)
        logger.info("an element reverses a tree edge; using the bipartition subgroup")
        transversal = {
            e: g for e, g in transversal.items() if parity[e[0]] % 2 == 0
        }
        stabiliser = [
            g
            for g in stabiliser
            if all(g.get(v) in td.parts[s0] for v in td.parts[s0])
        ]
    positive = sorted(transversal)

    def classified(a, b):
        return (a, b) in transversal or (b, a) in transversal

    touching = {t for t, part in td.parts.items() if part & patch.boundary}
    for a, b in td.tree_edges():
        if a not in touching and b not in touching and not classified(a, b):
            raise InconclusiveError("tree edge without orientation", (a, b))
    for x in list(td.tree.neighbors(s0)) + list(td.tree.neighbors(t0)):
        for y in (s0, t0):
            if td.tree.has_edge(x, y) and not classified(x, y):
                raise InconclusiveError("boundary interference at an edge of e0", (y, x))

    K = [e0] + [(s0, x) for x in sorted(td.tree.neighbors(s0)) if x != t0 and (s0, x) in transversal]
    L = [(t0, s0)] + [
        (t0, y) for y in sorted(td.tree.neighbors(t0)) if y != s0 and (y, t0) in transversal
    ]

    V_s = td.parts[s0]
    gamma_st = None
    for y in sorted(td.tree.neighbors(t0)):
        if (t0, y) in transversal:
            g = transversal[(t0, y)]
            gamma_st = restrict_map(g, sorted(V_s))
            break
    if gamma_st is None:
        for x in sorted(td.tree.neighbors(s0)):
            if (x, s0) in transversal:
                inverse = invert_map(transversal[(x, s0)])
                gamma_st = restrict_map(inverse, sorted(V_s))
                break
    logger.info(
        "oriented %d edges from e0 = %s: |K| = %d, |L| = %d, type %d",
        len(positive),
        e0,
        len(K),
        len(L),
        1 if gamma_st is None else 2,
    )
    return OrientationData(
        e0, positive, transversal, K, L, gamma_st, stabiliser, reversal
    )


@dataclass
class AmalgamationData:
    """
    A spec obtained from a basic tree-decomposition together with the
    identifications ``id_s``, ``id_t`` of its factors with the parts
    of ``s`` and ``t``.
    """

    spec: AmalgamationSpec
    orientation: OrientationData
    id_s: VertexMap
    id_t: VertexMap


def _stabiliser_element(g: VertexMap, V: frozenset[Vertex]) -> VertexMap | None:
    if not V <= set(g):
        return None
    restricted = restrict_map(g, sorted(V))
    if set(restricted.values()) != V or is_identity(restricted):
        return None
    return restricted


def amalgamation_data(
    patch: Patch,
    action: Action,
    td: TreeDecomposition,
    e0: DirectedEdge | None = None,
) -> AmalgamationData:
    """
    Return the spec of :func:`td_to_amalgamation` with the orientation
    and the identifications of its factors.
    """
    o = orient_edges(td, action, patch, e0)
    s0, t0 = o.e0
    V_s, V_t = td.parts[s0], td.parts[t0]
    host = patch.graph
    id_s = {i: v for i, v in enumerate(sorted(V_s))}
    if o.gamma_st is None:
        id_t = {i: v for i, v in enumerate(sorted(V_t))}
        factors = [host.induced(V_s, relabel=True), host.induced(V_t, relabel=True)]
    else:
        id_t = compose_maps(o.gamma_st, id_s)
        factors = [host.induced(V_s, relabel=True)]
    inv_s, inv_t = invert_map(id_s), invert_map(id_t)

    label = {}
    for e in o.K + o.L:
        label[e] = len(label) + 1
    adhesions = {}
    for (_, x) in o.K:
        adhesions[label[(s0, x)]] = sorted(inv_s[v] for v in V_s & td.parts[x])
    for (_, y) in o.L:
        adhesions[label[(t0, y)]] = sorted(inv_t[v] for v in V_t & td.parts[y])
    bondings = {}
    for (_, x) in o.K:
        k = label[(s0, x)]
        gamma_k_inv = invert_map(o.transversal[(s0, x)])
        for (_, y) in o.L:
            l = label[(t0, y)]
            gamma_l = o.transversal[(y, t0)]
            bondings[(k, l)] = {
                a: inv_t[gamma_l[gamma_k_inv[id_s[a]]]] for a in adhesions[k]
            }

    stab_s = [o.transversal[e] for e in o.K[1:]] + list(o.stabiliser)
    stab_t = [o.transversal[(y, t0)] for (_, y) in o.L[1:]] + list(o.stabiliser)
    if o.gamma_st is not None:
        inverse_st = invert_map(o.gamma_st)
        for x in sorted(td.tree.neighbors(s0)):
            if (x, s0) in o.transversal:
                stab_s.append(compose_maps(o.transversal[(x, s0)], o.gamma_st))
        for y in sorted(td.tree.neighbors(t0)):
            if (t0, y) in o.transversal:
                stab_s.append(compose_maps(inverse_st, o.transversal[(t0, y)]))
    generators_s = [g for g in (_stabiliser_element(h, V_s) for h in stab_s) if g]
    generators_t = [g for g in (_stabiliser_element(h, V_t) for h in stab_t) if g]
    action_s = Action(generators_s).pulled_back(id_s, "stabiliser of s")
    action_t = Action(generators_t).pulled_back(id_t, "stabiliser of t")

    K_labels = [label[e] for e in o.K]
    L_labels = [label[e] for e in o.L]
    if o.gamma_st is None:
        spec = AmalgamationSpec(
            kind=1,
            factors=factors,
            index_sets=[K_labels, L_labels],
            adhesions=adhesions,
            bondings=bondings,
            actions=[action_s.without_identities(), action_t.without_identities()],
            name="split",
        )
    else:
        spec = AmalgamationSpec(
            kind=2,
            factors=factors,
            index_sets=[K_labels + L_labels],
            J=K_labels,
            adhesions=adhesions,
            bondings=bondings,
            actions=[
                Action(
                    action_s.generators + action_t.generators, "stabiliser"
                ).without_identities()
            ],
            name="split",
        )

    report = validate_spec(spec)
    if not report.valid:
        raise InconclusiveError("the extracted spec is invalid", report.violations)
    for side in spec.sides():
        for g in spec.action(side).generators:
            respects = respects_action(spec, g, side)
            if not respects.holds:
                raise InconclusiveError(
                    "a stabiliser element is not respected",
                    (side, respects.failing_index),
                )
    consistency = consistency_check(spec)
    if not consistency.consistent:
        raise InconclusiveError(
            f"the bonding maps are {consistency.status}",
            list(consistency.failing_triple),
        )
    return AmalgamationData(spec, o, id_s, id_t)


def td_to_amalgamation(
    patch: Patch,
    action: Action,
    td: TreeDecomposition,
    e0: DirectedEdge | None = None,
) -> AmalgamationSpec:
    """
    Return a tree amalgamation spec describing the graph of ``patch``
    split along the basic tree-decomposition ``td``.

    The factors are the subgraphs induced by the parts of the endpoints
    ``s, t`` of ``e0``. The result is of Type 2 if some element maps ``s``
    to ``t`` and of Type 1 otherwise. The adhesion sets are the adhesion
    sets at ``s`` and ``t``; the bonding map of ``k`` and ``l`` is
    ``id_t^{-1} o gamma_l o gamma_k^{-1} o id_s``.
    The factor actions are generated by the elements of the orientation
    fixing ``s`` or ``t``.

    The spec is validated and checked to respect its actions with consistent
    bonding maps; if the truncation is too small for this, an
    :class:`~pyamalgam.exception.InconclusiveError` is raised.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> G = graphs.Path(8)
    >>> td = TreeDecomposition(Graph(graphs.Path(7)), {i: [i, i + 1] for i in range(7)})
    >>> shift = Action([{j: j + 1 for j in range(7)}])
    >>> s = td_to_amalgamation(Patch(G, [0, 7]), shift, td)
    >>> s.kind, s.index_sets, s.J, s.bondings
    (2, [[1, 2]], [1], {(1, 2): {1: 0}})
    """
    return amalgamation_data(patch, action, td, e0).spec


def separator_orbit(
    S: frozenset[Vertex], action: Action, g: Graph
) -> list[frozenset[Vertex]]:
    """
    Return the images of ``S`` under the (partial) action
    that separate ``g``.
    """
    moves = action.with_inverses()
    orbit = {S}
    queue = deque([S])
    while queue:
        X = queue.popleft()
        for h in moves:
            if not X <= set(h):
                continue
            Y = frozenset(h[v] for v in X)
            if Y not in orbit:
                orbit.add(Y)
                queue.append(Y)
    return sorted(
        (X for X in orbit if len(components_without(g, X)) >= 2), key=sorted
    )


def find_crossing(
    orbit: list[frozenset[Vertex]], g: Graph
) -> tuple[frozenset[Vertex], frozenset[Vertex]] | None:
    """
    Return a pair of crossing separators of the orbit, or None if it is nested.

    ``Y`` crosses ``X`` if ``Y - X`` meets two components of ``g - X``.
    """
    components = {X: components_without(g, X) for X in orbit}
    for X, Y in combinations(orbit, 2):
        for A, B in ((X, Y), (Y, X)):
            met = [C for C in components[A] if C & B]
            if len(met) >= 2:
                return (A, B)
    return None


def orbit_decomposition(
    orbit: list[frozenset[Vertex]], g: Graph
) -> TreeDecomposition:
    """
    Return the tree-decomposition cut out by a nested orbit of separators.

    Edges of ``g`` are grouped by the component of ``g - X`` they lie in,
    for every separator ``X``; every group spans a part. The separators
    are hub nodes adjacent to the parts they meet; hubs meeting at most
    two parts are contracted into their lowest neighbor.
    """
    index = {}
    for X in orbit:
        for i, C in enumerate(components_without(g, X)):
            for v in C:
                index[(X, v)] = i
    groups: dict[tuple[int, ...], set[Vertex]] = {}
    for u, v in g.edge_list():
        signature = tuple(
            index.get((X, u), index.get((X, v), -1)) for X in orbit
        )
        groups.setdefault(signature, set()).update((u, v))
    for v in g.nodes:
        if g.degree(v) == 0:
            groups.setdefault(("isolated", v), set()).add(v)
    parts = [
        frozenset(P)
        for P in sorted(groups.values(), key=sorted)
        if not any(P <= X for X in orbit)
    ]
    parts = list(dict.fromkeys(parts))
    tree = Graph.from_vertices(range(len(parts) + len(orbit)))
    all_parts = {i: P for i, P in enumerate(parts)}
    for j, X in enumerate(orbit):
        hub = len(parts) + j
        all_parts[hub] = X
        for i, P in enumerate(parts):
            if P & X:
                tree.add_edge(i, hub)
    if not nx.is_tree(tree):
        raise NotATreeError("The separator orbit does not cut out a tree.")
    td = TreeDecomposition(tree, all_parts)
    hubs = set(range(len(parts), len(parts) + len(orbit)))
    contracted = set()
    for hub in sorted(hubs):
        if tree.degree(hub) <= 2:
            contracted.add((min(tree.neighbors(hub)), hub))
    return td.contract_edges(lambda e: e not in contracted)


@dataclass
class SplitResult:
    """
    A non-trivial split: the spec, the basic tree-decomposition it was
    extracted from, the separator and its orbit.
    """

    spec: AmalgamationSpec
    td: TreeDecomposition
    separator: frozenset[Vertex]
    orbit: list[frozenset[Vertex]]
    data: AmalgamationData

    def to_json(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_json(),
            "td": self.td.to_json(),
            "separator": sorted(self.separator),
            "orbit": [sorted(X) for X in self.orbit],
            "orientation": self.data.orientation.to_json(),
        }


def _deep_regions(patch: Patch, S: frozenset[Vertex], k: int) -> int:
    dist = nx.multi_source_dijkstra_path_length(patch.graph, set(S))
    deep = {b for b in patch.boundary if dist.get(b, math.inf) > k}
    return sum(1 for C in components_without(patch.graph, S) if C & deep)


def split_candidates(
    patch: Patch, k: int, cap: int = DEFAULT_SEPARATOR_CAP
) -> list[frozenset[Vertex]]:
    """
    Return the tight separators of size at most ``k`` with at least two
    regions containing a boundary vertex at distance more than ``k``,
    ordered by distance from the root, size and lexicographically.
    """
    separators = tight_separators(patch.graph, k, cap)
    dist = patch.root_distances
    candidates = [
        T.vertices for T in separators if _deep_regions(patch, T.vertices, k) >= 2
    ]
    logger.debug("%d split candidates of size at most %d", len(candidates), k)
    return sorted(
        candidates, key=lambda S: (min(dist[v] for v in S), len(S), sorted(S))
    )


def stallings_split(
    source: AmalgamationSpec | tuple[Patch, Action],
    k: int,
    R: int = 4,
    seed: int | None = 0,
    cap: int = DEFAULT_SEPARATOR_CAP,
    separator: frozenset[Vertex] | None = None,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
) -> SplitResult:
    """
    Return a non-trivial tree amalgamation of adhesion at most ``k``
    splitting the source.

    A spec is built at radius ``R`` and acted on by its lifted action;
    a pair of a patch and an action is used as it is. Separators are
    taken from :func:`split_candidates`; for each, its orbit is checked to
    be nested, the orbit decomposition is geodesically closed and converted
    by :func:`td_to_amalgamation`. The first candidate yielding
    a non-trivial spec of adhesion at most ``k`` is returned.

    Parameters
    ----------
    source:
    k:
        The bound on the size of the separators.
    R:
        The radius of the build if the source is a spec.
    seed:
    cap:
        The maximum number of separator candidates examined.
    separator:
        A separator to use instead of the candidates.
    attempts:
        The maximum number of candidates tried.

    Raises
    ------
    NonNestedOrbitError
        If the given separator, or every candidate, has a crossing orbit.
    NoSplitFoundError
        If no candidate yields a split.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> split = stallings_split(specs.DoubleRay(), 1, 4)
    >>> split.spec.kind, split.spec.adhesion_size()
    (1, 1)
    """
    if isinstance(source, AmalgamationSpec):
        A = build_amalgam(source, R, seed)
        patch, action = A.patch, A.lifted_action()
    else:
        patch, action = source
    g = patch.graph
    if separator is not None:
        candidates = [frozenset(separator)]
    else:
        candidates = split_candidates(patch, k, cap)[:attempts]
    crossing = None
    nested = 0
    for S in candidates:
        orbit = separator_orbit(S, action, g)
        pair = find_crossing(orbit, g)
        if pair is not None:
            logger.info("separator %s has a crossing orbit", sorted(S))
            if separator is not None:
                raise NonNestedOrbitError(pair)
            crossing = crossing or pair
            continue
        nested += 1
        try:
            td = orbit_decomposition(orbit, g)
            if not td.verify(g).valid:
                logger.debug("orbit of %s does not give a tree-decomposition", sorted(S))
                continue
            if nx.is_connected(g):
                td = td.geodesic_closure(g)
            if td.max_adhesion() > k:
                logger.debug("closure of the orbit of %s exceeds adhesion %d", sorted(S), k)
                continue
            data = amalgamation_data(patch, action, td)
        except (
            NotATreeError,
            NotBasicError,
            InconclusiveError,
            PreconditionError,
            ActionError,
            SpecError,
        ) as error:
            logger.debug("separator %s rejected: %s", sorted(S), error)
            continue
        if is_trivial(data.spec).trivial:
            logger.debug("separator %s gives a trivial split", sorted(S))
            continue
        logger.info("split along the orbit of %s", sorted(S))
        return SplitResult(data.spec, td, S, orbit, data)
    if crossing is not None and nested == 0:
        raise NonNestedOrbitError(crossing)
    raise NoSplitFoundError(k, patch.inner_radius)


@dataclass
class FactorisationNode:
    """
    Node of a process of splittings.

    ``status`` is ``"finite"``, ``"one-ended-at-scale"``, ``"split-further"``
    or ``"inconclusive"``; the leaves form the terminal factorisation
    at the scale ``(k, scale)``.
    """

    label: str
    patch: Patch
    action: Action
    status: str = "inconclusive"
    spec: AmalgamationSpec | None = None
    children: list[FactorisationNode] = field(default_factory=list)
    depth: int = 0
    scale: int | None = None
    reason: str = ""

    @property
    def graph(self) -> Graph:
        return self.patch.graph

    def leaves(self) -> list[FactorisationNode]:
        if not self.children:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "status": self.status,
            "depth": self.depth,
            "scale": self.scale,
            "reason": self.reason,
            "vertices": self.graph.number_of_nodes(),
            "edges": self.graph.number_of_edges(),
            "boundary": sorted(self.patch.boundary),
            "spec": None if self.spec is None else self.spec.to_json(),
            "children": [child.to_dict() for child in self.children],
        }

    def summary(self) -> list[str]:
        """
        Return an indented line per node.
        """
        line = (
            "  " * self.depth
            + f"{self.label}: {self.status} "
            + f"({self.graph.number_of_nodes()} vertices"
            + (f", {self.reason}" if self.reason else "")
            + ")"
        )
        return [line] + [l for child in self.children for l in child.summary()]


def _factorise(
    node: FactorisationNode, k: int, max_depth: int, cap: int
) -> FactorisationNode:
    patch = node.patch
    node.scale = patch.inner_radius if patch.boundary else None
    if not patch.boundary:
        node.status = "finite"
        return node
    if node.depth >= max_depth:
        node.status = "inconclusive"
        node.reason = "maximal depth reached"
        return node
    try:
        split = stallings_split((patch, node.action), k, cap=cap)
    except NoSplitFoundError as error:
        node.status = "one-ended-at-scale"
        node.reason = str(error)
        return node
    except (NonNestedOrbitError, InconclusiveError) as error:
        node.status = "inconclusive"
        node.reason = str(error)
        return node
    node.status = "split-further"
    node.spec = split.spec
    identifications = [split.data.id_s]
    if split.spec.kind == 1:
        identifications.append(split.data.id_t)
    for i, identification in enumerate(identifications):
        child = FactorisationNode(
            label=f"{node.label}.{i + 1}",
            patch=patch.induced(identification),
            action=split.spec.actions[i],
            depth=node.depth + 1,
        )
        node.children.append(_factorise(child, k, max_depth, cap))
    return node


def terminal_factorisation(
    s: AmalgamationSpec,
    k: int,
    R: int = 4,
    max_depth: int = 3,
    seed: int | None = 0,
    cap: int = DEFAULT_SEPARATOR_CAP,
) -> FactorisationNode:
    """
    Return the tree of a process of splittings of the build of ``s``.

    Every node is split by :func:`stallings_split` into its factors.
    Factors without boundary vertices are finite; factors without a split
    at the scale are one-ended at that scale; nodes at ``max_depth``
    are inconclusive.

    Definitions
    -----------
    :prf:ref:`Terminal factorisation <def-terminal-factorisation>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> root = terminal_factorisation(specs.DoubleRay(), 1)
    >>> [leaf.status for leaf in root.leaves()]
    ['finite', 'finite']
    """
    A = build_amalgam(s, R, seed)
    root = FactorisationNode("root", A.patch, A.lifted_action(), spec=s)
    return _factorise(root, k, max_depth, cap)


@dataclass
class RoundTripVerdict:
    """
    Outcome of rebuilding a spec from the split of its own build.
    """

    isomorphic: bool
    depth: int
    spec: AmalgamationSpec
    root: Vertex | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "isomorphic": self.isomorphic,
            "depth": self.depth,
            "root": self.root,
            "spec": self.spec.to_json(),
        }


def roundtrip(
    s: AmalgamationSpec, R: int, seed: int | None = 0
) -> RoundTripVerdict:
    """
    Split the build of ``s`` along its induced tree-decomposition,
    build the resulting spec and compare the two builds at depth ``R - 1``.

    Every vertex of the root copy of the rebuilt amalgam is tried as root.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> roundtrip(specs.DoubleRay(), 4).isomorphic
    True
    """
    A = build_amalgam(s, R, seed)
    spec = td_to_amalgamation(A.patch, A.lifted_action(), A.induced_td)
    B = build_amalgam(spec, R, seed)
    depth = R - 1
    for r in sorted(B.copy_of(0).values()):
        candidate = B.patch.with_root(r)
        d = max(0, min(depth, A.patch.inner_radius, candidate.inner_radius))
        if d < depth:
            continue
        if boundary_tolerant_isomorphic(A.patch, candidate, d) is not None:
            return RoundTripVerdict(True, d, spec, r)
    return RoundTripVerdict(False, depth, spec)
