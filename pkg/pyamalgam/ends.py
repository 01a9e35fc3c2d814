"""
Module for ends at a finite scale: tight separators, boundary-reaching
regions, end degree estimates and accessibility probing.

Ends are never claimed, only regions of a truncation at the scale
of its inner radius.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

import networkx as nx

from pyamalgam.amalgamation import AmalgamationSpec
from pyamalgam.build import build_amalgam
from pyamalgam.data_type import Vertex
from pyamalgam.exception import PreconditionError
from pyamalgam.graph import Graph
from pyamalgam.misc import CappedResult, check_integrality_and_range
from pyamalgam.patch import Patch

logger = logging.getLogger(__name__)

DEFAULT_SEPARATOR_CAP = 100_000


@dataclass(frozen=True)
class TightSeparator:
    """
    A vertex set ``S`` together with the components of ``G - S``
    in which every vertex of ``S`` has a neighbor.

    Definitions
    -----------
    :prf:ref:`Tight separator <def-tight-separator>`
    """

    vertices: frozenset[Vertex]
    sides: tuple[frozenset[Vertex], ...]
    minimal: bool = True

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": sorted(self.vertices),
            "sides": [sorted(C) for C in self.sides],
            "minimal": self.minimal,
        }


@dataclass(frozen=True)
class EndRegion:
    """
    A component of a patch minus a separator.

    ``reaches_boundary`` tells whether the component contains a boundary
    vertex, i.e., whether it may contain a ray of the truncated graph.
    """

    separator: frozenset[Vertex]
    vertices: frozenset[Vertex]
    reaches_boundary: bool
    scale: int

    def to_json(self) -> dict[str, Any]:
        return {
            "separator": sorted(self.separator),
            "vertices": sorted(self.vertices),
            "reaches_boundary": self.reaches_boundary,
            "scale": self.scale,
        }


def components_without(g: Graph, S: Iterable[Vertex]) -> list[frozenset[Vertex]]:
    """
    Return the components of ``g - S`` sorted by their minimal vertex.
    """
    S = set(S)
    H = g.subgraph(v for v in g.nodes if v not in S)
    return sorted((frozenset(C) for C in nx.connected_components(H)), key=min)


def tight_sides(g: Graph, S: Iterable[Vertex]) -> list[frozenset[Vertex]]:
    """
    Return the components of ``g - S`` in which every vertex of ``S``
    has a neighbor.
    """
    S = set(S)
    return [
        C
        for C in components_without(g, S)
        if all(any(w in C for w in g.neighbors(s)) for s in S)
    ]


def tight_separators(
    g: Graph, k: int, cap: int = DEFAULT_SEPARATOR_CAP
) -> CappedResult[TightSeparator]:
    """
    Return the tight separators of size at most ``k``.

    The candidates are enumerated by size and then lexicographically;
    at most ``cap`` candidates are examined. A separator is recorded as
    minimal if no proper subset is a tight separator.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> [sorted(T.vertices) for T in tight_separators(graphs.Path(5), 1)]
    [[1], [2], [3]]
    >>> len(tight_separators(graphs.Cycle(6), 2))
    9
    """
    check_integrality_and_range(k, "separator bound k", 1)
    candidates = [v for v in sorted(g.nodes) if g.degree(v) >= 2]
    found: list[TightSeparator] = []
    examined = 0
    for size in range(1, k + 1):
        for S in combinations(candidates, size):
            if examined >= cap:
                logger.info("separator enumeration stopped after %d candidates", cap)
                return CappedResult(found, True)
            examined += 1
            S = frozenset(S)
            sides = tight_sides(g, S)
            if len(sides) >= 2:
                minimal = not any(T.vertices < S for T in found)
                found.append(TightSeparator(S, tuple(sides), minimal))
    logger.debug("%d tight separators among %d candidates", len(found), examined)
    return CappedResult(found, False)


def ends_at_scale(p: Patch, S: Iterable[Vertex]) -> list[EndRegion]:
    """
    Return the components of the patch minus ``S`` with their boundary flags.

    ``S`` distinguishes ends at the scale of the patch if at least two
    regions reach the boundary.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> P = Patch(graphs.Path(8), boundary=[0, 7], root=3)
    >>> [R.reaches_boundary for R in ends_at_scale(P, [3])]
    [True, True]
    """
    S = frozenset(S)
    if not S <= set(p.graph.nodes):
        raise ValueError("The separator needs to consist of vertices of the patch.")
    scale = p.inner_radius
    return [
        EndRegion(S, C, bool(C & p.boundary), scale)
        for C in components_without(p.graph, S)
    ]


def end_degree_estimate(
    p: Patch, region: EndRegion, core: Iterable[Vertex]
) -> int:
    """
    Return the maximum number of disjoint paths from ``core`` to the boundary
    inside ``region``.

    The paths meet ``core`` only at their first vertex. The number is
    computed as a maximum flow with unit vertex capacities; it is a lower
    bound for the degree of an end living in the region.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> G = graphs.Grid(5, 5)
    >>> P = Patch(G, boundary=[v for v in G.nodes if G.degree(v) < 4], root=12)
    >>> region = ends_at_scale(P, [])[0]
    >>> end_degree_estimate(P, region, [7, 11, 12, 13, 17])
    4
    """
    if not region.vertices:
        return 0
    if not region.reaches_boundary:
        raise PreconditionError("The region does not reach the boundary.")
    core = set(core)
    allowed = set(region.vertices) | core
    D = nx.DiGraph()
    for v in sorted(allowed):
        D.add_edge((v, "in"), (v, "out"), capacity=1)
    for u, v in p.graph.edges:
        if u in allowed and v in allowed:
            if v not in core:
                D.add_edge((u, "out"), (v, "in"), capacity=1)
            if u not in core:
                D.add_edge((v, "out"), (u, "in"), capacity=1)
    for c in sorted(core):
        D.add_edge("source", (c, "in"), capacity=1)
    targets = sorted(region.vertices & p.boundary)
    for b in targets:
        D.add_edge((b, "out"), "sink", capacity=1)
    if "source" not in D or "sink" not in D:
        return 0
    return int(nx.maximum_flow_value(D, "source", "sink"))


def separation_number(g: Graph, A: Iterable[Vertex], B: Iterable[Vertex]) -> int:
    """
    Return the minimum number of vertices meeting every path from ``A`` to ``B``.
    """
    H = nx.Graph(g)
    H.add_edges_from(("A", a) for a in A)
    H.add_edges_from(("B", b) for b in B)
    return len(nx.minimum_node_cut(H, "A", "B"))


@dataclass
class AccessibilityRow:
    radius: int
    regions: int
    max_separation: int
    passes: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "radius": self.radius,
            "regions": self.regions,
            "max_separation": self.max_separation,
            "passes": self.passes,
        }


@dataclass
class AccessibilityTable:
    """
    Verdicts of :func:`accessibility_probe` per radius.
    """

    k: int
    rows: list[AccessibilityRow] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return all(row.passes for row in self.rows)

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "passes": self.passes,
            "rows": [row.to_json() for row in self.rows],
        }


def accessibility_probe(
    s: AmalgamationSpec, k: int, radii: Iterable[int], seed: int | None = 0
) -> AccessibilityTable:
    """
    Check for every radius that the boundary-reaching regions of the build
    can be pairwise separated by at most ``k`` vertices.

    Every vertex ``v`` of the ball of half the inner radius around the root
    is a seed: the regions of ``v`` are the boundary-reaching components
    of the build minus ``v``, and the boundary vertices of any two of them
    are separated by a minimum vertex cut. ``regions`` in a row is the
    largest number of regions of a seed; seeds with fewer than two
    regions contribute nothing.

    Definitions
    -----------
    :prf:ref:`Accessible graph <def-accessible>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> accessibility_probe(specs.DoubleRay(), 1, [3, 4]).passes
    True
    >>> accessibility_probe(specs.DoubleRay(), 0, [3]).passes
    False
    """
    check_integrality_and_range(k, "separator bound k", 0)
    table = AccessibilityTable(k)
    for R in radii:
        P = build_amalgam(s, R, seed).patch
        most = worst = 0
        for v in sorted(P.ball(P.inner_radius // 2)):
            regions = [
                C & P.boundary
                for C in components_without(P.graph, [v])
                if C & P.boundary
            ]
            most = max(most, len(regions))
            for A, B in combinations(regions, 2):
                worst = max(worst, separation_number(P.graph, A, B))
        table.rows.append(AccessibilityRow(R, most, worst, worst <= k))
        logger.debug("radius %d: %d regions, separation %d", R, most, worst)
    return table
