"""
Module for thin triangles, quasi-geodesics and the hyperbolicity
of tree amalgamations at finite scale.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

import networkx as nx
import numpy as np

from pyamalgam.amalgamation import AmalgamationSpec
from pyamalgam.build import build_amalgam
from pyamalgam.data_type import Vertex
from pyamalgam.exception import DisconnectedGraphError, NoPathError
from pyamalgam.graph import DEFAULT_GEODESIC_CAP, Graph

logger = logging.getLogger(__name__)


class _Distances:
    """
    Dense distance matrix of a connected graph indexed by sorted vertices.
    """

    def __init__(self, g: Graph):
        if g.number_of_nodes() == 0 or not nx.is_connected(g):
            raise DisconnectedGraphError()
        self.g = g
        self.vertices = sorted(g.nodes)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.D = nx.floyd_warshall_numpy(g, nodelist=self.vertices).astype(np.int64)
        self._widest: dict[tuple[Vertex, Vertex], np.ndarray] = {}

    def d(self, u: Vertex, v: Vertex) -> int:
        return int(self.D[self.index[u], self.index[v]])

    def interval_order(self, x: Vertex, y: Vertex) -> list[Vertex]:
        """
        Return the vertices on ``x``-``y`` geodesics ordered by distance from ``x``.
        """
        i, j = self.index[x], self.index[y]
        on_geodesic = np.flatnonzero(self.D[i] + self.D[j] == self.D[i, j])
        order = sorted(on_geodesic, key=lambda w: (self.D[i, w], w))
        return [self.vertices[w] for w in order]

    def interval_mask(self, x: Vertex, y: Vertex) -> np.ndarray:
        i, j = self.index[x], self.index[y]
        return self.D[i] + self.D[j] == self.D[i, j]

    def widest(self, x: Vertex, y: Vertex) -> np.ndarray:
        """
        Return for every vertex ``v`` the maximum over ``x``-``y`` geodesics
        ``P`` of the distance from ``v`` to ``P``.

        The geodesics are scanned along the geodesic DAG from ``x``,
        for all ``v`` at once.
        """
        key = (min(x, y), max(x, y))
        if key in self._widest:
            return self._widest[key]
        x, y = key
        i = self.index[x]
        best: dict[Vertex, np.ndarray] = {}
        for w in self.interval_order(x, y):
            row = self.D[self.index[w]]
            if w == x:
                best[w] = row.copy()
                continue
            preds = [
                p
                for p in self.g.neighbors(w)
                if p in best and self.D[i, self.index[p]] == self.D[i, self.index[w]] - 1
            ]
            reach = np.max([best[p] for p in preds], axis=0)
            best[w] = np.minimum(row, reach)
        self._widest[key] = best[y]
        return best[y]

    def widest_geodesic(self, x: Vertex, y: Vertex, v: Vertex) -> list[Vertex]:
        """
        Return an ``x``-``y`` geodesic staying as far from ``v`` as possible.
        """
        i, k = self.index[x], self.index[v]
        best: dict[Vertex, int] = {}
        parent: dict[Vertex, Vertex] = {}
        for w in self.interval_order(x, y):
            dw = int(self.D[self.index[w], k])
            if w == x:
                best[w] = dw
                continue
            preds = sorted(
                p
                for p in self.g.neighbors(w)
                if p in best and self.D[i, self.index[p]] == self.D[i, self.index[w]] - 1
            )
            p = max(preds, key=lambda q: (best[q], -q))
            parent[w] = p
            best[w] = min(dw, best[p])
        path = [y]
        while path[-1] != x:
            path.append(parent[path[-1]])
        return list(reversed(path))


@dataclass
class HyperbolicityReport:
    """
    The thinness of geodesic triangles with corners in ``restricted_to``.

    ``witness`` holds the corners, the geodesics and the vertex of the
    first geodesic at distance ``delta`` from the other two.

    Definitions
    -----------
    :prf:ref:`Hyperbolic graph <def-hyperbolic>`
    """

    delta: int
    witness: dict[str, Any] | None
    restricted_to: list[Vertex] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "witness": self.witness,
            "restricted_to": self.restricted_to,
        }


def delta_thin(
    g: Graph, inner: Iterable[Vertex] | None = None
) -> HyperbolicityReport:
    """
    Return the smallest ``delta`` such that all geodesic triangles with
    corners in ``inner`` are ``delta``-thin.

    Every choice of geodesics is taken into account: for corners
    ``x1, x2, x3`` and a vertex ``v`` on some ``x1``-``x2`` geodesic,
    the adversarial choice of the other two sides is the geodesic farthest
    from ``v`` on either side.

    Parameters
    ----------
    g:
        A connected graph.
    inner:
        The allowed corners; all vertices by default.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> delta_thin(graphs.Path(5)).delta
    0
    >>> report = delta_thin(graphs.Cycle(4))
    >>> report.delta, report.witness["corners"], report.witness["vertex"]
    (1, [0, 2, 0], 1)
    """
    dist = _Distances(g)
    inner = sorted(g.nodes) if inner is None else sorted(set(inner))
    if not inner:
        raise ValueError("The set of corners needs to be non-empty.")
    for v in inner:
        g._check_vertex(v)
    delta = 0
    witness = None
    for a, b in combinations(inner, 2):
        mask = dist.interval_mask(a, b)
        for c in inner:
            values = np.minimum(dist.widest(a, c), dist.widest(b, c))
            values = np.where(mask, values, -1)
            k = int(np.argmax(values))
            if values[k] > delta or witness is None:
                delta = int(values[k])
                v = dist.vertices[k]
                witness = {
                    "corners": [a, b, c],
                    "vertex": v,
                    "P12": dist.widest_geodesic(a, v, v)[:-1]
                    + dist.widest_geodesic(v, b, v),
                    "P13": dist.widest_geodesic(a, c, v),
                    "P23": dist.widest_geodesic(b, c, v),
                }
    logger.debug("delta %d over %d corners", delta, len(inner))
    return HyperbolicityReport(delta, witness, inner)


@dataclass(frozen=True)
class QuasiGeodesicCert:
    """
    Certificate that a walk satisfies
    ``length(x_i..x_j) <= gamma * d(x_i, x_j) + c`` for all its vertices.

    ``worst_pair`` are the walk positions with the largest ratio
    of walk length to graph distance.

    Definitions
    -----------
    :prf:ref:`Quasi-geodesic <def-quasi-geodesic>`
    """

    gamma: float
    c: float
    worst_pair: tuple[int, int] | None
    worst_ratio: float

    def to_json(self) -> dict[str, Any]:
        return {
            "gamma": self.gamma,
            "c": self.c,
            "worst_pair": None if self.worst_pair is None else list(self.worst_pair),
            "worst_ratio": self.worst_ratio,
        }


@dataclass(frozen=True)
class QuasiGeodesicViolation:
    """
    Walk positions ``i < j`` with ``j - i > gamma * d(x_i, x_j) + c``.
    """

    gamma: float
    c: float
    pair: tuple[int, int]
    walk_distance: int
    graph_distance: int

    def to_json(self) -> dict[str, Any]:
        return {
            "gamma": self.gamma,
            "c": self.c,
            "pair": list(self.pair),
            "walk_distance": self.walk_distance,
            "graph_distance": self.graph_distance,
        }


def quasi_geodesic_check(
    g: Graph, path: list[Vertex], gamma: float = 1, c: float = 0
) -> QuasiGeodesicCert | QuasiGeodesicViolation:
    """
    Check the upper quasi-geodesic inequality for all pairs of walk positions.

    The lower inequality ``d(x_i, x_j) <= j - i`` holds for every walk.
    A violation reports the first violating pair in lexicographic order.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> quasi_geodesic_check(graphs.Path(5), [0, 1, 2, 3]).worst_ratio
    1.0
    >>> quasi_geodesic_check(graphs.Cycle(3), [0, 1, 2]).pair
    (0, 2)
    """
    if gamma < 1 or c < 0:
        raise ValueError("The constants need to satisfy gamma >= 1 and c >= 0.")
    if not path:
        raise ValueError("The walk needs to be non-empty.")
    for v in path:
        g._check_vertex(v)
    for i, (u, v) in enumerate(zip(path, path[1:])):
        if not g.has_edge(u, v):
            raise ValueError(f"The sequence is not a walk: no edge at position {i}.")
    distances = {v: g.distances_from(v) for v in set(path)}
    worst_pair = None
    worst_ratio = 1.0
    for i, j in combinations(range(len(path)), 2):
        d = distances[path[i]][path[j]]
        if d == float("inf"):
            raise NoPathError(path[i], path[j])
        if j - i > gamma * d + c:
            return QuasiGeodesicViolation(gamma, c, (i, j), j - i, int(d))
        ratio = float("inf") if d == 0 else (j - i) / d
        if worst_pair is None or ratio > worst_ratio:
            worst_pair, worst_ratio = (i, j), ratio
    return QuasiGeodesicCert(gamma, c, worst_pair, float(worst_ratio))


def _hausdorff(dist: _Distances, P: list[Vertex], Q: list[Vertex]) -> int:
    rows = dist.D[np.ix_([dist.index[v] for v in P], [dist.index[w] for w in Q])]
    return int(max(rows.min(axis=1).max(), rows.min(axis=0).max()))


def geodesic_neighbourhood_constant(
    g: Graph, part: Iterable[Vertex], cap: int = DEFAULT_GEODESIC_CAP
) -> int:
    """
    Return the smallest ``lambda`` such that for all vertices ``u, v``
    of ``part`` every geodesic of ``g`` between them and every geodesic
    of the subgraph induced by ``part`` lie in the ``lambda``-neighbourhood
    of each other in ``g``.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> geodesic_neighbourhood_constant(graphs.Cycle(6), [0, 1, 2, 3, 4])
    2
    """
    part = sorted(set(part))
    H = g.induced(part)
    if not nx.is_connected(H):
        raise DisconnectedGraphError("The part needs to induce a connected subgraph.")
    dist = _Distances(g)
    result = 0
    for u, v in combinations(part, 2):
        outer = g.all_geodesics(u, v, cap)
        inner = H.all_geodesics(u, v, cap)
        if outer.truncated or inner.truncated:
            logger.info("geodesic enumeration between %s and %s truncated", u, v)
        for P in outer:
            for Q in inner:
                result = max(result, _hausdorff(dist, P, Q))
    return result


def adhesion_diameter(s: AmalgamationSpec) -> int:
    """
    Return the maximum distance within a factor between two vertices
    of the same adhesion set.
    """
    result = 0
    for side in s.sides():
        G = s.factor(side)
        if not nx.is_connected(G):
            raise DisconnectedGraphError(f"The factor of side {side} is disconnected.")
        for k in s.indices(side):
            S = s.adhesions[k]
            for u, v in combinations(S, 2):
                result = max(result, nx.shortest_path_length(G, u, v))
    return result


@dataclass
class HyperbolicityRow:
    radius: int
    factor_deltas: list[int]
    adhesion_diameter: int
    inner_radius: int
    delta: int | None
    neighbourhood_constant: int | None

    def to_json(self) -> dict[str, Any]:
        return {
            "radius": self.radius,
            "factor_deltas": self.factor_deltas,
            "adhesion_diameter": self.adhesion_diameter,
            "inner_radius": self.inner_radius,
            "delta": self.delta,
            "neighbourhood_constant": self.neighbourhood_constant,
        }


@dataclass
class HyperbolicityTable:
    """
    Rows of :func:`amalgam_hyperbolicity_experiment`, one per radius.
    """

    rows: list[HyperbolicityRow] = field(default_factory=list)

    @property
    def bounded(self) -> bool:
        """
        Whether the measured deltas agree across the radii.
        """
        deltas = {row.delta for row in self.rows if row.delta is not None}
        return len(deltas) <= 1

    def to_json(self) -> dict[str, Any]:
        return {
            "bounded": self.bounded,
            "rows": [row.to_json() for row in self.rows],
        }

    def to_text(self) -> str:
        header = ["R", "factor deltas", "gamma", "r", "delta", "lambda"]
        lines = [header] + [
            [
                str(row.radius),
                ",".join(str(d) for d in row.factor_deltas),
                str(row.adhesion_diameter),
                str(row.inner_radius),
                "-" if row.delta is None else str(row.delta),
                "-" if row.neighbourhood_constant is None else str(row.neighbourhood_constant),
            ]
            for row in self.rows
        ]
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in lines
        )


def amalgam_hyperbolicity_experiment(
    s: AmalgamationSpec, radii: Iterable[int], seed: int | None = 0
) -> HyperbolicityTable:
    """
    Measure the hyperbolicity of the factors and of builds of ``s``.

    For every radius ``R`` the build is restricted to the ball of radius
    ``R - gamma - 1`` around the root, ``gamma`` being the adhesion
    diameter, which excludes triangles distorted by the boundary.
    The geodesic neighbourhood constant of the part of the root node
    is reported alongside.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> table = amalgam_hyperbolicity_experiment(specs.DoubleRay(), [3, 4])
    >>> [(row.factor_deltas, row.delta) for row in table.rows]
    [([0, 0], 0), ([0, 0], 0)]
    """
    gamma = adhesion_diameter(s)
    factor_deltas = [delta_thin(G).delta for G in s.factors]
    table = HyperbolicityTable()
    for R in radii:
        A = build_amalgam(s, R, seed)
        r = R - gamma - 1
        if r < 0:
            logger.info("radius %d is too small for adhesion diameter %d", R, gamma)
            table.rows.append(HyperbolicityRow(R, factor_deltas, gamma, r, None, None))
            continue
        delta = delta_thin(A.graph, A.patch.ball(r)).delta
        root_part = A.induced_td.parts[0]
        constant = geodesic_neighbourhood_constant(A.graph, root_part)
        logger.debug("radius %d: delta %d, lambda %d", R, delta, constant)
        table.rows.append(HyperbolicityRow(R, factor_deltas, gamma, r, delta, constant))
    return table
