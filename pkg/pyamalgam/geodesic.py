"""
Module for the geodesic DAG of a breadth-first search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pyamalgam.data_type import Vertex


@dataclass(frozen=True)
class GeodesicDag:
    """
    Distances from a source together with all geodesic predecessors.

    Every geodesic from ``source`` to a vertex ``v`` is a path
    in the DAG given by ``predecessors`` and vice versa.

    Attributes
    ----------
    source:
    dist:
        Distance of every vertex from the source, ``math.inf`` if unreachable.
    predecessors:
        For every vertex, the sorted list of its neighbors
        that are one step closer to the source.
    """

    source: Vertex
    dist: dict[Vertex, int | float]
    predecessors: dict[Vertex, list[Vertex]]

    def reachable(self, v: Vertex) -> bool:
        return self.dist[v] != math.inf

    def geodesic_to(self, v: Vertex) -> list[Vertex]:
        """
        Return the lexicographically smallest geodesic read backwards,
        i.e., always following the smallest predecessor.
        """
        if not self.reachable(v):
            raise ValueError(f"The vertex {v} is not reachable from {self.source}.")
        path = [v]
        while path[-1] != self.source:
            path.append(self.predecessors[path[-1]][0])
        return list(reversed(path))

    def number_of_geodesics(self, v: Vertex) -> int:
        """
        Return the number of geodesics from the source to ``v``.
        """
        if not self.reachable(v):
            return 0
        counts = {self.source: 1}
        for w in sorted(
            (w for w in self.dist if self.dist[w] <= self.dist[v]),
            key=lambda w: self.dist[w],
        ):
            if w != self.source:
                counts[w] = sum(counts[p] for p in self.predecessors[w])
        return counts[v]
