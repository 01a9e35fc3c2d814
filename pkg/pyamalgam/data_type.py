"""

Module for defining data type used for type hinting.

"""

from typing import Tuple


Vertex = int
"""
Vertices are dense non-negative integers; external names live in vertex labels.
"""

Edge = set[Vertex] | Tuple[Vertex, Vertex] | list[Vertex]
"""
An Edge is an unordered pair of :obj:`Vertices <pyamalgam.data_type.Vertex>`.
"""

DirectedEdge = Tuple[Vertex, Vertex]
"""
A DirectedEdge is an ordered pair of :obj:`Vertices <pyamalgam.data_type.Vertex>`
or of tree nodes.
"""

Node = int
"""
A Node is a vertex of a decomposition tree or of a connecting tree.
"""

IndexLabel = int
"""
An IndexLabel is an element of an index set of an amalgamation,
i.e., a label of a directed edge of the connecting tree.
"""

VertexMap = dict[Vertex, Vertex]
"""
A VertexMap is a (possibly partial) injective map between vertex sets.

Permutations, graph automorphisms, bonding maps
and partial automorphisms of truncations are all VertexMaps.
"""
