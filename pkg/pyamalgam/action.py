"""
Module for group actions on graphs given by generators.
"""

from __future__ import annotations

import logging
from itertools import islice
from typing import Iterable

from sympy.combinatorics import Permutation, PermutationGroup

from pyamalgam.data_type import Vertex, VertexMap
from pyamalgam.misc import (
    CappedResult,
    check_integrality_and_range,
    compose_maps,
    invert_map,
    is_identity,
)

logger = logging.getLogger(__name__)

DEFAULT_ELEMENT_CAP = 10_000


class Action:
    """
    Class representing a group action on a graph by its generators.

    The generators are vertex maps. For an action on a finite graph
    they are permutations of the vertex set; for an action on a truncation
    of an infinite graph they are partial automorphisms, i.e.,
    restrictions of automorphisms to the part of the truncation where
    they are determined.

    Examples
    --------
    >>> a = Action([{0: 1, 1: 2, 2: 3, 3: 0}], name="rotation")
    >>> a.order(4)
    4
    >>> len(a.elements(4))
    4
    """

    def __init__(self, generators: Iterable[VertexMap] = (), name: str = ""):
        self.generators = [dict(g) for g in generators]
        for g in self.generators:
            if len(set(g.values())) != len(g):
                raise ValueError(f"The generator {g} is not injective.")
        self.name = name
        self._element_cache: dict[tuple[int, int], CappedResult] = {}

    def __repr__(self) -> str:
        return f"Action({self.name!r}, {len(self.generators)} generators)"

    def is_total_on(self, vertices: Iterable[Vertex]) -> bool:
        """
        Return whether every generator is a permutation of ``vertices``.
        """
        vertices = set(vertices)
        return all(
            set(g) == vertices and set(g.values()) == vertices for g in self.generators
        )

    def with_inverses(self) -> list[VertexMap]:
        """
        Return the generators followed by their inverses.

        Involutions are listed once.
        """
        result = list(self.generators)
        for g in self.generators:
            h = invert_map(g)
            if h != g:
                result.append(h)
        return result

    def _sympy_group(self, n: int) -> PermutationGroup:
        if not self.is_total_on(range(n)):
            raise ValueError(
                f"The generators of {self!r} are not permutations of 0, ..., {n - 1}."
            )
        perms = [Permutation([g[i] for i in range(n)], size=n) for g in self.generators]
        if not perms:
            perms = [Permutation(list(range(n)), size=n)]
        return PermutationGroup(perms)

    def order(self, n: int) -> int:
        """
        Return the order of the generated permutation group of ``0, ..., n-1``.
        """
        return int(self._sympy_group(n).order())

    def elements(
        self, n: int, cap: int = DEFAULT_ELEMENT_CAP
    ) -> CappedResult[VertexMap]:
        """
        Return the elements of the generated group of permutations
        of ``0, ..., n-1``, the identity first.

        At most ``cap`` elements are returned; the result is flagged
        as truncated if the group is larger.
        """
        check_integrality_and_range(cap, "element cap", 1)
        key = (n, cap)
        if key not in self._element_cache:
            group = self._sympy_group(n)
            order = int(group.order())
            identity = {i: i for i in range(n)}
            elements = [identity]
            for p in islice(group.generate(), cap):
                m = {i: int(p.array_form[i]) for i in range(n)}
                if not is_identity(m):
                    elements.append(m)
            elements = elements[:cap]
            truncated = order > cap
            if truncated:
                logger.info(
                    "group of order %d of %r truncated to %d elements",
                    order,
                    self,
                    cap,
                )
            self._element_cache[key] = CappedResult(elements, truncated)
        return self._element_cache[key]

    def find_element(
        self, n: int, required: VertexMap, cap: int = DEFAULT_ELEMENT_CAP
    ) -> tuple[VertexMap | None, bool]:
        """
        Return a group element agreeing with the partial map ``required``.

        The second value tells whether the search was exhaustive.
        The identity is tried first.
        """
        elements = self.elements(n, cap)
        for element in elements:
            if all(element[x] == y for x, y in required.items()):
                return element, True
        return None, not elements.truncated

    def restricted(self, vertices: Iterable[Vertex], name: str = "") -> Action:
        """
        Return the action of the generators restricted to ``vertices``.

        Every generator must map ``vertices`` onto itself.
        """
        vertices = sorted(set(vertices))
        generators = []
        for g in self.generators:
            if not set(vertices) <= set(g):
                raise ValueError(f"A generator of {self!r} is undefined on the set.")
            image = {g[v] for v in vertices}
            if image != set(vertices):
                raise ValueError(f"A generator of {self!r} does not fix the set.")
            generators.append({v: g[v] for v in vertices})
        return Action(generators, name or self.name)

    def pulled_back(self, identification: VertexMap, name: str = "") -> Action:
        """
        Return the action transported along an identification.

        ``identification`` maps the vertices of another graph bijectively
        to a set on which every generator is a permutation;
        the generator ``g`` becomes ``identification^{-1} o g o identification``.
        """
        inverse = invert_map(identification)
        generators = []
        for g in self.generators:
            pulled = compose_maps(inverse, g, identification)
            if len(pulled) != len(identification):
                raise ValueError(f"A generator of {self!r} is not defined everywhere.")
            generators.append(pulled)
        return Action(generators, name or self.name)

    def without_identities(self) -> Action:
        """
        Return the action with trivial and repeated generators removed.
        """
        seen = []
        for g in self.generators:
            if not is_identity(g) and g not in seen:
                seen.append(g)
        return Action(seen, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": [[[x, g[x]] for x in sorted(g)] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: dict) -> Action:
        return cls(
            [{int(x): int(y) for x, y in g} for g in data.get("generators", [])],
            data.get("name", ""),
        )


def trivial_action(name: str = "trivial") -> Action:
    return Action([], name)
