"""
Module for miscellaneous functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Generic, Iterable, TypeVar

from pyamalgam.data_type import Vertex, VertexMap

T = TypeVar("T")


def doc_category(category: str):
    def decorator_doc_category(func):
        func._doc_category = category
        return func

    return decorator_doc_category


def generate_category_tables(cls, tabs: int, cat_order: list[str]) -> str:
    """
    Return the autosummary tables of the categorized methods of ``cls``
    in the order ``cat_order``, indented by ``tabs`` levels.
    """
    categories = {category: [] for category in cat_order}
    for name in dir(cls):
        f = getattr(cls, name)
        if name[:2] != "__" and callable(f) and hasattr(f, "_doc_category"):
            categories.setdefault(f._doc_category, []).append(name)

    res = "Methods\n-------\n"
    for category, functions in categories.items():
        if functions:
            res += f"**{category}**\n\n.. autosummary::\n\n    "
            res += "\n    ".join(functions) + "\n\n"
    return ("\n" + "    " * tabs).join(res.splitlines())


def check_integrality_and_range(
    n: int, name: str = "number n", min_n: int = 0, max_n: int = math.inf
) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("The " + name + f" has to be an integer, not {type(n)}.")
    if n < min_n or n > max_n:
        raise ValueError(
            "The " + name + f" has to be an integer in [{min_n},{max_n}], not {n}."
        )


@dataclass
class CappedResult(Generic[T]):
    """
    Result of an enumeration that stops after a fixed number of items.

    ``truncated`` is True iff the enumeration was stopped by the cap,
    i.e., ``items`` may be a proper part of the full answer.
    """

    items: list[T] = field(default_factory=list)
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


def compose_maps(*maps: VertexMap) -> VertexMap:
    """
    Return the composition of partial vertex maps, the rightmost applied first.

    The result is defined exactly where the whole chain is defined.

    Examples
    --------
    >>> compose_maps({0: 1, 1: 2}, {5: 0, 6: 1, 7: 9})
    {5: 1, 6: 2}
    """
    result = dict(maps[-1])
    for m in reversed(maps[:-1]):
        result = {x: m[y] for x, y in result.items() if y in m}
    return result


def invert_map(m: VertexMap) -> VertexMap:
    """
    Return the inverse of an injective vertex map.
    """
    inverse = {y: x for x, y in m.items()}
    if len(inverse) != len(m):
        raise ValueError("The map is not injective.")
    return inverse


def restrict_map(m: VertexMap, vertices: Iterable[Vertex]) -> VertexMap:
    """
    Return the restriction of a vertex map to ``vertices``.

    Raise an error if the map is undefined on some of them.
    """
    try:
        return {v: m[v] for v in vertices}
    except KeyError as e:
        raise ValueError(f"The map is not defined on the vertex {e.args[0]}.")


def is_identity(m: VertexMap) -> bool:
    return all(x == y for x, y in m.items())


def map_to_pairs(m: VertexMap) -> list[list[Vertex]]:
    """
    Return the map as a sorted list of pairs, the form used in JSON files.
    """
    return [[x, m[x]] for x in sorted(m)]


def pairs_to_map(pairs: Iterable[Iterable[Vertex]]) -> VertexMap:
    return {int(x): int(y) for x, y in pairs}
