"""
Module for writing artefacts: DOT drawings and JSON files.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable

import distinctipy

from pyamalgam.build import AmalgamGraph
from pyamalgam.data_type import Vertex
from pyamalgam.ends import components_without
from pyamalgam.graph import Graph
from pyamalgam.patch import Patch

logger = logging.getLogger(__name__)


def color_classes(n: int, seed: int = 0) -> list[str]:
    """
    Return ``n`` visually distinct colors as hex strings.

    The colors depend only on ``n`` and ``seed``.
    """
    if n == 0:
        return []
    colors = distinctipy.get_colors(
        n, colorblind_type="Deuteranomaly", pastel_factor=0.2, rng=seed
    )
    return [distinctipy.get_hex(c) for c in colors]


def graph_to_dot(
    g: Graph,
    boundary: Iterable[Vertex] = (),
    classes: list[Iterable[Vertex]] | None = None,
    highlighted: Iterable[Vertex] = (),
    name: str = "G",
    run_config: dict[str, Any] | None = None,
) -> str:
    """
    Return the DOT source of the graph.

    Boundary vertices are dashed, the vertices of ``classes`` are filled
    with one color per class and ``highlighted`` vertices are drawn bold.
    Vertices and edges are emitted in sorted order.

    Examples
    --------
    >>> import pyamalgam.graphDB as graphs
    >>> print(graph_to_dot(graphs.Path(3), boundary=[0]))
    graph "G" {
      0 [style="dashed"];
      1;
      2;
      0 -- 1;
      1 -- 2;
    }
    """
    boundary = set(boundary)
    highlighted = set(highlighted)
    fill = {}
    if classes:
        colors = color_classes(len(classes))
        for color, cls in zip(colors, classes):
            for v in cls:
                fill[v] = color
    lines = []
    if run_config is not None:
        lines.append("// run_config: " + json.dumps(run_config, sort_keys=True))
    lines.append(f'graph "{name}" {{')
    for v in g.vertex_list():
        styles = []
        if v in boundary:
            styles.append("dashed")
        if v in highlighted:
            styles.append("bold")
        attributes = []
        if v in fill:
            styles.append("filled")
            attributes.append(f'fillcolor="{fill[v]}"')
        if styles:
            attributes.insert(0, 'style="' + ",".join(styles) + '"')
        if "label" in g.nodes[v]:
            attributes.append(f'label="{g.nodes[v]["label"]}"')
        lines.append(f"  {v}" + (f" [{', '.join(attributes)}]" if attributes else "") + ";")
    for u, v in g.edge_list():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def amalgam_to_dot(A: AmalgamGraph, run_config: dict[str, Any] | None = None) -> str:
    """
    Return the DOT source of a build with the root copy and the copies
    of its neighbors filled.
    """
    root_copy = set(A.copy_of(0).values())
    classes = [sorted(root_copy)]
    for t in sorted(A.tree_patch.tree.neighbors(0)):
        classes.append(sorted(set(A.copy_of(t).values()) - root_copy))
    return graph_to_dot(
        A.graph,
        boundary=A.patch.boundary,
        classes=classes,
        highlighted=[A.patch.root],
        name=A.spec.name or "amalgam",
        run_config=run_config,
    )


def separator_to_dot(
    p: Patch, S: Iterable[Vertex], run_config: dict[str, Any] | None = None
) -> str:
    """
    Return the DOT source of a patch with the separator bold and
    the components of the patch minus the separator filled.
    """
    S = set(S)
    return graph_to_dot(
        p.graph,
        boundary=p.boundary,
        classes=[sorted(C) for C in components_without(p.graph, S)],
        highlighted=S,
        name="separator",
        run_config=run_config,
    )


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_text(path: str | os.PathLike, text: str) -> Path:
    """
    Write ``text`` to ``path`` atomically.

    The text is written to a temporary file in the same directory
    which then replaces ``path``.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("wrote %s", path)
    return path


def write_json(path: str | os.PathLike, data: Any) -> Path:
    return write_text(path, dumps(data))
