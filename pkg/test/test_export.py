import json

from pyamalgam.export import (
    amalgam_to_dot,
    color_classes,
    dumps,
    graph_to_dot,
    separator_to_dot,
    write_json,
    write_text,
)
from pyamalgam.build import build_amalgam
from pyamalgam.patch import Patch
import pyamalgam.graphDB as graphs
import pyamalgam.specDB as specs


def test_color_classes():
    assert color_classes(0) == []
    colors = color_classes(3)
    assert len(colors) == 3
    assert len(set(colors)) == 3
    assert all(c.startswith("#") and len(c) == 7 for c in colors)
    assert color_classes(3) == colors


def test_graph_to_dot():
    dot = graph_to_dot(graphs.Path(3), boundary=[0])
    assert dot.splitlines() == [
        'graph "G" {',
        '  0 [style="dashed"];',
        "  1;",
        "  2;",
        "  0 -- 1;",
        "  1 -- 2;",
        "}",
    ]


def test_graph_to_dot_styles():
    dot = graph_to_dot(
        graphs.Path(3),
        boundary=[0],
        classes=[[0, 1]],
        highlighted=[0],
        name="styled",
        run_config={"R": 2, "seed": 0},
    )
    lines = dot.splitlines()
    assert lines[0] == '// run_config: {"R": 2, "seed": 0}'
    assert lines[1] == 'graph "styled" {'
    color = color_classes(1)[0]
    assert lines[2] == f'  0 [style="dashed,bold,filled", fillcolor="{color}"];'
    assert lines[3] == f'  1 [style="filled", fillcolor="{color}"];'
    assert lines[4] == "  2;"


def test_graph_to_dot_is_deterministic():
    G = graphs.Petersen()
    assert graph_to_dot(G, classes=[[0, 1], [2]]) == graph_to_dot(
        G, classes=[[0, 1], [2]]
    )


def test_amalgam_to_dot():
    A = build_amalgam(specs.DoubleRay(), 2)
    dot = amalgam_to_dot(A)
    assert dot.startswith('graph "double ray" {')
    assert dot.count(" -- ") == A.graph.number_of_edges()
    assert dot.count("dashed") == len(A.patch.boundary)
    assert dot.count("bold") == 1


def test_separator_to_dot():
    P = Patch(graphs.Path(5), boundary=[0, 4], root=2)
    dot = separator_to_dot(P, [2])
    assert dot.startswith('graph "separator" {')
    assert '  2 [style="bold"];' in dot.splitlines()
    assert dot.count("filled") == 4


def test_write_text(tmp_path):
    path = write_text(tmp_path / "out" / "graph.dot", "graph {}\n")
    assert path.read_text() == "graph {}\n"
    write_text(path, "graph G {}\n")
    assert path.read_text() == "graph G {}\n"
    assert [p.name for p in path.parent.iterdir()] == ["graph.dot"]


def test_write_json(tmp_path):
    path = write_json(tmp_path / "data.json", {"b": 1, "a": [1, 2]})
    assert json.loads(path.read_text()) == {"a": [1, 2], "b": 1}
    assert path.read_text() == dumps({"a": [1, 2], "b": 1})
    assert path.read_text().endswith("\n")
