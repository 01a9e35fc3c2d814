import json

from pyamalgam.cli import (
    EXIT_FAILURE,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_OK,
    RunConfig,
    load_input,
    main,
    make_parser,
)
from pyamalgam.treedecomp import TreeDecomposition
import pyamalgam.graphDB as graphs
import pyamalgam.specDB as specs
from pyamalgam.exception import InputSchemaError

import pytest


def dump(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def double_ray(tmp_path):
    return dump(tmp_path, "spec.json", specs.DoubleRay().to_json())


def test_run_config():
    args = make_parser().parse_args(["build", "--spec", "s.json", "-R", "4"])
    config = RunConfig.from_args(args)
    assert config.command == "build"
    assert config.R == 4
    assert config.radii == (4,)
    assert config.to_json()["radii"] == [4]
    args = make_parser().parse_args(["ends", "--radii", "3,4,5", "--separator", "2,7"])
    config = RunConfig.from_args(args)
    assert config.radii == (3, 4, 5)
    assert config.to_json()["separator"] == [2, 7]


def test_load_input(tmp_path):
    path = dump(tmp_path, "graph.json", {"n": 3, "edges": [[0, 1], [1, -2]]})
    with pytest.raises(InputSchemaError) as error:
        load_input(path, "graph")
    assert error.value.violations[0].startswith("/edges/1/1: ")
    with pytest.raises(InputSchemaError) as error:
        load_input(dump(tmp_path, "empty.json", {}), "graph")
    assert error.value.violations == ["/: 'n' is a required property"]


def test_validate_spec(double_ray, capsys):
    assert main(["validate", "--spec", double_ray]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["valid"]
    assert data["run_config"]["command"] == "validate"


def test_validate_invalid_spec(tmp_path, capsys):
    data = specs.DoubleRay().to_json()
    data["adhesions"]["2"] = [5]
    path = dump(tmp_path, "spec.json", data)
    assert main(["validate", "--spec", path]) == EXIT_FAILURE
    output = json.loads(capsys.readouterr().out)
    assert "the adhesion set S_2 is not a set of vertices of its factor" in output[
        "violations"
    ]


def test_validate_graph(tmp_path, capsys):
    path = dump(tmp_path, "graph.json", graphs.Cycle(4).to_json())
    assert main(["validate", "--graph", path]) == EXIT_OK
    path = dump(tmp_path, "loop.json", {"n": 2, "edges": [[0, 0], [0, 1]]})
    capsys.readouterr()
    assert main(["validate", "--graph", path]) == EXIT_FAILURE
    assert not json.loads(capsys.readouterr().out)["valid"]


@pytest.mark.parametrize(
    "data",
    [
        {"type": 3},
        {"n": 2},
        [],
    ],
)
def test_schema_violations_exit_with_input_error(tmp_path, capsys, data):
    path = dump(tmp_path, "spec.json", data)
    assert main(["build", "--spec", path]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("input error: /")


def test_input_errors(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert main(["build", "--spec", str(path)]) == EXIT_INPUT
    assert "invalid JSON" in capsys.readouterr().err
    assert main(["build"]) == EXIT_INPUT
    assert main(["build", "--spec", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_build(double_ray, tmp_path, capsys):
    out, dot = tmp_path / "out", tmp_path / "dot"
    assert (
        main(["build", "--spec", double_ray, "-R", "3", "--out", str(out), "--dot", str(dot)])
        == EXIT_OK
    )
    assert capsys.readouterr().out == "8 vertices, 7 edges\n"
    data = json.loads((out / "build.json").read_text())
    assert data["radius"] == 3
    assert data["run_config"]["R"] == 3
    source = (dot / "build.dot").read_text()
    assert source.startswith("// run_config: ")
    assert source.count(" -- ") == 7


def test_build_json(double_ray, capsys):
    assert main(["build", "--spec", double_ray, "-R", "2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["graph"]["n"] == 6


def test_verify_td(tmp_path, capsys):
    graph = dump(tmp_path, "graph.json", graphs.Path(4).to_json())
    good = TreeDecomposition(graphs.Path(3), {i: [i, i + 1] for i in range(3)})
    td = dump(tmp_path, "td.json", good.to_json())
    assert main(["verify-td", "--graph", graph, "--td", td]) == EXIT_OK
    bad = TreeDecomposition(graphs.Path(2), {0: [0, 1], 1: [1, 2]})
    td = dump(tmp_path, "bad.json", bad.to_json())
    capsys.readouterr()
    assert main(["verify-td", "--graph", graph, "--td", td]) == EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)["missing_vertices"] == [3]


def test_closure(tmp_path, capsys):
    graph = dump(tmp_path, "graph.json", graphs.Cycle(6).to_json())
    td = TreeDecomposition(graphs.Path(3), {0: [0, 1, 2], 1: [0, 2, 3, 5], 2: [3, 4, 5]})
    path = dump(tmp_path, "td.json", td.to_json())
    assert main(["closure", "--graph", graph, "--td", path]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["td"]["parts"]["1"] == [0, 1, 2, 3, 4, 5]


def test_split(double_ray, capsys):
    assert main(["split", "--spec", double_ray, "-R", "4", "-k", "1", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["spec"]["type"] == 1
    assert len(data["separator"]) == 1


def test_factorise(double_ray, capsys):
    assert main(["factorise", "--spec", double_ray, "-R", "4"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "split-further"
    assert main(["factorise", "--spec", double_ray, "-R", "4", "--depth", "0"]) == (
        EXIT_INCONCLUSIVE
    )


def test_ends(double_ray, capsys):
    assert main(["ends", "--spec", double_ray, "-R", "3", "--radii", "3,4"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["accessibility"]["passes"]
    assert len(data["regions"]) == 1
    assert main(["ends", "--spec", double_ray, "-k", "0"]) == EXIT_FAILURE


def test_separators(tmp_path, capsys):
    graph = dump(tmp_path, "graph.json", graphs.Cycle(6).to_json())
    assert main(["separators", "--graph", graph, "-k", "2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["separators"]) == 9
    assert not data["truncated"]
    assert main(["separators", "--graph", graph, "-k", "2", "--cap", "8"]) == (
        EXIT_INCONCLUSIVE
    )


def test_hyperbolicity(tmp_path, double_ray, capsys):
    graph = dump(tmp_path, "graph.json", graphs.Cycle(4).to_json())
    assert main(["hyperbolicity", "--graph", graph]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["delta"] == 1
    assert main(["hyperbolicity", "--spec", double_ray, "--radii", "3,4"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["bounded"]
    assert [row["delta"] for row in data["rows"]] == [0, 0]


def test_roundtrip(double_ray, capsys):
    assert main(["roundtrip", "--spec", double_ray, "-R", "4"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["isomorphic"]


@pytest.mark.parametrize(
    "spec, args",
    [
        [specs.RegularTree4(), ["build", "-R", "3", "--seed", "7"]],
        [specs.DoubleRay(), ["split", "-R", "4", "-k", "1"]],
        [specs.DoubleRay(), ["hyperbolicity", "--radii", "3,4"]],
        [specs.DoubleRay(), ["roundtrip", "-R", "4"]],
    ],
)
def test_repeated_runs_are_identical(tmp_path, capsys, spec, args):
    spec = dump(tmp_path, "spec.json", spec.to_json())
    out, dot = tmp_path / "out", tmp_path / "dot"
    argv = args + ["--spec", spec, "--out", str(out), "--dot", str(dot)]
    runs = []
    for _ in range(2):
        code = main(argv)
        files = {
            str(p.relative_to(tmp_path)): p.read_bytes()
            for p in sorted(tmp_path.glob("*/*"))
        }
        runs.append((code, capsys.readouterr().out, files))
    assert runs[0] == runs[1]
    assert runs[0][0] == EXIT_OK
    assert runs[0][2]
