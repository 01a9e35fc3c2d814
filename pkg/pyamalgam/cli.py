"""
The ``amalgam`` command line interface.

Exit codes: 0 on success, 1 if a checked property fails,
2 on input errors and 3 if the result is inconclusive at the given scale.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from jsonschema import Draft7Validator

from pyamalgam.amalgamation import AmalgamationSpec, validate_spec
from pyamalgam.build import build_amalgam
from pyamalgam.ends import (
    DEFAULT_SEPARATOR_CAP,
    accessibility_probe,
    end_degree_estimate,
    ends_at_scale,
    tight_separators,
)
from pyamalgam.exception import (
    InconclusiveError,
    InputSchemaError,
    NonNestedOrbitError,
    NoSplitFoundError,
)
from pyamalgam.export import (
    amalgam_to_dot,
    dumps,
    graph_to_dot,
    separator_to_dot,
    write_json,
    write_text,
)
from pyamalgam.graph import Graph
from pyamalgam.hyperbolicity import amalgam_hyperbolicity_experiment, delta_thin
from pyamalgam.splitting import roundtrip, stallings_split, terminal_factorisation
from pyamalgam.treedecomp import TreeDecomposition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a run depends on; embedded in every artefact it writes.
    """

    command: str
    spec: str | None = None
    graph: str | None = None
    td: str | None = None
    R: int = 3
    k: int = 1
    seed: int = 0
    cap: int | None = None
    depth: int = 3
    radii: tuple[int, ...] = ()
    separator: tuple[int, ...] | None = None
    out: str | None = None
    dot: str | None = None
    json: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            command=args.command,
            spec=getattr(args, "spec", None),
            graph=getattr(args, "graph", None),
            td=getattr(args, "td", None),
            R=args.R,
            k=args.k,
            seed=args.seed,
            cap=args.cap,
            depth=args.depth,
            radii=tuple(args.radii) if args.radii else (args.R,),
            separator=None if args.separator is None else tuple(args.separator),
            out=args.out,
            dot=args.dot,
            json=args.json,
        )

    def to_json(self) -> dict[str, Any]:
        data = asdict(self)
        data["radii"] = list(self.radii)
        if self.separator is not None:
            data["separator"] = list(self.separator)
        return data


def load_schema(name: str) -> dict[str, Any]:
    text = resources.files("pyamalgam").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def load_input(path: str | None, schema: str) -> dict[str, Any]:
    """
    Read a JSON file and validate it against a shipped schema.

    Schema violations are raised together, each prefixed by
    the JSON pointer of the offending value.
    """
    if path is None:
        raise ValueError(f"The command needs a --{schema} input.")
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise InputSchemaError([f"{path}: invalid JSON ({error.msg})"]) from error
    validator = Draft7Validator(load_schema(schema))
    errors = sorted(
        validator.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path]
    )
    violations = [
        "/" + "/".join(str(p) for p in error.absolute_path) + ": " + error.message
        for error in errors
    ]
    if violations:
        raise InputSchemaError(violations)
    return data


def _spec(config: RunConfig) -> AmalgamationSpec:
    return AmalgamationSpec.from_json(load_input(config.spec, "spec"))


def _graph(config: RunConfig) -> Graph:
    return Graph.from_json(load_input(config.graph, "graph"))


def _td(config: RunConfig) -> TreeDecomposition:
    return TreeDecomposition.from_json(load_input(config.td, "td"))


def _emit(config: RunConfig, name: str, data: dict[str, Any], summary: str = "") -> None:
    data = dict(data)
    data["run_config"] = config.to_json()
    if config.out is not None:
        path = write_json(Path(config.out) / f"{name}.json", data)
        logger.info("wrote %s", path)
    if config.out is None or config.json:
        sys.stdout.write(dumps(data))
    elif summary:
        sys.stdout.write(summary + "\n")


def _emit_dot(config: RunConfig, name: str, source: str) -> None:
    if config.dot is not None:
        write_text(Path(config.dot) / f"{name}.dot", source + "\n")


def cmd_validate(config: RunConfig) -> int:
    if config.spec is not None:
        report = validate_spec(_spec(config))
        _emit(config, "validate", report.to_json(), "valid" if report.valid else "invalid")
        return EXIT_OK if report.valid else EXIT_FAILURE
    if config.td is not None:
        td = _td(config)
        if config.graph is None:
            _emit(config, "validate", {"valid": True, "td": td.to_json()}, "valid")
            return EXIT_OK
        report = td.verify(_graph(config))
        _emit(config, "validate", report.to_json(), "valid" if report.valid else "invalid")
        return EXIT_OK if report.valid else EXIT_FAILURE
    violations = Graph.validate_json(load_input(config.graph, "graph"))
    data = {"valid": not violations, "violations": violations}
    _emit(config, "validate", data, "valid" if not violations else "invalid")
    return EXIT_OK if not violations else EXIT_FAILURE


def cmd_build(config: RunConfig) -> int:
    A = build_amalgam(_spec(config), config.R, config.seed)
    _emit(
        config,
        "build",
        A.to_json(),
        f"{A.graph.number_of_nodes()} vertices, {A.graph.number_of_edges()} edges",
    )
    _emit_dot(config, "build", amalgam_to_dot(A, config.to_json()))
    return EXIT_OK


def cmd_verify_td(config: RunConfig) -> int:
    report = _td(config).verify(_graph(config))
    _emit(config, "verify-td", report.to_json(), "valid" if report.valid else "invalid")
    return EXIT_OK if report.valid else EXIT_FAILURE


def cmd_closure(config: RunConfig) -> int:
    g = _graph(config)
    closed = _td(config).geodesic_closure(g)
    axioms = closed.verify(g)
    parts = closed.check_connected_parts(g)
    data = {
        "td": closed.to_json(),
        "axioms": axioms.to_json(),
        "connected_parts": parts.to_json(),
    }
    ok = axioms.valid and parts.parts_connected
    _emit(config, "closure", data, "valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_split(config: RunConfig) -> int:
    A = build_amalgam(_spec(config), config.R, config.seed)
    split = stallings_split(
        (A.patch, A.lifted_action()),
        config.k,
        cap=config.cap or DEFAULT_SEPARATOR_CAP,
        separator=None if config.separator is None else frozenset(config.separator),
    )
    _emit(
        config,
        "split",
        split.to_json(),
        f"Type {split.spec.kind} split along {sorted(split.separator)}",
    )
    _emit_dot(config, "split", separator_to_dot(A.patch, split.separator, config.to_json()))
    return EXIT_OK


def cmd_factorise(config: RunConfig) -> int:
    root = terminal_factorisation(
        _spec(config),
        config.k,
        config.R,
        config.depth,
        config.seed,
        config.cap or DEFAULT_SEPARATOR_CAP,
    )
    _emit(config, "factorise", root.to_dict(), "\n".join(root.summary()))
    if any(leaf.status == "inconclusive" for leaf in root.leaves()):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_ends(config: RunConfig) -> int:
    s = _spec(config)
    P = build_amalgam(s, config.R, config.seed).patch
    S = frozenset(config.separator or ())
    core = S if S else P.ball(P.inner_radius // 2)
    regions = []
    for region in ends_at_scale(P, S):
        data = region.to_json()
        if region.reaches_boundary:
            data["end_degree"] = end_degree_estimate(P, region, core)
        regions.append(data)
    table = accessibility_probe(s, config.k, config.radii, config.seed)
    data = {"regions": regions, "accessibility": table.to_json()}
    _emit(
        config,
        "ends",
        data,
        f"{sum(r['reaches_boundary'] for r in regions)} boundary-reaching regions, "
        + ("accessible" if table.passes else "not accessible")
        + f" with k = {config.k}",
    )
    _emit_dot(config, "ends", separator_to_dot(P, S, config.to_json()))
    return EXIT_OK if table.passes else EXIT_FAILURE


def cmd_separators(config: RunConfig) -> int:
    if config.graph is not None:
        g = _graph(config)
    else:
        g = build_amalgam(_spec(config), config.R, config.seed).graph
    result = tight_separators(g, config.k, config.cap or DEFAULT_SEPARATOR_CAP)
    data = {
        "k": config.k,
        "truncated": result.truncated,
        "separators": [T.to_json() for T in result],
    }
    _emit(config, "separators", data, f"{len(result)} tight separators")
    return EXIT_INCONCLUSIVE if result.truncated else EXIT_OK


def cmd_hyperbolicity(config: RunConfig) -> int:
    if config.graph is not None:
        g = _graph(config)
        report = delta_thin(g)
        _emit(config, "hyperbolicity", report.to_json(), f"delta = {report.delta}")
        _emit_dot(
            config,
            "hyperbolicity",
            graph_to_dot(
                g,
                classes=[report.witness["P12"], report.witness["P13"], report.witness["P23"]]
                if report.witness
                else None,
                run_config=config.to_json(),
            ),
        )
        return EXIT_OK
    table = amalgam_hyperbolicity_experiment(_spec(config), config.radii, config.seed)
    _emit(config, "hyperbolicity", table.to_json(), table.to_text())
    return EXIT_OK


def cmd_roundtrip(config: RunConfig) -> int:
    verdict = roundtrip(_spec(config), config.R, config.seed)
    _emit(
        config,
        "roundtrip",
        verdict.to_json(),
        "isomorphic" if verdict.isomorphic else "not isomorphic",
    )
    return EXIT_OK if verdict.isomorphic else EXIT_FAILURE


COMMANDS: dict[str, tuple[Callable[[RunConfig], int], str]] = {
    "validate": (cmd_validate, "validate a spec, a graph or a tree-decomposition"),
    "build": (cmd_build, "build a spec at radius R"),
    "verify-td": (cmd_verify_td, "verify the axioms of a tree-decomposition"),
    "closure": (cmd_closure, "geodesically close a tree-decomposition"),
    "split": (cmd_split, "split the build of a spec along a separator orbit"),
    "factorise": (cmd_factorise, "run a process of splittings"),
    "ends": (cmd_ends, "regions, end degrees and accessibility at a scale"),
    "separators": (cmd_separators, "enumerate tight separators"),
    "hyperbolicity": (cmd_hyperbolicity, "thin triangles of a graph or of builds"),
    "roundtrip": (cmd_roundtrip, "rebuild a spec from the split of its build"),
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amalgam",
        description="Tree amalgamations, tree-decompositions and ends of graphs.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, description) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=description, description=description)
        sub.add_argument("--spec", help="amalgamation spec JSON file")
        sub.add_argument("--graph", help="graph JSON file")
        sub.add_argument("--td", help="tree-decomposition JSON file")
        sub.add_argument("-R", type=int, default=3, help="radius of the build")
        sub.add_argument("-k", type=int, default=1, help="bound on separator sizes")
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--cap", type=int, default=None, help="enumeration cap")
        sub.add_argument("--depth", type=int, default=3, help="maximal splitting depth")
        sub.add_argument("--radii", type=_int_list, default=None, help="e.g. 3,4,5")
        sub.add_argument("--separator", type=_int_list, default=None, help="e.g. 2,7")
        sub.add_argument("--out", help="directory for JSON artefacts")
        sub.add_argument("--dot", help="directory for DOT artefacts")
        sub.add_argument(
            "--json", action="store_true", help="print JSON even when --out is given"
        )
    return parser


def run(config: RunConfig) -> int:
    """
    Run a command and return its exit status.
    """
    command, _ = COMMANDS[config.command]
    try:
        return command(config)
    except InputSchemaError as error:
        for violation in error.violations:
            print(f"input error: {violation}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, OSError) as error:
        print(f"input error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except (InconclusiveError, NoSplitFoundError, NonNestedOrbitError) as error:
        print(f"inconclusive: {error}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    return run(RunConfig.from_args(args))
