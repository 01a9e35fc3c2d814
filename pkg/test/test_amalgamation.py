from dataclasses import replace

from pyamalgam.amalgamation import (
    AmalgamationSpec,
    StarLabelling,
    check_spec,
    consistency_check,
    is_trivial,
    respects_action,
    star_isomorphism,
    validate_spec,
)
from pyamalgam.action import Action, trivial_action
import pyamalgam.specDB as specs
from pyamalgam.exception import PreconditionError, SpecError
from pyamalgam.misc import compose_maps

import pytest


@pytest.mark.parametrize(
    "spec",
    [
        specs.DoubleRay(),
        specs.TriangleCactus(),
        specs.SquareChain(),
        specs.HNNEdge(),
        specs.RegularTree4(),
        specs.Trivial(),
        specs.RandomSpec(0),
        specs.RandomSpec(1),
        specs.RandomSpec(7),
    ],
)
def test_validate_spec(spec):
    report = validate_spec(spec)
    assert report.valid, report.violations
    check_spec(spec)


@pytest.mark.parametrize(
    "spec, violation",
    [
        [replace(specs.DoubleRay(), kind=3), "the type has to be 1 or 2, not 3"],
        [
            replace(specs.DoubleRay(), index_sets=[[1, 2], [2, 3]]),
            "the index sets I1 and I2 are not disjoint",
        ],
        [replace(specs.DoubleRay(), J=[1]), "a type 1 spec has no subset J"],
        [replace(specs.HNNEdge(), J=None), "a type 2 spec needs the subset J"],
        [
            replace(specs.HNNEdge(), J=[1, 2]),
            "J has to be a non-empty proper subset of I",
        ],
        [
            replace(specs.DoubleRay(), adhesions={1: [0], 2: [1], 3: [0, 1], 4: [1]}),
            "the adhesion sets have different cardinalities [1, 2]",
        ],
        [
            replace(specs.DoubleRay(), adhesions={1: [0], 2: [5], 3: [0], 4: [1]}),
            "the adhesion set S_2 is not a set of vertices of its factor",
        ],
        [
            replace(
                specs.DoubleRay(),
                bondings={(1, 4): {0: 1}, (2, 3): {1: 0}, (2, 4): {1: 1}},
            ),
            "the bonding map phi_13 is missing",
        ],
        [
            replace(
                specs.DoubleRay(),
                bondings={
                    (1, 3): {0: 1},
                    (1, 4): {0: 1},
                    (2, 3): {1: 0},
                    (2, 4): {1: 1},
                },
            ),
            "phi_13 is not a bijection from S_1 onto S_3",
        ],
        [
            replace(specs.DoubleRay(), factors=[specs.DoubleRay().factors[0]]),
            "a type 1 spec needs 2 factors, not 1",
        ],
    ],
)
def test_validate_spec_violation(spec, violation):
    report = validate_spec(spec)
    assert not report.valid
    assert violation in report.violations
    with pytest.raises(SpecError):
        check_spec(spec)


def test_validate_spec_non_automorphism():
    reflection = Action([{0: 1, 1: 0, 2: 2, 3: 3}])
    spec = replace(specs.SquareChain(), actions=[reflection, trivial_action()])
    violations = validate_spec(spec).violations
    assert len(violations) == 1
    assert violations[0].startswith("generator 0 of factor 0 is not an automorphism")


def test_index_structure():
    s = specs.RegularTree4()
    assert s.sides() == [1]
    assert s.partner_indices(1) == [3, 4]
    assert s.partner_indices(4) == [1, 2]
    assert s.bonding_pairs() == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert s.bonding(3, 2) == {3: 2}
    assert s.adhesion_size() == 1
    assert s.factor_orbit_counts() == [3]

    s = specs.DoubleRay()
    assert s.sides() == [1, 2]
    assert s.indices(2) == [3, 4]
    assert s.side_of_index(3) == 2
    assert s.all_indices() == [1, 2, 3, 4]
    assert s.factor_orbit_counts() == [1, 1]
    with pytest.raises(KeyError):
        s.bonding(1, 2)


def test_json():
    for s in (specs.DoubleRay(), specs.RegularTree4()):
        data = s.to_json()
        assert AmalgamationSpec.from_json(data).to_json() == data
    data = specs.HNNEdge().to_json()
    assert data["J"] == [1]
    assert data["bondings"] == [{"from": 1, "to": 2, "map": [[0, 1]]}]
    assert "J" not in specs.DoubleRay().to_json()


def test_is_trivial():
    verdict = is_trivial(specs.Trivial())
    assert verdict.trivial
    assert verdict.side == 1
    for s in (specs.DoubleRay(), specs.HNNEdge(), specs.TriangleCactus()):
        assert not is_trivial(s).trivial


def test_respects_action():
    s = specs.DoubleRay()
    result = respects_action(s, {0: 1, 1: 0}, 1)
    assert result.holds
    assert result.pi == {1: 2, 2: 1}
    assert respects_action(s, {0: 0, 1: 1}, 2).pi == {3: 3, 4: 4}


def test_respects_action_rotation():
    result = respects_action(specs.TriangleCactus(), {0: 1, 1: 2, 2: 0}, 1)
    assert result.holds
    assert result.pi == {1: 2, 2: 3, 3: 1}


def test_respects_action_fails():
    result = respects_action(specs.SquareChain(), {0: 1, 1: 2, 2: 3, 3: 0}, 1)
    assert not result.holds
    assert result.failing_index == 1


@pytest.mark.parametrize(
    "spec",
    [
        specs.DoubleRay(),
        specs.TriangleCactus(),
        specs.SquareChain(),
        specs.HNNEdge(),
        specs.RegularTree4(),
    ],
)
def test_consistency_check(spec):
    report = consistency_check(spec)
    assert report.consistent
    for (k, l, l2), g in report.witnesses.items():
        phi, psi = spec.bonding(k, l), spec.bonding(k, l2)
        assert all(phi[x] == g[psi[x]] for x in spec.adhesions[k])


def test_consistency_check_inconsistent():
    s = replace(specs.DoubleRay(), actions=[trivial_action(), trivial_action()])
    report = consistency_check(s)
    assert report.status == "inconsistent"
    assert report.failing_triple == (1, 3, 4)


def test_consistency_check_inconclusive():
    report = consistency_check(specs.DoubleRay(), cap=1)
    assert report.status == "inconclusive"
    assert report.failing_triple == (1, 3, 4)
    assert report.to_json()["failing_triple"] == [1, 3, 4]


def test_star_isomorphism():
    s = specs.DoubleRay()
    labelling = StarLabelling(1, {1: 3, 2: 4})
    other = StarLabelling(1, {1: 4, 2: 3})
    gamma = {0: 1, 1: 0}
    iso = star_isomorphism(s, labelling, other, gamma)
    assert iso.pi == {1: 2, 2: 1}
    for k in (1, 2):
        phi = s.bonding(k, labelling.labels[k])
        psi = s.bonding(iso.pi[k], other.labels[iso.pi[k]])
        chain = compose_maps(iso.elements[k], psi, gamma)
        assert all(chain[x] == phi[x] for x in s.adhesions[k])


def test_star_isomorphism_pin():
    s = specs.DoubleRay()
    labelling = StarLabelling(1, {1: 3, 2: 3})
    pin = (1, 2, {0: 0, 1: 1})
    iso = star_isomorphism(s, labelling, labelling, {0: 1, 1: 0}, pin=pin)
    assert iso.pi == {1: 2, 2: 1}
    assert iso.elements[1] == {0: 0, 1: 1}


def test_star_isomorphism_errors():
    s = specs.SquareChain()
    labelling = StarLabelling(1, {1: 3, 2: 4})
    with pytest.raises(PreconditionError):
        star_isomorphism(s, labelling, labelling, {0: 1, 1: 2, 2: 3, 3: 0})
    with pytest.raises(ValueError):
        star_isomorphism(
            s, StarLabelling(1, {1: 3}), labelling, {v: v for v in range(4)}
        )
    with pytest.raises(ValueError):
        star_isomorphism(
            s, StarLabelling(1, {1: 2, 2: 3}), labelling, {v: v for v in range(4)}
        )
    with pytest.raises(ValueError):
        star_isomorphism(
            s, labelling, StarLabelling(2, {3: 1, 4: 2}), {v: v for v in range(4)}
        )
