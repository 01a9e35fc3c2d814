"""
Module for tree amalgamation specs: validation, triviality,
respected actions, consistent bondings and legally labelled stars.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from pyamalgam.action import DEFAULT_ELEMENT_CAP, Action
from pyamalgam.data_type import IndexLabel, Vertex, VertexMap
from pyamalgam.exception import (
    InconclusiveError,
    InvariantError,
    PreconditionError,
    SpecError,
)
from pyamalgam.graph import Graph
from pyamalgam.misc import compose_maps, invert_map, map_to_pairs, pairs_to_map

logger = logging.getLogger(__name__)


@dataclass
class AmalgamationSpec:
    """
    Finite description of a tree amalgamation.

    Type 1 amalgamates two factors ``G1, G2`` along a
    ``(|I1|, |I2|)``-semiregular tree; Type 2 amalgamates a single factor
    ``G`` with itself along a ``|I|``-regular tree, where the index set
    ``I`` is split by its subset ``J``.

    Definitions
    -----------
    :prf:ref:`Tree amalgamation <def-tree-amalgamation>`

    Attributes
    ----------
    kind:
        1 or 2.
    factors:
        ``[G1, G2]`` for Type 1 and ``[G]`` for Type 2.
    index_sets:
        ``[I1, I2]`` for Type 1 and ``[I]`` for Type 2.
    adhesions:
        The adhesion set ``S_k`` of every index ``k``,
        a list of vertices of the factor of ``k``.
    bondings:
        The bonding map ``phi_{kl}: S_k -> S_l`` for every ``k`` in ``I1``
        (Type 1) or in ``J`` (Type 2) and every partner index ``l``.
        The maps in the other direction are the inverses.
    actions:
        The action on every factor.
    J:
        The distinguished subset of ``I`` for Type 2, None for Type 1.
    name:

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> s = specs.DoubleRay()
    >>> s.partner_indices(1)
    [3, 4]
    >>> s.bonding(4, 2)
    {1: 1}
    """

    kind: int
    factors: list[Graph]
    index_sets: list[list[IndexLabel]]
    adhesions: dict[IndexLabel, list[Vertex]]
    bondings: dict[tuple[IndexLabel, IndexLabel], VertexMap]
    actions: list[Action]
    J: list[IndexLabel] | None = None
    name: str = ""

    def __post_init__(self):
        self.index_sets = [sorted(I) for I in self.index_sets]
        if self.J is not None:
            self.J = sorted(self.J)

    def __repr__(self) -> str:
        sizes = ", ".join(str(len(I)) for I in self.index_sets)
        return f"AmalgamationSpec({self.name!r}, type {self.kind}, index sizes {sizes})"

    def sides(self) -> list[int]:
        return [1, 2] if self.kind == 1 else [1]

    def factor_index(self, side: int) -> int:
        """
        Return the position in ``factors`` of the factor copied at
        tree nodes of the given side of the bipartition.
        """
        return side - 1 if self.kind == 1 else 0

    def factor(self, side: int) -> Graph:
        return self.factors[self.factor_index(side)]

    def action(self, side: int) -> Action:
        return self.actions[self.factor_index(side)]

    def indices(self, side: int) -> list[IndexLabel]:
        """
        Return the labels of the outgoing tree edges at a node of ``side``.
        """
        return self.index_sets[self.factor_index(side)]

    def all_indices(self) -> list[IndexLabel]:
        return sorted(set().union(*self.index_sets))

    def side_of_index(self, k: IndexLabel) -> int:
        if self.kind == 2:
            return 1
        return 1 if k in self.index_sets[0] else 2

    def partner_indices(self, k: IndexLabel) -> list[IndexLabel]:
        """
        Return the admissible labels of the reverse of an edge labelled ``k``.
        """
        if self.kind == 1:
            return list(self.index_sets[1 if k in self.index_sets[0] else 0])
        J = set(self.J)
        if k in J:
            return [l for l in self.index_sets[0] if l not in J]
        return list(self.J)

    def bonding_pairs(self) -> list[tuple[IndexLabel, IndexLabel]]:
        """
        Return the pairs ``(k, l)`` for which a bonding map is stored.
        """
        first = self.index_sets[0] if self.kind == 1 else self.J
        return [(k, l) for k in first for l in self.partner_indices(k)]

    def bonding(self, k: IndexLabel, l: IndexLabel) -> VertexMap:
        if (k, l) in self.bondings:
            return self.bondings[(k, l)]
        if (l, k) in self.bondings:
            return invert_map(self.bondings[(l, k)])
        raise KeyError(f"There is no bonding map between {k} and {l}.")

    def adhesion_size(self) -> int:
        return max((len(S) for S in self.adhesions.values()), default=0)

    def factor_orbit_counts(self) -> list[int]:
        """
        Return the number of orbits of the action on every factor.
        """
        return [
            G.number_of_orbits(a) for G, a in zip(self.factors, self.actions)
        ]

    def to_json(self) -> dict[str, Any]:
        data = {
            "name": self.name,
            "type": self.kind,
            "factors": [G.to_json() for G in self.factors],
            "index_sets": [list(I) for I in self.index_sets],
            "adhesions": {str(k): list(self.adhesions[k]) for k in sorted(self.adhesions)},
            "bondings": [
                {"from": k, "to": l, "map": map_to_pairs(self.bondings[(k, l)])}
                for k, l in sorted(self.bondings)
            ],
            "actions": [a.to_json() for a in self.actions],
        }
        if self.kind == 2:
            data["J"] = list(self.J)
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> AmalgamationSpec:
        return cls(
            kind=int(data["type"]),
            factors=[Graph.from_json(G) for G in data["factors"]],
            index_sets=[[int(k) for k in I] for I in data["index_sets"]],
            adhesions={
                int(k): [int(v) for v in S] for k, S in data["adhesions"].items()
            },
            bondings={
                (int(b["from"]), int(b["to"])): pairs_to_map(b["map"])
                for b in data["bondings"]
            },
            actions=[Action.from_json(a) for a in data["actions"]],
            J=None if data.get("J") is None else [int(k) for k in data["J"]],
            name=data.get("name", ""),
        )


@dataclass
class SpecReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.valid, "violations": self.violations}


@dataclass(frozen=True)
class StarLabelling:
    """
    Reverse labels of the edges of a star of the connecting tree.

    ``labels[k]`` is the label of the reverse of the outgoing edge
    labelled ``k`` at a node of the given side.
    """

    side: int
    labels: dict[IndexLabel, IndexLabel]

    def check(self, spec: AmalgamationSpec) -> None:
        if sorted(self.labels) != spec.indices(self.side):
            raise ValueError(
                f"The star labelling {self.labels} is not defined on "
                f"{spec.indices(self.side)}."
            )
        for k, l in self.labels.items():
            if l not in spec.partner_indices(k):
                raise ValueError(
                    f"The label {l} is not admissible as reverse label of {k}."
                )


@dataclass
class TrivialityVerdict:
    trivial: bool
    side: int | None = None
    reason: str = ""


@dataclass
class RespectsResult:
    """
    Outcome of the search for a permutation of indices respected by an
    automorphism.

    ``pi`` and ``choices`` describe a witness; ``choices[k]`` is the index
    ``l`` with ``phi_{kl} = phi_{pi(k)l} o gamma`` on ``S_k``.
    ``failing_index`` is an index without a feasible image otherwise.
    """

    holds: bool
    pi: dict[IndexLabel, IndexLabel] | None = None
    choices: dict[IndexLabel, IndexLabel] | None = None
    failing_index: IndexLabel | None = None


@dataclass
class ConsistencyReport:
    """
    Outcome of the consistency check of the bonding maps.

    ``status`` is ``"consistent"``, ``"inconsistent"`` or ``"inconclusive"``;
    ``failing_triple`` is ``(k, l, l')`` for the latter two.
    ``witnesses`` records the group element used for every checked triple.
    """

    status: str
    failing_triple: tuple[IndexLabel, IndexLabel, IndexLabel] | None = None
    witnesses: dict[tuple[IndexLabel, IndexLabel, IndexLabel], VertexMap] = field(
        default_factory=dict
    )

    @property
    def consistent(self) -> bool:
        return self.status == "consistent"

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "failing_triple": (
                None if self.failing_triple is None else list(self.failing_triple)
            ),
            "witnesses": [
                {"triple": list(t), "element": map_to_pairs(g)}
                for t, g in sorted(self.witnesses.items())
            ],
        }


@dataclass
class StarIsomorphism:
    """
    An isomorphism of two legally labelled stars: ``gamma`` on the center,
    ``pi`` on the labels and ``elements[k]`` on the leaf at ``k``,
    satisfying ``phi_{k,l(k)} = elements[k] o phi_{pi(k),l'(pi(k))} o gamma``
    on ``S_k`` for every ``k``.
    """

    gamma: VertexMap
    pi: dict[IndexLabel, IndexLabel]
    elements: dict[IndexLabel, VertexMap]


def validate_spec(s: AmalgamationSpec) -> SpecReport:
    """
    Return the violations of the invariants of an amalgamation spec.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> validate_spec(specs.DoubleRay()).valid
    True
    """
    report = SpecReport()
    v = report.violations
    if s.kind not in (1, 2):
        v.append(f"the type has to be 1 or 2, not {s.kind}")
        return report
    expected = 2 if s.kind == 1 else 1
    for what, items in (
        ("factors", s.factors),
        ("index sets", s.index_sets),
        ("actions", s.actions),
    ):
        if len(items) != expected:
            v.append(f"a type {s.kind} spec needs {expected} {what}, not {len(items)}")
    if v:
        return report

    if s.kind == 1:
        if set(s.index_sets[0]) & set(s.index_sets[1]):
            v.append("the index sets I1 and I2 are not disjoint")
        if s.J is not None:
            v.append("a type 1 spec has no subset J")
    else:
        if s.J is None:
            v.append("a type 2 spec needs the subset J")
            return report
        I = set(s.index_sets[0])
        if not set(s.J) < I or not s.J:
            v.append("J has to be a non-empty proper subset of I")
    for i, I in enumerate(s.index_sets):
        if not I:
            v.append(f"the index set {i + 1} is empty")
        if len(set(I)) != len(I):
            v.append(f"the index set {i + 1} has repeated labels")
    if v:
        return report

    sizes = set()
    for side in s.sides():
        G = s.factor(side)
        for k in s.indices(side):
            if k not in s.adhesions:
                v.append(f"the adhesion set S_{k} is missing")
                continue
            S = s.adhesions[k]
            if len(set(S)) != len(S):
                v.append(f"the adhesion set S_{k} has repeated vertices")
            if not set(S) <= set(G.nodes):
                v.append(f"the adhesion set S_{k} is not a set of vertices of its factor")
            sizes.add(len(set(S)))
    extra = set(s.adhesions) - set(s.all_indices())
    if extra:
        v.append(f"adhesion sets for unknown indices {sorted(extra)}")
    if len(sizes) > 1:
        v.append(f"the adhesion sets have different cardinalities {sorted(sizes)}")
    if v:
        return report

    pairs = set(s.bonding_pairs())
    for k, l in s.bondings:
        if (k, l) not in pairs and (l, k) not in pairs:
            v.append(f"the bonding map phi_{k}{l} pairs non-partner indices")
    for k, l in sorted(pairs):
        if (k, l) in s.bondings and (l, k) in s.bondings:
            if invert_map(s.bondings[(k, l)]) != s.bondings[(l, k)]:
                v.append(f"phi_{l}{k} is not the inverse of phi_{k}{l}")
        if (k, l) not in s.bondings and (l, k) not in s.bondings:
            v.append(f"the bonding map phi_{k}{l} is missing")
            continue
        phi = s.bonding(k, l)
        if set(phi) != set(s.adhesions[k]) or sorted(phi.values()) != sorted(
            set(s.adhesions[l])
        ):
            v.append(f"phi_{k}{l} is not a bijection from S_{k} onto S_{l}")

    for i, (G, a) in enumerate(zip(s.factors, s.actions)):
        for j, g in enumerate(a.generators):
            if set(g) != set(G.nodes) or set(g.values()) != set(G.nodes):
                v.append(f"generator {j} of factor {i} is not a permutation")
                continue
            witness = G.check_automorphism(g)
            if witness is not None:
                v.append(
                    f"generator {j} of factor {i} is not an automorphism: "
                    f"witness {witness}"
                )
    return report


def check_spec(s: AmalgamationSpec) -> None:
    """
    Raise a :class:`~pyamalgam.exception.SpecError` for an invalid spec.
    """
    report = validate_spec(s)
    if not report.valid:
        raise SpecError(report)


def is_trivial(s: AmalgamationSpec) -> TrivialityVerdict:
    """
    Return whether the spec meets the sufficient criterion for triviality:
    some factor has a single index whose adhesion set is the whole factor.

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> is_trivial(specs.Trivial()).trivial
    True
    >>> is_trivial(specs.DoubleRay()).trivial
    False
    """
    for side in s.sides():
        I = s.indices(side)
        if len(I) == 1 and set(s.adhesions[I[0]]) == set(s.factor(side).nodes):
            return TrivialityVerdict(
                True, side, f"V(G_{side}) is the only adhesion set and |I_{side}| = 1"
            )
    return TrivialityVerdict(False, None, "no factor is a single full adhesion set")


def _respects_pair(
    s: AmalgamationSpec, gamma: VertexMap, k: IndexLabel, k2: IndexLabel
) -> IndexLabel | None:
    S = s.adhesions[k]
    if {gamma[x] for x in S} != set(s.adhesions[k2]):
        return None
    for l in s.partner_indices(k):
        phi, psi = s.bonding(k, l), s.bonding(k2, l)
        if all(phi[x] == psi[gamma[x]] for x in S):
            return l
    return None


def respects_action(
    s: AmalgamationSpec, gamma: VertexMap, side: int
) -> RespectsResult:
    """
    Search a permutation ``pi`` of the indices of ``side`` such that for
    every ``k`` some partner index ``l`` satisfies
    ``phi_{kl} = phi_{pi(k)l} o gamma`` on ``S_k``.

    The identity is preferred; otherwise a perfect matching of the
    feasible pairs is computed.

    Definitions
    -----------
    :prf:ref:`Respecting an action <def-respects>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> respects_action(specs.DoubleRay(), {0: 1, 1: 0}, 1).pi
    {1: 2, 2: 1}
    """
    I = s.indices(side)
    J = set(s.J or [])
    candidates: dict[IndexLabel, dict[IndexLabel, IndexLabel]] = {}
    for k in I:
        candidates[k] = {}
        for k2 in I:
            if s.kind == 2 and (k in J) != (k2 in J):
                continue
            l = _respects_pair(s, gamma, k, k2)
            if l is not None:
                candidates[k][k2] = l
        if not candidates[k]:
            return RespectsResult(False, failing_index=k)

    if all(k in candidates[k] for k in I):
        return RespectsResult(True, {k: k for k in I}, {k: candidates[k][k] for k in I})

    B = nx.Graph()
    top = [("source", k) for k in I]
    B.add_nodes_from(top)
    B.add_nodes_from(("target", k) for k in I)
    for k in I:
        for k2 in sorted(candidates[k]):
            B.add_edge(("source", k), ("target", k2))
    matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=top)
    pi = {}
    for k in I:
        if ("source", k) not in matching:
            return RespectsResult(False, failing_index=k)
        pi[k] = matching[("source", k)][1]
    return RespectsResult(True, pi, {k: candidates[k][pi[k]] for k in I})


def _transfer_element(
    s: AmalgamationSpec,
    side: int,
    required: VertexMap,
    cap: int,
    pointer,
) -> VertexMap:
    """
    Return an element of the action on the factor of ``side``
    extending ``required``.
    """
    G = s.factor(side)
    element, exhaustive = s.action(side).find_element(
        G.number_of_nodes(), required, cap
    )
    if element is None:
        if exhaustive:
            raise PreconditionError(f"The bonding maps are not consistent at {pointer}.")
        raise InconclusiveError("element cap exhausted", pointer)
    return element


def consistency_check(
    s: AmalgamationSpec, cap: int = DEFAULT_ELEMENT_CAP
) -> ConsistencyReport:
    """
    Check that the bonding maps are consistent.

    For every index ``k`` and partner indices ``l < l'``, an element
    ``gamma`` of the action on the partner factor with
    ``phi_{kl} = gamma o phi_{kl'}`` is searched among at most ``cap``
    group elements. For Type 2, ``k`` runs through ``I``
    and the partners are taken from ``J`` or its complement.

    Definitions
    -----------
    :prf:ref:`Consistent bonding maps <def-consistent>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> consistency_check(specs.DoubleRay()).status
    'consistent'
    """
    report = ConsistencyReport("consistent")
    inconclusive = None
    for side in s.sides():
        for k in s.indices(side):
            partners = s.partner_indices(k)
            partner_side = s.side_of_index(partners[0]) if s.kind == 1 else 1
            G = s.factor(partner_side)
            for a, l in enumerate(partners):
                for l2 in partners[a + 1 :]:
                    phi, psi = s.bonding(k, l), s.bonding(k, l2)
                    required = {psi[x]: phi[x] for x in s.adhesions[k]}
                    element, exhaustive = s.action(partner_side).find_element(
                        G.number_of_nodes(), required, cap
                    )
                    if element is not None:
                        report.witnesses[(k, l, l2)] = element
                    elif exhaustive:
                        report.status = "inconsistent"
                        report.failing_triple = (k, l, l2)
                        logger.info("bonding maps inconsistent at %s", (k, l, l2))
                        return report
                    elif inconclusive is None:
                        inconclusive = (k, l, l2)
    if inconclusive is not None:
        report.status = "inconclusive"
        report.failing_triple = inconclusive
    return report


def _check_star_equation(
    s: AmalgamationSpec,
    k: IndexLabel,
    labelling: StarLabelling,
    other: StarLabelling,
    gamma: VertexMap,
    k2: IndexLabel,
    element: VertexMap,
) -> bool:
    phi = s.bonding(k, labelling.labels[k])
    psi = s.bonding(k2, other.labels[k2])
    return all(
        gamma[x] in psi and psi[gamma[x]] in element and phi[x] == element[psi[gamma[x]]]
        for x in s.adhesions[k]
    )


def star_isomorphism(
    s: AmalgamationSpec,
    labelling: StarLabelling,
    other: StarLabelling,
    gamma: VertexMap,
    pin: tuple[IndexLabel, IndexLabel, VertexMap] | None = None,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> StarIsomorphism:
    """
    Return an isomorphism of legally labelled stars extending ``gamma``.

    The permutation of labels comes from :func:`respects_action`;
    the leaf elements are products of two consistency witnesses.
    A ``pin = (k, k', g)`` forces ``pi(k) = k'`` with leaf element ``g``;
    if the respected permutation sends another label to ``k'``,
    the two labels are swapped and the leaf element of the other label
    is corrected accordingly.
    The defining equation is verified for every label before returning.

    Definitions
    -----------
    :prf:ref:`Legally labelled star <def-labelled-star>`

    Examples
    --------
    >>> import pyamalgam.specDB as specs
    >>> s = specs.DoubleRay()
    >>> l1 = StarLabelling(1, {1: 3, 2: 4})
    >>> l2 = StarLabelling(1, {1: 4, 2: 3})
    >>> iso = star_isomorphism(s, l1, l2, {0: 0, 1: 1})
    >>> iso.pi, iso.elements[1]
    ({1: 1, 2: 2}, {0: 1, 1: 0})
    """
    if s.factor_index(labelling.side) != s.factor_index(other.side):
        raise ValueError("The stars need to be centered at copies of the same factor.")
    labelling.check(s)
    other.check(s)
    side = labelling.side
    respects = respects_action(s, gamma, side)
    if not respects.holds:
        raise PreconditionError(
            f"The spec does not respect the automorphism {gamma} "
            f"at the index {respects.failing_index}."
        )
    pi = dict(respects.pi)
    elements: dict[IndexLabel, VertexMap] = {}
    for k in s.indices(side):
        k2, m = pi[k], respects.choices[k]
        leaf_side = s.side_of_index(labelling.labels[k])
        phi_target, phi_m = s.bonding(k, labelling.labels[k]), s.bonding(k, m)
        first = _transfer_element(
            s,
            leaf_side,
            {phi_m[x]: phi_target[x] for x in s.adhesions[k]},
            cap,
            (k, labelling.labels[k], m),
        )
        psi_m, psi_target = s.bonding(k2, m), s.bonding(k2, other.labels[k2])
        second = _transfer_element(
            s,
            leaf_side,
            {psi_target[y]: psi_m[y] for y in s.adhesions[k2]},
            cap,
            (k2, m, other.labels[k2]),
        )
        elements[k] = compose_maps(first, second)

    if pin is not None:
        k_pin, k2_pin, g_pin = pin
        if not _check_star_equation(s, k_pin, labelling, other, gamma, k2_pin, g_pin):
            raise PreconditionError(f"The pin {(k_pin, k2_pin)} is not admissible.")
        if pi[k_pin] != k2_pin:
            k_hat = next(k for k in pi if pi[k] == k2_pin)
            elements[k_hat] = compose_maps(
                elements[k_hat], invert_map(g_pin), elements[k_pin]
            )
            pi[k_hat] = pi[k_pin]
            pi[k_pin] = k2_pin
        elements[k_pin] = dict(g_pin)

    for k in s.indices(side):
        if not _check_star_equation(s, k, labelling, other, gamma, pi[k], elements[k]):
            raise InvariantError(f"The star isomorphism fails at the label {k}.")
    return StarIsomorphism(dict(gamma), pi, elements)
