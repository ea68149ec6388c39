"""Built-in worked examples, each with its documented expected outputs.

Fixed entries:

* example-5.5        infinite two-vertex diagram whose maximal UHF
                     subalgebra is M_{3^infinity}
* findim-4-6         one-step diagram of M_4 + M_6; the invariant is
                     the gcd 2
* cone-2-3-unit-2    integers ordered by the semigroup <2,3>, unit 2;
                     coprime unit divisors compose
* cone-2-3-unit-6    same cone with unit 6; 2 and 3 divide the unit
                     but 6 does not, so no maximum supernatural divisor
* free-product-2-3   the K0 model (Z, <2,3>, 6) of the reduced free
                     product of M_2 and M_3; same order data as
                     cone-2-3-unit-6
* quadratic-sqrt2    Q({2: inf}) + sqrt(2)*Z with unit 1; the rational
                     subgroup of the unit is exactly the rational part

The name uhf-<n> is accepted for every positive integer n and builds
the single-vertex diagram of the supernatural number of n, carried far
enough that the stage ratios have stabilized and the tail repeats; the
certified invariant is then exactly the factorization of n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .bratteli import BratteliDiagram, uhf_diagram
from .ordered_group import CyclicOrderedGroup, QuadraticElement, QuadraticIrrationalGroup
from .supernatural import OMEGA, SupernaturalNumber

CatalogPayload = Union[BratteliDiagram, CyclicOrderedGroup, QuadraticIrrationalGroup]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "diagram" or "group"
    payload: CatalogPayload
    note: str
    expected: dict = field(default_factory=dict)


_EXAMPLE_55 = BratteliDiagram(
    levels=(1, 2, 2),
    matrices=(((1,), (1,)), ((2, 1), (1, 2))),
    tail="repeat-last",
    name="example-5.5",
)

_FINDIM_46 = BratteliDiagram(
    levels=(1, 2),
    matrices=(((4,), (6,)),),
    tail=None,
    name="findim-4-6",
)

_FIXED_ENTRIES = {
    "example-5.5": CatalogEntry(
        name="example-5.5",
        kind="diagram",
        payload=_EXAMPLE_55,
        note="two vertices per level, multiplicities 2/1 crosswise; the "
             "height gcds are 1, 1, 3, 9, 27, ... and the maximal UHF "
             "subalgebra is M_{3^infinity}",
        expected={
            "mu": {"value": {"3": "inf"}, "exactness": "certified"},
            "gcds_0_4": [1, 1, 3, 9, 27],
        },
    ),
    "findim-4-6": CatalogEntry(
        name="findim-4-6",
        kind="diagram",
        payload=_FINDIM_46,
        note="the finite-dimensional algebra M_4 + M_6; the largest "
             "unital matrix subalgebra is M_2, the gcd of the sizes",
        expected={
            "mu": {"value": {"2": 1}, "exactness": "certified"},
        },
    ),
    "cone-2-3-unit-2": CatalogEntry(
        name="cone-2-3-unit-2",
        kind="group",
        payload=CyclicOrderedGroup(generators=(2, 3), unit=2),
        note="integers ordered by the semigroup <2,3> with unit 2; "
             "coprime unit divisors compose, and only 1 divides the "
             "unit because the witness for 2 would have to be 1, which "
             "sits outside the cone",
        expected={
            "propd": {"holds": True},
            "maxsn": {},
        },
    ),
    "cone-2-3-unit-6": CatalogEntry(
        name="cone-2-3-unit-6",
        kind="group",
        payload=CyclicOrderedGroup(generators=(2, 3), unit=6),
        note="integers ordered by <2,3> with unit 6; 2 and 3 divide the "
             "unit but their product does not, since 1 is outside the cone",
        expected={
            "propd": {"holds": False, "counterexample": [2, 3]},
            "maxsn": None,
        },
    ),
    "free-product-2-3": CatalogEntry(
        name="free-product-2-3",
        kind="group",
        payload=CyclicOrderedGroup(generators=(2, 3), unit=6),
        note="K0 of the reduced free product of M_2 and M_3: the "
             "integers ordered by <2,3> with unit [1] = 6; no maximum "
             "supernatural divisor, hence no maximal UHF subalgebra",
        expected={
            "propd": {"holds": False, "counterexample": [2, 3]},
            "maxsn": None,
        },
    ),
    "quadratic-sqrt2": CatalogEntry(
        name="quadratic-sqrt2",
        kind="group",
        payload=QuadraticIrrationalGroup(
            h_number=SupernaturalNumber({2: OMEGA}),
            alpha_square=2,
            unit=QuadraticElement(Fraction(1), 0),
        ),
        note="the dyadic rationals plus sqrt(2)*Z with the real order "
             "and unit 1; an element lies in the rational subgroup of "
             "the unit exactly when its sqrt(2) part vanishes",
        expected={
            "propd": {"holds": True},
            "maxsn": {"2": "inf"},
        },
    ),
}


def catalog_names() -> list[str]:
    """Fixed entry names; uhf-<n> is additionally accepted for n >= 1."""
    return sorted(_FIXED_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    if name in _FIXED_ENTRIES:
        return _FIXED_ENTRIES[name]
    if name.startswith("uhf-"):
        suffix = name[len("uhf-"):]
        if suffix.isdigit() and int(suffix) >= 1:
            n = int(suffix)
            number = SupernaturalNumber.from_int(n)
            diagram = uhf_diagram(number, max(_stabilization_stage(number), 1))
            diagram = BratteliDiagram(diagram.levels, diagram.matrices, diagram.tail, name)
            return CatalogEntry(
                name=name,
                kind="diagram",
                payload=diagram,
                note="single-vertex diagram of the UHF algebra with "
                     "supernatural number %s" % number,
                expected={
                    "mu": {"value": number.to_data(), "exactness": "certified"},
                },
            )
    raise KeyError("unknown catalog entry %r" % (name,))


def _stabilization_stage(number: SupernaturalNumber) -> int:
    # smallest stage from which the uhf_diagram tail repeats
    stage = 1
    while True:
        if uhf_diagram(number, stage).tail == "repeat-last":
            return stage
        stage += 1


def diagram_entries() -> list[CatalogEntry]:
    """The built-in diagram entries plus a few uhf-<n> representatives."""
    names = [n for n in catalog_names() if _FIXED_ENTRIES[n].kind == "diagram"]
    entries = [_FIXED_ENTRIES[n] for n in names]
    entries.extend(get_entry("uhf-%d" % n) for n in (2, 6, 12, 30))
    return entries


def group_entries() -> list[CatalogEntry]:
    return [e for e in (_FIXED_ENTRIES[n] for n in catalog_names()) if e.kind == "group"]
