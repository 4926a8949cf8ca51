"""
Unit tests for subgroup lattices.
"""

import json
import unittest
from pathlib import Path
from typing import Callable

import pytest

from sphex.errors import CapExceeded, UnknownName
from sphex.fixtures import alternating_group, dicyclic_group, dihedral_group, sl2, symmetric_group
from sphex.group import FiniteGroup, Subgroup, center, quotient, subgroup_closure
from sphex.isomorphism import find_isomorphism, identify_label
from sphex.lattice import SubgroupLattice, conjugacy_orbit, enumerate_subgroups, find_class, lift_subgroup
from sphex.permutation import Permutation

TEST_DATA_DIR = Path(__file__).resolve().parent / "data"

S5_LABELS = {
    "trivial", "C2_A", "C2_B", "C3", "C2^2_A", "C2^2_B", "C4", "C5", "C6", "S3_A",
    "S3_B", "D8", "D10", "A4", "D12", "F5", "S4", "A5", "S5",
}


def _golden() -> dict:
    with open(TEST_DATA_DIR / "sl25c2_lattice.json", "r", encoding="utf-8") as f:
        return json.load(f)


def _all_subgroups_by_pairs(group: FiniteGroup) -> set:
    found = set()
    for x in range(group.order):
        for y in range(x, group.order):
            closed = group.closure([x, y])
            found.add(closed)
    return found


def _orbits(group: FiniteGroup, subgroups: set) -> set:
    return {frozenset(conjugacy_orbit(group, members)) for members in subgroups}


# Groups all of whose subgroups are generated by two elements.
@pytest.mark.parametrize(
    "build",
    [lambda: dicyclic_group(4), lambda: dicyclic_group(6), lambda: sl2(3), lambda: dihedral_group(4)],
    ids=["Q16", "[24,4]", "SL(2,3)", "D8"],
)
def test_lattice_against_two_generated_closures(build: Callable[[], FiniteGroup]) -> None:
    group = build()
    lattice = enumerate_subgroups(group)
    found = _all_subgroups_by_pairs(group)
    conjugates = {conj for cls in lattice.classes for conj in cls.conjugates}
    assert conjugates == found
    assert lattice.subgroup_count() == len(found)
    assert len(lattice) == len(_orbits(group, found))
    assert {frozenset(cls.conjugates) for cls in lattice.classes} == _orbits(group, found)


class TestSmallLattices(unittest.TestCase):
    def test_subgroup_counts(self) -> None:
        cases = [
            (symmetric_group(4), 11, 30),
            (alternating_group(4), 5, 10),
            (dihedral_group(4), 8, 10),
            (dicyclic_group(2), 6, 6),
        ]
        for group, classes, subgroups in cases:
            lattice = enumerate_subgroups(group)
            self.assertEqual(len(lattice), classes, group.name)
            self.assertEqual(lattice.subgroup_count(), subgroups, group.name)

    def test_s4_against_two_generated_closures(self) -> None:
        # Every subgroup of S4 is generated by two elements.
        group = symmetric_group(4)
        lattice = enumerate_subgroups(group)
        conjugates = {conj for cls in lattice.classes for conj in cls.conjugates}
        self.assertEqual(conjugates, _all_subgroups_by_pairs(group))

    def test_s4_labels(self) -> None:
        lattice = enumerate_subgroups(symmetric_group(4))
        self.assertEqual(
            set(lattice.labels),
            {"trivial", "C2_A", "C2_B", "C3", "C2^2_A", "C2^2_B", "C4", "S3", "D8", "A4", "S4"},
        )
        self.assertEqual([c.label for c in lattice.normal_classes()], ["trivial", "C2^2_A", "A4", "S4"])

    def test_cap(self) -> None:
        with self.assertRaises(CapExceeded):
            enumerate_subgroups(symmetric_group(4), cap=12)


def test_s5_lattice(s5_lattice: SubgroupLattice) -> None:
    assert len(s5_lattice) == 19
    assert set(s5_lattice.labels) == S5_LABELS
    assert s5_lattice.subgroup_count() == 156
    assert [c.label for c in s5_lattice.normal_classes()] == ["trivial", "A5", "S5"]
    assert s5_lattice.class_by_label("C2_A").class_size == 10
    assert s5_lattice.class_by_label("C2_B").class_size == 15
    assert s5_lattice.class_by_label("S4").class_size == 5
    assert s5_lattice.identify_class(s5_lattice.index_two_core()).label == "A5"


def test_fixture_classes_match_golden(fixture_lattice: SubgroupLattice) -> None:
    golden = _golden()
    assert len(fixture_lattice) == 22
    assert set(fixture_lattice.labels) == set(golden["labels"])
    assert [c.label for c in fixture_lattice.normal_classes()] == golden["normal"]
    orders = [c.order for c in fixture_lattice.classes]
    assert orders == sorted(orders)


def test_fixture_edges_match_golden(fixture_lattice: SubgroupLattice) -> None:
    golden = _golden()
    edges = {tuple(edge) for edge in fixture_lattice.to_dict()["edges"]}
    assert edges == {tuple(edge) for edge in golden["edges"]}


def test_fixture_class_sizes(fixture_lattice: SubgroupLattice) -> None:
    sizes = {c.label: c.class_size for c in fixture_lattice.classes}
    assert sizes["C3"] == 10
    assert sizes["C4_A"] == 10
    assert sizes["C4_B"] == 15
    assert sizes["C5"] == 6
    assert sizes["Q16"] == 15
    assert sizes["SL(2,5)"] == 1


def test_key_classes(fixture_lattice: SubgroupLattice) -> None:
    lattice = fixture_lattice
    index = {c.label: c.index for c in lattice.classes}
    # Q8_A is the only class of order 8 above C4_A.
    above = [c.label for c in find_class(lattice, order=8) if lattice.contains(index["C4_A"], c.index)]
    assert above == ["Q8_A"]
    assert [c.label for c in find_class(lattice, order=16)] == ["Q16"]
    assert [c.label for c in find_class(lattice, label="C4")] == ["C4_A", "C4_B"]
    # SL(2,3) lies in SL(2,5), so its cyclic subgroups of order 4 are C4_B.
    assert lattice.contains(index["C4_B"], index["SL(2,3)"])
    assert not lattice.contains(index["C4_A"], index["SL(2,3)"])
    assert lattice.contains(index["Q8_A"], index["[24,4]"])
    assert lattice.identify_class(lattice.index_two_core()).label == "SL(2,5)"


def test_q16_and_dic6_generate_around_q8a(fixture_lattice: SubgroupLattice) -> None:
    lattice = fixture_lattice
    q16 = lattice.class_by_label("Q16").index
    dic6 = lattice.class_by_label("[24,4]").index
    pairs = lattice.witness_pairs(q16, dic6)
    assert pairs
    for pair in pairs:
        assert lattice.generates(pair.first, pair.second)
    assert lattice.class_by_label("Q8_A").index in lattice.witness_intersections(q16, dic6)


def test_proper_normal_subgroups_do_not_generate(fixture_lattice: SubgroupLattice) -> None:
    sl25 = fixture_lattice.class_by_label("SL(2,5)").representative
    q8b = fixture_lattice.class_by_label("Q8_B").representative
    assert not fixture_lattice.generates(sl25, q8b)


def test_identify_class(fixture_group: FiniteGroup, fixture_lattice: SubgroupLattice) -> None:
    z = center(fixture_group)
    assert fixture_lattice.identify_class(z).label == "C2"
    for cls in fixture_lattice.classes:
        for conj in cls.conjugates[:3]:
            assert fixture_lattice.identify_class(conj).index == cls.index
    with pytest.raises(ValueError):
        fixture_lattice.identify_class(frozenset(range(7)))
    with pytest.raises(UnknownName):
        fixture_lattice.class_by_label("Q32")


def test_quotient_by_center_has_s5_lattice_size(fixture_group: FiniteGroup) -> None:
    q = quotient(fixture_group, center(fixture_group)).as_group
    assert len(enumerate_subgroups(q)) == 19


def test_lifts_from_s5(fixture_group: FiniteGroup, fixture_lattice: SubgroupLattice) -> None:
    s5 = symmetric_group(5)
    q = quotient(fixture_group, center(fixture_group))
    iso = find_isomorphism(s5, q.as_group)
    assert iso is not None

    def sub(*cycles: str) -> Subgroup:
        return subgroup_closure(s5, [s5.index_of(Permutation.parse(c, 5)) for c in cycles])

    k1 = sub("(1 3)", "(2 5)")
    k2 = sub("(1 2 3 4)", "(1 3)")
    low = sub("(1 3)")
    assert identify_label(k2.as_group()) == "D8"
    assert k1.member_set & k2.member_set == low.member_set
    lifted_k1 = lift_subgroup(q, iso, k1)
    lifted_k2 = lift_subgroup(q, iso, k2)
    assert fixture_lattice.identify_class(lifted_k1).label == "Q8_A"
    assert fixture_lattice.identify_class(lifted_k2).label == "Q16"
    assert fixture_lattice.identify_class(lift_subgroup(q, iso, low)).label == "C4_A"
    assert fixture_lattice.generates(lifted_k1, lifted_k2)
