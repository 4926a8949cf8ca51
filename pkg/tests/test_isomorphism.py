"""
Unit tests for fingerprints, isomorphism search and catalog labels.
"""

import unittest

import pytest

from sphex.errors import SizeLimit
from sphex.fixtures import (
    CATALOG,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    klein_four_group,
    quaternion_group,
    sl2,
    symmetric_group,
    trivial_group,
)
from sphex.isomorphism import (
    LABEL_ISOMORPHISM_LIMIT,
    find_isomorphism,
    fingerprint,
    identify_label,
    is_isomorphic,
)
from sphex.permutation import Permutation
from sphex.group import generate_group


class TestIsomorphism(unittest.TestCase):
    def test_same_group_different_generators(self) -> None:
        other = generate_group(
            [Permutation.parse("(1 2 3)", 3), Permutation.parse("(2 3)", 3)], name="S3'"
        )
        phi = find_isomorphism(dihedral_group(3), other)
        self.assertIsNotNone(phi)
        assert phi is not None
        a = dihedral_group(3)
        for x in range(a.order):
            for y in range(a.order):
                self.assertEqual(phi[a.mul(x, y)], other.mul(phi[x], phi[y]))

    def test_quaternion_is_not_dihedral(self) -> None:
        self.assertNotEqual(fingerprint(dicyclic_group(2)), fingerprint(dihedral_group(4)))
        self.assertFalse(is_isomorphic(dicyclic_group(2), dihedral_group(4)))

    def test_c4_is_not_klein(self) -> None:
        self.assertFalse(is_isomorphic(cyclic_group(4), klein_four_group()))

    def test_sl23_is_not_s4(self) -> None:
        self.assertFalse(is_isomorphic(sl2(3), symmetric_group(4)))

    def test_fingerprint_fields(self) -> None:
        fp = fingerprint(alternating_group(4))
        self.assertEqual(fp.order, 12)
        self.assertFalse(fp.abelian)
        self.assertEqual(fp.class_sizes, (1, 3, 4, 4))
        self.assertEqual(fp.order_histogram, ((1, 1), (2, 3), (3, 8)))
        self.assertEqual(fp.derived_orders, (12, 4, 1))


def test_identify_catalog_labels() -> None:
    assert identify_label(trivial_group()) == "trivial"
    assert identify_label(symmetric_group(3)) == "S3"
    assert identify_label(dicyclic_group(3)) == "[12,1]"
    assert identify_label(sl2(3)) == "SL(2,3)"
    assert identify_label(alternating_group(5)) == "A5"
    assert identify_label(cyclic_group(7)) is None


def test_large_isomorphism_search_is_refused() -> None:
    a = symmetric_group(6)
    b = generate_group(
        [Permutation.parse("(1 2 3 4 5 6)", 6), Permutation.parse("(1 2)", 6)], name="S6'"
    )
    with pytest.raises(SizeLimit):
        is_isomorphic(a, b)


def test_isomorphism_is_an_equivalence_on_the_catalog() -> None:
    groups = [build() for build in CATALOG.values()]
    groups = [g for g in groups if g.order <= LABEL_ISOMORPHISM_LIMIT]
    # Second presentations of catalog groups, so some classes have two members.
    groups += [
        dihedral_group(3),
        quaternion_group(8),
        dihedral_group(2),
        generate_group([Permutation.parse("(1 2 3 4)", 4), Permutation.parse("(1 3)", 4)], name="D8'"),
    ]
    iso = [[is_isomorphic(a, b) for b in groups] for a in groups]
    size = len(groups)
    for i in range(size):
        assert iso[i][i], groups[i].name
        for j in range(size):
            assert iso[i][j] == iso[j][i], (groups[i].name, groups[j].name)
            if not iso[i][j]:
                continue
            for k in range(size):
                if iso[j][k]:
                    assert iso[i][k], (groups[i].name, groups[j].name, groups[k].name)
    assert sum(map(sum, iso)) == size + 2 * 4
