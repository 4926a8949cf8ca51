"""
Unit tests for the fixture group builders.
"""

from typing import Dict

import pytest

from sphex.errors import CapExceeded, UnknownName
from sphex.fixtures import (
    CATALOG,
    FiniteField,
    binary_octahedral,
    catalog_group,
    dicyclic_group,
    fixture_group,
    group_from_operation,
    matrix,
    matrix_mul,
    sl25c2_generators,
)
from sphex.group import FiniteGroup, center, element_order_histogram

CATALOG_ORDERS: Dict[str, int] = {
    "C2": 2,
    "C3": 3,
    "C4": 4,
    "C2^2": 4,
    "C5": 5,
    "C6": 6,
    "S3": 6,
    "C8": 8,
    "D8": 8,
    "Q8": 8,
    "C10": 10,
    "D10": 10,
    "C12": 12,
    "[12,1]": 12,
    "A4": 12,
    "D12": 12,
    "Q16": 16,
    "[20,1]": 20,
    "F5": 20,
    "S4": 24,
    "SL(2,3)": 24,
    "[24,4]": 24,
    "C5:C8": 40,
    "[48,28]": 48,
    "A5": 60,
    "S5": 120,
    "SL(2,5)": 120,
    "SL(2,5).C2": 240,
}


def test_catalog_covers_expected_labels() -> None:
    assert set(CATALOG) == set(CATALOG_ORDERS)


@pytest.mark.parametrize("label", [k for k, v in CATALOG_ORDERS.items() if v < 240])
def test_catalog_orders(label: str) -> None:
    assert catalog_group(label).order == CATALOG_ORDERS[label]


def test_unknown_catalog_label() -> None:
    with pytest.raises(UnknownName):
        catalog_group("C7")
    with pytest.raises(UnknownName):
        fixture_group("nope")


def test_field_with_25_elements() -> None:
    field = FiniteField(5, nonresidue=2)
    i = field.element(0, 1)
    assert field.mul(i, i) == (2, 0)
    assert field.mul(field.element(3), field.element(4)) == (2, 0)
    assert field.add(i, field.element(4, 4)) == (4, 0)


def test_matrix_product() -> None:
    field = FiniteField(5)
    s = matrix(field, [[0, -1], [1, 0]])
    minus_one = matrix(field, [[-1, 0], [0, -1]])
    assert matrix_mul(field, s, s) == minus_one


def test_dicyclic_groups_have_one_involution() -> None:
    for n in (2, 3, 4, 5, 6):
        group = dicyclic_group(n)
        assert group.order == 4 * n
        assert element_order_histogram(group.whole)[2] == 1


def test_binary_octahedral() -> None:
    group = binary_octahedral()
    assert group.order == 48
    histogram = element_order_histogram(group.whole)
    assert histogram[2] == 1
    assert max(histogram) == 8


def test_fixture_group_is_non_split(fixture_group: FiniteGroup) -> None:
    histogram = element_order_histogram(fixture_group.whole)
    assert histogram[2] == 1
    assert histogram == {1: 1, 2: 1, 3: 20, 4: 50, 5: 24, 6: 20, 8: 60, 10: 24, 12: 40}
    assert center(fixture_group).order == 2


def test_fixture_twist_lies_in_sl2_25() -> None:
    field, gens = sl25c2_generators()
    t = gens[2]
    a, b, c, d = t
    det = field.add(field.mul(a, d), field.mul(field.element(-1), field.mul(b, c)))
    assert det == (1, 0)
    assert a[1] != 0
    assert matrix_mul(field, t, t) == matrix(field, [[2, 0], [0, 3]])


def test_group_from_operation_cap() -> None:
    with pytest.raises(CapExceeded):
        group_from_operation([1], lambda x, y: (x + y) % 50, cap=10)
