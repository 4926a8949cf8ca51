"""
Unit tests for the lattice disk cache.
"""

import json
from pathlib import Path

import pytest

from sphex.cache import cached_lattice, check_lattice, lattice_key, load_cached_lattice, store_lattice
from sphex.errors import CacheCorrupt
from sphex.fixtures import symmetric_group
from sphex.group import FiniteGroup
from sphex.lattice import SubgroupLattice, enumerate_subgroups
from sphex.serializer import deserialize_lattice, serialize_lattice


@pytest.fixture
def s4() -> FiniteGroup:
    return symmetric_group(4)


def _entry(group: FiniteGroup, cache_dir: Path) -> Path:
    return cache_dir / f"lattice-{lattice_key(group)}.json"


def _same(a: SubgroupLattice, b: SubgroupLattice) -> bool:
    return a.labels == b.labels and list(a.edges) == list(b.edges)


def test_key_depends_on_cap(s4: FiniteGroup) -> None:
    assert lattice_key(s4) == lattice_key(symmetric_group(4))
    assert lattice_key(s4, cap=100) != lattice_key(s4, cap=200)
    assert lattice_key(s4) != lattice_key(symmetric_group(5))


def test_round_trip(s4: FiniteGroup, tmp_path: Path) -> None:
    assert load_cached_lattice(s4, tmp_path) is None
    lattice = enumerate_subgroups(s4)
    path = store_lattice(lattice, tmp_path)
    assert path == _entry(s4, tmp_path)
    loaded = load_cached_lattice(s4, tmp_path)
    assert loaded is not None
    assert _same(loaded, lattice)
    assert [c.class_size for c in loaded.classes] == [c.class_size for c in lattice.classes]


def test_cached_lattice_writes_then_reads(s4: FiniteGroup, tmp_path: Path) -> None:
    first = cached_lattice(s4, tmp_path)
    assert _entry(s4, tmp_path).is_file()
    second = cached_lattice(s4, tmp_path)
    assert _same(first, second)


def test_cache_disabled(s4: FiniteGroup) -> None:
    assert len(cached_lattice(s4, None)) == 11


def test_check_rejects_wrong_class_size(s4: FiniteGroup) -> None:
    data = serialize_lattice(enumerate_subgroups(s4))
    data["classes"][1]["class_size"] += 1
    with pytest.raises(CacheCorrupt):
        check_lattice(deserialize_lattice(s4, data))


def test_check_rejects_non_subgroup(s4: FiniteGroup) -> None:
    data = serialize_lattice(enumerate_subgroups(s4))
    order_two = next(i for i, c in enumerate(data["classes"]) if len(c["conjugates"][0]) == 2)
    data["classes"][order_two]["conjugates"][0] = [0, 1, 2]
    with pytest.raises(CacheCorrupt):
        check_lattice(deserialize_lattice(s4, data))


def test_corrupt_entry_is_recomputed(s4: FiniteGroup, tmp_path: Path) -> None:
    path = store_lattice(enumerate_subgroups(s4), tmp_path)
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    data["classes"][-1]["is_normal"] = False
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f)
    with pytest.raises(CacheCorrupt):
        load_cached_lattice(s4, tmp_path)
    lattice = cached_lattice(s4, tmp_path)
    assert len(lattice) == 11
    # The entry is rewritten with the recomputed lattice.
    reloaded = load_cached_lattice(s4, tmp_path)
    assert reloaded is not None and _same(reloaded, lattice)


def test_unreadable_entry(s4: FiniteGroup, tmp_path: Path) -> None:
    _entry(s4, tmp_path).write_text("{not json", encoding="utf-8")
    with pytest.raises(CacheCorrupt):
        load_cached_lattice(s4, tmp_path)
    assert len(cached_lattice(s4, tmp_path)) == 11


def test_entry_for_another_group(s4: FiniteGroup, tmp_path: Path) -> None:
    s5 = symmetric_group(5)
    data = serialize_lattice(enumerate_subgroups(s4))
    _entry(s5, tmp_path).write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(CacheCorrupt):
        load_cached_lattice(s5, tmp_path)


def _swap_labels(data: dict, first: str, second: str) -> None:
    by_label = {c["label"]: c for c in data["classes"]}
    by_label[first]["label"], by_label[second]["label"] = second, first


def test_check_accepts_fresh_lattice(s4: FiniteGroup) -> None:
    lattice = enumerate_subgroups(s4)
    check_lattice(deserialize_lattice(s4, serialize_lattice(lattice)))


def test_check_rejects_swapped_labels(s4: FiniteGroup) -> None:
    data = serialize_lattice(enumerate_subgroups(s4))
    sizes = [len(c["conjugates"][0]) for c in data["classes"]]
    first = sizes.index(2)
    second = sizes.index(2, first + 1)
    _swap_labels(data, data["classes"][first]["label"], data["classes"][second]["label"])
    with pytest.raises(CacheCorrupt):
        check_lattice(deserialize_lattice(s4, data))


def test_check_rejects_swapped_quaternion_labels(
    fixture_group: FiniteGroup, fixture_lattice: SubgroupLattice
) -> None:
    data = serialize_lattice(fixture_lattice)
    _swap_labels(data, "Q8_A", "Q8_B")
    with pytest.raises(CacheCorrupt, match="Q8_"):
        check_lattice(deserialize_lattice(fixture_group, data))


def test_check_rejects_reordered_classes(s4: FiniteGroup) -> None:
    data = serialize_lattice(enumerate_subgroups(s4))
    data["classes"][1], data["classes"][2] = data["classes"][2], data["classes"][1]
    with pytest.raises(CacheCorrupt):
        check_lattice(deserialize_lattice(s4, data))


@pytest.mark.parametrize("tamper", ["drop", "add"])
def test_check_rejects_tampered_edges(s4: FiniteGroup, tamper: str) -> None:
    data = serialize_lattice(enumerate_subgroups(s4))
    if tamper == "drop":
        data["edges"].pop()
    else:
        data["edges"].append([0, len(data["classes"]) - 1])
    with pytest.raises(CacheCorrupt, match="covering edges"):
        check_lattice(deserialize_lattice(s4, data))


def test_swapped_labels_are_recomputed(s4: FiniteGroup, tmp_path: Path) -> None:
    lattice = enumerate_subgroups(s4)
    data = serialize_lattice(lattice)
    sizes = [len(c["conjugates"][0]) for c in data["classes"]]
    first = sizes.index(2)
    second = sizes.index(2, first + 1)
    _swap_labels(data, data["classes"][first]["label"], data["classes"][second]["label"])
    _entry(s4, tmp_path).write_text(json.dumps(data), encoding="utf-8")
    again = cached_lattice(s4, tmp_path)
    assert _same(again, lattice)
