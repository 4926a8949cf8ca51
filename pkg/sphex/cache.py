"""
Disk cache for subgroup lattices.

Entries are keyed by the sha256 of the group's generators, the lattice cap and
the package version. The cache is advisory: every entry is checked against the
group on load and recomputed when the check fails.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Optional

from sphex import __version__
from sphex.errors import CacheCorrupt
from sphex.group import FiniteGroup, format_group_file
from sphex.isomorphism import fingerprint
from sphex.lattice import (
    DEFAULT_LATTICE_CAP,
    SubgroupLattice,
    conjugacy_orbit,
    covering_edges,
    enumerate_subgroups,
    label_classes,
)
from sphex.serializer import deserialize_lattice, serialize_lattice

logger = logging.getLogger(__name__)


def lattice_key(group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> str:
    text = format_group_file(group.degree, group.generators)
    payload = f"sphex {__version__}\ncap {cap}\n{text}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def check_lattice(lattice: SubgroupLattice) -> None:
    """Check a deserialized lattice against its group.

    Every conjugate must be closed, each class must be a full conjugacy orbit
    with the recorded size and fingerprint, and the classes must account for
    distinct subgroups including the trivial and the whole group. Labels,
    class order and covering edges are recomputed from the checked classes
    and must match the stored ones.

    Raises:
        CacheCorrupt: On the first failed check.
    """
    group = lattice.group
    seen = set()
    for cls in lattice.classes:
        rep = cls.representative.member_set
        if group.closure(sorted(rep)) != rep:
            raise CacheCorrupt(f"class {cls.label}: representative is not a subgroup")
        orbit = set(conjugacy_orbit(group, rep))
        if orbit != set(cls.conjugates) or len(orbit) != cls.class_size:
            raise CacheCorrupt(f"class {cls.label}: stored conjugates are not an orbit")
        if cls.is_normal != (cls.class_size == 1):
            raise CacheCorrupt(f"class {cls.label}: normality flag disagrees with class size")
        if fingerprint(cls.representative.as_group()) != cls.iso_fingerprint:
            raise CacheCorrupt(f"class {cls.label}: fingerprint mismatch")
        if orbit & seen:
            raise CacheCorrupt(f"class {cls.label} repeats an earlier class")
        seen |= orbit
    if lattice.trivial.order != 1 or lattice.whole.order != group.order:
        raise CacheCorrupt("lattice does not start at 1 and end at the group")
    relabelled = label_classes(
        group, [(cls.representative.member_set, list(cls.conjugates)) for cls in lattice.classes]
    )
    for stored, fresh in zip(lattice.classes, relabelled):
        if stored.label != fresh.label or stored.representative.members != fresh.representative.members:
            raise CacheCorrupt(
                f"class {stored.index}: stored as {stored.label}, recomputed as {fresh.label}"
            )
    if sorted(tuple(edge) for edge in lattice.edges) != covering_edges(relabelled):
        raise CacheCorrupt("stored covering edges differ from the recomputed ones")


def load_cached_lattice(
    group: FiniteGroup, cache_dir: Path, cap: int = DEFAULT_LATTICE_CAP
) -> Optional[SubgroupLattice]:
    """Load and check a cached lattice, or return None when absent.

    Raises:
        CacheCorrupt: If an entry exists but does not describe the group.
    """
    path = cache_dir / f"lattice-{lattice_key(group, cap)}.json"
    if not path.is_file():
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            lattice = deserialize_lattice(group, json.load(f))
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        raise CacheCorrupt(f"unreadable cache entry {path.name}: {exc}") from exc
    check_lattice(lattice)
    return lattice


def store_lattice(lattice: SubgroupLattice, cache_dir: Path, cap: int = DEFAULT_LATTICE_CAP) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"lattice-{lattice_key(lattice.group, cap)}.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(serialize_lattice(lattice), f)
    return path


def cached_lattice(
    group: FiniteGroup, cache_dir: Optional[Path], cap: int = DEFAULT_LATTICE_CAP
) -> SubgroupLattice:
    """Lattice of group, through the cache when cache_dir is set."""
    if cache_dir is None:
        return enumerate_subgroups(group, cap)
    try:
        lattice = load_cached_lattice(group, cache_dir, cap)
    except CacheCorrupt as exc:
        logger.warning("discarding cache entry: %s", exc)
        lattice = None
    if lattice is not None:
        logger.debug("lattice of %s loaded from %s", group.name, cache_dir)
        return lattice
    lattice = enumerate_subgroups(group, cap)
    try:
        store_lattice(lattice, cache_dir, cap)
    except OSError as exc:
        logger.warning("could not write lattice cache: %s", exc)
    return lattice
