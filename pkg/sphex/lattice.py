"""
Subgroup lattice module for sphex.

This module enumerates all subgroups of a finite group up to conjugacy by
cyclic extension: starting from the cyclic subgroups, the representative of
every class found so far is joined with every cyclic subgroup until no new
class appears. A registry maps every conjugate (as a frozen set of element
ids) to its class, so identifying the class of a concrete subgroup is a
dictionary lookup.

Covering edges come from conjugate containment followed by a transitive
reduction. Classes are labelled by isomorphism type; repeated types get
suffixes _A, _B, ... ordered by the conjugacy classes their elements lie in.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from sphex.errors import CapExceeded, UnknownName
from sphex.group import FiniteGroup, QuotientGroup, Subgroup, make_subgroup
from sphex.isomorphism import Fingerprint, fingerprint, identify_label

logger = logging.getLogger(__name__)

DEFAULT_LATTICE_CAP = 2000

SubgroupLike = Union[Subgroup, Iterable[int]]


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups.

    Attributes:
        index (int): Position in the lattice, sorted by order.
        representative (Subgroup): The conjugate whose sorted ids are smallest.
        class_size (int): Number of conjugates.
        label (str): Isomorphism type, with a suffix when the type repeats.
        iso_fingerprint (Fingerprint): Invariants of the isomorphism type.
        is_normal (bool): Whether the class has a single member.
        conjugates (Tuple[FrozenSet[int], ...]): All conjugates.
    """

    index: int
    representative: Subgroup
    class_size: int
    label: str
    iso_fingerprint: Fingerprint
    is_normal: bool
    conjugates: Tuple[FrozenSet[int], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return self.representative.order


@dataclass(frozen=True)
class WitnessPair:
    """A concrete pair A, B' generating the group, with A a class representative."""

    first: FrozenSet[int]
    second: FrozenSet[int]
    intersection: FrozenSet[int]
    intersection_class: int


class SubgroupLattice:
    """All subgroups of a group up to conjugacy.

    Attributes:
        group (FiniteGroup): The group.
        classes (List[SubgroupClass]): Classes sorted by order.
        edges (List[Tuple[int, int]]): Covering pairs (lower, upper) of class
            indices.
    """

    def __init__(self, group: FiniteGroup, classes: List[SubgroupClass], edges: List[Tuple[int, int]]):
        self.group = group
        self.classes = classes
        self.edges = edges
        self._class_of: Dict[FrozenSet[int], int] = {
            conj: cls.index for cls in classes for conj in cls.conjugates
        }
        self._by_label = {cls.label: cls.index for cls in classes}
        self._contains: Dict[Tuple[int, int], bool] = {}
        self._witnesses: Dict[Tuple[int, int], List[WitnessPair]] = {}
        self._proper_normals = [
            cls.representative.member_set
            for cls in classes
            if cls.is_normal and cls.order < group.order
        ]

    def __repr__(self) -> str:
        return f"<SubgroupLattice of {self.group!r}: {len(self.classes)} classes>"

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def labels(self) -> List[str]:
        return [cls.label for cls in self.classes]

    @property
    def whole(self) -> SubgroupClass:
        return self.classes[-1]

    @property
    def trivial(self) -> SubgroupClass:
        return self.classes[0]

    def subgroup_count(self) -> int:
        return sum(cls.class_size for cls in self.classes)

    def normal_classes(self) -> List[SubgroupClass]:
        return [cls for cls in self.classes if cls.is_normal]

    def class_by_label(self, label: str) -> SubgroupClass:
        try:
            return self.classes[self._by_label[label]]
        except KeyError as exc:
            raise UnknownName(f"no subgroup class {label!r}; known: {self.labels}") from exc

    def identify_class(self, subgroup: SubgroupLike) -> SubgroupClass:
        """The class containing a concrete subgroup.

        Raises:
            ValueError: If the ids do not form a subgroup of the group.
        """
        key = _members(subgroup)
        try:
            return self.classes[self._class_of[key]]
        except KeyError as exc:
            raise ValueError("ids do not form a subgroup of the lattice's group") from exc

    def contains(self, lower: int, upper: int) -> bool:
        """Whether some conjugate of class lower lies inside the representative of upper."""
        key = (lower, upper)
        if key not in self._contains:
            low, high = self.classes[lower], self.classes[upper]
            if high.order % low.order:
                result = False
            else:
                target = high.representative.member_set
                result = any(conj <= target for conj in low.conjugates)
            self._contains[key] = result
        return self._contains[key]

    def generates(self, a: SubgroupLike, b: SubgroupLike) -> bool:
        """True iff the union of two concrete subgroups generates the group."""
        sa, sb = _members(a), _members(b)
        for normal in self._proper_normals:
            if sa <= normal and sb <= normal:
                return False
        seed = _generators(self.group, a) + _generators(self.group, b)
        closed = self.group.closure(seed, limit=self.group.order // 2)
        return closed is None or len(closed) == self.group.order

    def intersection_class(self, a: SubgroupLike, b: SubgroupLike) -> SubgroupClass:
        return self.identify_class(_members(a) & _members(b))

    def index_two_core(self) -> Subgroup:
        """Intersection of all subgroups of index at most 2."""
        members = set(range(self.group.order))
        for cls in self.classes:
            if 2 * cls.order >= self.group.order:
                for conj in cls.conjugates:
                    members &= conj
        return make_subgroup(self.group, members)

    def witness_pairs(self, a: int, b: int) -> List[WitnessPair]:
        """Conjugates B' of class b with <A, B'> = G, A the representative of a."""
        key = (a, b)
        if key not in self._witnesses:
            first = self.classes[a].representative
            pairs = []
            for conj in self.classes[b].conjugates:
                if self.generates(first, conj):
                    meet = first.member_set & conj
                    pairs.append(WitnessPair(first.member_set, conj, meet, self._class_of[meet]))
            self._witnesses[key] = pairs
        return self._witnesses[key]

    def witness_intersections(self, a: int, b: int) -> List[int]:
        """Distinct intersection classes over the witness pairs of (a, b)."""
        return sorted({w.intersection_class for w in self.witness_pairs(a, b)})

    def element_classes(self, index: int) -> Tuple[int, ...]:
        return _class_vector(self.group, self.classes[index].representative.members)

    def to_dict(self) -> Dict[str, Any]:
        """Lattice summary keyed by labels, for export and golden comparison."""
        return {
            "group": self.group.name,
            "order": self.group.order,
            "classes": [
                {
                    "label": cls.label,
                    "order": cls.order,
                    "class_size": cls.class_size,
                    "is_normal": cls.is_normal,
                }
                for cls in self.classes
            ],
            "edges": sorted(
                [self.classes[lo].label, self.classes[hi].label] for lo, hi in self.edges
            ),
        }


def _members(subgroup: SubgroupLike) -> FrozenSet[int]:
    if isinstance(subgroup, Subgroup):
        return subgroup.member_set
    return frozenset(subgroup)


def _generators(group: FiniteGroup, subgroup: SubgroupLike) -> List[int]:
    if isinstance(subgroup, Subgroup):
        return list(subgroup.generator_ids)
    return sorted(subgroup)


def _class_vector(group: FiniteGroup, members: Iterable[int]) -> Tuple[int, ...]:
    class_of = group.class_of
    return tuple(sorted(class_of[m] for m in members))


def conjugacy_orbit(group: FiniteGroup, members: FrozenSet[int]) -> List[FrozenSet[int]]:
    """All conjugates of a subgroup, by orbit search under generator conjugation."""
    maps = group.generator_conjugations
    orbit = [members]
    seen = {members}
    head = 0
    while head < len(orbit):
        current = orbit[head]
        head += 1
        for cmap in maps:
            image = frozenset(cmap[h] for h in current)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return orbit


def cyclic_subgroups(group: FiniteGroup) -> List[Tuple[int, FrozenSet[int]]]:
    """Distinct cyclic subgroups with one generator each, by generator id."""
    seen: Dict[FrozenSet[int], int] = {}
    for x in range(group.order):
        closed = group.closure([x])
        assert closed is not None
        seen.setdefault(closed, x)
    return sorted(((g, s) for s, g in seen.items()), key=lambda item: item[0])


def label_classes(
    group: FiniteGroup, raw: List[Tuple[FrozenSet[int], List[FrozenSet[int]]]]
) -> List[SubgroupClass]:
    """Sort (representative, orbit) pairs into indexed, labelled classes."""
    entries = []
    for rep_set, orbit in raw:
        rep = make_subgroup(group, rep_set)
        sub = rep.as_group()
        fp = fingerprint(sub)
        base = identify_label(sub) or f"[{rep.order},?]"
        entries.append((rep, orbit, fp, base, _class_vector(group, rep.members)))
    entries.sort(key=lambda e: (e[0].order, e[4], e[0].members))
    counts: Dict[str, int] = {}
    for e in entries:
        counts[e[3]] = counts.get(e[3], 0) + 1
    used: Dict[str, int] = {}
    classes = []
    for idx, (rep, orbit, fp, base, _) in enumerate(entries):
        if counts[base] > 1:
            label = f"{base}_{string.ascii_uppercase[used.get(base, 0)]}"
            used[base] = used.get(base, 0) + 1
        else:
            label = base
        classes.append(
            SubgroupClass(
                index=idx,
                representative=rep,
                class_size=len(orbit),
                label=label,
                iso_fingerprint=fp,
                is_normal=len(orbit) == 1,
                conjugates=tuple(sorted(orbit, key=lambda s: sorted(s))),
            )
        )
    return classes


def covering_edges(classes: Sequence[SubgroupClass]) -> List[Tuple[int, int]]:
    """Transitive reduction of conjugate containment between classes."""
    graph = nx.DiGraph()
    graph.add_nodes_from(cls.index for cls in classes)
    for low in classes:
        for high in classes:
            if low.order >= high.order or high.order % low.order:
                continue
            target = high.representative.member_set
            if any(conj <= target for conj in low.conjugates):
                graph.add_edge(low.index, high.index)
    reduced = nx.transitive_reduction(graph)
    return sorted(reduced.edges())


def enumerate_subgroups(group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """All subgroups of group up to conjugacy.

    Args:
        group: The group.
        cap: Largest group order accepted.

    Returns:
        SubgroupLattice: Classes, labels and covering edges.

    Raises:
        CapExceeded: If the group order exceeds cap.
    """
    if group.order > cap:
        raise CapExceeded(f"lattice enumeration limited to order {cap}, got {group.order}")
    cyclics = cyclic_subgroups(group)
    registry: Dict[FrozenSet[int], int] = {}
    raw: List[Tuple[FrozenSet[int], List[FrozenSet[int]]]] = []

    def register(members: FrozenSet[int]) -> bool:
        if members in registry:
            return False
        orbit = conjugacy_orbit(group, members)
        rep = min(orbit, key=lambda s: sorted(s))
        for conj in orbit:
            registry[conj] = len(raw)
        raw.append((rep, orbit))
        return True

    register(frozenset({group.identity}))
    for _, members in cyclics:
        register(members)
    head = 0
    while head < len(raw):
        rep, _ = raw[head]
        head += 1
        rep_gens = list(make_subgroup(group, rep).generator_ids)
        for g, members in cyclics:
            if g in rep or members <= rep:
                continue
            joined = group.closure(rep_gens + [g])
            assert joined is not None
            register(joined)
    classes = label_classes(group, raw)
    edges = covering_edges(classes)
    lattice = SubgroupLattice(group, classes, edges)
    logger.info(
        "lattice of %s: %d classes, %d subgroups, %d covering edges",
        group.name or f"group of order {group.order}",
        len(classes),
        lattice.subgroup_count(),
        len(edges),
    )
    return lattice


def lift_subgroup(quotient: QuotientGroup, iso: Dict[int, int], subgroup: Subgroup) -> Subgroup:
    """Preimage in the parent of a subgroup given through an isomorphism.

    Args:
        quotient: The quotient G/N.
        iso: Map from ids of subgroup's parent to ids of quotient.as_group.
        subgroup: Subgroup of the group iso is defined on.

    Returns:
        Subgroup: pi^-1 of the image, a subgroup of G containing N.
    """
    cosets = [quotient.coset_index(iso[x]) for x in subgroup.members]
    return quotient.preimage(cosets)


def find_class(
    lattice: SubgroupLattice, label: Optional[str] = None, order: Optional[int] = None
) -> List[SubgroupClass]:
    """Classes matching a label prefix and/or an order."""
    found = []
    for cls in lattice.classes:
        if label is not None and not (cls.label == label or cls.label.startswith(label + "_")):
            continue
        if order is not None and cls.order != order:
            continue
        found.append(cls)
    return found
