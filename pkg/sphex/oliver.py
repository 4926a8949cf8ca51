"""
Oliver group detection.

A finite group K is non-Oliver when it has subgroups P <= H <= K with P normal
in H, H normal in K, |P| and [K:H] prime powers (1 included) and H/P cyclic.
Otherwise K is an Oliver group. Verdicts for subgroups are computed inside
the ambient group's lattice: every subgroup of K is some conjugate of a class
of the lattice, so the chain search runs over the registered conjugates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional

from sphex.group import FiniteGroup, Subgroup, is_normal, make_subgroup, quotient
from sphex.lattice import SubgroupLattice, enumerate_subgroups
from sphex.utils import is_prime_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OliverVerdict:
    """Result of an Oliver test.

    Attributes:
        subject (Subgroup): The subgroup tested.
        is_oliver (bool): True when no chain exists.
        witness_p (Optional[Subgroup]): P of the chain when not Oliver.
        witness_h (Optional[Subgroup]): H of the chain when not Oliver.
        label (str): Lattice label of the subject.
        p_label (str): Lattice label of P, or "".
        h_label (str): Lattice label of H, or "".
    """

    subject: Subgroup
    is_oliver: bool
    witness_p: Optional[Subgroup] = None
    witness_h: Optional[Subgroup] = None
    label: str = ""
    p_label: str = ""
    h_label: str = ""

    def describe(self) -> str:
        if self.is_oliver:
            return "Oliver"
        if self.p_label == self.h_label == self.label:
            return f"non-Oliver, witness P=H={self.label}"
        return f"non-Oliver, witness P={self.p_label}, H={self.h_label}"


def _subgroups_inside(lattice: SubgroupLattice, members: FrozenSet[int]) -> List[FrozenSet[int]]:
    """Every subgroup contained in members, largest first."""
    inside = [
        conj
        for cls in lattice.classes
        if len(members) % cls.order == 0
        for conj in cls.conjugates
        if conj <= members
    ]
    inside.sort(key=lambda s: (-len(s), sorted(s)))
    return inside


def oliver_verdict(lattice: SubgroupLattice, subject: Subgroup) -> OliverVerdict:
    """Decide whether a subgroup of the lattice's group is an Oliver group.

    Chains are searched over H normal in the subject with prime-power index
    first, then over P normal in H of prime-power order, largest first. H/P is
    tested for cyclicity on the actual quotient.

    Args:
        lattice: Lattice of the ambient group.
        subject: The subgroup to test.

    Returns:
        OliverVerdict: The verdict, with a chain when the subject is not Oliver.
    """
    group = lattice.group
    label = lattice.identify_class(subject).label
    inside = _subgroups_inside(lattice, subject.member_set)
    for h_set in inside:
        if not is_prime_power(subject.order // len(h_set)):
            continue
        h = make_subgroup(group, h_set)
        if not is_normal(group, h, within=subject):
            continue
        for p_set in inside:
            if len(p_set) > len(h_set) or len(h_set) % len(p_set) or not p_set <= h_set:
                continue
            if not is_prime_power(len(p_set)):
                continue
            p = make_subgroup(group, p_set)
            if not is_normal(group, p, within=h):
                continue
            if quotient(group, p, within=h).is_cyclic():
                return OliverVerdict(
                    subject,
                    False,
                    p,
                    h,
                    label=label,
                    p_label=lattice.identify_class(p).label,
                    h_label=lattice.identify_class(h).label,
                )
    return OliverVerdict(subject, True, label=label)


def is_oliver(group: FiniteGroup, lattice: Optional[SubgroupLattice] = None) -> OliverVerdict:
    """Oliver verdict for a whole group.

    Raises:
        CapExceeded: If the group is too large for lattice enumeration.
    """
    if lattice is None:
        lattice = enumerate_subgroups(group)
    return oliver_verdict(lattice, group.whole)


def oliver_table(lattice: SubgroupLattice) -> Dict[int, OliverVerdict]:
    """Verdicts for the representative of every subgroup class."""
    verdicts = {cls.index: oliver_verdict(lattice, cls.representative) for cls in lattice.classes}
    logger.info(
        "Oliver classes: %s",
        ", ".join(lattice.classes[i].label for i, v in verdicts.items() if v.is_oliver) or "none",
    )
    return verdicts
