"""
Isomorphism testing for small groups.

Groups are first compared by a cheap invariant fingerprint. Only when the
fingerprints agree is an explicit isomorphism searched for, by backtracking
over images of a small generating set.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sphex.errors import SizeLimit
from sphex.fixtures import CATALOG, catalog_group
from sphex.group import FiniteGroup, derived_series, small_generating_set

logger = logging.getLogger(__name__)

BACKTRACK_LIMIT = 256
# Catalog labels above this order are assigned on fingerprint agreement alone.
LABEL_ISOMORPHISM_LIMIT = 48


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian: bool
    class_sizes: Tuple[int, ...]
    order_histogram: Tuple[Tuple[int, int], ...]
    derived_orders: Tuple[int, ...]


def fingerprint(group: FiniteGroup) -> Fingerprint:
    histogram: Dict[int, int] = {}
    for k in group.element_orders:
        histogram[k] = histogram.get(k, 0) + 1
    return Fingerprint(
        order=group.order,
        abelian=group.is_abelian(),
        class_sizes=tuple(sorted(c.size for c in group.classes)),
        order_histogram=tuple(sorted(histogram.items())),
        derived_orders=tuple(s.order for s in derived_series(group)),
    )


def _extend(
    a: FiniteGroup, b: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> Optional[Dict[int, int]]:
    """Extend gens -> images to a homomorphism on <gens>, or None if impossible.

    Every edge x -> x*g of the generated subgroup is checked, so a returned map
    is an injective homomorphism.
    """
    phi = {a.identity: b.identity}
    queue = [a.identity]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        row = a.row(x)
        fx = phi[x]
        for g, h in zip(gens, images):
            y = row[g]
            target = b.mul(fx, h)
            known = phi.get(y)
            if known is None:
                phi[y] = target
                queue.append(y)
            elif known != target:
                return None
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> Optional[Dict[int, int]]:
    """Return an isomorphism a -> b as an id map, or None.

    Raises:
        SizeLimit: If the fingerprints agree and the groups are larger than
            BACKTRACK_LIMIT.
    """
    if fingerprint(a) != fingerprint(b):
        return None
    if a.order > BACKTRACK_LIMIT:
        raise SizeLimit(f"isomorphism search limited to order {BACKTRACK_LIMIT}")
    gens = small_generating_set(a, range(a.order))
    if not gens:
        return {a.identity: b.identity}
    a_classes = a.class_of
    a_sizes = [c.size for c in a.classes]
    b_sizes = [c.size for c in b.classes]
    candidates: List[List[int]] = []
    for i, g in enumerate(gens):
        key = (a.element_order(g), a_sizes[a_classes[g]])
        if i == 0:
            # Up to inner automorphisms of b the first image is a class representative.
            pool = [c.representative for c in b.classes if (c.order_of_rep, c.size) == key]
        else:
            pool = [
                y
                for y in range(b.order)
                if (b.element_order(y), b_sizes[b.class_of[y]]) == key
            ]
        candidates.append(pool)

    chosen: List[int] = []

    def search(depth: int) -> Optional[Dict[int, int]]:
        if depth == len(gens):
            phi = _extend(a, b, gens, chosen)
            return phi if phi is not None and len(phi) == a.order else None
        for y in candidates[depth]:
            chosen.append(y)
            if _extend(a, b, gens[: depth + 1], chosen) is not None:
                found = search(depth + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return search(0)


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Decide isomorphism of two groups.

    Args:
        a: First group.
        b: Second group.

    Returns:
        bool: True iff a and b are isomorphic.

    Raises:
        SizeLimit: If backtracking is needed above BACKTRACK_LIMIT.
    """
    return find_isomorphism(a, b) is not None


@lru_cache(maxsize=None)
def catalog_fingerprint(label: str) -> Fingerprint:
    return fingerprint(catalog_group(label))


def identify_label(group: FiniteGroup) -> Optional[str]:
    """Name a group from the catalog, or None when nothing matches."""
    if group.order == 1:
        return "trivial"
    fp = fingerprint(group)
    for label in CATALOG:
        if catalog_fingerprint(label) != fp:
            continue
        if group.order > LABEL_ISOMORPHISM_LIMIT:
            return label
        if is_isomorphic(group, catalog_group(label)):
            return label
    logger.debug("no catalog label for group of order %d", group.order)
    return None
