"""
Group module for sphex.

This module provides finite permutation groups with a canonical element
enumeration, together with the structures built on top of them:

- FiniteGroup: elements, products, inverses and element orders
- ConjugacyClass: classes labelled by representative order plus a letter
- Subgroup: a closed set of element ids of a parent group
- QuotientGroup: cosets of a normal subgroup with their product table

Element ids are positions in a breadth-first enumeration from the identity
(id 0) over generator words, so the same generators always give the same ids.
"""

from __future__ import annotations

import logging
import string
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from sphex.errors import CapExceeded, DegreeMismatch, NotNormal, ParseError
from sphex.permutation import Permutation

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 10_000
# No Cayley table above this order; products fall back to composition.
TABLE_LIMIT = 1024


class FiniteGroup:
    """A finite group given by permutation generators.

    Attributes:
        generators (Tuple[Permutation, ...]): The defining generators.
        degree (int): Number of points acted on.
        order (int): Number of elements.
        table (Optional[np.ndarray]): Cayley table, table[i, j] = id of i*j,
            present when order <= TABLE_LIMIT.
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        elements: np.ndarray,
        index: Dict[bytes, int],
        table: Optional[np.ndarray],
        name: str = "",
    ):
        self.generators = tuple(generators)
        self.degree = int(elements.shape[1])
        self.order = int(elements.shape[0])
        self.name = name
        self._elements = elements
        self._index = index
        self.table = table
        self._rows: Optional[List[List[int]]] = (
            table.tolist() if table is not None else None
        )

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order} degree={self.degree}>"

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> int:
        return 0

    def element(self, i: int) -> Permutation:
        return Permutation.from_array(self._elements[i])

    def images(self, i: int) -> np.ndarray:
        return self._elements[i]

    def index_of(self, perm: Permutation) -> int:
        """Return the id of a permutation, raising KeyError if absent."""
        key = np.asarray(perm.images, dtype=self._elements.dtype).tobytes()
        return self._index[key]

    def __contains__(self, perm: object) -> bool:
        if not isinstance(perm, Permutation) or perm.degree != self.degree:
            return False
        key = np.asarray(perm.images, dtype=self._elements.dtype).tobytes()
        return key in self._index

    def mul(self, i: int, j: int) -> int:
        if self._rows is not None:
            return self._rows[i][j]
        product = self._elements[i][self._elements[j]]
        return self._index[product.tobytes()]

    def row(self, i: int) -> List[int]:
        """Ids of i*j for every j."""
        if self._rows is not None:
            return self._rows[i]
        return [self.mul(i, j) for j in range(self.order)]

    @cached_property
    def inverses(self) -> List[int]:
        if self.table is not None:
            return [int(x) for x in np.argmax(self.table == 0, axis=1)]
        inv = np.argsort(self._elements, axis=1).astype(self._elements.dtype)
        return [self._index[row.tobytes()] for row in inv]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def power(self, i: int, exponent: int) -> int:
        result = self.identity
        base = i if exponent >= 0 else self.inverse(i)
        for _ in range(abs(exponent)):
            result = self.mul(result, base)
        return result

    @cached_property
    def element_orders(self) -> List[int]:
        orders = [0] * self.order
        for x in range(self.order):
            if orders[x]:
                continue
            y, k = x, 1
            while y != self.identity:
                y = self.mul(y, x)
                k += 1
            orders[x] = k
        return orders

    def element_order(self, i: int) -> int:
        return self.element_orders[i]

    @cached_property
    def generator_ids(self) -> Tuple[int, ...]:
        return tuple(self.index_of(g) for g in self.generators)

    @cached_property
    def exponent(self) -> int:
        from sphex.utils import lcm

        return lcm(*set(self.element_orders))

    def conjugation_map(self, g: int) -> List[int]:
        """Ids of g*h*g^-1 for every h."""
        g_inv = self.inverse(g)
        if self.table is not None:
            return [int(x) for x in self.table[self.table[g], g_inv]]
        return [self.mul(self.mul(g, h), g_inv) for h in range(self.order)]

    @cached_property
    def generator_conjugations(self) -> List[List[int]]:
        return [self.conjugation_map(g) for g in self.generator_ids]

    def closure(
        self, seed: Iterable[int], limit: Optional[int] = None
    ) -> Optional[FrozenSet[int]]:
        """Smallest subgroup containing seed, as a set of ids.

        Args:
            seed: Element ids.
            limit: If given, stop and return None as soon as the closure has
                more than limit elements.
        """
        gens = sorted(set(seed) - {self.identity})
        elements = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.row(x)
                for g in gens:
                    y = row[g]
                    if y not in elements:
                        elements.add(y)
                        nxt.append(y)
            if limit is not None and len(elements) > limit:
                return None
            frontier = nxt
        return frozenset(elements)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)), self.generator_ids)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (self.identity,), ())

    @cached_property
    def classes(self) -> List[ConjugacyClass]:
        return _compute_classes(self)

    @cached_property
    def class_of(self) -> List[int]:
        """Class index of every element id."""
        lookup = [0] * self.order
        for cls in self.classes:
            for m in cls.members:
                lookup[m] = cls.index
        return lookup

    def is_abelian(self) -> bool:
        gens = self.generator_ids
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


def generate_group(
    gens: Sequence[Permutation],
    cap: int = DEFAULT_MAX_ORDER,
    name: str = "",
) -> FiniteGroup:
    """Enumerate the group generated by permutations.

    Elements are listed breadth-first from the identity; the children of x are
    x*g for the generators g in the given order.

    Args:
        gens: Non-empty list of permutations of a common degree.
        cap: Maximum allowed group order.
        name: Optional display name.

    Returns:
        FiniteGroup: The generated group.

    Raises:
        ValueError: If gens is empty.
        DegreeMismatch: If the generators have different degrees.
        CapExceeded: If the closure has more than cap elements.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, not {degree}")
    dtype = np.int16 if degree < 2**15 else np.int32
    gen_arrays = [np.asarray(g.images, dtype=dtype) for g in gens]
    identity = np.arange(degree, dtype=dtype)
    elements = [identity]
    index = {identity.tobytes(): 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gen_arrays:
            y = x[g]
            key = y.tobytes()
            if key not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                index[key] = len(elements)
                elements.append(y)
                queue.append(y)
    stacked = np.stack(elements)
    table = _cayley_table(stacked, index) if len(elements) <= TABLE_LIMIT else None
    group = FiniteGroup(gens, stacked, index, table, name=name)
    logger.debug("generated %r", group)
    return group


def _cayley_table(elements: np.ndarray, index: Dict[bytes, int]) -> np.ndarray:
    n = elements.shape[0]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        products = elements[i][elements]
        table[i] = [index[p.tobytes()] for p in products]
    return table


@dataclass(frozen=True)
class ConjugacyClass:
    """A conjugacy class of a FiniteGroup.

    Attributes:
        index (int): Position in the sorted class list.
        representative (int): Element id of the lexicographically minimal member.
        members (Tuple[int, ...]): Sorted element ids.
        order_of_rep (int): Order of every member.
        label (str): Order followed by a capital letter when several classes
            share that order, e.g. "4A".
    """

    index: int
    representative: int
    members: Tuple[int, ...]
    order_of_rep: int
    label: str

    @property
    def size(self) -> int:
        return len(self.members)


def _compute_classes(group: FiniteGroup) -> List[ConjugacyClass]:
    seen = [False] * group.order
    orbits: List[List[int]] = []
    maps = group.generator_conjugations
    for start in range(group.order):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for cmap in maps:
                y = cmap[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    stack.append(y)
        orbits.append(sorted(orbit))
    orders = group.element_orders
    orbits.sort(key=lambda o: (orders[o[0]], len(o), o[0]))
    per_order = Counter(orders[o[0]] for o in orbits)
    seen_order: Counter[int] = Counter()
    classes = []
    for idx, orbit in enumerate(orbits):
        order = orders[orbit[0]]
        if per_order[order] > 1:
            label = f"{order}{string.ascii_uppercase[seen_order[order]]}"
        else:
            label = str(order)
        seen_order[order] += 1
        rep = min(orbit, key=lambda i: tuple(group.images(i).tolist()))
        classes.append(ConjugacyClass(idx, rep, tuple(orbit), order, label))
    return classes


def conjugacy_classes(group: FiniteGroup) -> List[ConjugacyClass]:
    """Conjugacy classes sorted by (representative order, size, minimal id).

    Args:
        group: The group.

    Returns:
        List[ConjugacyClass]: The classes; they partition the group.
    """
    return group.classes


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a FiniteGroup, stored as sorted element ids.

    Attributes:
        parent (FiniteGroup): The ambient group.
        members (Tuple[int, ...]): Sorted element ids.
        generator_ids (Tuple[int, ...]): A small generating set.
    """

    parent: FiniteGroup = field(compare=False, repr=False)
    members: Tuple[int, ...]
    generator_ids: Tuple[int, ...] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    def __contains__(self, element: int) -> bool:
        return element in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set

    def as_group(self, name: str = "") -> FiniteGroup:
        """The subgroup as a FiniteGroup of the same degree."""
        gens = [self.parent.element(g) for g in self.generator_ids]
        if not gens:
            gens = [Permutation.identity(self.parent.degree)]
        return generate_group(gens, cap=max(self.order, 1), name=name)

    def elements(self) -> List[Permutation]:
        return [self.parent.element(i) for i in self.members]


def small_generating_set(group: FiniteGroup, members: Iterable[int]) -> Tuple[int, ...]:
    orders = group.element_orders
    candidates = sorted(members, key=lambda i: (-orders[i], i))
    gens: List[int] = []
    current: FrozenSet[int] = frozenset({group.identity})
    for x in candidates:
        if x in current:
            continue
        gens.append(x)
        closed = group.closure(gens)
        assert closed is not None
        current = closed
    return tuple(gens)


def make_subgroup(group: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap a set of ids already known to be a subgroup."""
    ids = tuple(sorted(set(members)))
    return Subgroup(group, ids, small_generating_set(group, ids))


def subgroup_closure(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing seed.

    Args:
        group: The ambient group.
        seed: Element ids.

    Returns:
        Subgroup: The generated subgroup with a small generating set.
    """
    closed = group.closure(seed)
    assert closed is not None
    return make_subgroup(group, closed)


def element_order_histogram(subgroup: Subgroup) -> Dict[int, int]:
    """Map element order to the number of elements of that order."""
    orders = subgroup.parent.element_orders
    return dict(sorted(Counter(orders[i] for i in subgroup.members).items()))


def conjugate_subgroup(group: FiniteGroup, subgroup: Subgroup, g: int) -> FrozenSet[int]:
    cmap = group.conjugation_map(g)
    return frozenset(cmap[h] for h in subgroup.members)


def is_normal(group: FiniteGroup, subgroup: Subgroup, within: Optional[Subgroup] = None) -> bool:
    """Whether subgroup is normalised by within (default: the whole group)."""
    members = subgroup.member_set
    gens = within.generator_ids if within is not None else group.generator_ids
    for g in gens:
        cmap = group.conjugation_map(g)
        if any(cmap[h] not in members for h in subgroup.members):
            return False
    return True


def normalizer(group: FiniteGroup, subgroup: Subgroup) -> Subgroup:
    members = subgroup.member_set
    normalizing = [
        g
        for g in range(group.order)
        if all(group.conjugation_map(g)[h] in members for h in subgroup.generator_ids)
    ]
    return make_subgroup(group, normalizing)


def center(group: FiniteGroup) -> Subgroup:
    gens = group.generator_ids
    central = [
        z for z in range(group.order) if all(group.mul(z, g) == group.mul(g, z) for g in gens)
    ]
    return make_subgroup(group, central)


def derived_subgroup(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> Subgroup:
    """Commutator subgroup of subgroup (default: the whole group)."""
    members = subgroup.members if subgroup is not None else range(group.order)
    inv = group.inverses
    commutators = set()
    for x in members:
        for y in members:
            commutators.add(group.mul(group.mul(inv[x], inv[y]), group.mul(x, y)))
    return subgroup_closure(group, commutators)


def derived_series(group: FiniteGroup, subgroup: Optional[Subgroup] = None) -> List[Subgroup]:
    """Derived series down to the first repeated term."""
    current = subgroup if subgroup is not None else group.whole
    series = [current]
    while True:
        nxt = derived_subgroup(group, current)
        if nxt.order == current.order:
            return series
        series.append(nxt)
        current = nxt


def power_map(group: FiniteGroup, p: int) -> List[int]:
    """Class index of rep**p for every class."""
    return [group.class_of[group.power(c.representative, p)] for c in group.classes]


class QuotientGroup:
    """Cosets of a normal subgroup with a well-defined product table.

    Attributes:
        parent (FiniteGroup): The ambient group.
        normal_subgroup (Subgroup): The subgroup factored out.
        ambient (Subgroup): The subgroup whose cosets are taken (the whole
            parent unless a smaller one was given).
        cosets (List[Tuple[int, ...]]): Left cosets, the first one being N.
        table (np.ndarray): table[a, b] = index of the coset of a*b.
    """

    def __init__(self, parent: FiniteGroup, normal_subgroup: Subgroup, ambient: Subgroup):
        self.parent = parent
        self.normal_subgroup = normal_subgroup
        self.ambient = ambient
        coset_of: Dict[int, int] = {}
        cosets: List[Tuple[int, ...]] = []
        reps: List[int] = []
        for x in ambient.members:
            if x in coset_of:
                continue
            row = parent.row(x)
            coset = tuple(sorted(row[n] for n in normal_subgroup.members))
            for y in coset:
                coset_of[y] = len(cosets)
            cosets.append(coset)
            reps.append(x)
        self.cosets = cosets
        self.representatives = reps
        self.coset_of = coset_of
        size = len(cosets)
        self.table = np.empty((size, size), dtype=np.int32)
        for a, ra in enumerate(reps):
            row = parent.row(ra)
            self.table[a] = [coset_of[row[rb]] for rb in reps]

    @property
    def order(self) -> int:
        return len(self.cosets)

    def coset_order(self, a: int) -> int:
        k, y = 1, a
        while y != 0:
            y = int(self.table[y, a])
            k += 1
        return k

    def is_cyclic(self) -> bool:
        return any(self.coset_order(a) == self.order for a in range(self.order))

    def check_well_defined(self) -> bool:
        """Check every product of coset members against the table."""
        for a, ca in enumerate(self.cosets):
            for b, cb in enumerate(self.cosets):
                expected = int(self.table[a, b])
                for x in ca:
                    row = self.parent.row(x)
                    if any(self.coset_of[row[y]] != expected for y in cb):
                        return False
        return True

    def permutation(self, a: int) -> Permutation:
        """Left multiplication by coset a on the coset indices."""
        return Permutation(tuple(int(x) for x in self.table[a]))

    @cached_property
    def as_group(self) -> FiniteGroup:
        gens = [self.permutation(self.coset_of[g]) for g in self.ambient.generator_ids]
        if not gens:
            gens = [Permutation.identity(self.order)]
        return generate_group(gens, cap=self.order)

    def group_id(self, a: int) -> int:
        """Id in as_group of coset a."""
        return self.as_group.index_of(self.permutation(a))

    def coset_index(self, group_id: int) -> int:
        images = self.as_group.images(group_id)
        return int(images[0])

    def preimage(self, coset_indices: Iterable[int]) -> Subgroup:
        """Union of the given cosets as a subgroup of the parent."""
        members = [x for a in set(coset_indices) for x in self.cosets[a]]
        return subgroup_closure(self.parent, members)


def quotient(
    group: FiniteGroup, normal_subgroup: Subgroup, within: Optional[Subgroup] = None
) -> QuotientGroup:
    """Quotient of within (default: group) by a normal subgroup.

    Raises:
        NotNormal: If normal_subgroup is not normal in within or not contained
            in it.
    """
    ambient = within if within is not None else group.whole
    if not normal_subgroup.is_subgroup_of(ambient):
        raise NotNormal("subgroup is not contained in the ambient group")
    if not is_normal(group, normal_subgroup, within=ambient):
        raise NotNormal(f"subgroup of order {normal_subgroup.order} is not normal")
    return QuotientGroup(group, normal_subgroup, ambient)


def parse_group_file(text: str) -> Tuple[int, List[Permutation]]:
    """Parse the group file format.

    Line 1 is `degree N`; every following non-empty line is one generator in
    disjoint-cycle notation with 1-based points. `#` starts a comment.

    Raises:
        ParseError: On a missing header or malformed generator.
    """
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or not lines[0].startswith("degree"):
        raise ParseError("group file must start with 'degree N'")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad degree line: {lines[0]!r}") from exc
    if degree < 1:
        raise ParseError("degree must be positive")
    return degree, [Permutation.parse(line, degree) for line in lines[1:]]


def format_group_file(degree: int, generators: Sequence[Permutation]) -> str:
    lines = [f"degree {degree}"] + [g.to_cycles() for g in generators]
    return "\n".join(lines) + "\n"


def load_group(path: str, cap: int = DEFAULT_MAX_ORDER, name: str = "") -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as f:
        degree, gens = parse_group_file(f.read())
    if not gens:
        gens = [Permutation.identity(degree)]
    return generate_group(gens, cap=cap, name=name)


def save_group(group: FiniteGroup, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_group_file(group.degree, group.generators))
