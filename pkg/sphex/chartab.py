"""
Character table module for sphex.

This module ingests complex character tables from text files, verifies them
against the group they describe, and derives what the rest of the package
needs from them:

- real irreducible characters, through the Frobenius-Schur indicator
- kernels and faithfulness of real modules
- fixed-point dimensions dim V^H = (1/|H|) * sum_{h in H} chi_V(h)

A table is never trusted as shipped. `load_table` matches the file's classes
to the computed conjugacy classes, compares power maps, checks the Galois
action on values, row orthogonality and the degree sum, and raises on the
first failure.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from sphex.errors import (
    ClassMismatch,
    NotAnIndicator,
    NotIntegral,
    OrthogonalityFailure,
    ParseError,
    UnknownName,
)
from sphex.exactnum import CycloNum, format_number, parse_number, total
from sphex.group import (
    ConjugacyClass,
    FiniteGroup,
    Subgroup,
    is_normal,
    make_subgroup,
    power_map,
)
from sphex.utils import lcm, prime_divisors

logger = logging.getLogger(__name__)

COMPLEX = "complex"
REAL = "real"
# Slack for the floating point size check on character values.
VALUE_BOUND_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ClassSpec:
    """A class line of a table file."""

    order: int
    size: int
    label: str


@dataclass
class TableFile:
    """A parsed character table file, before any verification."""

    group_name: str
    exponent: int
    classes: List[ClassSpec]
    class_order: List[str]
    power_maps: Dict[int, List[str]]
    characters: List[Tuple[str, List[CycloNum]]]
    comments: List[str] = field(default_factory=list)


_CLASS_LINE = re.compile(r"^(\d+)\s+(\d+)\s+(\S+)$")
_POWER_LINE = re.compile(r"^powermap\s+(\d+)\s*:\s*(.*)$")
_CHAR_LINE = re.compile(r"^char\s+([^:\s]+)\s*:\s*(.*)$")


def parse_table(text: str) -> TableFile:
    """Parse the character table file format.

    Raises:
        ParseError: On any malformed or missing section.
    """
    comments: List[str] = []
    group_name: Optional[str] = None
    exponent: Optional[int] = None
    classes: List[ClassSpec] = []
    class_order: List[str] = []
    power_maps: Dict[int, List[str]] = {}
    characters: List[Tuple[str, List[CycloNum]]] = []
    in_classes = False
    seen_body = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            if not seen_body:
                comments.append(raw)
            continue
        if not line:
            continue
        seen_body = True
        if in_classes:
            match = _CLASS_LINE.match(line)
            if match:
                classes.append(
                    ClassSpec(int(match.group(1)), int(match.group(2)), match.group(3))
                )
                continue
            in_classes = False
        if line.startswith("group "):
            group_name = line[len("group ") :].strip()
        elif line.startswith("exponent"):
            try:
                exponent = int(line.split()[1])
            except (IndexError, ValueError) as exc:
                raise ParseError(f"line {lineno}: bad exponent") from exc
        elif line == "classes":
            in_classes = True
        elif line.startswith("class_order"):
            class_order = line.split()[1:]
        elif line.startswith("powermap"):
            match = _POWER_LINE.match(line)
            if not match:
                raise ParseError(f"line {lineno}: bad power map")
            power_maps[int(match.group(1))] = match.group(2).split()
        elif line.startswith("char"):
            match = _CHAR_LINE.match(line)
            if not match:
                raise ParseError(f"line {lineno}: bad character line")
            values = [parse_number(v) for v in match.group(2).split(",")]
            characters.append((match.group(1), values))
        else:
            raise ParseError(f"line {lineno}: unexpected {line!r}")

    if group_name is None or exponent is None:
        raise ParseError("table file needs 'group' and 'exponent' lines")
    if not classes:
        raise ParseError("table file has no classes")
    labels = [c.label for c in classes]
    if len(set(labels)) != len(labels):
        raise ParseError("class labels are not unique")
    if not class_order:
        class_order = labels
    if sorted(class_order) != sorted(labels):
        raise ParseError("class_order must list every class label once")
    for p, images in power_maps.items():
        if len(images) != len(classes) or any(i not in labels for i in images):
            raise ParseError(f"power map {p} does not match the classes")
    for name, values in characters:
        if len(values) != len(classes):
            raise ParseError(f"character {name} has {len(values)} values, expected {len(classes)}")
    return TableFile(
        group_name, exponent, classes, class_order, power_maps, characters, comments
    )


def format_table(table_file: TableFile) -> str:
    """Canonical text of a table file; comments are kept at the top."""
    lines: List[str] = list(table_file.comments)
    if lines:
        lines.append("")
    lines.append(f"group {table_file.group_name}")
    lines.append(f"exponent {table_file.exponent}")
    lines.append("classes")
    lines.extend(f"{c.order} {c.size} {c.label}" for c in table_file.classes)
    lines.append("class_order " + " ".join(table_file.class_order))
    for p in sorted(table_file.power_maps):
        lines.append(f"powermap {p}: " + " ".join(table_file.power_maps[p]))
    for name, values in table_file.characters:
        lines.append(f"char {name}: " + ", ".join(format_number(v) for v in values))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Character:
    """A class function given by its values on the table's classes.

    Attributes:
        name (str): Row name, e.g. "U6" or "W8_1".
        values (Tuple[CycloNum, ...]): One value per conjugacy class, in the
            order of the computed classes.
        kind (str): COMPLEX for ingested rows, REAL for realified rows.
    """

    name: str
    values: Tuple[CycloNum, ...]
    kind: str = COMPLEX

    @property
    def degree(self) -> int:
        return self.values[0].require_integer(f"degree of {self.name}")

    def __getitem__(self, class_index: int) -> CycloNum:
        return self.values[class_index]

    def conjugate(self) -> Tuple[CycloNum, ...]:
        return tuple(v.conjugate() for v in self.values)


@dataclass(frozen=True)
class RGModule:
    """A real module as multiplicities of the real irreducibles.

    Attributes:
        multiplicities (Tuple[int, ...]): One entry per real irreducible of the
            table, in table order.
    """

    multiplicities: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(m < 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def zero(cls, size: int) -> RGModule:
        return cls((0,) * size)

    def __add__(self, other: RGModule) -> RGModule:
        return RGModule(tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)))

    def is_zero(self) -> bool:
        return not any(self.multiplicities)

    def summands(self) -> List[int]:
        """Indices of real irreducibles occurring in the module."""
        return [i for i, m in enumerate(self.multiplicities) if m]


class CharacterTable:
    """A verified character table of a FiniteGroup.

    Attributes:
        group (FiniteGroup): The group.
        classes (List[ConjugacyClass]): Computed conjugacy classes.
        labels (List[str]): Column labels taken from the table file.
        power_maps (Dict[int, List[int]]): Class index of x**p for each prime p
            dividing the group order.
        complex_irreducibles (List[Character]): Ingested rows.
        real_irreducibles (List[Character]): Realified rows sorted by degree.
        indicators (List[int]): Frobenius-Schur indicator of each complex row.
    """

    def __init__(
        self,
        group: FiniteGroup,
        labels: Sequence[str],
        complex_irreducibles: Sequence[Character],
        name: str = "",
    ):
        self.group = group
        self.name = name or group.name
        self.classes: List[ConjugacyClass] = group.classes
        self.labels = list(labels)
        self.power_maps = {p: power_map(group, p) for p in prime_divisors(group.order)}
        if 2 not in self.power_maps:
            self.power_maps[2] = power_map(group, 2)
        self.complex_irreducibles = list(complex_irreducibles)
        self.indicators = [self.frobenius_schur(chi) for chi in self.complex_irreducibles]
        self.real_irreducibles = self.realify()
        self._real_index = {chi.name: i for i, chi in enumerate(self.real_irreducibles)}
        self._fp_cache: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        self._kernel_cache: Dict[int, Subgroup] = {}

    def __repr__(self) -> str:
        return f"<CharacterTable {self.name} classes={len(self.classes)}>"

    @property
    def names(self) -> List[str]:
        return [chi.name for chi in self.real_irreducibles]

    @property
    def sizes(self) -> List[int]:
        return [c.size for c in self.classes]

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise UnknownName(f"no class labelled {label!r}") from exc

    def inner_product(
        self, chi: Union[Character, Sequence[CycloNum]], psi: Union[Character, Sequence[CycloNum]]
    ) -> CycloNum:
        """(1/|G|) * sum over classes of size * chi * conj(psi)."""
        a = chi.values if isinstance(chi, Character) else tuple(chi)
        b = psi.values if isinstance(psi, Character) else tuple(psi)
        acc = total(size * x * y.conjugate() for size, x, y in zip(self.sizes, a, b))
        return acc * Fraction(1, self.group.order)

    def frobenius_schur(self, chi: Character) -> int:
        """Frobenius-Schur indicator (1/|G|) * sum_g chi(g^2).

        Raises:
            NotAnIndicator: If the sum is not -1, 0 or +1.
        """
        squares = self.power_maps[2]
        acc = total(size * chi.values[squares[i]] for i, size in enumerate(self.sizes))
        value = (acc * Fraction(1, self.group.order)).as_integer()
        if value is None or value not in (-1, 0, 1):
            raise NotAnIndicator(f"indicator of {chi.name} is {acc}/{self.group.order}")
        return value

    def realify(self) -> List[Character]:
        """Real irreducible characters from the complex ones.

        Indicator +1 rows are kept, -1 rows are doubled and indicator 0 rows
        are added to their complex conjugate, which is then skipped.
        """
        real: List[Tuple[int, int, Character]] = []
        used = set()
        for idx, chi in enumerate(self.complex_irreducibles):
            if idx in used:
                continue
            fs = self.indicators[idx]
            if fs == 1:
                values = chi.values
            elif fs == -1:
                values = tuple(v * 2 for v in chi.values)
            else:
                conj = chi.conjugate()
                partner = next(
                    (
                        j
                        for j, psi in enumerate(self.complex_irreducibles)
                        if j != idx and psi.values == conj
                    ),
                    None,
                )
                if partner is None:
                    raise OrthogonalityFailure(f"no complex conjugate row for {chi.name}")
                used.add(partner)
                values = tuple(v + w for v, w in zip(chi.values, conj))
            used.add(idx)
            row = Character(chi.name, values, REAL)
            real.append((row.degree, idx, row))
        real.sort(key=lambda item: (item[0], item[1]))
        return [row for _, _, row in real]

    def character_by_name(self, name: str) -> Character:
        """Real irreducible character by name."""
        try:
            return self.real_irreducibles[self._real_index[name]]
        except KeyError as exc:
            raise UnknownName(f"no real irreducible named {name!r}; known: {self.names}") from exc

    def index_of(self, name: str) -> int:
        self.character_by_name(name)
        return self._real_index[name]

    def module(self, summands: Mapping[str, int]) -> RGModule:
        """Build an RGModule from names, e.g. {"U6": 1, "W8_1": 2}."""
        mult = [0] * len(self.real_irreducibles)
        for name, count in summands.items():
            mult[self.index_of(name)] += count
        return RGModule(tuple(mult))

    def parse_module(self, text: str) -> RGModule:
        """Parse "U6+W8_1^2" style module names; "0" is the zero module."""
        text = text.strip()
        if text in ("", "0"):
            return RGModule.zero(len(self.real_irreducibles))
        summands: Dict[str, int] = {}
        for part in text.split("+"):
            name, _, power = part.strip().partition("^")
            try:
                count = int(power) if power else 1
            except ValueError as exc:
                raise ParseError(f"bad multiplicity in {part!r}") from exc
            summands[name] = summands.get(name, 0) + count
        return self.module(summands)

    def module_name(self, module: RGModule) -> str:
        parts = []
        for i, m in enumerate(module.multiplicities):
            if m:
                name = self.real_irreducibles[i].name
                parts.append(name if m == 1 else f"{name}^{m}")
        return "+".join(parts) if parts else "0"

    def dimension(self, module: RGModule) -> int:
        return sum(m * chi.degree for m, chi in zip(module.multiplicities, self.real_irreducibles))

    def module_values(self, module: RGModule) -> Tuple[CycloNum, ...]:
        values = [CycloNum.zero()] * len(self.classes)
        for m, chi in zip(module.multiplicities, self.real_irreducibles):
            if m:
                values = [acc + chi.values[i] * m for i, acc in enumerate(values)]
        return tuple(values)

    def class_distribution(self, subgroup: Subgroup) -> Dict[int, int]:
        """Number of elements of subgroup in each conjugacy class."""
        class_of = self.group.class_of
        return dict(sorted(Counter(class_of[h] for h in subgroup.members).items()))

    def restrict(self, chi: Character, subgroup: Subgroup) -> List[CycloNum]:
        """Values of chi on the members of subgroup, in member order."""
        class_of = self.group.class_of
        return [chi.values[class_of[h]] for h in subgroup.members]

    def _fp_character(self, chi: Character, distribution: Mapping[int, int], order: int) -> int:
        acc = total(chi.values[c] * count for c, count in distribution.items())
        value = (acc * Fraction(1, order)).as_integer()
        if value is None or value < 0 or value > chi.degree:
            raise NotIntegral(
                f"dim {chi.name}^H is {format_number(acc)}/{order}, not an integer in [0, {chi.degree}]"
            )
        return value

    def fp_vector(self, subgroup: Subgroup) -> Tuple[int, ...]:
        """dim chi^H for every real irreducible chi, in table order."""
        key = subgroup.members
        cached = self._fp_cache.get(key)
        if cached is None:
            distribution = self.class_distribution(subgroup)
            cached = tuple(
                self._fp_character(chi, distribution, subgroup.order)
                for chi in self.real_irreducibles
            )
            self._fp_cache[key] = cached
        return cached

    def fp_dim(self, module: Union[RGModule, Character], subgroup: Subgroup) -> int:
        """Dimension of the subspace fixed by subgroup.

        Args:
            module: A real module or a single character.
            subgroup: A subgroup of the table's group.

        Returns:
            int: (1/|H|) * sum_{h in H} chi(h).

        Raises:
            NotIntegral: If the exact sum is not a non-negative integer.
        """
        if isinstance(module, Character):
            if module.kind == REAL and module.name in self._real_index:
                return self.fp_vector(subgroup)[self._real_index[module.name]]
            return self._fp_character(module, self.class_distribution(subgroup), subgroup.order)
        vector = self.fp_vector(subgroup)
        return sum(m * d for m, d in zip(module.multiplicities, vector))

    def fp_matrix(self, subgroups: Sequence[Subgroup]) -> List[List[int]]:
        """Rows are real irreducibles, columns the given subgroups."""
        columns = [self.fp_vector(h) for h in subgroups]
        return [[col[i] for col in columns] for i in range(len(self.real_irreducibles))]

    def kernel(self, chi: Character) -> Subgroup:
        degree = chi.values[0]
        members = [
            m for i, cls in enumerate(self.classes) if chi.values[i] == degree for m in cls.members
        ]
        kernel = make_subgroup(self.group, members)
        assert self.group.closure(members) == kernel.member_set, f"kernel of {chi.name} not closed"
        assert is_normal(self.group, kernel), f"kernel of {chi.name} not normal"
        return kernel

    def real_kernel(self, index: int) -> Subgroup:
        if index not in self._kernel_cache:
            self._kernel_cache[index] = self.kernel(self.real_irreducibles[index])
        return self._kernel_cache[index]

    def module_kernel(self, module: RGModule) -> Subgroup:
        members = set(range(self.group.order))
        for i in module.summands():
            members &= self.real_kernel(i).member_set
        return make_subgroup(self.group, members)

    def is_faithful(self, module: RGModule) -> bool:
        """True iff the kernels of the summands intersect trivially."""
        return self.module_kernel(module).order == 1

    def decompose(self, values: Sequence[CycloNum]) -> RGModule:
        """Write a real class function as a sum of real irreducibles.

        Raises:
            NotIntegral: If some multiplicity is not a non-negative integer.
        """
        mult = []
        for chi in self.real_irreducibles:
            num = self.inner_product(values, chi)
            den = self.inner_product(chi, chi)
            ratio = num.rational_value()
            norm = den.rational_value()
            if ratio is None or norm is None or (ratio / norm).denominator != 1 or ratio < 0:
                raise NotIntegral(f"multiplicity of {chi.name} is not a non-negative integer")
            mult.append(int(ratio / norm))
        return RGModule(tuple(mult))


def match_classes(group: FiniteGroup, table_file: TableFile) -> List[int]:
    """For each computed class, the index of the matching file class.

    Classes are matched by (representative order, size); ties follow the
    file's class_order against the computed order of classes.

    Raises:
        ClassMismatch: If the class data do not agree.
    """
    computed = group.classes
    if len(computed) != len(table_file.classes):
        raise ClassMismatch(
            f"table has {len(table_file.classes)} classes, group has {len(computed)}"
        )
    by_label = {c.label: i for i, c in enumerate(table_file.classes)}
    pending: Dict[Tuple[int, int], List[int]] = {}
    for label in table_file.class_order:
        spec = table_file.classes[by_label[label]]
        pending.setdefault((spec.order, spec.size), []).append(by_label[label])
    mapping = []
    for cls in computed:
        queue = pending.get((cls.order_of_rep, cls.size))
        if not queue:
            raise ClassMismatch(
                f"computed class {cls.label} (order {cls.order_of_rep}, size {cls.size}) "
                "has no partner in the table"
            )
        mapping.append(queue.pop(0))
    return mapping


def galois_check(
    group: FiniteGroup, characters: Sequence[Character], power_maps: Mapping[int, Sequence[int]]
) -> None:
    """Check chi(x^p) = sigma_p(chi(x)) for p coprime to the order of x.

    Raises:
        ClassMismatch: On the first inconsistent value.
    """
    for p, images in power_maps.items():
        for idx, cls in enumerate(group.classes):
            m = cls.order_of_rep
            if gcd(p, m) != 1:
                continue
            for chi in characters:
                value = chi.values[idx]
                modulus = lcm(value.conductor, m)
                k = p
                while gcd(k, modulus) != 1:
                    k += m
                if value.galois_conjugate(k) != chi.values[images[idx]]:
                    raise ClassMismatch(
                        f"{chi.name}: value at {cls.label}^{p} is not the Galois conjugate"
                    )


def check_orthogonality(group: FiniteGroup, characters: Sequence[Character]) -> None:
    """Exact row orthogonality and degree sum.

    Raises:
        OrthogonalityFailure: If the rows are not orthonormal, there are not as
            many rows as classes, or the squared degrees do not sum to |G|.
    """
    sizes = [c.size for c in group.classes]
    if len(characters) != len(sizes):
        raise OrthogonalityFailure(f"{len(characters)} rows for {len(sizes)} classes")
    conjugates = [chi.conjugate() for chi in characters]
    for i, chi in enumerate(characters):
        for j in range(i, len(characters)):
            acc = total(s * x * y for s, x, y in zip(sizes, chi.values, conjugates[j]))
            expected = group.order if i == j else 0
            if acc != expected:
                raise OrthogonalityFailure(
                    f"<{chi.name}, {characters[j].name}> = {format_number(acc)}/{group.order}"
                )
    degrees = [chi.values[0].as_integer() for chi in characters]
    if any(d is None or d <= 0 for d in degrees):
        raise OrthogonalityFailure("degrees must be positive integers")
    if sum(d * d for d in degrees if d is not None) != group.order:
        raise OrthogonalityFailure("squared degrees do not sum to the group order")
    check_value_bounds(characters)


def check_value_bounds(characters: Sequence[Character]) -> None:
    """Every Galois conjugate of every value satisfies |chi(g)| <= chi(1).

    Raises:
        OrthogonalityFailure: On the first value that is too large.
    """
    for chi in characters:
        bound = chi.degree + VALUE_BOUND_TOLERANCE
        for cls_index, value in enumerate(chi.values):
            sizes = np.abs(value.embeddings())
            if np.any(sizes > bound):
                raise OrthogonalityFailure(
                    f"{chi.name}: |value| {sizes.max():.4f} at class {cls_index} exceeds degree {chi.degree}"
                )


def build_table(group: FiniteGroup, table_file: TableFile) -> CharacterTable:
    """Verify a parsed table against group and build the CharacterTable."""
    if group.exponent != table_file.exponent:
        raise ClassMismatch(
            f"table exponent {table_file.exponent}, group exponent {group.exponent}"
        )
    mapping = match_classes(group, table_file)
    labels = [table_file.classes[j].label for j in mapping]
    label_to_index = {label: i for i, label in enumerate(labels)}
    for p, images in table_file.power_maps.items():
        file_map = [label_to_index[images[j]] for j in mapping]
        if file_map != power_map(group, p):
            raise ClassMismatch(f"power map {p} does not match the computed powers")
    characters = [
        Character(name, tuple(values[j] for j in mapping), COMPLEX)
        for name, values in table_file.characters
    ]
    primes = set(prime_divisors(group.order)) | set(table_file.power_maps)
    galois_check(group, characters, {p: power_map(group, p) for p in sorted(primes)})
    check_orthogonality(group, characters)
    table = CharacterTable(group, labels, characters, name=table_file.group_name)
    logger.info(
        "loaded character table of %s: %d classes, %d real irreducibles",
        table.name,
        len(table.classes),
        len(table.real_irreducibles),
    )
    return table


def load_table(group: FiniteGroup, source: Union[str, TableFile]) -> CharacterTable:
    """Load and verify a character table.

    Args:
        group: The group the table describes.
        source: Path of a table file, or an already parsed TableFile.

    Returns:
        CharacterTable: The verified table.

    Raises:
        ParseError: On a malformed file.
        ClassMismatch: If classes, power maps or Galois action disagree.
        OrthogonalityFailure: If the rows are not orthonormal.
    """
    if isinstance(source, TableFile):
        return build_table(group, source)
    with open(source, "r", encoding="utf-8") as f:
        return build_table(group, parse_table(f.read()))


def load_table_text(group: FiniteGroup, text: str) -> CharacterTable:
    return build_table(group, parse_table(text))


def real_rows(table: CharacterTable) -> Iterable[Tuple[str, List[str]]]:
    for chi in table.real_irreducibles:
        yield chi.name, [format_number(v) for v in chi.values]
