"""
Fixture groups for sphex.

This module builds the named groups used as inputs and as the label catalog
of the subgroup lattice: symmetric, alternating, cyclic, dihedral and
dicyclic groups, a few matrix groups over finite fields, and the order-240
group SL(2,5).C2.

SL(2,5).C2 is built as

    G = { l*g : g in GL(2,5), l in F_25, l**2 * det(g) = 1 }  inside SL(2,25),

generated by SL(2,5) and t = 2i * diag(2, 1) with i**2 = 2 in F_25. Its only
involution is -1, so the extension of C2 by SL(2,5) does not split, and
G / {+-1} is PGL(2,5), i.e. S5. The permutation form is the left regular
representation on 240 points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Sequence, Tuple, TypeVar

from sphex.errors import CapExceeded, UnknownName
from sphex.group import DEFAULT_MAX_ORDER, FiniteGroup, generate_group
from sphex.permutation import Permutation

T = TypeVar("T", bound=Hashable)

FieldElement = Tuple[int, int]
Matrix = Tuple[FieldElement, FieldElement, FieldElement, FieldElement]


def group_from_operation(
    generators: Sequence[T],
    mul: Callable[[T, T], T],
    name: str = "",
    cap: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Left regular permutation representation of an abstract group.

    Args:
        generators: Hashable group elements.
        mul: The group product.
        name: Display name of the result.
        cap: Maximum allowed order.

    Returns:
        FiniteGroup: The group acting on itself by left multiplication.
    """
    elements: List[T] = []
    index: Dict[T, int] = {}
    queue = list(dict.fromkeys(generators))
    for g in queue:
        index[g] = len(elements)
        elements.append(g)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for g in generators:
            y = mul(g, x)
            if y not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    perms = [Permutation(tuple(index[mul(g, x)] for x in elements)) for g in generators]
    return generate_group(perms, cap=cap, name=name)


@dataclass(frozen=True)
class FiniteField:
    """F_p, or F_{p^2} = F_p[i] with i**2 = nonresidue.

    Elements are pairs (a, b) standing for a + b*i; prime-field elements have
    b = 0.
    """

    p: int
    nonresidue: int = 0

    def element(self, a: int, b: int = 0) -> FieldElement:
        return (a % self.p, b % self.p)

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        a, b = x
        c, d = y
        return ((a * c + self.nonresidue * b * d) % self.p, (a * d + b * c) % self.p)


def matrix(field: FiniteField, rows: Sequence[Sequence[object]]) -> Matrix:
    """Build a 2x2 matrix; entries are ints or (a, b) pairs."""
    flat = [entry for row in rows for entry in row]
    if len(flat) != 4:
        raise ValueError("expected a 2x2 matrix")
    out = []
    for entry in flat:
        if isinstance(entry, tuple):
            out.append(field.element(entry[0], entry[1]))
        else:
            assert isinstance(entry, int)
            out.append(field.element(entry))
    return (out[0], out[1], out[2], out[3])


def matrix_mul(field: FiniteField, x: Matrix, y: Matrix) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    add, mul = field.add, field.mul
    return (
        add(mul(a, e), mul(b, g)),
        add(mul(a, f), mul(b, h)),
        add(mul(c, e), mul(d, g)),
        add(mul(c, f), mul(d, h)),
    )


def matrix_group(field: FiniteField, gens: Sequence[Matrix], name: str = "") -> FiniteGroup:
    return group_from_operation(gens, lambda x, y: matrix_mul(field, x, y), name=name)


def _cycles_group(degree: int, cycle_texts: Sequence[str], name: str) -> FiniteGroup:
    gens = [Permutation.parse(text, degree) for text in cycle_texts]
    return generate_group(gens, name=name)


def trivial_group() -> FiniteGroup:
    return generate_group([Permutation.identity(1)], name="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    cycle = Permutation(tuple((i + 1) % n for i in range(n)))
    return generate_group([cycle], name=f"C{n}" if n > 1 else "trivial")


def klein_four_group() -> FiniteGroup:
    return _cycles_group(4, ["(1 2)", "(3 4)"], "C2^2")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n generated by (1 2) and (1 2 ... n)."""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    if n == 1:
        return generate_group([Permutation.identity(1)], name="S1")
    long_cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return _cycles_group(n, ["(1 2)", long_cycle], f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    """A_n generated by the 3-cycles (1 2 k)."""
    if n < 3:
        return generate_group([Permutation.identity(max(n, 1))], name=f"A{n}")
    return _cycles_group(n, [f"(1 2 {k})" for k in range(3, n + 1)], f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return generate_group([Permutation.parse("(1 2)", 2)], name="C2")
    if n == 2:
        return klein_four_group()
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return generate_group([rotation, reflection], name=f"D{2 * n}")


def dicyclic_group(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: <a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>.

    Elements are a^k x^e stored as (k, e).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    m = 2 * n

    def mul(u: Tuple[int, int], v: Tuple[int, int]) -> Tuple[int, int]:
        k1, e1 = u
        k2, e2 = v
        if e1 == 0:
            return ((k1 + k2) % m, e2)
        if e2 == 0:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    return group_from_operation([(1, 0), (0, 1)], mul, name=f"Dic{n}")


def quaternion_group(order: int = 8) -> FiniteGroup:
    return dicyclic_group(order // 4)


def frobenius_group_20() -> FiniteGroup:
    return _cycles_group(5, ["(1 2 3 4 5)", "(2 3 5 4)"], "F5")


def metacyclic_40() -> FiniteGroup:
    """C5 : C8 with the generator of C8 acting by x -> 2x."""

    def mul(u: Tuple[int, int], v: Tuple[int, int]) -> Tuple[int, int]:
        i, j = u
        k, l = v
        return ((i + pow(2, j, 5) * k) % 5, (j + l) % 8)

    return group_from_operation([(1, 0), (0, 1)], mul, name="C5:C8")


def sl2(p: int) -> FiniteGroup:
    field = FiniteField(p)
    gens = [matrix(field, [[1, 1], [0, 1]]), matrix(field, [[0, -1], [1, 0]])]
    return matrix_group(field, gens, name=f"SL(2,{p})")


def binary_octahedral() -> FiniteGroup:
    """The order-48 subgroup of SL(2,7) generated by an element of order 8 and one of order 6."""
    field = FiniteField(7)
    gens = [matrix(field, [[5, 2], [5, 5]]), matrix(field, [[0, 2], [3, 1]])]
    return matrix_group(field, gens, name="[48,28]")


def sl25c2_generators() -> Tuple[FiniteField, List[Matrix]]:
    field = FiniteField(5, nonresidue=2)
    gens = [
        matrix(field, [[1, 1], [0, 1]]),
        matrix(field, [[0, -1], [1, 0]]),
        matrix(field, [[(0, 4), 0], [0, (0, 2)]]),
    ]
    return field, gens


def sl25c2() -> FiniteGroup:
    """SL(2,5).C2 as a permutation group of degree 240."""
    field, gens = sl25c2_generators()
    return matrix_group(field, gens, name="SL(2,5).C2")


# Label catalog for lattice nodes. Order matters only for readability.
CATALOG: Dict[str, Callable[[], FiniteGroup]] = {
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C2^2": klein_four_group,
    "C5": lambda: cyclic_group(5),
    "C6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
    "C8": lambda: cyclic_group(8),
    "D8": lambda: dihedral_group(4),
    "Q8": lambda: dicyclic_group(2),
    "C10": lambda: cyclic_group(10),
    "D10": lambda: dihedral_group(5),
    "C12": lambda: cyclic_group(12),
    "[12,1]": lambda: dicyclic_group(3),
    "A4": lambda: alternating_group(4),
    "D12": lambda: dihedral_group(6),
    "Q16": lambda: dicyclic_group(4),
    "[20,1]": lambda: dicyclic_group(5),
    "F5": frobenius_group_20,
    "S4": lambda: symmetric_group(4),
    "SL(2,3)": lambda: sl2(3),
    "[24,4]": lambda: dicyclic_group(6),
    "C5:C8": metacyclic_40,
    "[48,28]": binary_octahedral,
    "A5": lambda: alternating_group(5),
    "S5": lambda: symmetric_group(5),
    "SL(2,5)": lambda: sl2(5),
    "SL(2,5).C2": sl25c2,
}


@lru_cache(maxsize=None)
def catalog_group(label: str) -> FiniteGroup:
    try:
        builder = CATALOG[label]
    except KeyError as exc:
        raise UnknownName(f"no catalog group named {label!r}") from exc
    return builder()


FIXTURES: Dict[str, Callable[[], FiniteGroup]] = {
    "sl25c2": sl25c2,
    "s5": lambda: symmetric_group(5),
    "a5": lambda: alternating_group(5),
    "sl25": lambda: sl2(5),
}


def fixture_group(name: str) -> FiniteGroup:
    """Build a named fixture group.

    Raises:
        UnknownName: If the name is not a known fixture.
    """
    try:
        return FIXTURES[name]()
    except KeyError as exc:
        raise UnknownName(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from exc
