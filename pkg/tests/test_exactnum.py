"""
Unit tests for exact cyclotomic arithmetic.
"""

import unittest
from fractions import Fraction
from typing import List

import numpy as np
import pytest

from sphex.errors import NotCoprime, NotIntegral, ParseError
from sphex.exactnum import CycloNum, format_number, parse_number, sqrt2, sqrt3, total


class TestCycloNum(unittest.TestCase):
    def test_square_roots(self) -> None:
        self.assertEqual(sqrt2() * sqrt2(), 2)
        self.assertEqual(sqrt3() * sqrt3(), 3)
        self.assertEqual((sqrt3() * sqrt3()).as_integer(), 3)
        self.assertIsNone(sqrt3().as_integer())

    def test_roots_of_unity(self) -> None:
        i = CycloNum.zeta(4)
        self.assertEqual(i * i, -1)
        self.assertEqual(CycloNum.zeta(3) + CycloNum.zeta(3, 2), -1)
        self.assertEqual(CycloNum.zeta(6), CycloNum.zeta(12, 2))
        self.assertEqual(CycloNum.zeta(5, 5), 1)

    def test_mixed_conductors(self) -> None:
        x = sqrt2() + sqrt3()
        self.assertEqual(x.conductor, 24)
        self.assertEqual(x - sqrt3(), sqrt2())
        self.assertEqual(x * x, 5 + 2 * sqrt2() * sqrt3())

    def test_rational_arithmetic(self) -> None:
        half = CycloNum.rational(Fraction(1, 2))
        self.assertEqual(half + half, 1)
        self.assertEqual(1 - half, half)
        self.assertEqual(half.rational_value(), Fraction(1, 2))
        self.assertFalse(CycloNum.zero())
        self.assertEqual(total([half, half, CycloNum.one()]), 2)

    def test_trace(self) -> None:
        self.assertEqual(sqrt3().trace(), 0)
        self.assertEqual(CycloNum.zeta(3).trace(), Fraction(-1, 2))
        self.assertEqual(CycloNum.rational(7).trace(), 7)

    def test_equal_numbers_hash_equal(self) -> None:
        self.assertEqual(hash(CycloNum.rational(3)), hash(sqrt3() * sqrt3()))
        self.assertEqual(len({CycloNum.zeta(6), CycloNum.zeta(12, 2)}), 1)

    def test_galois_action(self) -> None:
        self.assertEqual(sqrt3().galois_conjugate(5), -sqrt3())
        self.assertEqual(sqrt3().galois_conjugate(11), sqrt3())
        self.assertEqual(sqrt2().galois_conjugate(3), -sqrt2())
        self.assertEqual(CycloNum.zeta(4).conjugate(), CycloNum.zeta(4, 3))
        with self.assertRaises(NotCoprime):
            sqrt3().galois_conjugate(2)

    def test_require_integer(self) -> None:
        self.assertEqual(CycloNum.rational(4).require_integer(), 4)
        with self.assertRaises(NotIntegral):
            CycloNum.rational(Fraction(1, 3)).require_integer("dim")


def test_canonical_text() -> None:
    assert format_number(2 * sqrt3()) == "4*z(12,1)-2*z(12,3)"
    assert format_number(CycloNum.rational(Fraction(-3, 4))) == "-q(3/4)"
    assert format_number(CycloNum.zero()) == "0"


@pytest.mark.parametrize(
    "text",
    ["3", "-2", "q(1/2)", "z(12,1)+z(12,11)", "-z(8,1)-z(8,7)", "2*z(5,1)+q(1/3)*z(5,2)", "1+z(3,1)"],
)
def test_parse_and_format_agree(text: str) -> None:
    x = parse_number(text)
    canonical = format_number(x)
    assert parse_number(canonical) == x
    assert format_number(parse_number(canonical)) == canonical


def test_parse_table_encodings() -> None:
    assert parse_number("z(12,1)+z(12,11)") == sqrt3()
    assert parse_number("-z(8,1)-z(8,7)") == -sqrt2()
    assert parse_number("q(3/2)") == Fraction(3, 2)


@pytest.mark.parametrize("text", ["", "3 +", "abc", "z(0,1)", "q(1/0)", "2 3", "*2"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ParseError):
        parse_number(text)


# Every conductor divides 120, so exponents coprime to 120 act on all of them.
CONDUCTORS = [1, 3, 4, 5, 8, 12, 15, 24, 40, 120]
UNITS_MOD_120 = [k for k in range(1, 120) if np.gcd(k, 120) == 1]


def _random_number(rng: np.random.Generator) -> CycloNum:
    conductor = int(rng.choice(CONDUCTORS))
    terms = {
        int(rng.integers(0, conductor)): Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        for _ in range(int(rng.integers(0, 4)))
    }
    return CycloNum.make(conductor, terms)


def _samples(seed: int, count: int = 3) -> List[CycloNum]:
    rng = np.random.default_rng(seed)
    return [_random_number(rng) for _ in range(count)]


@pytest.mark.parametrize("seed", range(8))
def test_ring_axioms(seed: int) -> None:
    a, b, c = _samples(seed)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a
    assert a * 1 == a
    assert a * 0 == 0


@pytest.mark.parametrize("seed", range(8))
def test_subtraction_cancels(seed: int) -> None:
    a, b, _ = _samples(seed)
    assert a - a == 0
    assert not (a - a)
    assert (a + b) - b == a
    assert a + (-a) == CycloNum.zero()


@pytest.mark.parametrize("seed", range(8))
def test_galois_action_is_a_ring_automorphism(seed: int) -> None:
    a, b, _ = _samples(seed)
    rng = np.random.default_rng(1000 + seed)
    k = int(rng.choice(UNITS_MOD_120))
    inverse = pow(k, -1, 120)
    assert (a * b).galois_conjugate(k) == a.galois_conjugate(k) * b.galois_conjugate(k)
    assert (a + b).galois_conjugate(k) == a.galois_conjugate(k) + b.galois_conjugate(k)
    assert a.galois_conjugate(k).galois_conjugate(inverse) == a
    assert a.conjugate().conjugate() == a
    assert a.galois_conjugate(k).trace() == a.trace()


@pytest.mark.parametrize("seed", range(8))
def test_equality_and_hash_agree(seed: int) -> None:
    a, b, _ = _samples(seed)
    lifted = a.lift(120)
    assert lifted == a
    assert hash(lifted) == hash(a)
    assert len({a, lifted, a + 0, 1 * a}) == 1
    if a == b:
        assert hash(a) == hash(b)
    else:
        assert a - b != 0


@pytest.mark.parametrize("seed", range(4))
def test_embeddings_follow_arithmetic(seed: int) -> None:
    a, b, _ = _samples(seed)
    values_a = a.lift(120).embeddings()
    values_b = b.lift(120).embeddings()
    np.testing.assert_allclose((a * b).lift(120).embeddings(), values_a * values_b, atol=1e-9)
    np.testing.assert_allclose(a.conjugate().lift(120).embeddings(), np.conj(values_a), atol=1e-9)


def test_embeddings_of_known_values() -> None:
    np.testing.assert_allclose(sorted(sqrt3().embeddings().real), [-np.sqrt(3)] * 2 + [np.sqrt(3)] * 2)
    np.testing.assert_allclose(CycloNum.rational(Fraction(-3, 2)).embeddings(), [-1.5])
    assert CycloNum.zero().embeddings().tolist() == [0]
