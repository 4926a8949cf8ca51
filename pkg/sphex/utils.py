"""Utility functions shared across sphex.

This module provides the logging helper used by the command line and a few
small number-theoretic helpers used by several modules.
"""

import logging
from functools import reduce
from math import gcd
from typing import Any, Iterable

from sympy import factorint


def log_print(*args: Any) -> None:
    """Log a message on the sphex logger at INFO level.

    Args:
        *args: Values joined with single spaces into the message.

    Example:
        >>> log_print("lattice", "has", 22, "classes")
        # logs: "lattice has 22 classes"
    """
    logger = logging.getLogger("sphex")
    message = " ".join(str(arg) for arg in args)
    logger.info(message)


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def is_prime_power(n: int) -> bool:
    """Return True for 1 and for p**k with p prime."""
    if n < 1:
        raise ValueError(f"not a positive integer: {n}")
    return n == 1 or len(factorint(n)) == 1


def prime_divisors(n: int) -> Iterable[int]:
    return sorted(factorint(n))
