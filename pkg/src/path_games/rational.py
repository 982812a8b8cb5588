"""Exact rationals extended with a symbolic +∞."""

import re
import typing as t
from fractions import Fraction
from typing import TypeAlias, TypeGuard

_RATIONAL_RE = re.compile(r"^\s*([+-]?)(\d+)(?:/(\d+)|\.(\d+))?\s*$")


class Infinity:
    """The value +∞: absorbs addition and dominates every finite value."""

    _instance: t.ClassVar["Infinity | None"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other: object) -> "Infinity":
        if isinstance(other, (Infinity, Fraction, int)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "Infinity":
        if isinstance(other, Infinity):
            msg = "inf - inf is undefined"
            raise ArithmeticError(msg)
        if isinstance(other, (Fraction, int)):
            return self
        return NotImplemented

    def __rsub__(self, other: object) -> "Infinity":
        msg = "a finite value minus inf is not representable"
        raise ArithmeticError(msg)

    def __mul__(self, other: object) -> "Infinity":
        if isinstance(other, (Fraction, int)):
            if other > 0:
                return self
            msg = "inf may only be scaled by a positive value"
            raise ArithmeticError(msg)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __hash__(self) -> int:
        return hash("path_games.inf")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __gt__(self, other: object) -> bool:
        return not isinstance(other, Infinity)

    def __ge__(self, other: object) -> bool:
        return True

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INF"


INF = Infinity()

ExtRational: TypeAlias = Fraction | Infinity


def is_finite(value: ExtRational) -> TypeGuard[Fraction]:
    return not isinstance(value, Infinity)


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``p/q`` or ``p.d`` (optionally signed) into an exact fraction.

    Args:
        text: The rational string

    Returns:
        The exact value

    Raises:
        ValueError: If the string does not match the grammar or has a zero denominator
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        msg = f"{text!r} is not a rational number (expected p, p/q or p.d)"
        raise ValueError(msg)

    sign, whole, denominator, decimals = match.groups()
    if denominator is not None:
        if int(denominator) == 0:
            msg = f"{text!r} has a zero denominator"
            raise ValueError(msg)
        value = Fraction(int(whole), int(denominator))
    elif decimals is not None:
        value = Fraction(int(whole + decimals), 10 ** len(decimals))
    else:
        value = Fraction(int(whole))

    return -value if sign == "-" else value


def format_rational(value: ExtRational) -> str:
    """Canonical string form: ``p`` for integers, ``p/q`` otherwise, ``inf`` for +∞."""
    return str(value)


def ext_sum(values: t.Iterable[ExtRational]) -> ExtRational:
    total: ExtRational = Fraction(0)
    for value in values:
        total = total + value
    return total
