"""Exact scalars for the prime field F_p or the rationals.

Scalars are plain Python values: residues in ``range(p)`` when ``p > 0`` and
``fractions.Fraction`` when the characteristic is zero.  A :class:`Field`
carries the characteristic and does the arithmetic, so algebra code never
needs to branch on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    characteristic: int

    def __post_init__(self) -> None:
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value: int | Fraction) -> Scalar:
        """Image of an integer (or rational) under the canonical map."""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator % p) * pow(value.denominator % p, -1, p) % p
        return value % p

    def divides(self, k: int) -> bool:
        """True when p | k; never true in characteristic zero."""
        return self.characteristic != 0 and k % self.characteristic == 0

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.characteristic:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.characteristic:
            return a * b % self.characteristic
        return a * b

    def neg(self, a: Scalar) -> Scalar:
        if self.characteristic:
            return -a % self.characteristic
        return -a

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def format(self, a: Scalar) -> str:
        """String form used in JSON: ``"3/4"`` or ``"2 mod 5"``."""
        if self.characteristic:
            return f"{a} mod {self.characteristic}"
        return str(Fraction(a))

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        if " mod " in text:
            value, p = text.split(" mod ")
            if int(p) != self.characteristic:
                raise ValueError(f"scalar {text!r} is not in characteristic {self.characteristic}")
            return self(int(value))
        return self(Fraction(text))
