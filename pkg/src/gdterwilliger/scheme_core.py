"""Parameters, colors and intersection numbers of direct products of
group divisible schemes.

A factor ``GD(l, m)`` has ``l`` groups of ``m`` points and three relations:
0 (equal), 1 (same group, distinct), 2 (different groups).  A color of the
direct product is a tuple over ``{0, 1, 2}``, one entry per factor.

Coordinate subsets are bitmasks with bit ``a`` standing for factor ``a``
(0-based).  Reports convert to 1-based indices.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple

from .fields import Field, is_prime

Color = tuple[int, ...]

MAX_FACTORS = 62


class IndexProfile(NamedTuple):
    """The coordinates where a color is 0, 1 and 2, as bitmasks."""

    zero_set: int
    one_set: int
    two_set: int


@dataclass(frozen=True)
class GDParams:
    factors: tuple[tuple[int, int], ...]
    characteristic: int = 0
    # derived bitmasks, filled in __post_init__
    bullet_mask: int = field(init=False, repr=False, compare=False)
    circ_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        factors = tuple((int(l), int(m)) for l, m in self.factors)
        if not factors:
            raise ValueError("at least one factor is required")
        if len(factors) > MAX_FACTORS:
            raise ValueError(f"at most {MAX_FACTORS} factors are supported")
        for l, m in factors:
            if l < 2 or m < 2:
                raise ValueError(f"factor ({l},{m}) needs l >= 2 and m >= 2")
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "bullet_mask", _mask(l > 2 for l, _ in factors))
        object.__setattr__(self, "circ_mask", _mask(m > 2 for _, m in factors))

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def ells(self) -> tuple[int, ...]:
        return tuple(l for l, _ in self.factors)

    @property
    def ms(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.factors)

    @property
    def field(self) -> Field:
        return Field(self.characteristic)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_vertices(self) -> int:
        out = 1
        for l, m in self.factors:
            out *= l * m
        return out

    def shape_counts(self) -> tuple[int, int, int, int]:
        """(n1, n2, n3, n4): factors with l=m=2, l>m=2, m>l=2, min>2."""
        n1 = n2 = n3 = n4 = 0
        for l, m in self.factors:
            if l == 2 and m == 2:
                n1 += 1
            elif m == 2:
                n2 += 1
            elif l == 2:
                n3 += 1
            else:
                n4 += 1
        return n1, n2, n3, n4

    def bullet(self, mask: int) -> int:
        """Coordinates of ``mask`` whose factor has more than two groups."""
        return mask & self.bullet_mask

    def circ(self, mask: int) -> int:
        """Coordinates of ``mask`` whose groups have more than two points."""
        return mask & self.circ_mask

    def with_characteristic(self, characteristic: int) -> GDParams:
        return GDParams(self.factors, characteristic)

    def spec_string(self) -> str:
        return ",".join(f"{l}x{m}" for l, m in self.factors)


def _mask(flags) -> int:
    out = 0
    for a, flag in enumerate(flags):
        if flag:
            out |= 1 << a
    return out


_PARAM_ITEM = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def parse_params(text: str, characteristic: int = 0) -> GDParams:
    """Parse ``"2x2,3x3"`` into ``GDParams(((2, 2), (3, 3)), characteristic)``."""
    factors = []
    for item in text.split(","):
        match = _PARAM_ITEM.match(item)
        if not match:
            raise ValueError(f"malformed factor {item!r}; expected LxM, e.g. 2x3")
        factors.append((int(match.group(1)), int(match.group(2))))
    return GDParams(tuple(factors), characteristic)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_indices(mask: int) -> list[int]:
    """1-based sorted coordinate list, the form used in reports."""
    return [a + 1 for a in iter_bits(mask)]


def indices_to_mask(indices) -> int:
    out = 0
    for a in indices:
        if a < 1:
            raise ValueError("coordinate indices are 1-based")
        out |= 1 << (a - 1)
    return out


@lru_cache(maxsize=None)
def profile(g: Color) -> IndexProfile:
    sets = [0, 0, 0]
    for a, entry in enumerate(g):
        if entry not in (0, 1, 2):
            raise ValueError(f"color entries must lie in {{0,1,2}}, got {g}")
        sets[entry] |= 1 << a
    return IndexProfile(*sets)


def _check_color(params: GDParams, g: Color) -> None:
    if len(g) != params.n:
        raise ValueError(f"color {g} has length {len(g)}, expected {params.n}")


def gd_intersection_number(l: int, m: int, i: int, j: int, k: int) -> int:
    """Intersection number p^k_{i,j} of the single scheme GD(l, m)."""
    if l < 2 or m < 2:
        raise ValueError("GD(l, m) needs l >= 2 and m >= 2")
    return _gd_table(l, m).get((i, j, k), 0)


@lru_cache(maxsize=None)
def _gd_table(l: int, m: int) -> dict[tuple[int, int, int], int]:
    # keys are (i, j, k) for p^k_{i,j}
    far = (l - 1) * m
    return {
        (0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1, (1, 0, 1): 1, (2, 0, 2): 1,
        (1, 1, 0): m - 1, (1, 2, 2): m - 1, (2, 1, 2): m - 1,
        (1, 1, 1): m - 2,
        (2, 2, 0): far, (2, 2, 1): far,
        (2, 2, 2): (l - 2) * m,
    }


def intersection_number(params: GDParams, i: Color, j: Color, k: Color) -> int:
    """p^k_{i,j} of the direct product: the product of the factor numbers."""
    for c in (i, j, k):
        _check_color(params, c)
    out = 1
    for (l, m), a, b, c in zip(params.factors, i, j, k):
        out *= _gd_table(l, m).get((a, b, c), 0)
        if not out:
            return 0
    return out


def valency(params: GDParams, g: Color) -> int:
    _check_color(params, g)
    out = 1
    for (l, m), entry in zip(params.factors, g):
        if entry == 1:
            out *= m - 1
        elif entry == 2:
            out *= (l - 1) * m
    return out


def is_p_prime_valenced(params: GDParams) -> bool:
    """True when no valency is divisible by the characteristic."""
    p = params.characteristic
    if p == 0:
        return True
    return all((l - 1) * (m - 1) * m % p for l, m in params.factors)


def support_nonzero(params: GDParams, g: Color, h: Color, i: Color) -> bool:
    """Set-theoretic test for p^i_{g,h} != 0."""
    for c in (g, h, i):
        _check_color(params, c)
    g0, g1, g2 = profile(g)
    h0, h1, h2 = profile(h)
    _, i1, i2 = profile(i)
    low1 = (g0 & h1) | (g1 & h0)
    high1 = low1 | params.circ(g1 & h1) | (g2 & h2)
    if i1 & ~high1 or low1 & ~i1:
        return False
    low2 = g2 ^ h2
    high2 = low2 | params.bullet(g2 & h2)
    return not (i2 & ~high2 or low2 & ~i2)


def enumerate_colors(params: GDParams) -> list[Color]:
    return _colors(params.n)


@lru_cache(maxsize=None)
def _colors(n: int) -> list[Color]:
    return [tuple(c) for c in itertools.product((0, 1, 2), repeat=n)]


def enumerate_P(params: GDParams, g: Color, h: Color) -> list[Color]:
    """Colors a with p^a_{g,h} != 0, in lexicographic order."""
    return _enumerate_P(params.factors, g, h)


@lru_cache(maxsize=None)
def _enumerate_P(factors, g: Color, h: Color) -> list[Color]:
    params = GDParams(factors)
    return [a for a in _colors(params.n) if support_nonzero(params, g, h, a)]


def zero_color(params: GDParams) -> Color:
    return (0,) * params.n
