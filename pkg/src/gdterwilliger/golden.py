"""Hand-checked reference cases with known semisimple quotients.

Each case fixes a parameter list and characteristic together with the
expected block multiset of T/Rad(T), the number of blocks, the nilpotency
index of the radical and whether T is semisimple.  Generic families
(e.g. "l > m = 2 and p | l - 1") are pinned to concrete small members.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scheme_core import GDParams


@dataclass(frozen=True)
class GoldenCase:
    name: str
    factors: tuple[tuple[int, int], ...]
    characteristic: int
    blocks: tuple[tuple[int, int], ...]  # (size, multiplicity), largest first
    nilpotency_index: int
    semisimple: bool

    @property
    def params(self) -> GDParams:
        return GDParams(self.factors, self.characteristic)

    @property
    def n_classes(self) -> int:
        return sum(m for _, m in self.blocks)

    @property
    def spec(self) -> str:
        return f"{self.params.spec_string()} char {self.characteristic}"


def _case(name, factors, p, blocks, index=None) -> GoldenCase:
    semisimple = index is None
    return GoldenCase(name, tuple(factors), p, tuple(blocks), 1 if semisimple else index, semisimple)


GOLDEN: tuple[GoldenCase, ...] = (
    # l = m = 2
    _case("2x2 p=2", [(2, 2)], 2, [(2, 1), (1, 1)], 3),
    _case("2x2 p=3", [(2, 2)], 3, [(3, 1), (1, 1)]),
    _case("2x2 p=0", [(2, 2)], 0, [(3, 1), (1, 1)]),
    # l > m = 2
    _case("3x2 p=2", [(3, 2)], 2, [(2, 1), (1, 1)], 3),
    _case("5x2 p=2", [(5, 2)], 2, [(2, 1), (1, 1)], 3),
    _case("4x2 p=3", [(4, 2)], 3, [(2, 1), (1, 2)], 3),
    _case("3x2 p=3", [(3, 2)], 3, [(3, 1), (1, 2)]),
    _case("3x2 p=0", [(3, 2)], 0, [(3, 1), (1, 2)]),
    # m > l = 2
    _case("2x3 p=2", [(2, 3)], 2, [(2, 1), (1, 2)], 3),
    _case("2x3 p=3", [(2, 3)], 3, [(2, 1), (1, 2)], 3),
    _case("2x4 p=3", [(2, 4)], 3, [(2, 1), (1, 2)], 3),
    _case("2x3 p=5", [(2, 3)], 5, [(3, 1), (1, 2)]),
    _case("2x3 p=0", [(2, 3)], 0, [(3, 1), (1, 2)]),
    # min(l, m) > 2
    _case("3x3 p=3", [(3, 3)], 3, [(2, 1), (1, 2)], 3),
    _case("4x3 p=3", [(4, 3)], 3, [(2, 1), (1, 2)], 3),
    _case("3x3 p=2", [(3, 3)], 2, [(1, 4)], 3),
    _case("4x4 p=3", [(4, 4)], 3, [(1, 4)], 3),
    _case("4x3 p=2", [(4, 3)], 2, [(2, 1), (1, 3)], 3),
    _case("3x4 p=2", [(3, 4)], 2, [(2, 1), (1, 2)], 3),
    _case("3x3 p=5", [(3, 3)], 5, [(3, 1), (1, 3)]),
    _case("3x3 p=0", [(3, 3)], 0, [(3, 1), (1, 3)]),
    # two factors
    _case("2x3,3x3 p=2", [(2, 3), (3, 3)], 2, [(2, 4), (1, 8)], 5),
    _case("2x3,3x3 p=3", [(2, 3), (3, 3)], 3, [(4, 1), (2, 4), (1, 4)], 5),
    _case("2x3,3x3 p=5", [(2, 3), (3, 3)], 5, [(9, 1), (3, 5), (1, 6)]),
    _case("2x3,3x3 p=7", [(2, 3), (3, 3)], 7, [(9, 1), (3, 5), (1, 6)]),
    _case("2x3,3x3 p=0", [(2, 3), (3, 3)], 0, [(9, 1), (3, 5), (1, 6)]),
)


def golden_by_name(name: str) -> GoldenCase:
    for case in GOLDEN:
        if case.name == name:
            return case
    raise KeyError(name)
