"""Radicals, semisimple quotient and Wedderburn blocks in characteristic p.

All predicates reduce to divisibility of integer k-weights by p, so the
answers here are closed forms; :mod:`matrix_oracle` checks them against
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .basis_combinatorics import (
    TripleSet,
    _compose_unchecked,
    _layers,
    anchor_sets,
    deficiency,
    enumerate_U,
    grade_key,
    is_anchored,
    k_square,
    k_triple,
    layer_count,
    v_set,
)
from .fields import Scalar
from .scheme_core import Color, GDParams, enumerate_colors, is_p_prime_valenced, iter_bits, profile
from .terwilliger_algebra import (
    AlgebraElement,
    B2Label,
    b2_labels,
    center_labels,
    dim_T,
)


class DLabel(NamedTuple):
    g: Color
    h: Color
    triple: TripleSet

    def to_json(self) -> dict:
        return {"g": list(self.g), "h": list(self.h), "triple": self.triple.to_json()}


def _divides(params: GDParams, k: int) -> bool:
    p = params.characteristic
    return p != 0 and k % p == 0


# ---------------------------------------------------------------------------
# corner algebras E*_g T E*_g

def corner_radical_basis(params: GDParams, g: Color) -> list[B2Label]:
    return [B2Label(g, g, t) for t in enumerate_U(params, g, g) if _divides(params, k_triple(params, t))]


def _corner_counts(params: GDParams, g: Color) -> tuple[int, int, int]:
    p = params.characteristic
    _, g1, g2 = profile(g)
    n_1 = n_2 = n_3 = 0
    for a in iter_bits(params.circ(g1)):
        if p == 0 or (params.factors[a][1] - 1) % p:
            n_1 += 1
    for a in iter_bits(params.bullet(g2)):
        l, m = params.factors[a]
        if p == 0 or (l - 1) * m % p:
            n_2 += 1
    for a in iter_bits(g2 & ~params.bullet_mask):
        if p == 0 or params.factors[a][1] % p:
            n_3 += 1
    return n_1, n_2, n_3


def corner_quotient_dim(params: GDParams, g: Color) -> int:
    """Number of corner labels a with p not dividing k_a.

    Per coordinate this is a product of local counts: 2 or 1 on circ(g1)
    (p | m-1 or not), 2 or 1 on g2 minus bullet (p | m), and on bullet(g2)
    3, 2 or 1 according to whether p divides neither m nor l-1, only l-1,
    or m.
    """
    return len(enumerate_U(params, g, g)) - len(corner_radical_basis(params, g))


def corner_quotient_dim_product(params: GDParams, g: Color) -> int:
    """The product 2^(n_1 + n_3) * 3^(n_2) over the three coordinate counts.

    Agrees with :func:`corner_quotient_dim` except at coordinates of
    bullet(g2) where p divides l-1 but not m; there the true local count is
    2 and this product contributes 1.
    """
    n_1, n_2, n_3 = _corner_counts(params, g)
    return 2 ** (n_1 + n_3) * 3**n_2


def corner_nilpotency_index(params: GDParams, g: Color) -> int:
    p = params.characteristic
    if p == 0:
        return 1
    _, g1, g2 = profile(g)
    count = sum(1 for a in iter_bits(g1) if (params.factors[a][1] - 1) % p == 0)
    for a in iter_bits(g2):
        l, m = params.factors[a]
        if (l - 1) * m % p == 0:
            count += 1
    return count + 1


def corner_is_semisimple(params: GDParams, g: Color) -> bool:
    from .scheme_core import valency

    return not _divides(params, valency(params, g))


# ---------------------------------------------------------------------------
# D elements

def d_element(params: GDParams, g: Color, h: Color, t: TripleSet) -> AlgebraElement:
    """Alternating layered sum over labels between ``t`` and its ceiling."""
    if not is_anchored(params, g, h, t):
        raise ValueError(f"{tuple(t)} is not a label for anchors {g}, {h}")
    f = params.field
    scale = k_square(params, g, h, g)
    if _divides(params, scale):
        raise ValueError(f"p divides k[g,h,g] = {scale}; D_{{g,h,t}} is undefined")
    base = f.inv(f(scale))
    terms: dict[B2Label, Scalar] = {}
    for j, bucket in enumerate(_layers(params, g, h, t)):
        for a in bucket:
            c = f.mul(base, f.inv(f(k_triple(params, a))))
            terms[B2Label(g, h, a)] = f.neg(c) if j % 2 else c
    return AlgebraElement._trusted(f, terms)


# ---------------------------------------------------------------------------
# global radical

def radical_basis(params: GDParams) -> list[B2Label]:
    if params.characteristic == 0:
        return []
    return [b for b in b2_labels(params) if v_set(params, b.g, b.h, b.triple)]


def radical_dim(params: GDParams) -> int:
    return len(radical_basis(params))


def radical_nilpotency_index(params: GDParams) -> int:
    p = params.characteristic
    if p == 0:
        return 1
    bad = sum(1 for l, m in params.factors if (l - 1) * (m - 1) * m % p == 0)
    return 2 * bad + 1


def is_semisimple(params: GDParams) -> bool:
    return is_p_prime_valenced(params)


def center_radical_labels(params: GDParams) -> list:
    """Center basis labels whose elements span the radical of the center."""
    return [c for c in center_labels(params) if _divides(params, k_triple(params, c.triple))]


# ---------------------------------------------------------------------------
# semisimple quotient

def in_quotient_basis(params: GDParams, g: Color, h: Color, t: TripleSet) -> bool:
    k = k_square(params, g, h, g) * k_square(params, h, g, h) * k_triple(params, t)
    return not _divides(params, k)


def quotient_basis(params: GDParams) -> list[DLabel]:
    return list(_quotient_basis(params))


@lru_cache(maxsize=64)
def _quotient_basis(params: GDParams) -> tuple[DLabel, ...]:
    return tuple(DLabel(*b) for b in b2_labels(params) if in_quotient_basis(params, *b))


def class_key(params: GDParams, label: DLabel) -> TripleSet:
    """Invariant whose equality defines the block equivalence relation."""
    return deficiency(params, label.g, label.h, label.triple)


def quotient_multiply(params: GDParams, a: DLabel, b: DLabel) -> DLabel | None:
    """Product of two quotient basis elements: another basis element or zero."""
    if a.h != b.g:
        return None
    if class_key(params, a) != class_key(params, b):
        return None
    g, h, j = a
    _, i, k = b
    return DLabel(g, i, _compose_unchecked(params, g, h, i, j, k))


def lift(params: GDParams, label: DLabel) -> AlgebraElement:
    return d_element(params, label.g, label.h, label.triple)


@dataclass(frozen=True)
class WedderburnClass:
    representative: DLabel
    colors: tuple[Color, ...]
    members: tuple[DLabel, ...]

    @property
    def block_size(self) -> int:
        return len(self.colors)

    def unit(self, row: Color, col: Color) -> DLabel:
        """The matrix unit at (row, col) of this block."""
        for m in self.members:
            if m.g == row and m.h == col:
                return m
        raise KeyError((row, col))


@dataclass(frozen=True)
class WedderburnReport:
    classes: tuple[WedderburnClass, ...]
    radical_dim: int
    nilpotency_index: int
    quotient_dim: int
    center_quotient_count: int = field(default=0)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def blocks(self) -> list[tuple[int, int]]:
        """(size, multiplicity) pairs, largest block first."""
        counts: dict[int, int] = {}
        for c in self.classes:
            counts[c.block_size] = counts.get(c.block_size, 0) + 1
        return sorted(counts.items(), key=lambda kv: -kv[0])

    def block_sizes(self) -> list[int]:
        return sorted((c.block_size for c in self.classes), reverse=True)

    def to_json(self) -> dict:
        return {
            "blocks": [{"size": s, "multiplicity": m} for s, m in self.blocks],
            "n_classes": self.n_classes,
            "radical_dim": self.radical_dim,
            "nilpotency_index": self.nilpotency_index,
        }

    def pretty(self) -> str:
        parts = [f"{m}M{s}" if m > 1 else f"M{s}" for s, m in self.blocks]
        return " + ".join(parts)


def wedderburn(params: GDParams) -> WedderburnReport:
    return _wedderburn(params)


@lru_cache(maxsize=64)
def _wedderburn(params: GDParams) -> WedderburnReport:
    groups: dict[TripleSet, list[DLabel]] = {}
    for d in _quotient_basis(params):
        groups.setdefault(class_key(params, d), []).append(d)
    classes = []
    for members in groups.values():
        members.sort(key=lambda d: (d.g, d.h, grade_key(d.triple)))
        colors = tuple(sorted({d.g for d in members if d.g == d.h}))
        if len(members) != len(colors) ** 2:
            raise AssertionError(f"class of size {len(members)} is not a square over {len(colors)} colors")
        seen = {(d.g, d.h) for d in members}
        if seen != {(x, y) for x in colors for y in colors}:
            raise AssertionError("class members do not biject onto pairs of diagonal colors")
        classes.append(WedderburnClass(members[0], colors, tuple(members)))
    classes.sort(key=lambda c: (c.representative.g, c.representative.h, grade_key(c.representative.triple)))
    quotient_dim = len(_quotient_basis(params))
    center_count = len(center_labels(params)) - len(center_radical_labels(params))
    return WedderburnReport(
        classes=tuple(classes),
        radical_dim=dim_T(params) - quotient_dim,
        nilpotency_index=radical_nilpotency_index(params),
        quotient_dim=quotient_dim,
        center_quotient_count=center_count,
    )


def irreducible_module_count(params: GDParams) -> int:
    return wedderburn(params).n_classes


def corner_table(params: GDParams) -> list[dict]:
    out = []
    for g in enumerate_colors(params):
        out.append({
            "color": list(g),
            "corner_dim": len(enumerate_U(params, g, g)),
            "quotient_dim": corner_quotient_dim(params, g),
            "nilpotency_index": corner_nilpotency_index(params, g),
        })
    return out
