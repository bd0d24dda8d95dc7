"""Symbolic Terwilliger algebra at the all-zeros base point.

Elements are finite maps from aggregated basis labels ``B_{g,h,t}`` to
field scalars.  Products use the closed-form structure constants, so no
matrices are ever built here (see :mod:`matrix_oracle` for that).
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

from .basis_combinatorics import (
    EMPTY_TRIPLE,
    TripleSet,
    _compose_unchecked,
    cap_color,
    enumerate_U,
    grade_key,
    intersect,
    is_anchored,
    k_square,
    k_triple,
    members_U,
    minimal_member,
    minus_color,
    submasks,
    support_triple,
)
from .fields import Field, Scalar
from .scheme_core import Color, GDParams, enumerate_colors, enumerate_P, mask_to_indices


class B2Label(NamedTuple):
    g: Color
    h: Color
    triple: TripleSet

    def to_json(self) -> dict:
        return {"g": list(self.g), "h": list(self.h), "triple": self.triple.to_json()}


class B1Label(NamedTuple):
    """The element E*_g A_i E*_h."""

    g: Color
    i: Color
    h: Color

    def to_json(self) -> dict:
        return {"g": list(self.g), "i": list(self.i), "h": list(self.h)}


class CenterLabel(NamedTuple):
    triple: TripleSet

    def to_json(self) -> list[list[int]]:
        return self.triple.to_json()


class AlgebraElement:
    """Immutable finite linear combination of basis labels."""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: Field, terms: Mapping | Iterable = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for label, coeff in items:
            coeff = field(coeff)
            if coeff:
                clean[label] = coeff
        self.field = field
        self._terms = MappingProxyType(clean)
        self._hash = None

    @classmethod
    def _trusted(cls, field: Field, terms: dict) -> AlgebraElement:
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = MappingProxyType(terms)
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping:
        return self._terms

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, label) -> Scalar:
        return self._terms.get(label, self.field.zero)

    def coefficient(self, label) -> Scalar:
        return self[label]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.field == other.field and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return self._combine(other, self.field.add)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self._combine(other, self.field.sub)

    def __neg__(self) -> AlgebraElement:
        f = self.field
        return AlgebraElement._trusted(f, {k: f.neg(v) for k, v in self._terms.items()})

    def scale(self, c: Scalar) -> AlgebraElement:
        f = self.field
        c = f(c)
        if not c:
            return AlgebraElement._trusted(f, {})
        return AlgebraElement._trusted(f, {k: f.mul(c, v) for k, v in self._terms.items()})

    def _combine(self, other: AlgebraElement, op) -> AlgebraElement:
        if self.field != other.field:
            raise ValueError("elements live over different fields")
        out = dict(self._terms)
        zero = self.field.zero
        for k, v in other._terms.items():
            r = op(out.get(k, zero), v)
            if r:
                out[k] = r
            else:
                out.pop(k, None)
        return AlgebraElement._trusted(self.field, out)

    def __repr__(self) -> str:
        body = " + ".join(f"{self.field.format(v)}*{_short(k)}" for k, v in self._terms.items())
        return f"AlgebraElement({body or '0'})"

    def to_json(self) -> list[dict]:
        return [
            {"label": label.to_json(), "coefficient": self.field.format(c)}
            for label, c in sorted(self._terms.items(), key=lambda kv: _label_key(kv[0]))
        ]


def _short(label) -> str:
    if isinstance(label, B2Label):
        return f"B[{label.g},{label.h},{tuple(mask_to_indices(s) for s in label.triple)}]"
    return str(label)


def _label_key(label):
    if isinstance(label, B2Label):
        return (label.g, label.h, grade_key(label.triple))
    return tuple(label)


def basis_element(params: GDParams, label: B2Label) -> AlgebraElement:
    if not is_anchored(params, label.g, label.h, label.triple):
        raise ValueError(f"{label} is not a valid basis label")
    f = params.field
    return AlgebraElement._trusted(f, {label: f.one})


def zero(params: GDParams) -> AlgebraElement:
    return AlgebraElement._trusted(params.field, {})


# ---------------------------------------------------------------------------
# basis enumeration

def b2_labels(params: GDParams) -> list[B2Label]:
    return _b2_labels(params.factors)


@lru_cache(maxsize=None)
def _b2_labels(factors) -> list[B2Label]:
    params = GDParams(factors)
    colors = enumerate_colors(params)
    return [B2Label(g, h, t) for g in colors for h in colors for t in enumerate_U(params, g, h)]


def b1_labels(params: GDParams) -> list[B1Label]:
    colors = enumerate_colors(params)
    return [B1Label(g, i, h) for g in colors for h in colors for i in enumerate_P(params, g, h)]


def dim_T(params: GDParams) -> int:
    n1, n2, n3, n4 = params.shape_counts()
    return 2 ** (n1 + 2 * n4) * 3**n4 * 5**n1 * 11 ** (n2 + n3)


def center_dim(params: GDParams) -> int:
    n1, n2, n3, n4 = params.shape_counts()
    return 2 ** (n1 + 2 * n4) * 3 ** (n2 + n3)


# ---------------------------------------------------------------------------
# products

def product_integer(params: GDParams, a: B2Label, b: B2Label) -> tuple[int, B2Label] | None:
    """Integer structure constant: B_a B_b = c * B_label, or None when h != l."""
    if a.h != b.g:
        return None
    return _product_integer(params.factors, a, b)


@lru_cache(maxsize=1 << 18)
def _product_integer(factors, a: B2Label, b: B2Label) -> tuple[int, B2Label]:
    params = GDParams(factors)
    g, h, j = a
    _, i, k = b
    coeff = (
        k_square(params, g, h, i)
        * k_triple(params, minus_color(j, i))
        * k_triple(params, minus_color(k, g))
        * k_triple(params, intersect(j, k))
    )
    return coeff, B2Label(g, i, _compose_unchecked(params, g, h, i, j, k))


def multiply_b2(params: GDParams, a: B2Label, b: B2Label) -> AlgebraElement:
    f = params.field
    res = product_integer(params, a, b)
    if res is None:
        return AlgebraElement._trusted(f, {})
    c = f(res[0])
    return AlgebraElement._trusted(f, {res[1]: c} if c else {})


def multiply(params: GDParams, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    f = params.field
    if x.field != f or y.field != f:
        raise ValueError("element field does not match params characteristic")
    by_left: dict[Color, list] = defaultdict(list)
    for label, c in y.terms.items():
        by_left[label.g].append((label, c))
    out: dict[B2Label, Scalar] = {}
    zero_s = f.zero
    for la, ca in x.terms.items():
        for lb, cb in by_left.get(la.h, ()):
            coeff, label = _product_integer(params.factors, la, lb)
            c = f.mul(f.mul(ca, cb), f(coeff))
            if c:
                r = f.add(out.get(label, zero_s), c)
                if r:
                    out[label] = r
                else:
                    out.pop(label, None)
    return AlgebraElement._trusted(f, out)


def identity(params: GDParams) -> AlgebraElement:
    f = params.field
    return AlgebraElement._trusted(f, {B2Label(g, g, EMPTY_TRIPLE): f.one for g in enumerate_colors(params)})


def transpose(params: GDParams, x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._trusted(x.field, {B2Label(l.h, l.g, l.triple): c for l, c in x.terms.items()})


# ---------------------------------------------------------------------------
# change of basis

def b2_expand_in_b1(params: GDParams, a: B2Label) -> dict[B1Label, Scalar]:
    f = params.field
    return {B1Label(a.g, c, a.h): f.one for c in members_U(params, a.g, a.h, a.triple)}


def b1_expand_in_b2(params: GDParams, b: B1Label) -> dict[B2Label, Scalar]:
    """Write E*_g A_i E*_h in the aggregated basis.

    Member sets are down-sets of the label poset, so each B1 element is the
    Moebius difference of its own label against all smaller ones.
    """
    g, i, h = b
    if i not in enumerate_P(params, g, h):
        raise ValueError(f"E*_{g} A_{i} E*_{h} is zero")
    f = params.field
    top = support_triple(params, g, h, i)
    out: dict[B2Label, Scalar] = {}
    for t, mu in _mobius_column(params, g, h, top).items():
        c = f(mu)
        if c:
            out[B2Label(g, h, t)] = c
    return out


def _mobius_column(params: GDParams, g: Color, h: Color, top: TripleSet) -> dict[TripleSet, int]:
    # solve X_top = B_top - sum_{t < top} X_t along the grading
    below = [t for t in enumerate_U(params, g, h) if t.precedes(top)]
    mu: dict[TripleSet, int] = {}
    for t in reversed(below):
        if t == top:
            mu[t] = 1
            continue
        mu[t] = -sum(v for s, v in mu.items() if t.precedes(s) and s != t)
    return {t: v for t, v in mu.items() if v}


# ---------------------------------------------------------------------------
# center

def center_labels(params: GDParams) -> list[CenterLabel]:
    out = []
    for s1 in submasks(params.circ_mask):
        for s3 in submasks(params.full_mask & ~s1):
            for s2 in submasks(params.bullet(s3)):
                out.append(CenterLabel(TripleSet(s1, s2, s3)))
    out.sort(key=lambda c: grade_key(c.triple))
    return out


def center_element(params: GDParams, label: CenterLabel | TripleSet) -> AlgebraElement:
    t = label.triple if isinstance(label, CenterLabel) else label
    f = params.field
    out: dict[B2Label, Scalar] = {}
    realizable = False
    for i in enumerate_colors(params):
        piece = cap_color(i, t)
        if piece == t and is_anchored(params, i, i, t):
            realizable = True
        c = f(k_triple(params, minus_color(t, i)))
        if c:
            out[B2Label(i, i, piece)] = c
    if not realizable:
        raise ValueError(f"{tuple(t)} is not a label at any diagonal anchor")
    return AlgebraElement._trusted(f, out)


def center_basis(params: GDParams) -> list[tuple[CenterLabel, AlgebraElement]]:
    return [(c, center_element(params, c)) for c in center_labels(params)]


def is_central(params: GDParams, x: AlgebraElement) -> bool:
    for label in b2_labels(params):
        b = basis_element(params, label)
        if multiply(params, x, b) != multiply(params, b, x):
            return False
    return True
