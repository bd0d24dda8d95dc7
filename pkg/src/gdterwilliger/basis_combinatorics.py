"""Triple-set calculus behind the aggregated basis.

A :class:`TripleSet` ``(s1, s2, s3)`` of coordinate bitmasks labels one basis
element for an anchor pair of colors ``(g, h)``.  Writing ``g1``/``g2`` for
the 1- and 2-profiles, the valid labels are

    s1 <= circ(g1 & h1),  s2 <= bullet(g2 & h2),  s2 <= s3 <= g2 & h2.

Everything here is integer/bitmask arithmetic; field reduction happens in
the algebra layer.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .scheme_core import Color, GDParams, enumerate_P, iter_bits, mask_to_indices, profile


class TripleSet(NamedTuple):
    s1: int
    s2: int
    s3: int

    def size(self) -> int:
        return self.s1.bit_count() + self.s2.bit_count() + self.s3.bit_count()

    def precedes(self, other: TripleSet) -> bool:
        """Componentwise inclusion, the partial order on labels."""
        return not (self.s1 & ~other.s1 or self.s2 & ~other.s2 or self.s3 & ~other.s3)

    def to_json(self) -> list[list[int]]:
        return [mask_to_indices(s) for s in self]


EMPTY_TRIPLE = TripleSet(0, 0, 0)


def submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out


def grade_key(t: TripleSet) -> tuple[int, int, int, int]:
    return (t.size(), t.s1, t.s2, t.s3)


def anchor_sets(params: GDParams, g: Color, h: Color) -> tuple[int, int, int]:
    """The three upper bounds (circ(g1&h1), bullet(g2&h2), g2&h2)."""
    _, g1, g2 = profile(g)
    _, h1, h2 = profile(h)
    both2 = g2 & h2
    return params.circ(g1 & h1), params.bullet(both2), both2


def is_anchored(params: GDParams, g: Color, h: Color, t: TripleSet) -> bool:
    a1, a2, a3 = anchor_sets(params, g, h)
    return not (t.s1 & ~a1 or t.s2 & ~a2 or t.s3 & ~a3 or t.s2 & ~t.s3)


def _require_anchored(params: GDParams, g: Color, h: Color, t: TripleSet) -> None:
    if not is_anchored(params, g, h, t):
        raise ValueError(f"triple {tuple(t)} is not a label for anchors {g}, {h}")


def enumerate_U(params: GDParams, g: Color, h: Color) -> list[TripleSet]:
    """All labels for the anchor pair, graded by size then lexicographic."""
    return _enumerate_U(anchor_sets(params, g, h))


@lru_cache(maxsize=None)
def _enumerate_U(anchors: tuple[int, int, int]) -> list[TripleSet]:
    a1, a2, a3 = anchors
    out = [
        TripleSet(s1, s2, s3)
        for s1 in submasks(a1)
        for s3 in submasks(a3)
        for s2 in submasks(a2 & s3)
    ]
    out.sort(key=grade_key)
    return out


def support_triple(params: GDParams, g: Color, h: Color, a: Color) -> TripleSet:
    """Smallest label whose member set contains the color ``a``."""
    a1_bound, a2_bound, a3_bound = anchor_sets(params, g, h)
    _, x1, x2 = profile(a)
    s2 = x2 & a2_bound
    return TripleSet(x1 & a1_bound, s2, (x1 & a3_bound) | s2)


def members_U(params: GDParams, g: Color, h: Color, t: TripleSet) -> list[Color]:
    """Colors a in P_{g,h} that are aggregated into the label ``t``."""
    _require_anchored(params, g, h, t)
    return [a for a in enumerate_P(params, g, h) if support_triple(params, g, h, a).precedes(t)]


def minimal_member(params: GDParams, g: Color, h: Color, t: TripleSet) -> Color:
    """The member color whose support triple is exactly ``t``."""
    _require_anchored(params, g, h, t)
    g0, g1, g2 = profile(g)
    h0, h1, h2 = profile(h)
    k1 = (g0 & h1) | (g1 & h0) | t.s1 | (t.s3 & ~t.s2)
    k2 = (g2 ^ h2) | t.s2
    return tuple(2 if k2 >> a & 1 else 1 if k1 >> a & 1 else 0 for a in range(params.n))


# ---------------------------------------------------------------------------
# weights

def k_weight(params: GDParams, U: int, V: int, W: int) -> int:
    """prod_U (m-1) * prod_V (l-1)m * prod_{W minus V} m."""
    return _k_weight(params.factors, U, V, W)


@lru_cache(maxsize=1 << 16)
def _k_weight(factors, U: int, V: int, W: int) -> int:
    out = 1
    for a in iter_bits(U):
        out *= factors[a][1] - 1
    for a in iter_bits(V):
        l, m = factors[a]
        out *= (l - 1) * m
    for a in iter_bits(W & ~V):
        out *= factors[a][1]
    return out


def k_triple(params: GDParams, t: TripleSet) -> int:
    return k_weight(params, t.s1, t.s2, t.s3)


def k_round(params: GDParams, g: Color, h: Color, i: Color) -> int:
    """Weight over ((g1&i1) - h1, (g2&i2) - h2, same)."""
    _, g1, g2 = profile(g)
    _, h1, h2 = profile(h)
    _, i1, i2 = profile(i)
    v = g2 & i2 & ~h2
    return k_weight(params, g1 & i1 & ~h1, v, v)


def k_square(params: GDParams, g: Color, h: Color, i: Color) -> int:
    """Weight over (h1 - (g1|i1), h2 - (g2|i2), same)."""
    _, g1, g2 = profile(g)
    _, h1, h2 = profile(h)
    _, i1, i2 = profile(i)
    v = h2 & ~(g2 | i2)
    return k_weight(params, h1 & ~(g1 | i1), v, v)


# ---------------------------------------------------------------------------
# triple-set algebra

def intersect(j: TripleSet, k: TripleSet) -> TripleSet:
    return TripleSet(j.s1 & k.s1, j.s2 & k.s2, j.s3 & k.s3)


def union(j: TripleSet, k: TripleSet) -> TripleSet:
    return TripleSet(j.s1 | k.s1, j.s2 | k.s2, j.s3 | k.s3)


def minus_color(j: TripleSet, i: Color) -> TripleSet:
    _, i1, i2 = profile(i)
    return TripleSet(j.s1 & ~i1, j.s2 & ~i2, j.s3 & ~i2)


def cap_color(i: Color, j: TripleSet) -> TripleSet:
    _, i1, i2 = profile(i)
    return TripleSet(i1 & j.s1, i2 & j.s2, i2 & j.s3)


def compose(params: GDParams, g: Color, h: Color, i: Color, j: TripleSet, k: TripleSet) -> TripleSet:
    """Label of the product of a (g,h)-element labelled j with an (h,i)-element labelled k."""
    _require_anchored(params, g, h, j)
    _require_anchored(params, h, i, k)
    return _compose_unchecked(params, g, h, i, j, k)


def _compose_unchecked(params, g, h, i, j, k) -> TripleSet:
    _, g1, g2 = profile(g)
    _, h1, h2 = profile(h)
    _, i1, i2 = profile(i)
    gi1 = g1 & i1
    gi2 = g2 & i2
    return TripleSet(
        (params.circ(gi1) & ~h1) | (gi1 & (j.s1 | k.s1)),
        (params.bullet(gi2) & ~h2) | (gi2 & (j.s2 | k.s2)),
        (gi2 & ~h2) | (gi2 & (j.s3 | k.s3)),
    )


# ---------------------------------------------------------------------------
# ceilings and layers

def ceiling(params: GDParams, g: Color, h: Color, t: TripleSet) -> TripleSet:
    _require_anchored(params, g, h, t)
    a1, _, a3 = anchor_sets(params, g, h)
    return TripleSet(a1, params.bullet(t.s3), a3)


def layer_count(params: GDParams, g: Color, h: Color, t: TripleSet) -> int:
    return ceiling(params, g, h, t).size() - t.size()


def layer(params: GDParams, g: Color, h: Color, t: TripleSet, j: int) -> list[TripleSet]:
    """Labels a with t <= a <= ceiling, |a| - |t| = j and p not dividing k_a."""
    top = layer_count(params, g, h, t)
    if not 0 <= j <= top:
        raise ValueError(f"layer {j} out of range 0..{top}")
    return list(_layers(params, g, h, t)[j])


@lru_cache(maxsize=1 << 14)
def _layers(params: GDParams, g: Color, h: Color, t: TripleSet) -> tuple[tuple[TripleSet, ...], ...]:
    top = ceiling(params, g, h, t)
    p = params.characteristic
    base = t.size()
    buckets: list[list[TripleSet]] = [[] for _ in range(top.size() - base + 1)]
    for e1 in submasks(top.s1 & ~t.s1):
        for e3 in submasks(top.s3 & ~t.s3):
            s3 = t.s3 | e3
            for e2 in submasks(top.s2 & s3 & ~t.s2):
                a = TripleSet(t.s1 | e1, t.s2 | e2, s3)
                if p and k_triple(params, a) % p == 0:
                    continue
                buckets[a.size() - base].append(a)
    return tuple(tuple(sorted(b, key=grade_key)) for b in buckets)


# ---------------------------------------------------------------------------
# coordinates where p divides a weight factor

def bad_indices(params: GDParams, t: TripleSet) -> int:
    """Coordinates responsible for p | k_t; empty exactly when p does not divide k_t."""
    p = params.characteristic
    if p == 0:
        return 0
    out = 0
    for a in iter_bits(t.s1):
        if (params.factors[a][1] - 1) % p == 0:
            out |= 1 << a
    for a in iter_bits(t.s2):
        l, m = params.factors[a]
        if (l - 1) * m % p == 0:
            out |= 1 << a
    for a in iter_bits(t.s3 & ~t.s2):
        if params.factors[a][1] % p == 0:
            out |= 1 << a
    return out


def v_set(params: GDParams, g: Color, h: Color, t: TripleSet) -> int:
    """Coordinates witnessing that B_{g,h,t} lies in the radical."""
    p = params.characteristic
    if p == 0:
        return 0
    _, g1, g2 = profile(g)
    _, h1, h2 = profile(h)
    out = bad_indices(params, t)
    for a in iter_bits(g1 ^ h1):
        if (params.factors[a][1] - 1) % p == 0:
            out |= 1 << a
    for a in iter_bits(g2 ^ h2):
        l, m = params.factors[a]
        if (l - 1) * m % p == 0:
            out |= 1 << a
    return out


def deficiency(params: GDParams, g: Color, h: Color, t: TripleSet) -> TripleSet:
    """The anchor bounds minus the label, componentwise."""
    a1, a2, a3 = anchor_sets(params, g, h)
    return TripleSet(a1 & ~t.s1, a2 & ~t.s2, a3 & ~t.s3)
