import itertools
import random
from fractions import Fraction

import pytest

from gdterwilliger.basis_combinatorics import EMPTY_TRIPLE, TripleSet, enumerate_U, k_triple, union, intersect
from gdterwilliger.scheme_core import GDParams, enumerate_colors
from gdterwilliger.terwilliger_algebra import (
    AlgebraElement,
    B1Label,
    B2Label,
    CenterLabel,
    b1_expand_in_b2,
    b1_labels,
    b2_expand_in_b1,
    b2_labels,
    basis_element,
    center_dim,
    center_element,
    center_labels,
    dim_T,
    identity,
    is_central,
    multiply,
    multiply_b2,
    product_integer,
    transpose,
    zero,
)

N1 = [((2, 2),), ((3, 2),), ((2, 3),), ((3, 3),)]
N2 = [((2, 3), (3, 3)), ((2, 2), (2, 2)), ((3, 2), (2, 3))]
CHARS = [0, 2, 3, 5]

# single-coordinate triples used in the n = 1 examples
TG = TripleSet(0, 0, 1)
TH = TripleSet(0, 1, 1)
TI = TripleSet(1, 0, 0)


def test_dim_T_n1():
    assert [dim_T(GDParams(f)) for f in N1] == [10, 11, 11, 12]
    assert dim_T(GDParams(((2, 3), (3, 3)))) == 132
    assert dim_T(GDParams(((2, 2), (3, 2), (2, 3), (3, 3)))) == 2 * 5 * 11 * 11 * 4 * 3


@pytest.mark.parametrize("factors", N1 + N2 + [((4, 4), (2, 2), (3, 2))])
def test_dim_T_counts_labels(factors):
    p = GDParams(factors)
    assert len(b2_labels(p)) == dim_T(p) == len(b1_labels(p))
    assert len(set(b2_labels(p))) == dim_T(p)


def test_n1_bases():
    base = {B2Label((g,), (h,), EMPTY_TRIPLE) for g in range(3) for h in range(3)} | {B2Label((2,), (2,), TG)}
    extra = [
        set(),
        {B2Label((2,), (2,), TH)},
        {B2Label((1,), (1,), TI)},
        # (∅,{1},{1}) only anchors at color 2 and ({1},∅,∅) only at color 1
        {B2Label((2,), (2,), TH), B2Label((1,), (1,), TI)},
    ]
    for factors, more in zip(N1, extra):
        assert set(b2_labels(GDParams(factors))) == base | more


@pytest.mark.parametrize("q,want", [(0, 6), (2, 0), (3, 0), (5, 1), (7, 6)])
def test_worked_product(q, want):
    p = GDParams(((2, 3), (3, 3)), q)
    k, l = (0, 2), (1, 2)
    g, h = TripleSet(0, 0, 0b10), TripleSet(0, 0b10, 0b10)
    got = multiply_b2(p, B2Label(k, l, g), B2Label(l, k, h))
    expected = basis_element(p, B2Label(k, k, h)).scale(6)
    assert got == expected
    assert got[B2Label(k, k, h)] == want


@pytest.mark.parametrize("factors", N1 + N2)
def test_product_rules(factors):
    p = GDParams(factors)
    colors = enumerate_colors(p)
    for g, h in itertools.product(colors, repeat=2):
        o_gh = basis_element(p, B2Label(g, h, EMPTY_TRIPLE))
        for t in enumerate_U(p, g, h):
            b = basis_element(p, B2Label(g, h, t))
            assert multiply(p, o_gh, basis_element(p, B2Label(h, h, t))) == b
            assert multiply(p, basis_element(p, B2Label(g, g, t)), o_gh) == b
    for g in colors:
        U = enumerate_U(p, g, g)
        for s, t in itertools.product(U, repeat=2):
            got = multiply_b2(p, B2Label(g, g, s), B2Label(g, g, t))
            want = basis_element(p, B2Label(g, g, union(s, t))).scale(k_triple(p, intersect(s, t)))
            assert got == want
    a, b = b2_labels(p)[0], b2_labels(p)[-1]
    if a.h != b.g:
        assert product_integer(p, a, b) is None
        assert not multiply_b2(p, a, b)


@pytest.mark.parametrize("factors", N1 + N2)
@pytest.mark.parametrize("q", CHARS)
def test_identity_transpose_associativity(factors, q):
    p = GDParams(factors, q)
    rng = random.Random(hash((factors, q)) & 0xFFFF)
    labels = b2_labels(p)
    one = identity(p)
    for _ in range(150):
        x, y, z = (basis_element(p, rng.choice(labels)).scale(rng.randint(1, 6)) for _ in range(3))
        x = x + basis_element(p, rng.choice(labels))
        assert multiply(p, multiply(p, x, y), z) == multiply(p, x, multiply(p, y, z))
        assert multiply(p, one, x) == x == multiply(p, x, one)
        assert transpose(p, multiply(p, x, y)) == multiply(p, transpose(p, y), transpose(p, x))


@pytest.mark.parametrize("factors", N1 + N2)
@pytest.mark.parametrize("q", CHARS)
def test_b1_b2_round_trip(factors, q):
    p = GDParams(factors, q)
    f = p.field
    for lab in b2_labels(p):
        total: dict = {}
        for b1, c in b2_expand_in_b1(p, lab).items():
            for b2, d in b1_expand_in_b2(p, b1).items():
                total[b2] = f.add(total.get(b2, f.zero), f.mul(c, d))
        assert {k: v for k, v in total.items() if v} == {lab: f.one}
    for b1 in b1_labels(p):
        total = {}
        for b2, c in b1_expand_in_b2(p, b1).items():
            for back, d in b2_expand_in_b1(p, b2).items():
                total[back] = f.add(total.get(back, f.zero), f.mul(c, d))
        assert {k: v for k, v in total.items() if v} == {b1: f.one}


@pytest.mark.parametrize("factors", N1)
def test_b1_coefficients_are_signs(factors):
    p = GDParams(factors)
    for b1 in b1_labels(p):
        assert set(b1_expand_in_b2(p, b1).values()) <= {1, -1}
    with pytest.raises(ValueError):
        b1_expand_in_b2(p, B1Label((1,), (2,), (1,)))


def test_center_dims_and_n1_bases():
    o = EMPTY_TRIPLE
    expected = [{o, TG}, {o, TG, TH}, {o, TG, TI}, {o, TG, TH, TI}]
    for factors, want in zip(N1, expected):
        p = GDParams(factors)
        assert {c.triple for c in center_labels(p)} == want
        assert len(center_labels(p)) == center_dim(p)
    for factors in N2 + [((2, 2), (3, 2), (2, 3), (3, 3))]:
        p = GDParams(factors)
        assert len(center_labels(p)) == center_dim(p)


@pytest.mark.parametrize("factors", N1 + N2)
@pytest.mark.parametrize("q", CHARS)
def test_center_elements(factors, q):
    p = GDParams(factors, q)
    assert center_element(p, CenterLabel(EMPTY_TRIPLE)) == identity(p)
    for c in center_labels(p):
        x = center_element(p, c)
        assert is_central(p, x)
        assert multiply(p, x, x) == x.scale(k_triple(p, c.triple))


def test_center_example_square():
    for q in (0, 2, 3, 5, 7):
        p = GDParams(((2, 3), (3, 3)), q)
        g = TripleSet(0, 0, 0b10)
        assert g in enumerate_U(p, (0, 2), (0, 2))
        c = center_element(p, g)
        assert multiply(p, c, c) == c.scale(3)


def test_center_element_rejects_unrealizable():
    p = GDParams(((2, 2),))
    with pytest.raises(ValueError):
        center_element(p, TripleSet(1, 0, 0))


def test_element_arithmetic():
    p = GDParams(((2, 3),), 3)
    lab = b2_labels(p)[3]
    x = basis_element(p, lab)
    assert (x + x + x) == zero(p)
    assert x - x == zero(p) and not (x - x)
    assert -x == x.scale(2)
    assert hash(x.scale(4)) == hash(x)
    assert AlgebraElement(p.field, {lab: 3}) == zero(p)
    q = GDParams(((2, 3),), 0)
    y = AlgebraElement(q.field, {lab: Fraction(1, 2)})
    assert y[lab] == Fraction(1, 2) and y.to_json()[0]["coefficient"] == "1/2"
    with pytest.raises(ValueError):
        x + y
    with pytest.raises(ValueError):
        multiply(p, y, y)
    with pytest.raises(ValueError):
        basis_element(p, B2Label((0,), (0,), TripleSet(1, 0, 0)))
