import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from gdterwilliger import matrix_oracle as mo
from gdterwilliger.fields import Field
from gdterwilliger.scheme_core import GDParams, enumerate_colors
from gdterwilliger.structure_theory import radical_basis, radical_nilpotency_index
from gdterwilliger.terwilliger_algebra import b2_labels, basis_element, center_basis, dim_T, multiply_b2

SMALL = [((2, 2),), ((3, 2),), ((2, 3),), ((3, 3),), ((2, 2), (2, 2)), ((2, 2), (3, 2))]


def test_relation_examples():
    s = mo.VertexSpace(GDParams(((2, 3),)))
    assert mo.relation_of(s, (0,), (0,)) == (0,)
    assert mo.relation_of(s, (0,), (1,)) == (1,)
    assert mo.relation_of(s, (0,), (3,)) == (2,)


@pytest.mark.parametrize("factors", SMALL)
@pytest.mark.parametrize("q", [0, 2, 3])
def test_generator_identities(factors, q):
    s = mo.VertexSpace(GDParams(factors, q))
    f = s.field
    colors = enumerate_colors(s.params)
    A = [mo.adjacency_matrix(s, g) for g in colors]
    E = [mo.dual_idempotent(s, g) for g in colors]
    total = A[0]
    for X in A[1:]:
        total = total + X
    assert total == mo.ExactMatrix.from_integers(f, np.ones((s.N, s.N), dtype=np.int64))
    assert all(X.T == X for X in A)
    for (i, X), (j, Y) in itertools.product(enumerate(E), repeat=2):
        assert X @ Y == (X if i == j else mo.ExactMatrix.from_integers(f, np.zeros((s.N, s.N), dtype=np.int64)))
    ident = E[0]
    for X in E[1:]:
        ident = ident + X
    assert ident == mo.identity_matrix(s)


@pytest.mark.parametrize("factors,want", [(((2, 2),), 10), (((2, 3),), 11), (((3, 2),), 11), (((3, 3),), 12)])
@pytest.mark.parametrize("q", [0, 2, 3, 5])
def test_generated_dimension_n1(factors, want, q):
    s = mo.VertexSpace(GDParams(factors, q))
    assert mo.generated_algebra_dimension(s) == want
    cert = mo.certified_dimension(s)
    assert cert.exact and cert.lower == want


def test_generated_dimension_two_factors():
    s = mo.VertexSpace(GDParams(((2, 3), (3, 3)), 3))
    assert mo.generated_algebra_dimension(s) == 132
    assert mo.certified_dimension(s) == mo.DimensionCertificate(132, 132)


@pytest.mark.parametrize("factors", [((2, 3),), ((3, 3),), ((2, 2), (3, 2))])
def test_base_point_robustness(factors):
    params = GDParams(factors, 2)
    rng = random.Random(7)
    sizes = [l * m for l, m in factors]
    want = dim_T(params)
    labels = b2_labels(params)
    pairs = [(rng.choice(labels), rng.choice(labels)) for _ in range(300)]
    for _ in range(3):
        base = tuple(rng.randrange(n) for n in sizes)
        s = mo.VertexSpace(params, base=base)
        assert mo.generated_algebra_dimension(s) == want
        # the structure-constant table is the same at this base point
        assert mo.verify_homomorphism(s, pairs).passed


def test_stabilizer_generators_are_automorphisms():
    s = mo.VertexSpace(GDParams(((3, 3), (2, 2))), base=(4, 1))
    gens = mo.stabilizer_generators(s)
    assert gens
    for sigma in gens:
        assert sigma[s.base] == s.base
        assert np.array_equal(s.relation[np.ix_(sigma, sigma)], s.relation)


def test_resource_cap(monkeypatch):
    with pytest.raises(mo.ResourceCapExceeded):
        mo.VertexSpace(GDParams(((16, 16), (2, 2))))
    with pytest.raises(mo.ResourceCapExceeded):
        mo.VertexSpace(GDParams(((3, 3),)), max_vertices=8)
    monkeypatch.setenv(mo.MAX_VERTICES_ENV, "8")
    with pytest.raises(mo.ResourceCapExceeded):
        mo.VertexSpace(GDParams(((3, 3),)))
    monkeypatch.setenv(mo.MAX_VERTICES_ENV, "1024")
    assert mo.VertexSpace(GDParams(((16, 16), (2, 2)))).N == 1024


@pytest.mark.parametrize("factors", SMALL)
def test_axioms_and_triple_regularity(factors):
    s = mo.VertexSpace(GDParams(factors))
    assert mo.verify_axioms(s).passed
    assert mo.verify_triple_regularity(s).passed


def test_triple_intersection_matches_matrix_entries():
    s = mo.VertexSpace(GDParams(((3, 2),)))
    colors = enumerate_colors(s.params)
    for h, i, j in itertools.product(colors, repeat=3):
        M = mo.adjacency_matrix(s, h) @ mo.dual_idempotent(s, i) @ mo.adjacency_matrix(s, j)
        for y, z in [(0, 1), (2, 3), (5, 5), (1, 4)]:
            assert mo.triple_intersection(s, y, z, h, i, j) == M.entry(y, z)


@pytest.mark.parametrize("factors", SMALL)
@pytest.mark.parametrize("q", [0, 2, 3, 5])
def test_realize_is_homomorphism(factors, q):
    params = GDParams(factors, q)
    s = mo.VertexSpace(params)
    labels = b2_labels(params)
    assert mo.verify_homomorphism(s, itertools.product(labels, repeat=2)).passed
    rng = random.Random(3)
    for _ in range(50):
        a, b = rng.choice(labels), rng.choice(labels)
        lhs = mo.realize(s, multiply_b2(params, a, b))
        assert lhs == mo.realize(s, basis_element(params, a)) @ mo.realize(s, basis_element(params, b))


def test_realized_basis_is_independent():
    for q in (0, 2, 3):
        params = GDParams(((2, 3), (3, 3)), q)
        s = mo.VertexSpace(params)
        mats = [mo.ExactMatrix.from_integers(s.field, mo.b2_indicator(s, b)) for b in b2_labels(params)]
        assert mo.span_rank(mats, q) == 132


@pytest.mark.parametrize("q", [2, 3])
def test_radical_checks_two_factors(q):
    params = GDParams(((2, 3), (3, 3)), q)
    s = mo.VertexSpace(params)
    rad = radical_basis(params)
    assert mo.verify_ideal(s, rad).passed
    assert mo.nilpotency_index(s, rad) == radical_nilpotency_index(params) == 5
    assert mo.verify_center(s, [x for _, x in center_basis(params)]).passed


def test_verify_ideal_rejects_non_ideal():
    params = GDParams(((2, 2),), 2)
    s = mo.VertexSpace(params)
    not_ideal = [b for b in b2_labels(params) if b not in radical_basis(params)][:1]
    assert not mo.verify_ideal(s, not_ideal).passed
    assert mo.verify_ideal(s, []).passed


def test_corner_report_shows_product_formula_gap():
    s = mo.VertexSpace(GDParams(((3, 3),), 2))
    r = mo.verify_corner(s, (2,))
    assert r.passed
    assert r.detail["quotient_dim"] == 2 and r.detail["product_formula_quotient_dim"] == 1


def test_verify_radical_golden_small():
    for factors, q in [(((2, 2),), 2), (((3, 3),), 2), (((2, 3),), 0)]:
        r = mo.verify_radical(mo.VertexSpace(GDParams(factors, q)))
        assert r.passed, r.detail


def test_exact_matrix_rational():
    f = Field(0)
    a = mo.ExactMatrix(f, np.array([[1, 2], [3, 4]]), 2)
    assert a.entry(0, 0) == Fraction(1, 2)
    assert (a + a).entry(1, 1) == 4
    assert (a - a).is_zero()
    assert a.scale(Fraction(2, 3)).entry(0, 1) == Fraction(2, 3)
    assert (a @ a).entry(0, 0) == Fraction(7, 4)
    big = mo.ExactMatrix(f, np.array([[2**40, 0], [0, 2**40]], dtype=np.int64))
    sq = big @ big
    assert sq.entry(0, 0) == 2**80
    assert sq == mo.ExactMatrix(f, np.array([[2**80, 0], [0, 2**80]], dtype=object))


def test_exact_matrix_modular():
    f = Field(5)
    a = mo.ExactMatrix.from_integers(f, np.array([[7, -1], [0, 5]]))
    assert a.num.tolist() == [[2, 4], [0, 0]]
    assert a.scale(3).num.tolist() == [[1, 2], [0, 0]]
    assert a != mo.ExactMatrix.from_integers(Field(7), np.array([[7, -1], [0, 5]]))


def test_compress_requires_block_constancy():
    s = mo.VertexSpace(GDParams(((2, 2),)))
    M = np.zeros((s.N, s.N), dtype=np.int64)
    M[1, 2] = 1
    with pytest.raises(mo.NotBlockConstant):
        s.compress(mo.ExactMatrix.from_integers(s.field, M))


def test_dump_csv(tmp_path):
    params = GDParams(((2, 2),), 3)
    s = mo.VertexSpace(params)
    path = tmp_path / "a.csv"
    mo.dump_matrix_csv(mo.adjacency_matrix(s, (1,)), params, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# params=2x2 char=3"
    assert lines[1] == "0,1,0,0"
    assert len(lines) == 5
