"""Brute-force matrix model of the Terwilliger algebra.

Builds the vertex set of the direct product, its relation matrix, the
adjacency matrices and dual idempotents at a base point, and checks the
closed forms of the symbolic layers by exact linear algebra.

Vertices are tuples ``(v_1, ..., v_n)`` with ``0 <= v_i < l_i * m_i``; the
value ``v`` lies in group ``v // m_i`` at position ``v % m_i``.  The default
base point is the all-zeros vertex, which is the one the symbolic layer is
anchored to.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg
from .basis_combinatorics import members_U
from .fields import Field
from .scheme_core import Color, GDParams, enumerate_colors, intersection_number
from .terwilliger_algebra import AlgebraElement, B2Label, b2_labels

DEFAULT_MAX_VERTICES = 256
MAX_VERTICES_ENV = "GDTERWILLIGER_MAX_VERTICES"


class ResourceCapExceeded(RuntimeError):
    """The vertex set is larger than the configured cap."""


class NotBlockConstant(ValueError):
    """A matrix is not constant on the (sphere, relation, sphere) blocks."""


def default_max_vertices() -> int:
    return int(os.environ.get(MAX_VERTICES_ENV, DEFAULT_MAX_VERTICES))


# ---------------------------------------------------------------------------
# exact matrices

@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Square matrix over F_p (residues) or Q (integer numerators over one denominator)."""

    field: Field
    num: np.ndarray
    den: int = 1

    @classmethod
    def from_integers(cls, field: Field, M: np.ndarray) -> ExactMatrix:
        p = field.characteristic
        if p:
            return cls(field, np.mod(M, p).astype(np.int64))
        return cls(field, np.asarray(M), 1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        p = self.field.characteristic
        if p:
            return ExactMatrix(self.field, (self.num @ other.num) % p)
        return ExactMatrix(self.field, _safe_matmul(self.num, other.num), self.den * other.den)._reduce()

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return self._lin(other, 1)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self._lin(other, -1)

    def _lin(self, other: ExactMatrix, sign: int) -> ExactMatrix:
        p = self.field.characteristic
        if p:
            return ExactMatrix(self.field, (self.num + sign * other.num) % p)
        d = lcm(self.den, other.den)
        num = _promote(self.num) * (d // self.den) + sign * _promote(other.num) * (d // other.den)
        return ExactMatrix(self.field, num, d)._reduce()

    def scale(self, c) -> ExactMatrix:
        p = self.field.characteristic
        c = self.field(c)
        if p:
            return ExactMatrix(self.field, self.num * c % p)
        c = Fraction(c)
        return ExactMatrix(self.field, _promote(self.num) * c.numerator, self.den * c.denominator)._reduce()

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.num.T.copy(), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.field.characteristic:
            return bool(np.array_equal(self.num, other.num))
        return bool(np.array_equal(_promote(self.num) * other.den, _promote(other.num) * self.den))

    __hash__ = None

    def entry(self, i: int, j: int):
        if self.field.characteristic:
            return int(self.num[i, j])
        return Fraction(int(self.num[i, j]), self.den)

    def _reduce(self) -> ExactMatrix:
        if self.den == 1:
            return ExactMatrix(self.field, _demote(self.num), 1)
        g = self.den
        for v in np.unique(np.abs(self.num)).tolist():
            g = gcd(g, int(v))
            if g == 1:
                break
        return ExactMatrix(self.field, _demote(self.num // g), self.den // g)

    def flat_integer(self) -> np.ndarray:
        """Row vector with the same span behaviour (denominator dropped)."""
        return self.num.ravel()


_INT64_SAFE = 1 << 62


def _promote(M: np.ndarray) -> np.ndarray:
    if M.dtype == object:
        return M
    if M.size and int(np.abs(M).max()) > 1 << 30:
        return M.astype(object)
    return M


def _demote(M: np.ndarray) -> np.ndarray:
    if M.dtype != object:
        return M
    if M.size == 0 or max(abs(int(x)) for x in M.ravel()) < 1 << 62:
        return M.astype(np.int64)
    return M


def _safe_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.dtype != object and B.dtype != object and A.size and B.size:
        bound = int(np.abs(A).max()) * int(np.abs(B).max()) * A.shape[1]
        if bound < _INT64_SAFE:
            return A @ B
    return A.astype(object) @ B.astype(object)


# ---------------------------------------------------------------------------
# vertex space

class VertexSpace:
    """All vertices of the direct product, relations, and spheres around a base point."""

    def __init__(self, params: GDParams, base: Sequence[int] | None = None, max_vertices: int | None = None) -> None:
        cap = default_max_vertices() if max_vertices is None else max_vertices
        N = params.num_vertices
        if N > cap:
            raise ResourceCapExceeded(f"{N} vertices exceed the cap of {cap}")
        self.params = params
        self.field = params.field
        self.n = params.n
        sizes = [l * m for l, m in params.factors]
        self.vertices = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64).reshape(N, self.n)
        self.N = N
        self.strides = np.array([int(np.prod(sizes[a + 1:], dtype=np.int64)) for a in range(self.n)], dtype=np.int64)
        weights = 3 ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        rel = np.zeros((N, N), dtype=np.int64)
        for a, (l, m) in enumerate(params.factors):
            col = self.vertices[:, a]
            same = col[:, None] == col[None, :]
            same_group = (col // m)[:, None] == (col // m)[None, :]
            entry = np.where(same, 0, np.where(same_group, 1, 2))
            rel += entry * weights[a]
        self.relation = rel
        self.num_colors = 3**self.n
        base = tuple(base) if base is not None else (0,) * self.n
        self.base_vertex = base
        self.base = self.index_of(base)
        self.sphere = rel[self.base].copy()
        self._colors = enumerate_colors(params)
        self._block_cache = None

    def index_of(self, v: Sequence[int]) -> int:
        idx = 0
        for a, (l, m) in enumerate(self.params.factors):
            if not 0 <= v[a] < l * m:
                raise ValueError(f"vertex {v} out of range")
            idx = idx * (l * m) + int(v[a])
        return idx

    def color_code(self, g: Color) -> int:
        code = 0
        for e in g:
            code = code * 3 + e
        return code

    def code_color(self, code: int) -> Color:
        return self._colors[code]

    # blocks: (sphere of y, relation of (y,z), sphere of z)
    @property
    def block_index(self) -> np.ndarray:
        if self._block_cache is None:
            C = self.num_colors
            codes = (self.sphere[:, None] * C + self.relation) * C + self.sphere[None, :]
            uniq, inverse = np.unique(codes.ravel(), return_inverse=True)
            first = np.full(len(uniq), -1, dtype=np.int64)
            order = np.arange(codes.size)[::-1]
            first[inverse[order]] = order
            self._block_cache = (uniq, inverse.reshape(self.N, self.N), first)
        return self._block_cache[1]

    @property
    def num_blocks(self) -> int:
        self.block_index
        return len(self._block_cache[0])

    def compress(self, M: ExactMatrix) -> np.ndarray:
        """Values on one representative pair per block, after checking block constancy."""
        idx = self.block_index
        first = self._block_cache[2]
        flat = M.num.ravel()
        reps = flat[first]
        if not np.array_equal(reps[idx.ravel()], flat):
            raise NotBlockConstant("matrix is not constant on blocks")
        return reps


def relation_of(space: VertexSpace, y: Sequence[int] | int, z: Sequence[int] | int) -> Color:
    yi = y if isinstance(y, (int, np.integer)) else space.index_of(y)
    zi = z if isinstance(z, (int, np.integer)) else space.index_of(z)
    return space.code_color(int(space.relation[yi, zi]))


def adjacency_matrix(space: VertexSpace, g: Color) -> ExactMatrix:
    M = (space.relation == space.color_code(g)).astype(np.int64)
    return ExactMatrix.from_integers(space.field, M)


def dual_idempotent(space: VertexSpace, g: Color) -> ExactMatrix:
    M = np.diag((space.sphere == space.color_code(g)).astype(np.int64))
    return ExactMatrix.from_integers(space.field, M)


def identity_matrix(space: VertexSpace) -> ExactMatrix:
    return ExactMatrix.from_integers(space.field, np.eye(space.N, dtype=np.int64))


def generators(space: VertexSpace) -> list[ExactMatrix]:
    colors = enumerate_colors(space.params)
    return [adjacency_matrix(space, g) for g in colors] + [dual_idempotent(space, g) for g in colors]


def b2_indicator(space: VertexSpace, label: B2Label) -> np.ndarray:
    """0/1 integer matrix of the aggregated basis element."""
    g, h, t = label
    codes = [space.color_code(a) for a in members_U(space.params, g, h, t)]
    rows = space.sphere == space.color_code(g)
    cols = space.sphere == space.color_code(h)
    mask = rows[:, None] & cols[None, :] & np.isin(space.relation, codes)
    return mask.astype(np.int64)


def b1_indicator(space: VertexSpace, g: Color, i: Color, h: Color) -> np.ndarray:
    rows = space.sphere == space.color_code(g)
    cols = space.sphere == space.color_code(h)
    return (rows[:, None] & cols[None, :] & (space.relation == space.color_code(i))).astype(np.int64)


def realize(space: VertexSpace, x: AlgebraElement) -> ExactMatrix:
    f = space.field
    if x.field != f:
        raise ValueError("element and vertex space have different characteristics")
    p = f.characteristic
    if p:
        M = np.zeros((space.N, space.N), dtype=np.int64)
        for label, c in x.terms.items():
            M += int(c) * b2_indicator(space, label)
        return ExactMatrix(f, M % p)
    den = 1
    for c in x.terms.values():
        den = lcm(den, Fraction(c).denominator)
    M = np.zeros((space.N, space.N), dtype=np.int64)
    for label, c in x.terms.items():
        M += int(Fraction(c) * den) * b2_indicator(space, label)
    return ExactMatrix(f, M, den)._reduce()


# ---------------------------------------------------------------------------
# generated algebra

def _stack(mats: Iterable[ExactMatrix]) -> np.ndarray:
    rows = [m.flat_integer() for m in mats]
    if any(r.dtype == object for r in rows):
        return np.vstack([r.astype(object) for r in rows])
    return np.vstack(rows)


def span_rank(mats: Sequence[ExactMatrix], characteristic: int) -> int:
    if not mats:
        return 0
    return linalg.rank(_stack(mats), characteristic)


def generated_algebra_dimension(space: VertexSpace) -> int:
    """Dimension of the algebra generated by all A_g and E*_g, by span closure."""
    p = space.field.characteristic
    gens = generators(space)
    basis = [identity_matrix(space)]
    frontier = list(basis)
    while frontier:
        cands = [g @ w for w in frontier for g in gens]
        # over Q, choose words modulo a large prime; closure is certified below
        chosen = linalg.row_profile_mod_p(_stack(basis + cands), p or linalg.LARGE_PRIME)
        new = [cands[i - len(basis)] for i in chosen if i >= len(basis)]
        basis.extend(new)
        frontier = new
    if p == 0:
        # the basis was chosen modulo a large prime; certify closure over Q
        closed = basis + [g @ w for w in basis for g in gens]
        if linalg.rank(_stack(closed), 0) != len(basis):
            raise AssertionError("rational closure is larger than the modular one")
    return len(basis)


def _symmetric_generators(items: list[int], size: int) -> list[list[int]]:
    """A transposition and a full cycle on ``items``; together they generate Sym(items)."""
    out = []
    if len(items) >= 2:
        perm = list(range(size))
        perm[items[0]], perm[items[1]] = items[1], items[0]
        out.append(perm)
    if len(items) >= 3:
        perm = list(range(size))
        for x, y in zip(items, items[1:] + items[:1]):
            perm[x] = y
        out.append(perm)
    return out


def stabilizer_generators(space: VertexSpace) -> list[np.ndarray]:
    """Permutations of the vertices that preserve every relation and fix the base point.

    Per factor: permute the groups not containing the base value, permute
    the positions of one such group, and permute the other positions of the
    base value's group.  Each candidate is checked against the relation
    matrix before it is returned.
    """
    out = []
    for a, (l, m) in enumerate(space.params.factors):
        size = l * m
        bg, bp = divmod(space.base_vertex[a], m)
        others = [g for g in range(l) if g != bg]
        maps = []
        # swapping whole groups: act on group labels, keep positions
        for gperm in _symmetric_generators(others, l):
            maps.append([gperm[v // m] * m + v % m for v in range(size)])
        if others:
            g0 = others[0]
            maps += _symmetric_generators([g0 * m + q for q in range(m)], size)
        maps += _symmetric_generators([bg * m + q for q in range(m) if q != bp], size)
        for perm in maps:
            image = space.vertices.copy()
            image[:, a] = np.asarray(perm)[image[:, a]]
            out.append(image @ space.strides)
    for sigma in out:
        if sigma[space.base] != space.base:
            raise AssertionError("candidate permutation moves the base point")
        if not np.array_equal(space.relation[np.ix_(sigma, sigma)], space.relation):
            raise AssertionError("candidate permutation is not an automorphism")
    return out


@dataclass(frozen=True)
class DimensionCertificate:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def certified_dimension(space: VertexSpace) -> DimensionCertificate:
    """Two-sided bound on the dimension, valid over every field.

    Lower: nonzero E*_a A_b E*_c are 0/1 matrices with disjoint supports,
    all inside the algebra.  Upper: the algebra commutes with every
    relation-preserving permutation fixing the base point, so it sits in
    the span of the orbit indicators of such a group on pairs.
    """
    lower = space.num_blocks
    N = space.N
    pair = np.arange(N * N, dtype=np.int64)
    src, dst = [], []
    for sigma in stabilizer_generators(space):
        src.append(pair)
        dst.append(sigma[pair // N] * N + sigma[pair % N])
    if src:
        s = np.concatenate(src)
        d = np.concatenate(dst)
        graph = coo_matrix((np.ones_like(s, dtype=np.int8), (s, d)), shape=(N * N, N * N))
        upper = connected_components(graph, directed=True, connection="weak")[0]
    else:
        upper = N * N
    return DimensionCertificate(lower, int(upper))


# ---------------------------------------------------------------------------
# counting checks

def triple_intersection(space: VertexSpace, y: int, z: int, h: Color, i: Color, j: Color) -> int:
    """|y R_h  cap  x R_i  cap  z R_j| with x the base point."""
    R = space.relation
    mask = (R[y] == space.color_code(h)) & (R[space.base] == space.color_code(i)) & (R[z] == space.color_code(j))
    return int(mask.sum())


@dataclass
class CheckReport:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def verify_axioms(space: VertexSpace) -> CheckReport:
    """Partition, identity relation, symmetry and constant intersection numbers."""
    R = space.relation
    C = space.num_colors
    N = space.N
    problems = []
    if not np.array_equal(np.diag(R), np.zeros(N, dtype=np.int64)) or np.any(R[~np.eye(N, dtype=bool)] == 0):
        problems.append("relation 0 is not the diagonal")
    if not np.array_equal(R, R.T):
        problems.append("relations are not symmetric")
    used = np.unique(R)
    if len(used) != C:
        problems.append(f"only {len(used)} of {C} relations are nonempty")
    colors = space._colors
    expected = np.zeros((C, C, C), dtype=np.int64)  # [k, g, h] -> p^k_{g,h}
    for g_code, g in enumerate(colors):
        for h_code, h in enumerate(colors):
            for k_code, k in enumerate(colors):
                expected[k_code, g_code, h_code] = intersection_number(space.params, g, h, k)
    mismatches = 0
    for y in range(N):
        key = (np.arange(N)[:, None] * C * C + R[y][None, :] * C + R.T[:, :]).ravel()
        # key indexes (z, R[y,w], R[w,z]) with w running along axis 1
        counts = np.bincount(key, minlength=N * C * C).reshape(N, C, C)
        want = expected[R[y]]
        mismatches += int(np.count_nonzero(counts != want))
    if mismatches:
        problems.append(f"{mismatches} intersection counts disagree with the closed form")
    return CheckReport("scheme_axioms", not problems, {"problems": problems, "vertices": N})


def verify_triple_regularity(space: VertexSpace) -> CheckReport:
    """Triple counts depend only on the six relation labels."""
    R = space.relation
    C = space.num_colors
    N = space.N
    K = C**3
    table: dict[tuple[int, int], int] = {}
    bad = 0
    for x in range(N):
        cls = (R[x][:, None] * C + R[x][None, :]) * C + R  # (y, z) -> (r(x,y), r(x,z), r(y,z))
        # key per (y, z, w): (R[y,w], R[x,w], R[z,w])
        key = (R[:, None, :] * C + R[x][None, None, :]) * C + R[None, :, :]
        flat = (np.arange(N * N).reshape(N, N)[:, :, None] * K + key).ravel()
        counts = np.bincount(flat, minlength=N * N * K).reshape(N * N, K)
        cls_flat = cls.ravel()
        for c in np.unique(cls_flat):
            rows = counts[cls_flat == c]
            if np.any(rows != rows[0]):
                bad += 1
            prev = table.setdefault(int(c), hash(rows[0].tobytes()))
            if prev != hash(rows[0].tobytes()):
                bad += 1
    return CheckReport("triple_regularity", bad == 0, {"inconsistent_classes": bad, "vertices": N})


def verify_homomorphism(space: VertexSpace, pairs: Iterable[tuple[B2Label, B2Label]]) -> CheckReport:
    """realize(B_a B_b) == realize(B_a) realize(B_b) for the given label pairs."""
    from .terwilliger_algebra import product_integer

    f = space.field
    p = f.characteristic
    cache: dict[B2Label, np.ndarray] = {}

    def ind(label):
        if label not in cache:
            cache[label] = b2_indicator(space, label)
        return cache[label]

    checked = failures = 0
    for a, b in pairs:
        prod = ind(a) @ ind(b)
        res = product_integer(space.params, a, b)
        want = np.zeros_like(prod) if res is None else res[0] * ind(res[1])
        if p:
            ok = np.array_equal(prod % p, want % p)
        else:
            ok = np.array_equal(prod, want)
        checked += 1
        failures += not ok
    return CheckReport("homomorphism", failures == 0, {"pairs": checked, "failures": failures})


def verify_center(space: VertexSpace, elements: Iterable[AlgebraElement]) -> CheckReport:
    gens = generators(space)
    bad = 0
    count = 0
    for x in elements:
        X = realize(space, x)
        count += 1
        for G in gens:
            if X @ G != G @ X:
                bad += 1
                break
    return CheckReport("center_commutes", bad == 0, {"elements": count, "non_commuting": bad})


def _labels_span(space: VertexSpace, labels: Sequence[B2Label]) -> list[ExactMatrix]:
    f = space.field
    return [ExactMatrix.from_integers(f, b2_indicator(space, b)) for b in labels]


def _compressed(space: VertexSpace, mats: Sequence[ExactMatrix]) -> np.ndarray:
    rows = [space.compress(m) for m in mats]
    if any(r.dtype == object for r in rows):
        return np.vstack([r.astype(object) for r in rows])
    return np.vstack(rows) if rows else np.zeros((0, space.num_blocks), dtype=np.int64)


def verify_ideal(space: VertexSpace, labels: Sequence[B2Label]) -> CheckReport:
    """The span of the given basis elements is closed under multiplication by generators on both sides."""
    p = space.field.characteristic
    if not labels:
        return CheckReport("two_sided_ideal", True, {"dim": 0})
    mats = _labels_span(space, labels)
    gens = generators(space)
    base = _compressed(space, mats)
    r = linalg.rank(base, p)
    prods = [G @ M for M in mats for G in gens] + [M @ G for M in mats for G in gens]
    r2 = linalg.rank(np.vstack([base, _compressed(space, prods)]), p)
    return CheckReport("two_sided_ideal", r == r2 == len(labels), {"dim": r, "dim_after_products": r2})


def ideal_power_dims(space: VertexSpace, labels: Sequence[B2Label], limit: int) -> list[int]:
    """Dimensions of I, I^2, I^3, ... until zero or ``limit`` powers."""
    p = space.field.characteristic
    mats = _labels_span(space, labels)
    if not mats:
        return [0]
    current = mats
    dims = []
    for _ in range(limit):
        comp = _compressed(space, current)
        keep = linalg.row_profile(comp, p)
        current = [current[i] for i in keep]
        dims.append(len(current))
        if not current:
            break
        nxt = [X @ Y for X in current for Y in mats]
        current = [M for M in nxt if not M.is_zero()]
    return dims


def nilpotency_index(space: VertexSpace, labels: Sequence[B2Label], limit: int = 16) -> int:
    """Least t with I^t = 0 for the span I of the labels (1 when I = 0)."""
    dims = ideal_power_dims(space, labels, limit)
    if dims[-1] != 0:
        raise AssertionError(f"span is not nilpotent within {limit} powers")
    return len(dims) if dims != [0] else 1


def verify_nilpotency(space: VertexSpace, labels: Sequence[B2Label], predicted: int) -> CheckReport:
    dims = ideal_power_dims(space, labels, predicted + 1)
    actual = len(dims) if dims[-1] == 0 and dims != [0] else (1 if dims == [0] else None)
    return CheckReport("nilpotency", actual == predicted, {"power_dims": dims, "index": actual, "predicted": predicted})


def verify_matrix_units(space: VertexSpace, pairs=None) -> CheckReport:
    """Realized D products agree with the quotient table modulo the realized radical."""
    from .structure_theory import lift, quotient_basis, quotient_multiply, radical_basis

    params = space.params
    p = space.field.characteristic
    qb = quotient_basis(params)
    if pairs is None:
        pairs = [(a, b) for a in qb for b in qb]
    rad = _labels_span(space, radical_basis(params))
    rad_comp = _compressed(space, rad) if rad else None
    rad_rank = linalg.rank(rad_comp, p) if rad else 0
    cache: dict = {}

    def D(label):
        if label not in cache:
            cache[label] = realize(space, lift(params, label))
        return cache[label]

    zero = ExactMatrix.from_integers(space.field, np.zeros((space.N, space.N), dtype=np.int64))
    checked = failures = 0
    for a, b in pairs:
        c = quotient_multiply(params, a, b)
        diff = D(a) @ D(b) - (D(c) if c is not None else zero)
        checked += 1
        if diff.is_zero():
            continue
        if rad_comp is None:
            failures += 1
            continue
        v = space.compress(diff)
        both = np.vstack([rad_comp.astype(object) if v.dtype == object else rad_comp, v[None, :]])
        if linalg.rank(both, p) != rad_rank:
            failures += 1
    return CheckReport("matrix_units", failures == 0, {"pairs": checked, "failures": failures})


def verify_radical(space: VertexSpace, pairs=None) -> CheckReport:
    """Certify that the closed-form radical candidate is exactly Rad(T).

    A nilpotent two-sided ideal lies in the radical.  If moreover the lifted
    D elements span T modulo the ideal and multiply like matrix units there,
    the quotient is a product of full matrix algebras, hence semisimple, and
    the ideal contains the radical.
    """
    from .structure_theory import lift, quotient_basis, radical_basis

    params = space.params
    p = space.field.characteristic
    rad = radical_basis(params)
    ideal = verify_ideal(space, rad)
    index = nilpotency_index(space, rad) if rad else 1
    lifts = [realize(space, lift(params, d)) for d in quotient_basis(params)]
    rows = _compressed(space, _labels_span(space, rad) + lifts)
    spanned = linalg.rank(rows, p)
    full = linalg.rank(_compressed(space, _labels_span(space, b2_labels(params))), p)
    units = verify_matrix_units(space, pairs)
    detail = {
        "radical_dim": len(rad),
        "is_ideal": ideal.passed,
        "nilpotency_index": index,
        "span_with_units": spanned,
        "dim_T": full,
        "unit_pairs": units.detail["pairs"],
        "unit_failures": units.detail["failures"],
    }
    ok = ideal.passed and spanned == full == len(rad) + len(lifts) and units.passed
    return CheckReport("radical", ok, detail)


def verify_corner(space: VertexSpace, g: Color) -> CheckReport:
    """Certify the radical and semisimple quotient of E*_g T E*_g.

    The closed-form candidate I_g must be a nilpotent ideal of the corner with
    the predicted index, and the corner D elements must be pairwise
    orthogonal idempotents that together with I_g span the corner.  Then the
    quotient is a product of copies of the field, so I_g is the radical.
    """
    from .basis_combinatorics import enumerate_U, k_triple
    from .structure_theory import (
        corner_nilpotency_index,
        corner_quotient_dim,
        corner_quotient_dim_product,
        corner_radical_basis,
        d_element,
    )

    params = space.params
    p = space.field.characteristic
    corner = [B2Label(g, g, t) for t in enumerate_U(params, g, g)]
    rad = corner_radical_basis(params, g)
    idem_labels = [t for t in enumerate_U(params, g, g) if not (p and k_triple(params, t) % p == 0)]
    idems = [realize(space, d_element(params, g, g, t)) for t in idem_labels]
    problems = []
    for i, X in enumerate(idems):
        for j, Y in enumerate(idems):
            prod = X @ Y
            if i == j and prod != X:
                problems.append("D element is not idempotent")
            if i != j and not prod.is_zero():
                problems.append("D elements are not orthogonal")
        if X.is_zero():
            problems.append("zero D element")
    rad_mats = _labels_span(space, rad)
    corner_mats = _labels_span(space, corner)
    span_dim = linalg.rank(_compressed(space, rad_mats + idems), p) if rad_mats + idems else 0
    corner_dim = linalg.rank(_compressed(space, corner_mats), p)
    if span_dim != corner_dim:
        problems.append("radical and idempotents do not span the corner")
    r = 0
    if rad:
        base = _compressed(space, rad_mats)
        r = linalg.rank(base, p)
        prods = [X @ Y for X in corner_mats for Y in rad_mats]
        if linalg.rank(np.vstack([base, _compressed(space, prods)]), p) != r:
            problems.append("corner radical candidate is not an ideal")
    index = nilpotency_index(space, rad) if rad else 1
    quotient = corner_dim - r
    if quotient != len(idems):
        problems.append("idempotent count differs from the quotient dimension")
    detail = {
        "color": list(g),
        "quotient_dim": quotient,
        "predicted_quotient_dim": corner_quotient_dim(params, g),
        "product_formula_quotient_dim": corner_quotient_dim_product(params, g),
        "nilpotency_index": index,
        "predicted_nilpotency_index": corner_nilpotency_index(params, g),
        "problems": problems,
    }
    ok = not problems and quotient == detail["predicted_quotient_dim"] and index == detail["predicted_nilpotency_index"]
    return CheckReport("corner", ok, detail)


def dump_matrix_csv(M: ExactMatrix, params: GDParams, path) -> None:
    """Row-major CSV, scalars as decimal strings, with a header line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# params={params.spec_string()} char={params.characteristic}\n")
        for i in range(M.shape[0]):
            fh.write(",".join(str(M.entry(i, j)) for j in range(M.shape[1])) + "\n")
