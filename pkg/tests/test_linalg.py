import numpy as np
from hypothesis import given, strategies as st

from algext import linalg as la
from algext.field import field_parse

FIELDS = ["GF(2)", "GF(3)", "GF(4)", "GF(5)"]


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    F = field_parse(draw(st.sampled_from(FIELDS)))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, F.order - 1), min_size=r * c, max_size=r * c))
    return F, F.array(np.array(vals).reshape(r, c))


def _span_size(F, M):
    coeffs = la.all_vectors(F, M.shape[0])
    return len({F.key(F.einsum("i,ij->j", c, M)) for c in coeffs})


@given(matrices())
def test_rank_counts_span(data):
    F, M = data
    # independent oracle: |row space| = q^rank, counted by enumeration
    assert _span_size(F, M) == F.order ** la.rank(F, M)


@given(matrices())
def test_rref_is_reduced(data):
    F, M = data
    R, piv = la.rref(F, M)
    for i, c in enumerate(piv):
        assert R[i, c] == F.one
        assert all(R[j, c] == F.zero for j in range(R.shape[0]) if j != i)
    assert la.rank(F, R) == la.rank(F, M) == len(piv)


@given(matrices())
def test_nullspace(data):
    F, M = data
    K = la.nullspace(F, M)
    assert K.shape[0] == M.shape[1] - la.rank(F, M)
    for k in K:
        assert F.allzero(la.matvec(F, M, k))


@given(matrices(max_cols=4, max_rows=4))
def test_inverse(data):
    F, M = data
    if M.shape[0] != M.shape[1]:
        assert la.inverse(F, M) is None
        return
    inv = la.inverse(F, M)
    if la.rank(F, M) < M.shape[0]:
        assert inv is None
    else:
        assert F.key(la.matmul(F, M, inv)) == F.key(F.eye(M.shape[0]))


@given(matrices(), st.integers(0, 10 ** 6))
def test_solve_affine(data, seed):
    F, M = data
    rng = np.random.default_rng(seed)
    x = F.array(rng.integers(0, F.order, M.shape[1]))
    b = la.matvec(F, M, x)
    x0, kernel = la.solve_affine(F, M, b)
    assert F.key(la.matvec(F, M, x0)) == F.key(b)
    assert kernel.shape[0] == M.shape[1] - la.rank(F, M)


@given(matrices(max_rows=3))
def test_coordinates_many_agree_with_single(data):
    F, M = data
    B = la.row_basis(F, M, M.shape[1])
    vecs = la.span_elements(F, B)
    many = la.coordinates_many(F, B, vecs)
    for v, c in zip(vecs, many):
        assert F.key(c) == F.key(la.coordinates(F, B, v))
        assert F.key(F.einsum("i,ij->j", c, B)) == F.key(v)


def test_coordinates_outside_span():
    F = field_parse("GF(3)")
    B = F.array([[1, 0, 0]])
    assert la.coordinates(F, B, F.array([0, 1, 0])) is None
    assert la.coordinates_many(F, B, F.array([[1, 0, 0], [0, 1, 0]])) is None


def test_gl_orders():
    for text, n, order in [("GF(2)", 2, 6), ("GF(3)", 2, 48), ("GF(2)", 3, 168), ("GF(4)", 1, 3)]:
        assert sum(1 for _ in la.invertible_matrices(field_parse(text), n)) == order


def test_subspace_counts():
    # Gaussian binomials [4 choose 2]_2 = 35, [3 choose 1]_3 = 13
    assert sum(1 for _ in la.subspaces(field_parse("GF(2)"), 4, 2)) == 35
    assert sum(1 for _ in la.subspaces(field_parse("GF(3)"), 3, 1)) == 13


def test_affine_solutions():
    F = field_parse("GF(3)")
    # x0 + x1 = 1 has three solutions
    sols = la.affine_solutions(F, lambda x: F.array([F.sub(F.add(x[0], x[1]), F.one)]), 2)
    assert len(sols) == 3
