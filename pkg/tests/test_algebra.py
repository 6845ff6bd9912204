import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algext import linalg as la
from algext.algebra import (
    Algebra,
    algebra_from_json,
    algebra_from_presentation,
    algebra_to_json,
    algebra_validate,
    automorphisms_fixing,
    characters,
    is_isomorphic,
    is_supersolvable,
    multiply,
    presentation,
    restrict,
    subalgebra_generated,
    transport,
    unital_subalgebras,
    verify_isomorphism,
)
from algext.errors import NotASubalgebra, ParseError
from algext.field import field_parse
from algext.flag import two_dim_algebra
from algext.sampling import diagonal_algebra, matrix_algebra, random_algebra, random_invertible

GF2, GF3 = field_parse("GF(2)"), field_parse("GF(3)")


def test_presentation_validates():
    A = algebra_from_presentation(GF2, "x^2 = 0, y^2 = y, xy = x, yx = 0")
    assert algebra_validate(A).ok
    assert presentation(A) == "x^2 = 0, y^2 = y, xy = x, yx = 0"


def test_non_associative_table_fails():
    # x(xy) = x^2 but (xx)y = 0
    A = algebra_from_presentation(GF2, "x^2 = 0, y^2 = 0, xy = x, yx = 0")
    rep = algebra_validate(A)
    assert not rep.ok and rep.assoc_failures


def test_bad_presentation():
    with pytest.raises(ParseError):
        algebra_from_presentation(GF2, "x^2 = w")


def test_multiply_in_k01():
    A = two_dim_algebra(GF3, 0, 1)
    x = A.basis_vector(1)
    assert list(multiply(A, x, x)) == [0, 1]
    assert list(A.power(x, 5)) == [0, 1]


@pytest.mark.parametrize("A,count", [
    (two_dim_algebra(GF3, 0, 1), 2),
    (two_dim_algebra(GF3, 0, 0), 1),
    (two_dim_algebra(GF3, 2, 0), 0),
    (two_dim_algebra(GF2, 1, 1), 0),
    (matrix_algebra(GF2, 2), 0),
    (diagonal_algebra(GF3, 3), 3),
])
def test_character_counts(A, count):
    chars = characters(A)
    assert len(chars) == count


def _brute_characters(A):
    F = A.field
    out = []
    for chi in la.all_vectors(F, A.dim):
        if F.einsum("i,i->", chi, A.unit) != F.one:
            continue
        lhs = F.einsum("ijk,k->ij", A.table, chi)
        if F.allzero(F.sub(lhs, F.mul(chi[:, None], chi[None, :]))):
            out.append(F.key(chi))
    return sorted(out)


@given(st.sampled_from(["GF(2)", "GF(3)"]), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_characters_match_enumeration(text, dim, seed):
    F = field_parse(text)
    A = random_algebra(F, np.random.default_rng(seed), dim)
    assert sorted(F.key(c) for c in characters(A)) == _brute_characters(A)


def test_subalgebra_generated():
    M = matrix_algebra(GF2, 2)
    # e11 generates the diagonal subalgebra {1, e11}
    e11 = M.basis_vector(0)
    S = subalgebra_generated(M, [e11])
    assert S.shape[0] == 2
    assert la.in_span(GF2, S, M.unit)


def test_restrict_rejects_non_subalgebra():
    M = matrix_algebra(GF2, 2)
    with pytest.raises(NotASubalgebra):
        restrict(M, GF2.array([[0, 1, 0, 0]]))


def test_isomorphism_examples():
    assert is_isomorphic(two_dim_algebra(GF3, 0, 1), diagonal_algebra(GF3, 2)) is not None
    assert is_isomorphic(two_dim_algebra(GF2, 0, 1), two_dim_algebra(GF2, 1, 1)) is None
    # over GF(3): x^2 = 1 splits, x^2 = 2 is GF(9)
    assert is_isomorphic(two_dim_algebra(GF3, 1, 0), diagonal_algebra(GF3, 2)) is not None
    assert is_isomorphic(two_dim_algebra(GF3, 2, 0), diagonal_algebra(GF3, 2)) is None


def test_rationals_two_dim_isomorphism():
    Q = field_parse("Q")
    assert is_isomorphic(two_dim_algebra(Q, Q.from_int(2), Q.zero), two_dim_algebra(Q, Q.from_int(8), Q.zero)) is not None
    assert is_isomorphic(two_dim_algebra(Q, Q.from_int(2), Q.zero), two_dim_algebra(Q, Q.from_int(3), Q.zero)) is None


@pytest.mark.parametrize("text,count", [("GF(2)", 6), ("GF(3)", 24)])
def test_matrix_algebra_automorphisms(text, count):
    # every automorphism of M2(k) is inner, so the group is PGL(2, k)
    F = field_parse(text)
    M = matrix_algebra(F, 2)
    assert len(automorphisms_fixing(M, [M.unit])) == count


def test_supersolvable_towers():
    A = algebra_from_presentation(GF2, "x^2 = 0, y^2 = y, xy = x, yx = 0")
    tower = is_supersolvable(A)
    assert [s.shape[0] for s in tower] == [1, 2, 3]
    # GF(8) over GF(2) has no intermediate subalgebra
    G8 = algebra_from_presentation(GF2, "x^2 = y, y^2 = x + y, xy = 1 + x, yx = 1 + x")
    assert algebra_validate(G8).ok
    assert is_supersolvable(G8) is None
    assert unital_subalgebras(G8, 2) == []


def test_json_round_trip():
    A = algebra_from_presentation(GF3, "x^2 = 0, y^2 = y, xy = x, yx = 0")
    data = json.loads(json.dumps(algebra_to_json(A)))
    assert set(data) == {"field", "dim", "unit", "table"}
    B = algebra_from_json(data)
    assert B.key() == A.key()


@given(st.sampled_from(["GF(2)", "GF(3)", "GF(4)"]), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_random_algebras_are_valid(text, dim, seed):
    F = field_parse(text)
    A = random_algebra(F, np.random.default_rng(seed), dim)
    assert algebra_validate(A).ok
    assert algebra_from_json(algebra_to_json(A)).key() == A.key()


@given(st.sampled_from(["GF(2)", "GF(3)"]), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_transport_is_isomorphic(text, dim, seed):
    F = field_parse(text)
    rng = np.random.default_rng(seed)
    A = random_algebra(F, rng, dim)
    P = random_invertible(F, rng, dim)
    B = transport(A, P)
    M = is_isomorphic(A, B)
    assert M is not None and verify_isomorphism(A, B, M)
