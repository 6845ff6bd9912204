import json
import os

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algext import linalg as la
from algext.algebra import algebra_validate, is_associative_unital, is_isomorphic, transport
from algext.errors import AxiomsFailed, NotAFactorization, NotARetraction, ShapeMismatch
from algext.field import field_parse
from algext.flag import base_field_algebra, two_dim_algebra
from algext.groups import cyclic_group
from algext.sampling import (
    DatumSampler,
    diagonal_algebra,
    random_commutative_datum,
    random_crossed_input,
    random_extension,
    random_factorization,
    random_invertible,
    random_valid_datum,
    random_vector,
)
from algext.unified import (
    ExtendingDatum,
    MorphismPair,
    bicrossed_product,
    check_axioms,
    classify_special,
    commutative_check,
    crossed_product,
    crossed_product_retraction,
    datum_from_json,
    datum_from_retraction,
    datum_to_json,
    factorize,
    find_cohomologous,
    find_equivalence,
    is_multiplicative,
    morphism_check,
    psi_matrix,
    raw_product_table,
    transport_datum,
    unified_product,
    zero_datum,
)

GF2, GF3 = field_parse("GF(2)"), field_parse("GF(3)")
seeds = st.integers(0, 10 ** 6)
fields = st.sampled_from(["GF(2)", "GF(3)"])


def test_zero_datum_gives_dual_numbers():
    Om = zero_datum(base_field_algebra(GF2), 1)
    assert check_axioms(Om).ok
    B = unified_product(Om)
    assert is_isomorphic(B, two_dim_algebra(GF2, 0, 0)) is not None
    assert {"semidirect", "trivial-extension", "left-split", "right-split"} <= classify_special(Om)


def test_unified_product_of_k01():
    A = two_dim_algebra(GF3, 0, 1)
    Om = zero_datum(A, 1)
    B = unified_product(Om)
    assert B.dim == 3 and algebra_validate(B).ok
    assert list(B.unit) == [1, 0, 0]


def test_bad_datum_names_failing_axioms(data_dir):
    with open(os.path.join(data_dir, "bad_datum.json")) as fh:
        Om = datum_from_json(json.load(fh))
    rep = check_axioms(Om)
    assert rep.failed() == ["A4", "A6", "A10", "A12"]
    with pytest.raises(AxiomsFailed):
        unified_product(Om)


def test_shape_mismatch():
    A = base_field_algebra(GF2)
    Om = zero_datum(A, 1)
    with pytest.raises(ShapeMismatch):
        Om.replace(vmult=GF2.zeros((2, 2, 2)))


def test_retraction_must_fix_subalgebra():
    rng = np.random.default_rng(3)
    E, A_rows, p = random_extension(GF3, rng, 2, 1)
    with pytest.raises(NotARetraction):
        datum_from_retraction(E, A_rows, GF3.mul(2, p))


@given(fields, st.integers(1, 3), st.integers(1, 2), seeds)
def test_retraction_round_trip(text, n, m, seed):
    F = field_parse(text)
    rng = np.random.default_rng(seed)
    E, A_rows, p = random_extension(F, rng, n, m)
    Om, phi = datum_from_retraction(E, A_rows, p)
    assert check_axioms(Om).ok
    # written in the basis (A basis, ker p), E is literally the unified product
    assert F.key(transport(E, phi).table) == F.key(raw_product_table(Om))


@given(fields, st.integers(1, 3), st.integers(1, 2), seeds)
def test_axioms_match_associativity(text, n, m, seed):
    F = field_parse(text)
    rng = np.random.default_rng(seed)
    Om = DatumSampler(F, rng, n, m, pool_size=2).mixed()
    from algext.algebra import Algebra
    from algext.unified import product_unit
    direct = is_associative_unital(Algebra(F, raw_product_table(Om), product_unit(Om)))
    assert check_axioms(Om).ok == direct


@given(fields, st.integers(1, 2), st.integers(1, 2), seeds)
def test_transported_datum_is_equivalent(text, n, m, seed):
    F = field_parse(text)
    rng = np.random.default_rng(seed)
    Om = random_valid_datum(F, rng, n, m)
    r = random_vector(F, rng, n * m).reshape(n, m)
    v = random_invertible(F, rng, m)
    Om2 = transport_datum(Om, r, v)
    assert check_axioms(Om2).ok
    assert morphism_check(Om, Om2, MorphismPair(r, v))
    assert is_multiplicative(F, raw_product_table(Om), raw_product_table(Om2), psi_matrix(F, r, v))
    found = find_equivalence(Om, Om2)
    assert found is not None and morphism_check(Om, Om2, found)


def test_cohomologous_requires_identity_on_v():
    rng = np.random.default_rng(7)
    Om = random_valid_datum(GF3, rng, 2, 1)
    r = GF3.array([[1], [2]])
    Om2 = transport_datum(Om, r, GF3.eye(1))
    found = find_cohomologous(Om, Om2)
    assert found is not None
    assert morphism_check(Om, Om2, MorphismPair(found, GF3.eye(1)))
    # scaling V by 2 keeps the datum equivalent but changes the actions in general
    Om3 = transport_datum(Om, GF3.zeros((2, 1)), GF3.array([[2]]))
    assert find_equivalence(Om, Om3) is not None


@given(fields, st.integers(2, 4), seeds)
def test_factorization_round_trip(text, dim, seed):
    F = field_parse(text)
    E, A_rows, V_rows = random_factorization(F, np.random.default_rng(seed), dim)
    mp, phi = factorize(E, A_rows, V_rows)
    B = bicrossed_product(mp)
    assert F.key(B.table) == F.key(transport(E, phi).table)
    assert "matched-pair" in classify_special(mp.as_datum())


def test_factorize_rejects_overlap():
    M = diagonal_algebra(GF2, 2)
    with pytest.raises(NotAFactorization):
        factorize(M, [M.unit], [M.unit])


def test_group_algebra_of_z2():
    G = cyclic_group(2)
    for F, a, b in ((GF3, 1, 0), (GF2, 0, 0)):
        A = base_field_algebra(F)
        B = crossed_product(A, G, [F.eye(1)] * 2, [[A.unit] * 2] * 2)
        # k[Z/2] is k x k when 2 is invertible and k[x]/(x^2) in characteristic 2
        assert is_isomorphic(B, two_dim_algebra(F, F.from_int(a), F.from_int(b))) is not None


def test_twisted_group_algebra_is_a_field():
    # cocycle f(g, g) = 2 gives x^2 = 2, i.e. GF(9) over GF(3)
    G = cyclic_group(2)
    A = base_field_algebra(GF3)
    two = GF3.array([2])
    B = crossed_product(A, G, [GF3.eye(1)] * 2, [[A.unit, A.unit], [A.unit, two]])
    assert is_isomorphic(B, two_dim_algebra(GF3, 2, 0)) is not None


@given(fields, st.integers(1, 2), st.sampled_from([2, 3]), seeds)
def test_crossed_products_are_left_split(text, n, order, seed):
    F = field_parse(text)
    A, G, action, cocycle = random_crossed_input(F, np.random.default_rng(seed), n, order)
    B = crossed_product(A, G, action, cocycle)
    assert algebra_validate(B).ok
    A_basis, p = crossed_product_retraction(A, G)
    Om, _ = datum_from_retraction(B, A_basis, p)
    assert "left-split" in classify_special(Om)


@given(st.integers(1, 2), st.integers(1, 2), seeds)
def test_commutative_reduction(n, m, seed):
    cd = random_commutative_datum(GF3, np.random.default_rng(seed), n, m)
    Om = cd.expand()
    ok = commutative_check(cd).ok
    assert ok == check_axioms(Om).ok
    if ok:
        B = unified_product(Om)
        assert GF3.allzero(GF3.sub(B.table, np.transpose(B.table, (1, 0, 2))))


@given(fields, st.integers(1, 2), st.integers(1, 2), seeds)
def test_datum_json_round_trip(text, n, m, seed):
    F = field_parse(text)
    Om = random_valid_datum(F, np.random.default_rng(seed), n, m)
    back = datum_from_json(json.loads(json.dumps(datum_to_json(Om))))
    assert back.key() == Om.key()
