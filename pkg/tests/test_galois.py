import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _extensions import EXTENSIONS
from algext import linalg as la
from algext.algebra import algebra_validate
from algext.unified import is_multiplicative
from algext.field import field_parse
from algext.flag import base_field_algebra, datum_from_flag, enumerate_flag_datums, flag_extension, two_dim_algebra
from algext.galois import (
    codim1_action,
    embedding_bound,
    galois_group_brute,
    galois_group_codim1,
    galois_group_unified,
    group_report,
    invariants_and_galois_test,
    pair_action,
    stabilizing_costabilizing_subgroup,
)
from algext.groups import is_isomorphic_action
from algext.sampling import random_valid_datum
from algext.unified import psi_matrix, raw_product_table

# which worked extensions really are Galois over GF(p): over GF(2) the groups
# k* and k* x k* are trivial, so nothing beyond A is moved
GALOIS = {
    ("nilpotent_over_dual", 2): True, ("nilpotent_over_dual", 3): True,
    ("affine_over_k", 2): False, ("affine_over_k", 3): True,
    ("diagonal_torus", 2): False, ("diagonal_torus", 3): True,
    ("general_linear", 2): True, ("general_linear", 3): True,
}


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", list(EXTENSIONS))
def test_worked_extensions(name, p):
    F = field_parse(f"GF({p})")
    build, order = EXTENSIONS[name]
    B, A_basis = build(F)
    assert algebra_validate(B).ok
    G = galois_group_brute(B, A_basis)
    assert G.order == order(p)
    for M in G.data:
        assert is_multiplicative(F, B.table, B.table, M)
        for a in A_basis:
            assert F.key(la.matvec(F, M, a)) == F.key(a)
    _, galois = invariants_and_galois_test(B, A_basis)
    assert galois == GALOIS[(name, p)]


def test_group_names():
    F = field_parse("GF(3)")
    B, A_basis = EXTENSIONS["general_linear"][0](F)
    assert galois_group_brute(B, A_basis).describe() == "GL(2,3)"
    B, A_basis = EXTENSIONS["affine_over_k"][0](F)
    assert galois_group_brute(B, A_basis).describe() == "S3 = GL(2,2)"


def test_embedding_bound():
    assert embedding_bound(2, 1, 1) == 2
    assert embedding_bound(3, 2, 2) == 48 * 81
    G = galois_group_brute(*EXTENSIONS["nilpotent_over_dual"][0](field_parse("GF(3)")))
    rep = group_report(G, field_parse("GF(3)"), 2, 1)
    assert rep["embedding_order"] == 2 * 9 and rep["index_in_embedding"] == 6


def _agree(F, A, fd):
    B = flag_extension(A, fd)
    n = A.dim
    G1 = galois_group_brute(B, [B.basis_vector(i) for i in range(n)])
    G2 = galois_group_unified(datum_from_flag(A, fd))
    G3 = galois_group_codim1(A, fd)
    key1 = lambda g: F.key(G1.data[g])
    return (is_isomorphic_action(G1, G2, key1, lambda h: F.key(pair_action(F, G2.data[h])))
            and is_isomorphic_action(G1, G3, key1, lambda h: F.key(codim1_action(F, *G3.data[h]))))


@pytest.mark.parametrize("text", ["GF(2)", "GF(3)"])
def test_three_methods_agree_on_k00(text):
    F = field_parse(text)
    A = two_dim_algebra(F, F.zero, F.zero)
    assert all(_agree(F, A, fd) for fd in enumerate_flag_datums(A))


@settings(max_examples=15)
@given(st.sampled_from(["GF(2)", "GF(3)"]), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_pair_group_acts_by_automorphisms(text, n, seed):
    F = field_parse(text)
    Om = random_valid_datum(F, np.random.default_rng(seed), n, 1)
    T = raw_product_table(Om)
    G = galois_group_unified(Om)
    for pair in G.data:
        assert is_multiplicative(F, T, T, psi_matrix(F, pair.r, pair.v))
    H = stabilizing_costabilizing_subgroup(Om)
    assert G.order % H.order == 0
    keys = {F.key(pair_action(F, p)) for p in G.data}
    assert all(F.key(pair_action(F, p)) in keys for p in H.data)
