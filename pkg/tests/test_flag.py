import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algext import linalg as la
from algext.algebra import algebra_validate, characters, is_associative_unital, is_isomorphic
from algext.errors import FlagCheckFailed, NotACharacter
from algext.field import field_parse
from algext.flag import (
    base_field_algebra,
    classify_codim1,
    datum_from_flag,
    enumerate_flag_datums,
    flag_check,
    flag_equiv,
    flag_extension,
    flag_family_generators,
    flag_from_datum,
    flag_from_json,
    make_flag,
    paper_catalog_dim2,
    paper_catalog_dim3,
    raw_flag_extension,
    supersolvable_catalog,
    transform,
    two_dim_algebra,
)
from algext.unified import check_axioms

GF2, GF3 = field_parse("GF(2)"), field_parse("GF(3)")


def _bases(F):
    return {"k": base_field_algebra(F), "k00": two_dim_algebra(F, F.zero, F.zero),
            "k01": two_dim_algebra(F, F.zero, F.one)}


def _brute_census(A):
    """Flag datums found by testing every 6-tuple through the associativity of the extension."""
    F, n = A.field, A.dim
    chars = characters(A)
    mats = [v.reshape(n, n) for v in la.all_vectors(F, n * n)]
    vecs = list(la.all_vectors(F, n))
    found = set()
    for L, l, D, d, a0, u in itertools.product(chars, chars, mats, mats, vecs, F.elements()):
        fd = make_flag(F, L, l, D, d, a0, u)
        if is_associative_unital(raw_flag_extension(A, fd)):
            found.add(fd.key(F))
    return found


@pytest.mark.parametrize("text,name", [("GF(2)", "k"), ("GF(3)", "k"), ("GF(2)", "k00")])
def test_census_matches_brute_force(text, name):
    F = field_parse(text)
    A = _bases(F)[name]
    assert {fd.key(F) for fd in enumerate_flag_datums(A)} == _brute_census(A)


@pytest.mark.parametrize("text,name,count", [
    ("GF(2)", "k", 4), ("GF(3)", "k", 9),
    ("GF(2)", "k00", 10), ("GF(3)", "k00", 33),
    ("GF(2)", "k01", 24), ("GF(3)", "k01", 72),
])
def test_census_counts(text, name, count):
    F = field_parse(text)
    assert len(enumerate_flag_datums(_bases(F)[name])) == count


def test_no_flag_datums_without_characters():
    assert enumerate_flag_datums(two_dim_algebra(GF3, 2, 0)) == []


@pytest.mark.parametrize("text,name,sizes", [
    ("GF(2)", "k00", {"F1": 4, "F2": 4, "F3": 2}),
    ("GF(3)", "k01", {"F1": 27, "F2": 27, "F3": 9, "F4": 9}),
])
def test_family_generators_cover_census(text, name, sizes):
    F = field_parse(text)
    fam = flag_family_generators(name, F)
    assert {k: len(v) for k, v in fam.items()} == sizes
    keys = [fd.key(F) for v in fam.values() for fd in v]
    assert len(set(keys)) == len(keys)
    assert set(keys) == {fd.key(F) for fd in enumerate_flag_datums(_bases(F)[name])}


def test_flag_extension_examples():
    A = base_field_algebra(GF2)
    dual = flag_extension(A, make_flag(GF2, [1], [1], [[0]], [[0]], [0], 0))
    assert is_isomorphic(dual, two_dim_algebra(GF2, 0, 0)) is not None
    split = flag_extension(A, make_flag(GF2, [1], [1], [[0]], [[0]], [0], 1))
    assert is_isomorphic(split, two_dim_algebra(GF2, 0, 1)) is not None
    field4 = flag_extension(A, make_flag(GF2, [1], [1], [[0]], [[0]], [1], 1))
    assert is_isomorphic(field4, two_dim_algebra(GF2, 1, 1)) is not None


def test_flag_check_reports_failures():
    A = two_dim_algebra(GF3, 0, 0)
    good = make_flag(GF3, [1, 0], [1, 0], [[0, 0], [0, 1]], [[0, 0], [0, 1]], [0, 0], 1)
    assert flag_check(A, good).ok
    bad = make_flag(GF3, [1, 0], [1, 0], [[0, 0], [0, 1]], [[0, 0], [0, 2]], [0, 0], 1)
    rep = flag_check(A, bad)
    assert not rep.ok
    with pytest.raises(FlagCheckFailed):
        flag_extension(A, bad)
    with pytest.raises(NotACharacter):
        flag_check(A, make_flag(GF3, [1, 1], [1, 0], GF3.zeros((2, 2)), GF3.zeros((2, 2)), [0, 0], 0))


def test_flag_json_round_trip():
    A = two_dim_algebra(GF3, 0, 1)
    for fd in enumerate_flag_datums(A)[:10]:
        assert flag_from_json(GF3, fd.to_json(GF3)).key(GF3) == fd.key(GF3)


@pytest.mark.parametrize("text,name,equiv,cohom", [
    ("GF(2)", "k", 3, 3), ("GF(3)", "k", 3, 3),
    ("GF(2)", "k00", 4, 4), ("GF(3)", "k00", 5, 7),
    ("GF(2)", "k01", 8, 8), ("GF(3)", "k01", 8, 8),
])
def test_classification_counts(text, name, equiv, cohom):
    F = field_parse(text)
    A = _bases(F)[name]
    assert len(classify_codim1(A, "equivalent")) == equiv
    assert len(classify_codim1(A, "cohomologous")) == cohom


def test_classification_certificates():
    A = two_dim_algebra(GF3, 0, 0)
    fam = classify_codim1(A)
    for i, (c, cert) in enumerate(fam.assignment):
        rep = fam.datums[fam.representatives[c]]
        again = transform(A, rep, cert.q, GF3.array(cert.alpha))
        assert again.key(GF3) == fam.datums[i].key(GF3)


@given(st.sampled_from(["GF(2)", "GF(3)"]), st.sampled_from(["k", "k00", "k01"]), st.integers(0, 10 ** 6))
def test_transform_preserves_datums_and_extensions(text, name, seed):
    F = field_parse(text)
    A = _bases(F)[name]
    rng = np.random.default_rng(seed)
    datums = enumerate_flag_datums(A)
    fd = datums[int(rng.integers(len(datums)))]
    q = F.nonzero_elements()[int(rng.integers(F.order - 1))]
    alpha = F.array(rng.integers(0, F.order, A.dim))
    fd2 = transform(A, fd, q, alpha)
    assert flag_check(A, fd2).ok
    assert flag_equiv(A, fd2, fd) is not None
    assert is_isomorphic(flag_extension(A, fd), flag_extension(A, fd2)) is not None


@given(st.sampled_from(["GF(2)", "GF(3)"]), st.sampled_from(["k00", "k01"]), st.integers(0, 10 ** 6))
def test_flag_datum_round_trip(text, name, seed):
    F = field_parse(text)
    A = _bases(F)[name]
    datums = enumerate_flag_datums(A)
    fd = datums[int(np.random.default_rng(seed).integers(len(datums)))]
    Om = datum_from_flag(A, fd)
    assert check_axioms(Om).ok
    assert flag_from_datum(Om).key(F) == fd.key(F)


@pytest.mark.parametrize("text", ["GF(2)", "GF(3)", "GF(5)"])
def test_supersolvable_catalog_sizes(text):
    F = field_parse(text)
    assert [len(supersolvable_catalog(F, m)) for m in (1, 2, 3)] == [1, 3, 6]


def test_catalog_names():
    assert paper_catalog_dim2(GF2).names() == ["k_(0,0)", "k_(0,1)", "k_(1,1)"]
    assert paper_catalog_dim2(GF3).names() == ["k_(0,0)", "k_(0,1)", "k_(2,0)"]
    assert len(paper_catalog_dim3(GF2).entries) == 12
    assert len(paper_catalog_dim3(GF3).entries) == 13


@pytest.mark.parametrize("text", ["GF(2)", "GF(3)", "GF(4)", "GF(5)"])
def test_catalog_entries_are_algebras(text):
    F = field_parse(text)
    for cat in (paper_catalog_dim2(F), paper_catalog_dim3(F)):
        for entry in cat.entries:
            assert algebra_validate(entry.algebra).ok, entry.name


def test_char2_family_member_is_associative():
    # x^2 = x, y^2 = c(x + 1) + y, xy = yx = 0
    cat = paper_catalog_dim3(GF2)
    for name in ("C1_2(0)", "C1_2(1)"):
        entry = next(e for e in cat.entries if e.name == name)
        assert algebra_validate(entry.algebra).ok
