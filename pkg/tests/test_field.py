import pytest
from hypothesis import given, strategies as st

from algext.errors import InfiniteClassSet, InfiniteField, NotPrime, ParseError, ReducibleModulus
from algext.field import (
    ExtensionField,
    PrimeField,
    class_system,
    enumerate_elements,
    field_parse,
    is_square,
)

FIELDS = ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "GF(9)", "GF(25)"]


def test_parse_prime_field():
    F = field_parse("GF(3)")
    assert isinstance(F, PrimeField)
    assert F.p == 3 and F.order == 3 and F.characteristic == 3
    assert list(F.elements()) == [0, 1, 2]


def test_parse_gf4_default_modulus():
    F = field_parse("GF(4)")
    assert isinstance(F, ExtensionField)
    assert tuple(F.modulus) == (1, 1, 1)
    assert F.order == 4 and F.characteristic == 2


def test_explicit_modulus_matches_default():
    F = field_parse("GF(4)=GF(2)[t]/(t^2+t+1)")
    assert F.order == 4


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_parse("GF(4)=GF(2)[t]/(t^2+1)")


@pytest.mark.parametrize("text", ["GF(6)", "GF(1)", "GF(12)"])
def test_non_prime_power(text):
    with pytest.raises(NotPrime):
        field_parse(text)


def test_garbage_field():
    with pytest.raises(ParseError):
        field_parse("banana")


def test_rationals_are_infinite():
    Q = field_parse("Q")
    assert not Q.is_finite
    with pytest.raises(InfiniteField):
        enumerate_elements(Q)


def test_square_examples():
    F3 = field_parse("GF(3)")
    assert is_square(F3, 2) == (False, None)
    ok, r = is_square(F3, 1)
    assert ok and F3.mul(r, r) == 1
    F4 = field_parse("GF(4)")
    for x in F4.elements():
        ok, r = is_square(F4, x)
        assert ok and F4.mul(r, r) == x


@pytest.mark.parametrize("text,S,T", [
    ("GF(2)", [], [0, 1]),
    ("GF(3)", [2], [0]),
    ("GF(5)", [2], [0]),
    ("GF(4)", [], [0, 2]),
])
def test_class_systems(text, S, T):
    cs = class_system(field_parse(text))
    assert list(cs.S_reps) == S
    assert list(cs.T_reps) == T
    assert list(cs.R_reps) == []
    assert cs.complete


def test_square_class_index():
    assert class_system(field_parse("GF(2)")).square_class_index == 1
    assert class_system(field_parse("GF(7)")).square_class_index == 2


def test_rational_function_field_classes():
    T = field_parse("GF(2)(t)")
    cs = class_system(T, 2)
    assert [T.format_element(x) for x in cs.R_reps] == ["t"]
    assert len(list(cs.S_reps)) > 1


def test_rationals_square_classes_are_infinite():
    cs = class_system(field_parse("Q"), 2)
    with pytest.raises(InfiniteClassSet):
        list(cs.S_reps)


@st.composite
def field_and_elements(draw, k=3):
    F = field_parse(draw(st.sampled_from(FIELDS)))
    els = F.elements()
    return (F,) + tuple(els[draw(st.integers(0, len(els) - 1))] for _ in range(k))


@given(field_and_elements())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one


@given(st.sampled_from(FIELDS))
def test_is_square_matches_enumeration(text):
    F = field_parse(text)
    squares = {int(F.mul(x, x)) for x in F.elements()}
    for x in F.elements():
        assert is_square(F, x)[0] == (int(x) in squares)


@given(st.sampled_from(FIELDS))
def test_square_classes_partition(text):
    F = field_parse(text)
    cs = class_system(F)
    reps = [F.one] + list(cs.S_reps)
    assert len(reps) == cs.square_class_index
    # every nonzero element is a square times exactly one representative
    for x in F.nonzero_elements():
        hits = [s for s in reps if is_square(F, F.div(x, s))[0]]
        assert len(hits) == 1


@given(st.sampled_from(FIELDS))
def test_artin_schreier_partition(text):
    F = field_parse(text)
    cs = class_system(F)
    if F.characteristic != 2:
        assert list(cs.T_reps) == [F.zero]
        return
    image = {int(F.add(F.mul(x, x), x)) for x in F.elements()}
    classes = {frozenset(int(F.add(t, y)) for y in image) for t in cs.T_reps}
    assert len(classes) == len(list(cs.T_reps))
    assert set().union(*classes) == {int(x) for x in F.elements()}


@given(st.sampled_from(FIELDS))
def test_format_parse_round_trip(text):
    F = field_parse(text)
    for x in F.elements():
        assert F.parse_element(F.format_element(x)) == x
