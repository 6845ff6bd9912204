"""Finite-dimensional unital algebras given by structure constants.

``table[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.  Linear maps
are plain matrices whose column ``j`` holds the image of ``e_j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import DimensionMismatch, NotASubalgebra, ParseError, UnsupportedOverInfiniteField
from .field import Field, Rationals, field_parse

DEFAULT_NAMES = ("1", "x", "y", "z", "w")


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    table: np.ndarray
    unit: np.ndarray
    names: tuple | None = None

    def __post_init__(self):
        F = self.field
        table = F.array(self.table) if not isinstance(self.table, np.ndarray) else self.table
        unit = F.array(self.unit) if not isinstance(self.unit, np.ndarray) else self.unit
        n = unit.shape[0]
        if table.shape != (n, n, n):
            raise DimensionMismatch(f"table shape {table.shape} does not match dim {n}")
        table = table.copy()
        unit = unit.copy()
        table.flags.writeable = False
        unit.flags.writeable = False
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unit", unit)
        names = self.names
        if names is None and n <= len(DEFAULT_NAMES) and n > 0:
            e0 = F.zeros(n)
            e0[0] = F.one
            if F.key(unit) == F.key(e0):
                names = DEFAULT_NAMES[:n]
        object.__setattr__(self, "names", tuple(names) if names is not None else None)

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def key(self) -> tuple:
        return (str(self.field), self.field.key(self.table), self.field.key(self.unit))

    def same(self, other: "Algebra") -> bool:
        return self.key() == other.key()

    def basis_vector(self, i: int):
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def mul(self, u, v):
        return self.field.einsum("i,j,ijk->k", u, v, self.table)

    def lmul_matrix(self, u):
        """Matrix of left multiplication by u."""
        return self.field.einsum("i,ijk->kj", u, self.table)

    def power(self, u, n: int):
        out = self.unit
        for _ in range(n):
            out = self.mul(out, u)
        return out

    def __repr__(self):
        return f"Algebra({self.field}, dim={self.dim})"

    @cached_property
    def _element_data(self):
        """All elements (finite fields) with their squares."""
        F = self.field
        X = la.all_vectors(F, self.dim)
        sq = F.einsum("Ni,Nj,ijk->Nk", X, X, self.table)
        return X, sq

    @cached_property
    def _minpoly_groups(self):
        X, _ = self._element_data
        groups: dict = {}
        for x in X:
            groups.setdefault(min_poly(self, x), []).append(x)
        return groups


def multiply(A: Algebra, u, v):
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != (A.dim,) or v.shape != (A.dim,):
        raise DimensionMismatch("vectors must have length dim")
    return A.mul(A.field.array(u), A.field.array(v))


@dataclass
class ValidationReport:
    assoc_failures: list = dc_field(default_factory=list)
    unit_failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.assoc_failures and not self.unit_failures


def associator(F: Field, table):
    """Tensor of (e_i e_j) e_l - e_i (e_j e_l) indexed [i, j, l, k]."""
    left = F.einsum("ijm,mlk->ijlk", table, table)
    right = F.einsum("jlm,imk->ijlk", table, table)
    return F.sub(left, right)


def algebra_validate(A: Algebra) -> ValidationReport:
    F = A.field
    rep = ValidationReport()
    assoc = associator(F, A.table)
    n = A.dim
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if not F.allzero(assoc[i, j, l]):
                    rep.assoc_failures.append((i, j, l))
    left = F.einsum("i,ijk->jk", A.unit, A.table)
    right = F.einsum("j,ijk->ik", A.unit, A.table)
    eye = F.eye(n)
    for i in range(n):
        if not (F.allzero(F.sub(left[i], eye[i])) and F.allzero(F.sub(right[i], eye[i]))):
            rep.unit_failures.append(i)
    return rep


def is_associative_unital(A: Algebra) -> bool:
    return algebra_validate(A).ok


# -- construction helpers ------------------------------------------------------

def transport(A: Algebra, P, names=None) -> Algebra:
    """The same algebra written in the basis given by the columns of P."""
    F = A.field
    P = np.asarray(P)
    Pinv = la.inverse(F, P)
    if Pinv is None:
        raise ValueError("basis change is singular")
    table = F.einsum("ai,bj,abc,kc->ijk", P, P, A.table, Pinv)
    unit = la.matvec(F, Pinv, A.unit)
    return Algebra(F, table, unit, names)


def restrict(A: Algebra, basis_rows, names=None) -> Algebra:
    """Subalgebra spanned by basis_rows, in that basis."""
    F = A.field
    basis_rows = np.asarray(basis_rows)
    k = basis_rows.shape[0]
    prods = F.einsum("ai,bj,ijc->abc", basis_rows, basis_rows, A.table).reshape(k * k, A.dim)
    coords = la.coordinates_many(F, basis_rows, prods)
    if coords is None:
        raise NotASubalgebra("span is not closed under multiplication")
    unit = la.coordinates(F, basis_rows, A.unit)
    if unit is None:
        raise NotASubalgebra("span does not contain the unit")
    return Algebra(F, coords.reshape(k, k, k), unit, names)


def algebra_from_products(F: Field, names, products: dict) -> Algebra:
    """Unit-first algebra with basis ``names`` (names[0] is the unit).

    ``products`` maps (i, j) for i, j >= 1 to a coefficient vector; missing
    products are zero.
    """
    n = len(names)
    table = F.zeros((n, n, n))
    for i in range(n):
        table[0, i, i] = F.one
        table[i, 0, i] = F.one
    for (i, j), vec in products.items():
        table[i, j] = F.array(vec)
    unit = F.zeros(n)
    unit[0] = F.one
    return Algebra(F, table, unit, tuple(names))


def parse_linear(F: Field, text: str, names) -> np.ndarray:
    """Parse ``2x + y - 1`` style combinations of basis names."""
    s = text.replace(" ", "")
    out = F.zeros(len(names))
    if s in ("0", ""):
        return out
    order = sorted(range(len(names)), key=lambda i: -len(names[i]))
    depth, start, pieces = 0, 0, []
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if ch in "+-" and depth == 0 and i > 0:
            pieces.append(s[start:i])
            start = i
    pieces.append(s[start:])
    for piece in pieces:
        sign = F.one
        if piece[0] in "+-":
            if piece[0] == "-":
                sign = F.neg(F.one)
            piece = piece[1:]
        idx = None
        for i in order:
            if names[i] != "1" and piece.endswith(names[i]):
                idx = i
                coef_text = piece[: -len(names[i])].rstrip("*")
                break
        if idx is None:
            idx, coef_text = 0, piece
        if coef_text.startswith("(") and coef_text.endswith(")"):
            coef_text = coef_text[1:-1]
        coef = F.one if coef_text == "" else F.parse_element(coef_text)
        out[idx] = F.add(out[idx], F.mul(sign, coef))
    return out


_MONO = re.compile(r"^([A-Za-z]\w*?)(\^2)?([A-Za-z]\w*)?$")


def algebra_from_presentation(F: Field, text: str, names=("1", "x", "y")) -> Algebra:
    """Build a unit-first algebra from ``x^2 = 0, y^2 = y, xy = yx = 0`` style text."""
    names = tuple(names)
    index = {nm: i for i, nm in enumerate(names)}
    products = {}
    for rel in text.split(","):
        sides = [s.strip() for s in rel.split("=")]
        if len(sides) < 2:
            raise ParseError(f"bad relation {rel!r}")
        value = parse_linear(F, sides[-1], names)
        for mono in sides[:-1]:
            mono = mono.replace(" ", "")
            if mono.endswith("^2") and mono[:-2] in index:
                pair = (index[mono[:-2]], index[mono[:-2]])
            else:
                pair = None
                for a in names[1:]:
                    if mono.startswith(a) and mono[len(a):] in index:
                        pair = (index[a], index[mono[len(a):]])
                        break
                if pair is None:
                    raise ParseError(f"bad monomial {mono!r}")
            products[pair] = value
    return algebra_from_products(F, names, products)


def format_linear(F: Field, vec, names) -> str:
    order = list(range(1, len(names))) + [0]
    terms = []
    for i in order:
        c = vec[i]
        if F.is_zero(c):
            continue
        cs = F.format_element(c)
        if not re.fullmatch(r"-?[\w/]+", cs) or (names[i] != "1" and "/" in cs):
            cs = f"({cs})"
        if names[i] == "1":
            terms.append(cs)
        else:
            terms.append(names[i] if cs == "1" else f"{cs}{names[i]}")
    return " + ".join(terms) if terms else "0"


def presentation(A: Algebra) -> str:
    """Relations among the non-unit basis elements, e.g. ``x^2 = 0, y^2 = y, xy = x, yx = 0``."""
    if A.names is None or A.names[0] != "1":
        raise ValueError("presentation needs a unit-first named basis")
    F, names, n = A.field, A.names, A.dim
    parts = []
    for i in range(1, n):
        parts.append(f"{names[i]}^2 = {format_linear(F, A.table[i, i], names)}")
    for i in range(1, n):
        for j in range(i + 1, n):
            a = format_linear(F, A.table[i, j], names)
            b = format_linear(F, A.table[j, i], names)
            if a == b:
                parts.append(f"{names[i]}{names[j]} = {names[j]}{names[i]} = {a}")
            else:
                parts.append(f"{names[i]}{names[j]} = {a}, {names[j]}{names[i]} = {b}")
    return ", ".join(parts)


# -- JSON ------------------------------------------------------------------------

def algebra_to_json(A: Algebra) -> dict:
    F = A.field
    fmt = F.format_element
    return {
        "field": str(F),
        "dim": A.dim,
        "unit": [fmt(c) for c in A.unit],
        "table": [[[fmt(c) for c in A.table[i, j]] for j in range(A.dim)] for i in range(A.dim)],
    }


def _parse_nested(F: Field, data):
    if isinstance(data, list):
        return [_parse_nested(F, d) for d in data]
    return F.parse_element(str(data))


def algebra_from_json(data: dict, field: Field | None = None) -> Algebra:
    F = field if field is not None else field_parse(data["field"])
    n = int(data["dim"])
    unit = F.array(_parse_nested(F, data["unit"])).reshape(n)
    table = F.array(_parse_nested(F, data["table"])).reshape(n, n, n)
    return Algebra(F, table, unit, tuple(data["names"]) if "names" in data else None)


# -- subalgebras -----------------------------------------------------------------

def is_closed(A: Algebra, basis_rows) -> bool:
    F = A.field
    basis_rows = np.asarray(basis_rows)
    k = basis_rows.shape[0]
    if k == 0:
        return True
    prods = F.einsum("ai,bj,ijk->abk", basis_rows, basis_rows, A.table).reshape(k * k, A.dim)
    return la.rank(F, np.concatenate([basis_rows, prods])) == k


def is_unital_subalgebra(A: Algebra, basis_rows) -> bool:
    basis_rows = la.row_basis(A.field, basis_rows, A.dim)
    return la.in_span(A.field, basis_rows, A.unit) and is_closed(A, basis_rows)


def subalgebra_generated(A: Algebra, gens) -> np.ndarray:
    """Reduced echelon basis of the smallest unital subalgebra containing gens."""
    F = A.field
    basis = la.row_basis(F, [A.unit] + [F.array(g) for g in gens], A.dim)
    while True:
        k = basis.shape[0]
        prods = F.einsum("ai,bj,ijk->abk", basis, basis, A.table).reshape(k * k, A.dim)
        new = la.row_basis(F, np.concatenate([basis, prods]), A.dim)
        if new.shape[0] == k:
            return new
        basis = new


def unital_subalgebras(A: Algebra, k: int):
    """All k-dimensional unital subalgebras, as reduced echelon bases (finite fields)."""
    F = A.field
    _require_finite(F)
    out = []
    for S in la.subspaces(F, A.dim, k):
        if la.in_span(F, S, A.unit) and is_closed(A, S):
            out.append(S)
    return out


def _require_finite(F: Field):
    if not F.is_finite:
        raise UnsupportedOverInfiniteField(f"exhaustive search needs a finite field, not {F}")


# -- element-level invariants ----------------------------------------------------

def min_poly(A: Algebra, v) -> tuple:
    """Monic minimal polynomial of v, as a low-to-high tuple of coefficient keys."""
    F = A.field
    powers = [A.unit]
    while True:
        nxt = A.mul(powers[-1], v)
        c = la.coordinates(F, np.array(powers), nxt)
        if c is not None:
            coeffs = [F.neg(x) for x in c] + [F.one]
            return tuple(F.format_element(x) if not F.is_finite else int(x) for x in coeffs)
        powers.append(nxt)


def center_dim(A: Algebra) -> int:
    F = A.field
    # z e_i - e_i z = 0 for all i, as a linear system in z
    comm = F.sub(A.table, np.transpose(A.table, (1, 0, 2)))  # [z, i, k]
    M = np.transpose(comm, (1, 2, 0)).reshape(A.dim * A.dim, A.dim)
    return A.dim - la.rank(F, M)


def invariants(A: Algebra) -> tuple:
    """Cheap isomorphism invariants (finite fields)."""
    F = A.field
    X, sq = A._element_data
    idem = sum(1 for x, s in zip(X, sq) if F.key(x) == F.key(s))
    sqzero = sum(1 for s in sq if F.allzero(s))
    commutative = F.allzero(F.sub(A.table, np.transpose(A.table, (1, 0, 2))))
    polys = tuple(sorted((p, len(g)) for p, g in A._minpoly_groups.items()))
    return (A.dim, center_dim(A), idem, sqzero, commutative, polys)


# -- characters --------------------------------------------------------------------

def _is_character(A: Algebra, chi) -> bool:
    F = A.field
    if F.einsum("i,i->", chi, A.unit) != F.one:
        return False
    lhs = F.einsum("ijk,k->ij", A.table, chi)
    rhs = F.mul(chi[:, None], chi[None, :])
    return F.allzero(F.sub(lhs, rhs))


def characters(A: Algebra) -> list:
    """All unital algebra maps A -> k, as row vectors of values on the basis."""
    F = A.field
    if F.is_finite:
        X = la.all_vectors(F, A.dim)
        ok = F.einsum("Ni,i->N", X, A.unit) == 1
        X = X[ok]
        lhs = F.einsum("ijk,Nk->Nij", A.table, X)
        rhs = F.mul(X[:, :, None], X[:, None, :])
        good = np.all((lhs == rhs).reshape(len(X), -1), axis=1)
        return [x for x in X[good]]
    if isinstance(F, Rationals):
        return _characters_over_q(A)
    raise UnsupportedOverInfiniteField(f"characters over {F} are not supported")


def _characters_over_q(A: Algebra) -> list:
    F = A.field
    n = A.dim
    gen = None
    candidates = [A.basis_vector(i) for i in range(n)]
    candidates += [F.add(A.basis_vector(i), F.mul(F.from_int(c), A.basis_vector(j)))
                   for i in range(n) for j in range(n) if i != j for c in (1, 2, 3)]
    for g in candidates:
        powers = [A.power(g, k) for k in range(n)]
        if la.rank(F, np.array(powers)) == n:
            gen = g
            break
    if gen is None:
        raise UnsupportedOverInfiniteField("characters over Q need a monogenic algebra")
    P = np.array(powers)
    top = la.coordinates(F, P, A.power(gen, n))
    coeffs = [-c for c in top] + [Fraction(1)]
    out = []
    for r in _rational_roots(coeffs):
        values = F.array([r ** k for k in range(n)])
        chi = la.solve_affine(F, P, values)[0]
        if _is_character(A, chi):
            out.append(chi)
    return out


def _rational_roots(coeffs) -> list:
    """Rational roots of sum coeffs[i] x^i (coefficients are Fractions)."""
    from math import gcd, lcm

    den = 1
    for c in coeffs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)

    def divisors(m):
        m = abs(m)
        return [d for d in range(1, m + 1) if m % d == 0]

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


# -- homomorphism search -----------------------------------------------------------

def _support(F: Field, vec) -> set:
    return {i for i, c in enumerate(vec) if not F.is_zero(c)}


def _hom_search(src: Algebra, dst: Algebra, fixed: list, candidates: list, find_all: bool):
    """Backtracking search for injective algebra maps src -> dst.

    ``fixed`` lists the images of the first src basis vectors; ``candidates``
    gives the allowed images for each remaining basis vector.  Returns the
    list of image matrices (columns are images).
    """
    F = src.field
    n = src.dim
    supports = [[_support(F, src.table[i, j]) for j in range(n)] for i in range(n)]
    results = []
    images = list(fixed)

    def consistent(level):
        # pairs whose newest member is `level` and whose product is already determined
        for i in range(level + 1):
            for a, b in {(i, level), (level, i)}:
                if max(supports[a][b], default=-1) > level:
                    continue
                lhs = dst.mul(images[a], images[b])
                rhs = F.einsum("k,kd->d", src.table[a, b][: level + 1], np.array(images[: level + 1]))
                if F.key(lhs) != F.key(rhs):
                    return False
        return True

    def full_check():
        M = np.array(images)
        lhs = F.einsum("ad,be,dec->abc", M, M, dst.table)
        rhs = F.einsum("abk,kc->abc", src.table, M)
        return F.allzero(F.sub(lhs, rhs))

    for level in range(len(fixed)):
        if not consistent(level):
            return []

    def extend(level):
        if level == n:
            if full_check():
                results.append(np.array(images).T)
                return not find_all
            return False
        for w in candidates[level - len(fixed)]:
            images.append(w)
            if la.rank(F, np.array(images)) == level + 1 and consistent(level):
                if extend(level + 1):
                    return True
            images.pop()
        return False

    extend(len(fixed))
    return results


def _unit_first_basis(A: Algebra):
    F = A.field
    rest = la.complement_indices(F, A.unit[None, :], A.dim)
    cols = [A.unit] + [A.basis_vector(i) for i in rest]
    return np.array(cols).T


def is_isomorphic(A: Algebra, B: Algebra):
    """A unit-preserving algebra isomorphism A -> B as a matrix, or None."""
    F = A.field
    if str(F) != str(B.field):
        raise ValueError("algebras over different fields")
    if A.dim != B.dim:
        return None
    if not F.is_finite:
        return _is_isomorphic_small_q(A, B)
    if invariants(A) != invariants(B):
        return None
    P = _unit_first_basis(A)
    src = transport(A, P)
    groups = B._minpoly_groups
    cands = []
    for i in range(1, A.dim):
        cands.append(groups.get(min_poly(src, src.basis_vector(i)), []))
    found = _hom_search(src, B, [B.unit], cands, find_all=False)
    if not found:
        return None
    return la.matmul(F, found[0], la.inverse(F, P))


def _is_isomorphic_small_q(A: Algebra, B: Algebra):
    F = A.field
    if not isinstance(F, Rationals) or A.dim > 2:
        raise UnsupportedOverInfiniteField("isomorphism over infinite fields only for Q, dim <= 2")
    if A.dim == 1:
        return la.matmul(F, B.unit[:, None], la.inverse(F, A.unit[:, None]))

    def normal(X):
        # X = k[y] with y^2 = delta, y = g - b/2 for any non-scalar g with g^2 = a + b g
        P = _unit_first_basis(X)
        g = P[:, 1]
        c = la.coordinates(F, np.array([X.unit, g]), X.mul(g, g))
        a, b = c
        y = F.sub(g, F.mul(b / 2, X.unit))
        delta = a + b * b / 4
        return y, delta

    ya, da = normal(A)
    yb, db = normal(B)
    if (da == 0) != (db == 0):
        return None
    if da == 0:
        s = Fraction(1)
    else:
        ok, s = F.is_square(da / db)
        if not ok:
            return None
    # y_a -> s y_b, 1 -> 1
    src = np.array([A.unit, ya]).T
    img = np.array([B.unit, F.mul(s, yb)]).T
    return la.matmul(F, img, la.inverse(F, src))


def verify_isomorphism(A: Algebra, B: Algebra, M) -> bool:
    F = A.field
    if la.inverse(F, M) is None:
        return False
    if F.key(la.matvec(F, M, A.unit)) != F.key(B.unit):
        return False
    lhs = F.einsum("ad,be,dec->abc", M.T, M.T, B.table)
    rhs = F.einsum("abk,ck->abc", A.table, M)
    return F.allzero(F.sub(lhs, rhs))


def automorphisms_fixing(B: Algebra, A_basis) -> list:
    """All automorphisms of B fixing span(A_basis) pointwise (finite fields)."""
    F = B.field
    _require_finite(F)
    S = la.row_basis(F, [F.array(v) for v in A_basis], B.dim)
    if not (la.in_span(F, S, B.unit) and is_closed(B, S)):
        raise NotASubalgebra("A_basis does not span a unital subalgebra")
    rest = la.complement_indices(F, S, B.dim)
    cols = [S[i] for i in range(S.shape[0])] + [B.basis_vector(i) for i in rest]
    P = np.array(cols).T
    src = transport(B, P)
    groups = B._minpoly_groups
    cands = [groups.get(min_poly(B, B.basis_vector(i)), []) for i in rest]
    found = _hom_search(src, B, list(cols[: S.shape[0]]), cands, find_all=True)
    Pinv = la.inverse(F, P)
    maps = [la.matmul(F, M, Pinv) for M in found]
    maps.sort(key=lambda M: F.key(M))
    return maps


# -- supersolvability ---------------------------------------------------------------

def is_supersolvable(E: Algebra):
    """A tower k = E_0 < E_1 < ... < E_m = E of unital subalgebras, each of
    codimension 1 in the next, as a list of reduced echelon bases; None if
    no such tower exists."""
    F = E.field
    full = la.row_basis(F, F.eye(E.dim), E.dim)
    if E.dim <= 2:
        stages = [la.row_basis(F, [E.unit], E.dim)]
        if E.dim == 2:
            stages.append(full)
        return stages
    _require_finite(F)
    failed = set()

    def descend(S):
        s = S.shape[0]
        if s == 1:
            return [S]
        key = F.key(S)
        if key in failed:
            return None
        u = la.coordinates(F, S, E.unit)
        for H in la.subspaces(F, s, s - 1):
            if not la.in_span(F, H, u):
                continue
            sub = la.row_basis(F, la.matmul(F, H, S), E.dim)
            if is_closed(E, sub):
                chain = descend(sub)
                if chain is not None:
                    return chain + [S]
        failed.add(key)
        return None

    return descend(full)
