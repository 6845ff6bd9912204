"""Galois groups of algebra extensions, computed three independent ways.

* brute force: automorphisms of B fixing A pointwise;
* pair form: pairs (r, sigma) satisfying the morphism conditions of a datum
  with itself, multiplied by (r, s)(r', s') = (r' + r s', s s');
* codimension one: pairs (alpha, q) fixing a flag datum, multiplied by
  (alpha, q)(alpha', q') = (alpha' + q' alpha, q q').

Every element acts on B = A x V by (a, x) -> (a + r(x), sigma(x)); the
``action`` helpers return that matrix so the three methods can be compared
elementwise.
"""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import Algebra, _require_finite, automorphisms_fixing, is_closed
from .errors import AxiomsFailed, FlagCheckFailed, NotASubalgebra
from .flag import FlagDatum, flag_check
from .groups import FiniteGroup
from .unified import ExtendingDatum, MorphismPair, check_axioms, morphism_solutions, psi_matrix


def _identity_index(F, mats) -> int:
    n = mats[0].shape[0]
    eye = F.key(F.eye(n))
    for i, M in enumerate(mats):
        if F.key(M) == eye:
            return i
    raise AssertionError("identity missing")


def galois_group_brute(B: Algebra, A_basis) -> FiniteGroup:
    """Automorphisms of B fixing span(A_basis), composed as matrices."""
    F = B.field
    _require_finite(F)
    maps = automorphisms_fixing(B, A_basis)
    return FiniteGroup.from_elements(
        maps, lambda g, h: la.matmul(F, g, h), F.key, label=_matrix_label(F),
        identity_index=_identity_index(F, maps),
    )


def _matrix_label(F):
    return lambda M: "[" + "; ".join(" ".join(F.format_element(c) for c in row) for row in M) + "]"


def pair_action(F, pair: MorphismPair):
    return psi_matrix(F, pair.r, pair.v)


def galois_group_unified(Om: ExtendingDatum) -> FiniteGroup:
    """All pairs (r, sigma) with sigma invertible defining automorphisms of the unified product."""
    rep = check_axioms(Om)
    if not rep.ok:
        raise AxiomsFailed(rep)
    F = Om.field
    _require_finite(F)
    pairs = morphism_solutions(Om, Om, la.invertible_matrices(F, Om.V_dim))
    return _pair_group(F, pairs)


def _pair_group(F, pairs) -> FiniteGroup:
    def mul(p1, p2):
        return MorphismPair(F.add(p2.r, la.matmul(F, p1.r, p2.v)), la.matmul(F, p1.v, p2.v))

    key = lambda p: F.key(pair_action(F, p))
    ident = [i for i, p in enumerate(pairs) if F.allzero(p.r) and F.key(p.v) == F.key(F.eye(p.v.shape[0]))]
    label = lambda p: f"(r={F.key(p.r)}, sigma={F.key(p.v)})"
    return FiniteGroup.from_elements(pairs, mul, key, label=label, identity_index=ident[0])


def stabilizing_costabilizing_subgroup(Om: ExtendingDatum) -> FiniteGroup:
    """Pairs (r, id): automorphisms fixing A and inducing the identity on V."""
    rep = check_axioms(Om)
    if not rep.ok:
        raise AxiomsFailed(rep)
    F = Om.field
    pairs = morphism_solutions(Om, Om, [F.eye(Om.V_dim)])
    return _pair_group(F, pairs)


def codim1_pairs(A: Algebra, fd: FlagDatum) -> list:
    """All (alpha, q) in A x k* fixing fd.

    For each q the three conditions linear in alpha are solved first, then
    the quadratic one is tested.
    """
    F, n = A.field, A.dim
    C = A.table
    e, s, a, mul = F.einsum, F.sub, F.add, F.mul
    out = []
    for q in F.nonzero_elements():
        one_minus_q = s(F.one, q)

        def linear(alpha, q=q, omq=one_minus_q):
            r1 = s(mul(omq, fd.D), s(e("i,ijp->pj", alpha, C), e("p,j->pj", alpha, fd.Lambda)))
            r2 = s(mul(omq, fd.d), s(e("i,jip->pj", alpha, C), e("p,j->pj", alpha, fd.lam)))
            r3 = s(mul(omq, fd.u), a(e("p,p->", fd.lam, alpha), e("p,p->", fd.Lambda, alpha)))
            return np.concatenate([np.asarray(r1).ravel(), np.asarray(r2).ravel(), np.array([r3])])

        for alpha in la.affine_solutions(F, linear, n):
            lhs = mul(s(F.one, mul(q, q)), fd.a0)
            rhs = s(A.mul(alpha, alpha), mul(fd.u, alpha))
            rhs = a(rhs, mul(q, a(la.matvec(F, fd.d, alpha), la.matvec(F, fd.D, alpha))))
            if F.allzero(s(lhs, rhs)):
                out.append((alpha, q))
    return out


def codim1_action(F, alpha, q):
    return psi_matrix(F, F.array(alpha).reshape(-1, 1), F.array([[q]]))


def galois_group_codim1(A: Algebra, fd: FlagDatum) -> FiniteGroup:
    rep = flag_check(A, fd)
    if not rep.ok:
        raise FlagCheckFailed(rep)
    F = A.field
    _require_finite(F)
    pairs = codim1_pairs(A, fd)

    def mul(g, h):
        (al, q), (al2, q2) = g, h
        return (F.add(al2, F.mul(q2, al)), F.mul(q, q2))

    key = lambda g: F.key(codim1_action(F, *g))
    label = lambda g: f"(alpha={F.key(g[0])}, q={F.format_element(g[1])})"
    ident = [i for i, (al, q) in enumerate(pairs) if F.allzero(al) and q == F.one]
    return FiniteGroup.from_elements(pairs, mul, key, label=label, identity_index=ident[0])


def fixed_subspace(B: Algebra, maps):
    """Basis (rows, reduced echelon) of {b : M b = b for every M in maps}."""
    F = B.field
    if not maps:
        return la.row_basis(F, F.eye(B.dim), B.dim)
    eye = F.eye(B.dim)
    stacked = np.concatenate([F.sub(M, eye) for M in maps])
    K = la.nullspace(F, stacked)
    return la.row_basis(F, K, B.dim) if K.shape[0] else F.zeros((0, B.dim))


def invariants_and_galois_test(B: Algebra, A_basis):
    """(basis of the invariant subalgebra, whether it equals span(A_basis))."""
    F = B.field
    G = galois_group_brute(B, A_basis)
    fixed = fixed_subspace(B, list(G.data))
    if not is_closed(B, fixed) or not la.in_span(F, fixed, B.unit):
        raise NotASubalgebra("invariant subspace is not a subalgebra")
    A_rows = la.row_basis(F, [F.array(v) for v in A_basis], B.dim)
    return fixed, F.key(fixed) == F.key(A_rows)


def gl_order(q: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= q ** m - q ** i
    return out


def embedding_bound(q: int, n: int, m: int) -> int:
    """|GL(m, k)| * |k|^(n m), the order of the group every Galois group embeds in."""
    return gl_order(q, m) * q ** (n * m)


def group_report(G: FiniteGroup, F=None, n=None, m=None) -> dict:
    out = G.summary()
    if F is not None and n is not None and m is not None and F.is_finite:
        bound = embedding_bound(F.order, n, m)
        out["embedding_order"] = bound
        out["index_in_embedding"] = bound // G.order
    return out
