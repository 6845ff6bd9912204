"""Seeded random generators of algebras, datums and factorizations.

Valid objects are produced structurally (subalgebras of matrix algebras,
retractions of valid algebras, ...) so that property tests see a healthy
mix of passing and failing inputs.
"""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import Algebra, restrict, subalgebra_generated, transport
from .errors import NotASubalgebra
from .field import Field
from .unified import CommutativeDatum, ExtendingDatum, datum_from_retraction


def matrix_algebra(F: Field, n: int, upper: bool = False) -> Algebra:
    """M_n(F), or its upper triangular part, on the matrix units e_ij."""
    units = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    index = {u: k for k, u in enumerate(units)}
    N = len(units)
    table = F.zeros((N, N, N))
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                table[a, b, index[(i, l)]] = F.one
    unit = F.zeros(N)
    for i in range(n):
        unit[index[(i, i)]] = F.one
    return Algebra(F, table, unit)


def diagonal_algebra(F: Field, n: int) -> Algebra:
    table = F.zeros((n, n, n))
    for i in range(n):
        table[i, i, i] = F.one
    unit = F.zeros(n)
    unit[:] = F.one
    return Algebra(F, table, unit)


def _ambients(F: Field, dim: int) -> list:
    out = [diagonal_algebra(F, max(dim, 1))]
    for n, upper in ((2, True), (2, False), (3, True), (3, False), (4, True)):
        A = matrix_algebra(F, n, upper)
        if A.dim >= dim:
            out.append(A)
    return out


def random_vector(F: Field, rng, n: int, density: float = 1.0):
    v = F.array([F.random_element(rng) if rng.random() < density else F.zero for _ in range(n)]) \
        if n else F.zeros(0)
    return v


def random_invertible(F: Field, rng, n: int):
    while True:
        M = F.array([[F.random_element(rng) for _ in range(n)] for _ in range(n)]).reshape(n, n)
        if la.inverse(F, M) is not None:
            return M


def random_subalgebra_basis(A: Algebra, rng, dim: int, tries: int = 60):
    """Rows of a random dim-dimensional unital subalgebra of A, or None."""
    F = A.field
    for _ in range(tries):
        basis = subalgebra_generated(A, [])
        while basis.shape[0] < dim:
            g = random_vector(F, rng, A.dim, density=rng.uniform(0.2, 0.8))
            new = subalgebra_generated(A, list(basis) + [g])
            if new.shape[0] > dim:
                break
            basis = new
        if basis.shape[0] == dim:
            return basis
    return None


def random_algebra(F: Field, rng, dim: int, commutative: bool = False) -> Algebra:
    """A random dim-dimensional algebra, written in a random basis."""
    while True:
        ambients = _ambients(F, dim)
        amb = ambients[int(rng.integers(len(ambients)))]
        if commutative:
            # subalgebras generated by one element are commutative
            basis = None
            for _ in range(40):
                g = random_vector(F, rng, amb.dim, density=rng.uniform(0.2, 0.9))
                b = subalgebra_generated(amb, [g])
                if b.shape[0] == dim:
                    basis = b
                    break
        else:
            basis = random_subalgebra_basis(amb, rng, dim)
        if basis is None:
            continue
        A = restrict(amb, basis)
        return transport(A, random_invertible(F, rng, dim))


def random_retraction(F: Field, rng, A_rows, N: int):
    """A random linear p: F^N -> F^n that restricts to the identity on span(A_rows)."""
    n = A_rows.shape[0]
    comp = la.complement_indices(F, A_rows, N)
    W = F.zeros((N - n, N))
    for k, c in enumerate(comp):
        W[k, c] = F.one
    # perturb the complement so V = ker p is not always a coordinate subspace
    for k in range(N - n):
        W[k] = F.add(W[k], la.matvec(F, A_rows.T, random_vector(F, rng, n)))
    B = np.concatenate([A_rows, W]).T
    target = np.concatenate([F.eye(n), F.zeros((n, N - n))], axis=1)
    return la.matmul(F, target, la.inverse(F, B))


def random_extension(F: Field, rng, n: int, m: int, commutative: bool = False):
    """(E, A_rows, p): a random algebra E of dim n + m, a unital subalgebra and a retraction."""
    while True:
        E = random_algebra(F, rng, n + m, commutative=commutative)
        A_rows = random_subalgebra_basis(E, rng, n)
        if A_rows is None:
            continue
        A_rows = la.matmul(F, random_invertible(F, rng, n), A_rows)
        return E, A_rows, random_retraction(F, rng, A_rows, n + m)


def random_valid_datum(F: Field, rng, n: int, m: int, commutative: bool = False) -> ExtendingDatum:
    E, A_rows, p = random_extension(F, rng, n, m, commutative)
    return datum_from_retraction(E, A_rows, p)[0]


def normalize(Om: ExtendingDatum) -> ExtendingDatum:
    """Overwrite one A-slice of each action so that the normalization conditions hold."""
    A, F, m = Om.A, Om.field, Om.V_dim
    u = A.unit
    i = F.first_nonzero(u)[0]
    ui = F.inv(u[i])
    eye = F.eye(m)

    def fix(t, axis, target):
        t = t.copy()
        moved = np.moveaxis(t, axis, 0)
        rest = F.zeros(moved.shape[1:])
        for a in range(A.dim):
            if a != i:
                rest = F.add(rest, F.mul(u[a], moved[a]))
        moved[i] = F.mul(ui, F.sub(target, rest))
        return t

    n = A.dim
    return Om.replace(
        lact=fix(np.array(Om.lact), 1, eye), ract=fix(np.array(Om.ract), 1, F.zeros((m, n))),
        lhar=fix(np.array(Om.lhar), 0, F.zeros((m, n))), rhar=fix(np.array(Om.rhar), 0, eye),
    )


def random_datum(A: Algebra, rng, m: int, density: float = 0.5) -> ExtendingDatum:
    """A random normalized datum (rarely satisfies the axioms)."""
    F, n = A.field, A.dim

    def t(shape):
        return random_vector(F, rng, int(np.prod(shape)), density).reshape(shape)

    Om = ExtendingDatum(A, m, lact=t((m, n, m)), ract=t((m, n, n)), lhar=t((n, m, n)),
                        rhar=t((n, m, m)), cocycle=t((m, m, n)), vmult=t((m, m, m)))
    return normalize(Om)


def perturb(Om: ExtendingDatum, rng, names=None) -> ExtendingDatum:
    """Change one random entry of one tensor, then renormalize."""
    F = Om.field
    names = names or ["lact", "ract", "lhar", "rhar", "cocycle", "vmult"]
    while True:
        name = names[int(rng.integers(len(names)))]
        t = np.array(getattr(Om, name))
        if t.size:
            break
    idx = tuple(int(rng.integers(s)) for s in t.shape)
    t[idx] = F.add(t[idx], F.nonzero_elements()[int(rng.integers(F.order - 1))])
    return normalize(Om.replace(**{name: t}))


def mixed_datum(F: Field, rng, n: int, m: int) -> ExtendingDatum:
    """Valid, perturbed-valid or fully random normalized datum, one third each."""
    kind = int(rng.integers(3))
    if kind == 0:
        return random_valid_datum(F, rng, n, m)
    if kind == 1:
        return perturb(random_valid_datum(F, rng, n, m), rng)
    return random_datum(random_algebra(F, rng, n), rng, m, density=rng.uniform(0.1, 0.6))


class DatumSampler:
    """Mixed datums for a fixed (n, m), reusing a pool of random extensions.

    Each valid sample re-randomizes the pooled extension (basis of E, basis
    of A and the retraction), which is far cheaper than searching for a new
    subalgebra every time.
    """

    def __init__(self, F: Field, rng, n: int, m: int, pool_size: int = 40, commutative: bool = False):
        self.F, self.rng, self.n, self.m = F, rng, n, m
        self.commutative = commutative
        self.pool = [random_extension(F, rng, n, m, commutative)[:2] for _ in range(pool_size)]

    def valid(self) -> ExtendingDatum:
        F, rng, n, m = self.F, self.rng, self.n, self.m
        E, A_rows = self.pool[int(rng.integers(len(self.pool)))]
        P = random_invertible(F, rng, n + m)
        E2 = transport(E, P)
        A2 = la.matmul(F, la.matmul(F, random_invertible(F, rng, n), A_rows), la.inverse(F, P).T)
        return datum_from_retraction(E2, A2, random_retraction(F, rng, A2, n + m))[0]

    def perturbed(self) -> ExtendingDatum:
        return perturb(self.valid(), self.rng)

    def random(self) -> ExtendingDatum:
        A = self.valid().A
        return random_datum(A, self.rng, self.m, density=self.rng.uniform(0.1, 0.6))

    def mixed(self) -> ExtendingDatum:
        kind = int(self.rng.integers(3))
        return (self.valid, self.perturbed, self.random)[kind]()


def random_commutative_datum(F: Field, rng, n: int, m: int) -> CommutativeDatum:
    """Valid, symmetrically perturbed or random commutative datum over a commutative A."""
    kind = int(rng.integers(3))
    if kind < 2:
        Om = random_valid_datum(F, rng, n, m, commutative=True)
    else:
        Om = random_datum(random_algebra(F, rng, n, commutative=True), rng, m)
    lact, ract = np.array(Om.lact), np.array(Om.ract)
    f, mult = np.array(Om.cocycle), np.array(Om.vmult)
    if kind > 0:
        f = F.add(f, np.transpose(f, (1, 0, 2))) if kind == 2 else f
        mult = F.add(mult, np.transpose(mult, (1, 0, 2))) if kind == 2 else mult
        which = int(rng.integers(4))
        target = (lact, ract, f, mult)[which]
        if target.size:
            idx = tuple(int(rng.integers(s)) for s in target.shape)
            delta = F.nonzero_elements()[int(rng.integers(F.order - 1))]
            target[idx] = F.add(target[idx], delta)
            if which >= 2:
                j = (idx[1], idx[0], idx[2])
                if j != idx:
                    target[j] = F.add(target[j], delta)
    full = normalize(Om.replace(lact=lact, ract=ract, lhar=np.transpose(ract, (1, 0, 2)),
                                rhar=np.transpose(lact, (1, 0, 2)), cocycle=f, vmult=mult))
    return CommutativeDatum(full.A, m, lact=full.lact, ract=full.ract, cocycle=full.cocycle, vmult=full.vmult)


def random_factorization(F: Field, rng, dim: int):
    """(E, A_rows, V_rows) with E = A + V, A a unital subalgebra, V a subalgebra."""
    while True:
        n = int(rng.integers(1, dim))
        E = random_algebra(F, rng, dim)
        A_rows = random_subalgebra_basis(E, rng, n)
        if A_rows is None:
            continue
        cands = []
        for S in la.subspaces(F, dim, dim - n):
            if la.rank(F, np.concatenate([A_rows, S])) == dim and _closed(E, S):
                cands.append(S)
        if not cands:
            continue
        V_rows = cands[int(rng.integers(len(cands)))]
        V_rows = la.matmul(F, random_invertible(F, rng, dim - n), V_rows)
        A_rows = la.matmul(F, random_invertible(F, rng, n), A_rows)
        return E, A_rows, V_rows


def _closed(E: Algebra, rows) -> bool:
    from .algebra import is_closed

    return is_closed(E, rows)


def _algebra_inverse(A: Algebra, a):
    sol = la.solve_affine(A.field, A.lmul_matrix(a), A.unit)
    return None if sol is None else sol[0]


def random_unit(A: Algebra, rng):
    while True:
        a = random_vector(A.field, rng, A.dim)
        if la.inverse(A.field, A.lmul_matrix(a)) is not None:
            return a


def random_crossed_input(F: Field, rng, n: int, order: int):
    """(A, G, action, cocycle) for a valid crossed product with a cyclic group.

    Start from a skew group algebra for an automorphism of order dividing
    |G| and rescale the group basis by random units; this yields a
    non-trivial action/cocycle pair satisfying both conditions.
    """
    from .algebra import automorphisms_fixing
    from .groups import cyclic_group

    A = random_algebra(F, rng, n)
    G = cyclic_group(order)
    autos = [M for M in automorphisms_fixing(A, [A.unit]) if _has_order_dividing(F, M, order)]
    sigma = autos[int(rng.integers(len(autos)))]
    base = [F.eye(n)]
    for _ in range(order - 1):
        base.append(la.matmul(F, sigma, base[-1]))
    c = [A.unit] + [random_unit(A, rng) for _ in range(order - 1)]
    cinv = [_algebra_inverse(A, x) for x in c]

    def conj(g):
        cols = [A.mul(A.mul(c[g], base[g][:, j]), cinv[g]) for j in range(n)]
        return F.array(cols).T.reshape(n, n)

    action = [conj(g) for g in range(order)]
    cocycle = [[A.mul(A.mul(c[g], la.matvec(F, base[g], c[h])), cinv[G.mul(g, h)])
                for h in range(order)] for g in range(order)]
    return A, G, action, cocycle


def _has_order_dividing(F, M, k) -> bool:
    P = F.eye(M.shape[0])
    for _ in range(k):
        P = la.matmul(F, M, P)
    return F.key(P) == F.key(F.eye(M.shape[0]))
