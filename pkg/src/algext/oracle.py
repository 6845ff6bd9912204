"""Brute-force ground truth: enumerate small algebras and extensions, classify them.

Tables are enumerated with e0 = 1, so only products of the non-unit basis
vectors are free.  Candidates are indexed by integers whose base-|k| digits
fill the free structure constants, most significant first; chunks of
indices are decoded and checked for associativity with numpy.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import (
    Algebra,
    _hom_search,
    _require_finite,
    _unit_first_basis,
    algebra_to_json,
    invariants,
    is_isomorphic,
    is_supersolvable,
    min_poly,
    presentation,
    transport,
)
from .errors import BudgetExceeded
from .field import Field, PrimeField

DEFAULT_BUDGET = 2_000_000
CHUNK = 1 << 15


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ALGEXT_JOBS", "1")))
    except ValueError:
        return 1


@dataclass
class EnumerationTask:
    field: Field
    dim: int
    commutative: bool | None = None
    supersolvable: bool | None = None
    contains: Algebra | None = None
    budget: int = DEFAULT_BUDGET
    jobs: int | None = None

    @property
    def candidate_count(self) -> int:
        return self.field.order ** (self.dim * (self.dim - 1) ** 2)


# -- chunked candidate checking ---------------------------------------------------------

@dataclass(frozen=True)
class _Space:
    """Tables equal to ``base`` except at ``free`` flat positions."""

    field: Field
    base: np.ndarray
    free: tuple
    triples: tuple  # (i, j, l) basis triples to test for associativity

    @property
    def size(self) -> int:
        return self.field.order ** len(self.free)

    def decode(self, start: int, stop: int):
        F = self.field
        q = F.order
        idx = np.arange(start, stop, dtype=np.int64)
        k = len(self.free)
        N = self.base.shape[0]
        tables = np.broadcast_to(self.base.reshape(1, -1), (stop - start, N ** 3)).copy()
        for pos in range(k):
            digit = (idx // q ** (k - 1 - pos)) % q
            tables[:, self.free[pos]] = digit
        return tables.reshape(-1, N, N, N)


def _batch_einsum(F: Field, subscripts, *ops):
    if isinstance(F, PrimeField):
        return np.einsum(subscripts, *ops) % F.p
    return F.einsum(subscripts, *ops)


def _check_chunk(space: _Space, start: int, stop: int) -> np.ndarray:
    F = space.field
    T = space.decode(start, stop)
    ok = np.ones(stop - start, dtype=bool)
    if not space.triples:
        return np.arange(start, stop)[ok]
    i, j, l = (np.array(t) for t in zip(*space.triples))
    # (e_i e_j) e_l and e_i (e_j e_l) for every listed triple
    left = _batch_einsum(F, "ctk,ctkm->ctm", T[:, i, j, :], T[:, :, l, :].transpose(0, 2, 1, 3))
    right = _batch_einsum(F, "ctk,ctkm->ctm", T[:, j, l, :], T[:, i, :, :])
    ok &= np.all((left == right).reshape(stop - start, -1), axis=1)
    return np.arange(start, stop)[ok]


def _scan(space: _Space, jobs: int) -> list:
    ranges = [(s, min(s + CHUNK, space.size)) for s in range(0, space.size, CHUNK)]
    if jobs <= 1 or len(ranges) == 1:
        parts = [_check_chunk(space, a, b) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_check_chunk, [space] * len(ranges), *zip(*ranges)))
    return [int(x) for part in parts for x in part]


def _unit_first_space(F: Field, dim: int) -> _Space:
    N = dim
    base = F.zeros((N, N, N))
    for i in range(N):
        base[0, i, i] = F.one
        base[i, 0, i] = F.one
    free = tuple(np.ravel_multi_index((i, j, k), (N, N, N))
                 for i in range(1, N) for j in range(1, N) for k in range(N))
    triples = tuple((i, j, l) for i in range(1, N) for j in range(1, N) for l in range(1, N))
    return _Space(F, base, free, triples)


# -- enumeration -------------------------------------------------------------------------

def enumerate_algebras(task: EnumerationTask) -> list:
    """All unit-first associative tables of the given dimension passing the filters."""
    F = task.field
    _require_finite(F)
    if task.dim < 1:
        raise ValueError("dimension must be positive")
    if task.candidate_count > task.budget:
        raise BudgetExceeded(f"{task.candidate_count} candidate tables exceed the budget {task.budget}")
    space = _unit_first_space(F, task.dim)
    unit = F.zeros(task.dim)
    unit[0] = F.one
    out = []
    for idx in _scan(space, task.jobs or default_jobs()):
        E = Algebra(F, space.decode(idx, idx + 1)[0], unit)
        if task.commutative is not None:
            comm = F.allzero(F.sub(E.table, np.transpose(E.table, (1, 0, 2))))
            if comm != task.commutative:
                continue
        if task.supersolvable is not None and (is_supersolvable(E) is not None) != task.supersolvable:
            continue
        if task.contains is not None and not embeds(task.contains, E):
            continue
        out.append(E)
    return out


def embeds(A: Algebra, E: Algebra) -> bool:
    """Whether A is isomorphic to a unital subalgebra of E."""
    if A.dim > E.dim:
        return False
    P = _unit_first_basis(A)
    src = transport(A, P)
    groups = E._minpoly_groups
    cands = [groups.get(min_poly(src, src.basis_vector(i)), []) for i in range(1, A.dim)]
    return bool(_hom_search(src, E, [E.unit], cands, find_all=False))


# -- isomorphism classes ---------------------------------------------------------------

def _table_key(T) -> bytes:
    return np.ascontiguousarray(T, dtype=np.int64).tobytes()


def _unit_fixing_group(F: Field, dim: int):
    """All invertible P with first column e0, and their inverses."""
    vecs = la.all_vectors(F, dim)
    Ps = []

    def extend(cols):
        if len(cols) == dim:
            Ps.append(np.array(cols).T)
            return
        for v in vecs:
            if la.rank(F, np.array(cols + [v])) == len(cols) + 1:
                extend(cols + [v])

    e0 = F.zeros(dim)
    e0[0] = F.one
    extend([e0])
    P = np.array(Ps)
    Pinv = np.array([la.inverse(F, M) for M in Ps])
    return P, Pinv


def _orbit_keys(F: Field, T, P, Pinv) -> set:
    new = _batch_einsum(F, "gai,gbj,abc,gkc->gijk", P, P, T, Pinv)
    return {_table_key(x) for x in new}


@dataclass
class IsoClasses:
    representatives: list  # indices into the input list
    class_of: list  # per input algebra, the index of its class

    def sizes(self) -> list:
        counts = [0] * len(self.representatives)
        for c in self.class_of:
            counts[c] += 1
        return counts


def iso_classes(algebras: list, max_group: int = 20000) -> IsoClasses:
    """Partition by isomorphism; each class is represented by its first member.

    Unit-first tables over a small finite field are classified by orbits
    under unit-fixing basis changes; otherwise pairwise isomorphism tests
    within invariant buckets are used.
    """
    if not algebras:
        return IsoClasses([], [])
    F = algebras[0].field
    _require_finite(F)
    dim = algebras[0].dim
    unit_first = all(a.unit[0] == F.one and F.allzero(a.unit[1:]) for a in algebras) and dim > 0
    group_size = 1
    for i in range(1, dim):
        group_size *= F.order ** dim - F.order ** i
    reps, class_of = [], [None] * len(algebras)
    if unit_first and group_size <= max_group and isinstance(F, PrimeField):
        P, Pinv = _unit_fixing_group(F, dim)
        index: dict = {}
        for i, E in enumerate(algebras):
            index.setdefault(_table_key(E.table), []).append(i)
        for i, E in enumerate(algebras):
            if class_of[i] is not None:
                continue
            c = len(reps)
            reps.append(i)
            for key in _orbit_keys(F, E.table, P, Pinv):
                for j in index.get(key, []):
                    class_of[j] = c
        return IsoClasses(reps, class_of)
    buckets: dict = {}
    for i, E in enumerate(algebras):
        bucket = buckets.setdefault(invariants(E), [])
        for c in bucket:
            if is_isomorphic(E, algebras[reps[c]]) is not None:
                class_of[i] = c
                break
        else:
            class_of[i] = len(reps)
            bucket.append(len(reps))
            reps.append(i)
    return IsoClasses(reps, class_of)


def classify_dimension(F: Field, dim: int, supersolvable_only: bool = False, jobs=None):
    """(all valid algebras, their classes, representative algebras)."""
    algs = enumerate_algebras(EnumerationTask(F, dim, jobs=jobs))
    classes = iso_classes(algs)
    reps = [algs[i] for i in classes.representatives]
    if supersolvable_only:
        reps = [E for E in reps if is_supersolvable(E) is not None]
    return algs, classes, reps


# -- codimension-one extensions ------------------------------------------------------

@dataclass
class ExtensionClasses:
    A: Algebra
    P: np.ndarray  # columns: the basis of A the extensions are written over (unit first)
    tables: list  # valid extension algebras (basis: P columns then y)
    classes: IsoClasses
    candidates: int = 0

    @property
    def representatives(self) -> list:
        return [self.tables[i] for i in self.classes.representatives]

    def __len__(self):
        return len(self.classes.representatives)


def brute_extensions_codim1(A: Algebra, budget: int = DEFAULT_BUDGET, jobs=None) -> ExtensionClasses:
    """All algebras on A + k y extending A, up to isomorphisms fixing A pointwise."""
    F = A.field
    _require_finite(F)
    P = _unit_first_basis(A)
    A1 = transport(A, P)
    n = A.dim
    N = n + 1
    base = F.zeros((N, N, N))
    base[:n, :n, :n] = A1.table
    base[0, n, n] = F.one
    base[n, 0, n] = F.one
    free = [np.ravel_multi_index((i, n, k), (N, N, N)) for i in range(1, n) for k in range(N)]
    free += [np.ravel_multi_index((n, i, k), (N, N, N)) for i in range(1, n) for k in range(N)]
    free += [np.ravel_multi_index((n, n, k), (N, N, N)) for k in range(N)]
    triples = tuple((i, j, l) for i in range(1, N) for j in range(1, N) for l in range(1, N)
                    if n in (i, j, l))
    space = _Space(F, base, tuple(free), triples)
    if space.size > budget:
        raise BudgetExceeded(f"{space.size} candidate tables exceed the budget {budget}")
    unit = F.zeros(N)
    unit[0] = F.one
    tables = [Algebra(F, space.decode(i, i + 1)[0], unit, _names(A1)) for i in _scan(space, jobs or default_jobs())]
    # orbits under y -> alpha + q y
    index = {}
    for i, E in enumerate(tables):
        index[_table_key(E.table)] = i
    reps, class_of = [], [None] * len(tables)
    mats = []
    for q in F.nonzero_elements():
        for alpha in la.all_vectors(F, n):
            M = F.eye(N)
            M[:n, n] = alpha
            M[n, n] = q
            mats.append(M)
    Pm = np.array(mats)
    Pinv = np.array([la.inverse(F, M) for M in mats])
    for i, E in enumerate(tables):
        if class_of[i] is not None:
            continue
        c = len(reps)
        reps.append(i)
        for key in _orbit_keys(F, E.table, Pm, Pinv):
            j = index.get(key)
            if j is not None:
                class_of[j] = c
    return ExtensionClasses(A, P, tables, IsoClasses(reps, class_of), space.size)


def _names(A: Algebra):
    if A.names is None:
        return None
    for c in "xyzwv":
        if c not in A.names:
            return A.names + (c,)
    return None


# -- reports -----------------------------------------------------------------------

def report_json(F: Field, dim: int, total: int, algebras: list, classes: IsoClasses) -> dict:
    out = {"field": str(F), "dim": dim, "total_tables": total, "valid": len(algebras), "classes": []}
    for rep, size in zip(classes.representatives, classes.sizes()):
        E = algebras[rep]
        entry = {"representative": algebra_to_json(E), "size": size}
        try:
            entry["presentation"] = presentation(E)
        except ValueError:
            pass
        out["classes"].append(entry)
    return out


# -- catalog comparison -------------------------------------------------------------

def class_lookup(algebras: list, classes: IsoClasses):
    """Function sending any algebra of the enumerated dimension to its class index (or None)."""
    index = {_table_key(E.table): c for E, c in zip(algebras, classes.class_of)}

    def lookup(E: Algebra):
        if E.dim != algebras[0].dim:
            return None
        return index.get(_table_key(transport(E, _unit_first_basis(E)).table))

    return lookup


def compare_catalog(F: Field, dim: int, jobs=None) -> dict:
    """Cross-check the named catalog and the supersolvable tower catalog against the oracle.

    Passes when every supersolvable algebra found by enumeration is isomorphic
    to a named catalog entry, every named entry is a supersolvable algebra of
    the right dimension, and the tower catalog hits each supersolvable class
    exactly once.
    """
    from .flag import paper_catalog_dim2, paper_catalog_dim3, supersolvable_catalog

    algs, classes, _ = classify_dimension(F, dim, jobs=jobs)
    lookup = class_lookup(algs, classes)
    ss_classes = [c for c, i in enumerate(classes.representatives) if is_supersolvable(algs[i]) is not None]
    catalog = (paper_catalog_dim2 if dim == 2 else paper_catalog_dim3)(F)
    entry_class = {e.name: lookup(e.algebra) for e in catalog.entries}
    bad_entries = [n for n, c in entry_class.items() if c is None or c not in ss_classes]
    uncovered = [c for c in ss_classes if c not in entry_class.values()]
    tower = [lookup(E) for E in supersolvable_catalog(F, dim)]
    tower_ok = sorted(c for c in tower if c is not None) == sorted(ss_classes) and None not in tower
    return {
        "field": str(F),
        "dim": dim,
        "oracle_classes": len(classes.representatives),
        "supersolvable_classes": len(ss_classes),
        "catalog_entries": len(catalog.entries),
        "catalog_distinct_classes": len({c for c in entry_class.values() if c is not None}),
        "entry_classes": entry_class,
        "entries_not_supersolvable": bad_entries,
        "uncovered_classes": [presentation_or_table(algs[classes.representatives[c]]) for c in uncovered],
        "tower_catalog_size": len(tower),
        "tower_matches_oracle": tower_ok,
        "passed": not bad_entries and not uncovered and tower_ok,
    }


def presentation_or_table(E: Algebra):
    names = ("1", "x", "y", "z")[: E.dim] if E.dim <= 4 else None
    try:
        return presentation(Algebra(E.field, E.table, E.unit, names))
    except ValueError:
        return algebra_to_json(E)
