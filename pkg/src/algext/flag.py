"""Flag datums: codimension-one extensions, their classification and catalogs.

A flag datum (Lambda, lam, D, d, a0, u) of A describes the algebra
generated by A and one new element y subject to

    y^2 = a0 + u y,   a y = d(a) + lam(a) y,   y a = D(a) + Lambda(a) y.

Characters are stored as value vectors on the basis of A, D and d as
matrices whose columns are the images of the basis vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .algebra import (
    Algebra,
    _is_character,
    _require_finite,
    algebra_from_products,
    algebra_validate,
    characters,
    invariants,
    is_isomorphic,
    presentation,
)
from .errors import (
    DimensionBoundExceeded,
    FlagCheckFailed,
    InfiniteClassSet,
    NotACharacter,
    Unsupported,
)
from .field import Field, class_system
from .unified import ExtendingDatum, Report, _witness

MAX_ENUM_DIM = 4
NAMES = ("1", "x", "y", "z", "w", "v")


@dataclass(frozen=True, eq=False)
class FlagDatum:
    Lambda: np.ndarray
    lam: np.ndarray
    D: np.ndarray
    d: np.ndarray
    a0: np.ndarray
    u: object

    def key(self, F: Field) -> tuple:
        return (F.key(self.Lambda), F.key(self.lam), F.key(self.D), F.key(self.d),
                F.key(self.a0), F.key(np.array([self.u], dtype=F.dtype)))

    def to_json(self, F: Field) -> dict:
        fmt = F.format_element
        return {
            "Lambda": [fmt(c) for c in self.Lambda],
            "lambda": [fmt(c) for c in self.lam],
            "D": [[fmt(c) for c in row] for row in self.D],
            "d": [[fmt(c) for c in row] for row in self.d],
            "a0": [fmt(c) for c in self.a0],
            "u": fmt(self.u),
        }


def flag_from_json(F: Field, data: dict) -> FlagDatum:
    p = lambda s: F.parse_element(str(s))
    vec = lambda xs: F.array([p(x) for x in xs])
    mat = lambda rows: F.array([[p(x) for x in row] for row in rows]).reshape(len(rows), len(rows))
    return FlagDatum(vec(data["Lambda"]), vec(data["lambda"]), mat(data["D"]), mat(data["d"]),
                     vec(data["a0"]), p(data["u"]))


def make_flag(F: Field, Lambda, lam, D, d, a0, u) -> FlagDatum:
    n = len(Lambda)
    return FlagDatum(F.array(Lambda), F.array(lam), F.array(D).reshape(n, n), F.array(d).reshape(n, n),
                     F.array(a0), F.array([u])[0])


# -- conditions ---------------------------------------------------------------------

def flag_residuals(A: Algebra, fd: FlagDatum) -> dict:
    """Residual tensors of the six flag conditions, keyed by condition name."""
    F = A.field
    e, s, a, mul = F.einsum, F.sub, F.add, F.mul
    C = A.table
    L, l, D, d, a0, u = fd.Lambda, fd.lam, fd.D, fd.d, fd.a0, fd.u
    diff = s(L, l)
    out = {}
    out["flag1"] = [
        (np.array([s(e("p,p->", L, a0), e("p,p->", l, a0))]), ""),
        (s(la.matvec(F, D, a0), la.matvec(F, d, a0)), ""),
        (e("p,pa->a", l, d), "a"),
        (e("p,pa->a", L, D), "a"),
    ]
    out["flag2"] = [
        (s(e("abc,pc->abp", C, d), a(e("cb,acp->abp", d, C), e("pa,b->abp", d, l))), "ab"),
        (s(e("abc,pc->abp", C, D), a(e("a,pb->abp", L, D), e("ca,cbp->abp", D, C))), "ab"),
    ]
    out["flag3"] = [
        (s(e("pc,ca->ap", d, d), a(mul(u, d.T), s(e("c,acp->ap", a0, C), e("a,p->ap", l, a0)))), "a"),
        (s(e("pc,ca->ap", D, D), a(mul(u, D.T), s(e("c,cap->ap", a0, C), e("a,p->ap", L, a0)))), "a"),
    ]
    out["flag4"] = [(s(s(e("pc,ca->ap", D, d), e("pc,ca->ap", d, D)), e("a,p->ap", diff, a0)), "a")]
    out["flag5"] = [(s(s(e("p,pa->a", L, d), e("p,pa->a", l, D)), mul(u, diff)), "a")]
    out["flag6"] = [(s(a(e("cb,acp->abp", D, C), e("b,pa->abp", L, d)),
                       a(e("ca,cbp->abp", d, C), e("a,pb->abp", l, D))), "ab")]
    return out


def flag_check(A: Algebra, fd: FlagDatum) -> Report:
    F = A.field
    n = A.dim
    if fd.D.shape != (n, n) or fd.d.shape != (n, n) or fd.a0.shape != (n,):
        from .errors import ShapeMismatch

        raise ShapeMismatch("flag datum shapes do not match the algebra")
    for chi, name in ((fd.Lambda, "Lambda"), (fd.lam, "lambda")):
        if chi.shape != (n,) or not _is_character(A, chi):
            raise NotACharacter(f"{name} is not a character")
    rep = Report()
    for name, parts in flag_residuals(A, fd).items():
        w = None
        for res, roles in parts:
            w = w or _witness(F, res, list(roles))
        rep.results[name] = w
    return rep


def flag_extension(A: Algebra, fd: FlagDatum, names=None) -> Algebra:
    rep = flag_check(A, fd)
    if not rep.ok:
        raise FlagCheckFailed(rep)
    return raw_flag_extension(A, fd, names)


def _extended_names(A: Algebra):
    if A.names is None:
        return None
    for c in "xyzwvst":
        if c not in A.names:
            return A.names + (c,)
    return None


def raw_flag_extension(A: Algebra, fd: FlagDatum, names=None) -> Algebra:
    """Structure constants of the flag product without checking the conditions."""
    F, n = A.field, A.dim
    N = n + 1
    T = F.zeros((N, N, N))
    T[:n, :n, :n] = A.table
    T[:n, n, :n] = fd.d.T
    T[:n, n, n] = fd.lam
    T[n, :n, :n] = fd.D.T
    T[n, :n, n] = fd.Lambda
    T[n, n, :n] = fd.a0
    T[n, n, n] = fd.u
    unit = np.concatenate([A.unit, F.zeros(1)])
    return Algebra(F, T, unit, names if names is not None else _extended_names(A))


def datum_from_flag(A: Algebra, fd: FlagDatum) -> ExtendingDatum:
    """The extending datum by a line V = k y that corresponds to fd."""
    F, n = A.field, A.dim
    return ExtendingDatum(
        A, 1,
        lact=fd.Lambda.reshape(1, n, 1), ract=fd.D.T.reshape(1, n, n), lhar=fd.d.T.reshape(n, 1, n),
        rhar=fd.lam.reshape(n, 1, 1), cocycle=fd.a0.reshape(1, 1, n), vmult=F.array([[[fd.u]]]),
    )


def flag_from_datum(Om: ExtendingDatum) -> FlagDatum:
    if Om.V_dim != 1:
        raise Unsupported("flag datums describe extensions by a line")
    n = Om.A.dim
    return FlagDatum(Om.lact[0, :, 0].copy(), Om.rhar[:, 0, 0].copy(), Om.ract[0].T.copy(),
                     Om.lhar[:, 0, :].T.copy(), Om.cocycle[0, 0].copy(), Om.vmult[0, 0, 0])


# -- enumeration ---------------------------------------------------------------------

def _derivations(A: Algebra, chi, kind: str) -> list:
    """Linear maps satisfying the twisted derivation rule of the given kind and chi o T = 0.

    kind "D": T(ab) = chi(a) T(b) + T(a) b;   kind "d": T(ab) = a T(b) + T(a) chi(b).
    """
    F, n = A.field, A.dim
    C = A.table
    e, s, a = F.einsum, F.sub, F.add

    def residual(vec):
        T = vec.reshape(n, n)
        if kind == "D":
            r = s(e("abc,pc->abp", C, T), a(e("a,pb->abp", chi, T), e("ca,cbp->abp", T, C)))
        else:
            r = s(e("abc,pc->abp", C, T), a(e("cb,acp->abp", T, C), e("pa,b->abp", T, chi)))
        return np.concatenate([r.ravel(), e("p,pa->a", chi, T)])

    return [v.reshape(n, n) for v in la.affine_solutions(F, residual, n * n)]


def enumerate_flag_datums(A: Algebra) -> list:
    """Every flag datum of A over a finite field, in canonical order."""
    F, n = A.field, A.dim
    _require_finite(F)
    if n > MAX_ENUM_DIM:
        raise DimensionBoundExceeded(f"flag enumeration is limited to dim A <= {MAX_ENUM_DIM}")
    chars = characters(A)
    big_D = {F.key(c): _derivations(A, c, "D") for c in chars}
    small_d = {F.key(c): _derivations(A, c, "d") for c in chars}
    out = []
    zero_a0 = F.zeros(n)
    for L in chars:
        for l in chars:
            for D in big_D[F.key(L)]:
                for d in small_d[F.key(l)]:
                    probe = FlagDatum(L, l, D, d, zero_a0, F.zero)
                    if not F.allzero(flag_residuals(A, probe)["flag6"][0][0]):
                        continue

                    def residual(vec, L=L, l=l, D=D, d=d):
                        fd = FlagDatum(L, l, D, d, vec[:n], vec[n])
                        res = flag_residuals(A, fd)
                        return np.concatenate([np.asarray(r).ravel() for parts in res.values() for r, _ in parts])

                    for vec in la.affine_solutions(F, residual, n + 1):
                        out.append(FlagDatum(L, l, D, d, vec[:n].copy(), vec[n]))
    out.sort(key=lambda fd: fd.key(F))
    return out


# -- equivalence -------------------------------------------------------------------

@dataclass(frozen=True)
class FlagCertificate:
    q: object
    alpha: tuple


def transform(A: Algebra, fd: FlagDatum, q, alpha) -> FlagDatum:
    """The datum related to fd by the pair (q, alpha).

    Returns fd2 with  D2(a) = q D(a) + alpha a - Lambda(a) alpha,
    d2(a) = q d(a) + a alpha - lam(a) alpha,  u2 = q u + lam(alpha) + Lambda(alpha)
    and a02 = q^2 a0 + alpha^2 - u2 alpha + q d(alpha) + q D(alpha).
    """
    F = A.field
    e, s, a, mul = F.einsum, F.sub, F.add, F.mul
    C = A.table
    alpha = F.array(alpha)
    u2 = a(a(mul(q, fd.u), e("p,p->", fd.lam, alpha)), e("p,p->", fd.Lambda, alpha))
    D2 = a(mul(q, fd.D), s(e("i,ijp->pj", alpha, C), e("p,j->pj", alpha, fd.Lambda)))
    d2 = a(mul(q, fd.d), s(e("i,jip->pj", alpha, C), e("p,j->pj", alpha, fd.lam)))
    a02 = a(mul(mul(q, q), fd.a0), s(A.mul(alpha, alpha), mul(u2, alpha)))
    a02 = a(a02, mul(q, a(la.matvec(F, fd.d, alpha), la.matvec(F, fd.D, alpha))))
    return FlagDatum(fd.Lambda, fd.lam, D2, d2, a02, F.array([u2])[0])


def _group(A: Algebra, mode: str):
    F = A.field
    qs = [F.one] if mode == "cohomologous" else F.nonzero_elements()
    if mode not in ("equivalent", "cohomologous"):
        raise ValueError(f"unknown mode {mode!r}")
    alphas = la.all_vectors(F, A.dim)
    return [(q, alpha) for q in qs for alpha in alphas]


def flag_equiv(A: Algebra, fd: FlagDatum, fd2: FlagDatum, mode: str = "equivalent"):
    """A certificate (q, alpha) with fd = transform(fd2, q, alpha), or None."""
    F = A.field
    _require_finite(F)
    if F.key(fd.Lambda) != F.key(fd2.Lambda) or F.key(fd.lam) != F.key(fd2.lam):
        return None
    target = fd.key(F)
    for q, alpha in _group(A, mode):
        if transform(A, fd2, q, alpha).key(F) == target:
            return FlagCertificate(q, tuple(F.key(alpha)))
    return None


@dataclass
class ClassifiedFamily:
    """Flag datums of A modulo the equivalent or cohomologous relation."""

    A: Algebra
    mode: str
    datums: list
    representatives: list  # indices into datums
    assignment: list  # per datum: (class index, certificate with datum = transform(rep, q, alpha))
    classes: list = dc_field(default_factory=list)  # lists of datum indices

    @property
    def rep_datums(self) -> list:
        return [self.datums[i] for i in self.representatives]

    def __len__(self):
        return len(self.representatives)

    def to_json(self) -> dict:
        F = self.A.field
        fmt = F.format_element
        out = {"mode": self.mode, "datums": len(self.datums), "classes": []}
        for c, idx in enumerate(self.representatives):
            members = []
            for j in self.classes[c]:
                cert = self.assignment[j][1]
                members.append({"datum": self.datums[j].to_json(F),
                                "q": fmt(cert.q), "alpha": [fmt(x) for x in cert.alpha]})
            rep = self.datums[idx]
            out["classes"].append({
                "representative": rep.to_json(F),
                "presentation": _safe_presentation(raw_flag_extension(self.A, rep)),
                "size": len(self.classes[c]),
                "members": members,
            })
        return out


def _safe_presentation(E: Algebra):
    try:
        return presentation(E)
    except ValueError:
        return None


def classify_codim1(A: Algebra, mode: str = "equivalent", datums=None) -> ClassifiedFamily:
    """Quotient of the flag datums of A by the chosen relation.

    Edges fd -> transform(fd, q, alpha) are collected for every datum and
    group element; classes are the connected components, represented by
    their least datum in canonical order.
    """
    F = A.field
    _require_finite(F)
    if A.dim > 3:
        raise DimensionBoundExceeded("codimension-one classification is limited to dim A <= 3")
    datums = enumerate_flag_datums(A) if datums is None else list(datums)
    index = {fd.key(F): i for i, fd in enumerate(datums)}
    parent = list(range(len(datums)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    group = _group(A, mode)
    orbit_of = []
    for i, fd in enumerate(datums):
        orbit = {}
        for q, alpha in group:
            j = index.get(transform(A, fd, q, alpha).key(F))
            if j is None:
                raise AssertionError("transform left the set of flag datums")
            orbit.setdefault(j, FlagCertificate(q, tuple(F.key(alpha))))
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        orbit_of.append(orbit)
    roots = sorted({find(i) for i in range(len(datums))})
    cls_index = {r: c for c, r in enumerate(roots)}
    classes = [[] for _ in roots]
    assignment = []
    for i in range(len(datums)):
        c = cls_index[find(i)]
        classes[c].append(i)
        rep = roots[c]
        cert = orbit_of[rep].get(i) or flag_equiv(A, datums[i], datums[rep], mode)
        assignment.append((c, cert))
    return ClassifiedFamily(A, mode, datums, roots, assignment, classes)


# -- supersolvable algebras ---------------------------------------------------------

def base_field_algebra(F: Field) -> Algebra:
    return Algebra(F, F.array([[[F.one]]]), F.array([F.one]), ("1",))


def two_dim_algebra(F: Field, a, b) -> Algebra:
    """k_(a,b): basis {1, x} with x^2 = a + b x."""
    return algebra_from_products(F, ("1", "x"), {(1, 1): [a, b]})


def _dedupe(algebras: list) -> list:
    reps, buckets = [], {}
    for E in algebras:
        inv = invariants(E)
        bucket = buckets.setdefault(inv, [])
        if any(is_isomorphic(E, R) is not None for R in bucket):
            continue
        bucket.append(E)
        reps.append(E)
    return reps


def supersolvable_catalog(F: Field, m: int) -> list:
    """Representatives, up to isomorphism, of the m-dimensional supersolvable algebras."""
    _require_finite(F)
    if m > 4 or m < 1:
        raise DimensionBoundExceeded("supersolvable catalogs are limited to 1 <= m <= 4")
    stage = [base_field_algebra(F)]
    for _ in range(m - 1):
        found = []
        for A in stage:
            fam = classify_codim1(A, "equivalent")
            found.extend(flag_extension(A, fd) for fd in fam.rep_datums)
        stage = _dedupe(found)
    return stage


# -- catalogs of named presentations ------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    template: str
    algebra: Algebra | None = None
    parameter: str | None = None

    @property
    def presentation(self) -> str | None:
        return presentation(self.algebra) if self.algebra is not None else None

    def to_json(self) -> dict:
        from .algebra import algebra_to_json

        return {
            "name": self.name,
            "template": self.template,
            "presentation": self.presentation,
            "parameter": self.parameter,
            "algebra": algebra_to_json(self.algebra) if self.algebra is not None else None,
        }


@dataclass
class Catalog:
    field: Field
    dim: int
    entries: list
    families: list = dc_field(default_factory=list)  # parametrized entries left unresolved
    notes: list = dc_field(default_factory=list)

    def names(self) -> list:
        return [e.name for e in self.entries]


def _rep_lists(F: Field, degree_bound=None):
    """(S, T, R, notes); None marks an infinite set that was not listed."""
    cs = class_system(F, degree_bound)
    notes = []
    out = []
    for name in ("S", "T", "R"):
        try:
            out.append(list(getattr(cs, f"{name}_reps")))
        except InfiniteClassSet:
            out.append(None)
            notes.append(f"{name} is infinite over {F}")
    if not cs.complete and F.is_finite is False and out[1] is not None:
        notes.append(f"representative lists over {F} are degree bounded")
    return out[0], out[1], out[2], notes


def _alg3(F: Field, x2, y2, xy, yx) -> Algebra:
    return algebra_from_products(F, ("1", "x", "y"), {(1, 1): x2, (2, 2): y2, (1, 2): xy, (2, 1): yx})


def _fmt(F, c):
    return F.format_element(c)


def paper_catalog_dim2(F: Field, degree_bound=None) -> Catalog:
    """Normal forms of the two-dimensional algebras, instantiated over F."""
    S, T, R, notes = _rep_lists(F, degree_bound)
    k = lambda a, b: two_dim_algebra(F, a, b)
    one, zero = F.one, F.zero
    cat = Catalog(F, 2, [], notes=notes)
    cat.entries.append(CatalogEntry("k_(0,0)", "x^2 = 0", k(zero, zero)))
    if F.characteristic != 2:
        cat.entries.append(CatalogEntry("k_(0,1)", "x^2 = x", k(zero, one)))
        if S is None:
            cat.families.append(CatalogEntry("k_(d,0)", "x^2 = d", parameter="d in S"))
        for d in S or []:
            cat.entries.append(CatalogEntry(f"k_({_fmt(F, d)},0)", "x^2 = d", k(d, zero), f"d = {_fmt(F, d)}"))
    else:
        if T is None:
            cat.families.append(CatalogEntry("k_(c,1)", "x^2 = c + x", parameter="c in T"))
        for c in T or []:
            cat.entries.append(CatalogEntry(f"k_({_fmt(F, c)},1)", "x^2 = c + x", k(c, one), f"c = {_fmt(F, c)}"))
        for delta in R or []:
            cat.entries.append(CatalogEntry(f"k_({_fmt(F, delta)},0)", "x^2 = delta", k(delta, zero),
                                            f"delta = {_fmt(F, delta)}"))
    return cat


def paper_catalog_dim3(F: Field, degree_bound=None) -> Catalog:
    """Named three-dimensional supersolvable algebras instantiated over F."""
    S, T, R, notes = _rep_lists(F, degree_bound)
    one, zero = F.one, F.zero
    neg = F.neg
    V = lambda c0=zero, cx=zero, cy=zero: [c0, cx, cy]
    X, Y, O = V(cx=one), V(cy=one), V()
    cat = Catalog(F, 3, [], notes=notes)
    add = lambda name, tpl, alg, param=None: cat.entries.append(CatalogEntry(name, tpl, alg, param))

    add("A0_1", "x^2 = 0, y^2 = y, xy = x, yx = 0", _alg3(F, O, Y, X, O))
    add("A0_2", "x^2 = 0, y^2 = y, xy = yx = 0", _alg3(F, O, Y, O, O))
    add("A0_3", "x^2 = 0, y^2 = 0, xy = yx = 0", _alg3(F, O, O, O, O))
    add("A0_4", "x^2 = 0, y^2 = x, xy = yx = 0", _alg3(F, O, X, O, O))
    add("A0_5", "x^2 = 0, y^2 = x + y, xy = yx = 0", _alg3(F, O, V(cx=one, cy=one), O, O))
    if S is None:
        cat.families.append(CatalogEntry("A0(d)", "x^2 = 0, y^2 = d x, xy = yx = 0", parameter="d in S"))
    for d in S or []:
        add(f"A0({_fmt(F, d)})", "x^2 = 0, y^2 = d x, xy = yx = 0", _alg3(F, O, V(cx=d), O, O), f"d = {_fmt(F, d)}")

    if F.characteristic != 2:
        add("A1_1", "x^2 = x, y^2 = 0, xy = yx = 0", _alg3(F, X, O, O, O))
        add("A1_2", "x^2 = x, y^2 = x - 1, xy = yx = 0", _alg3(F, X, V(neg(one), one), O, O))
        add("A1_3", "x^2 = x, y^2 = 0, xy = yx = y", _alg3(F, X, O, Y, Y))
        add("A1_4", "x^2 = x, y^2 = x, xy = yx = y", _alg3(F, X, X, Y, Y))
        add("A1_5", "x^2 = x, y^2 = 0, xy = y, yx = 0", _alg3(F, X, O, Y, O))
        if S is None:
            cat.families.append(CatalogEntry("B1(d)", "x^2 = x, y^2 = d(x - 1), xy = yx = 0", parameter="d in S"))
            cat.families.append(CatalogEntry("B2(d)", "x^2 = x, y^2 = d x, xy = yx = y", parameter="d in S"))
        for d in S or []:
            add(f"B1({_fmt(F, d)})", "x^2 = x, y^2 = d(x - 1), xy = yx = 0",
                _alg3(F, X, V(neg(d), d), O, O), f"d = {_fmt(F, d)}")
        for d in S or []:
            add(f"B2({_fmt(F, d)})", "x^2 = x, y^2 = d x, xy = yx = y", _alg3(F, X, V(cx=d), Y, Y), f"d = {_fmt(F, d)}")
        return cat

    add("C1_1", "x^2 = x, y^2 = 0, xy = yx = 0", _alg3(F, X, O, O, O))
    for c in T or []:
        # y^2 = c(x + 1) + y: the square must be annihilated by x, and u = 1 keeps the y term
        add(f"C1_2({_fmt(F, c)})", "x^2 = x, y^2 = c(x + 1) + y, xy = yx = 0",
            _alg3(F, X, V(c, c, one), O, O), f"c = {_fmt(F, c)}")
    add("C1_3", "x^2 = x, y^2 = 0, xy = yx = y", _alg3(F, X, O, Y, Y))
    for c in T or []:
        add(f"C1_4({_fmt(F, c)})", "x^2 = x, y^2 = y + c x, xy = yx = y",
            _alg3(F, X, V(cx=c, cy=one), Y, Y), f"c = {_fmt(F, c)}")
    add("C1_5", "x^2 = x, y^2 = 0, xy = y, yx = 0", _alg3(F, X, O, Y, O))
    if T is None:
        cat.families.append(CatalogEntry("C1_2(c)", "x^2 = x, y^2 = c(x + 1) + y, xy = yx = 0", parameter="c in T"))
        cat.families.append(CatalogEntry("C1_4(c)", "x^2 = x, y^2 = y + c x, xy = yx = y", parameter="c in T"))
    for delta in R or []:
        add(f"D1({_fmt(F, delta)})", "x^2 = x, y^2 = delta(x + 1), xy = yx = 0",
            _alg3(F, X, V(delta, delta), O, O), f"delta = {_fmt(F, delta)}")
    for delta in R or []:
        add(f"D2({_fmt(F, delta)})", "x^2 = x, y^2 = delta x, xy = yx = y",
            _alg3(F, X, V(cx=delta), Y, Y), f"delta = {_fmt(F, delta)}")
    return cat


# -- parametrized families of flag datums over k_(0,0) and k_(0,1) -----------------

def _classify_base(A: Algebra) -> str:
    F = A.field
    for name, (a, b) in (("k00", (0, 0)), ("k01", (0, 1))):
        ref = two_dim_algebra(F, F.from_int(a), F.from_int(b))
        if A.dim == 2 and F.key(A.table) == F.key(ref.table) and F.key(A.unit) == F.key(ref.unit):
            return name
    raise Unsupported("family generators need k_(0,0) or k_(0,1) in the basis {1, x}")


def flag_family_generators(A, F: Field | None = None) -> dict:
    """The parametrized families of flag datums of k_(0,0) or k_(0,1).

    ``A`` is either one of the names "k00"/"k01" (then F is required) or the
    algebra itself in the basis {1, x}.  Returns {family name: [FlagDatum]}.
    """
    if isinstance(A, str):
        name = A
        A = two_dim_algebra(F, F.zero, F.zero if name == "k00" else F.one)
    else:
        F = A.field
        name = _classify_base(A)
    _require_finite(F)
    e = F.elements()
    nz = F.nonzero_elements()
    z, one = F.zero, F.one
    add, sub, mul, neg = F.add, F.sub, F.mul, F.neg
    chi0, chi1 = [one, z], [one, one]

    def fd(L, l, Dcol, dcol, a0, u):
        # D and d vanish on 1; only the image of x is free
        D = [[z, Dcol[0]], [z, Dcol[1]]]
        d = [[z, dcol[0]], [z, dcol[1]]]
        return make_flag(F, L, l, D, d, a0, u)

    fam = {}
    if name == "k00":
        fam["F1"] = [fd(chi0, chi0, [z, D1], [z, D1], [sub(mul(D1, D1), mul(u, D1)), a01], u)
                     for D1 in e for a01 in nz for u in e]
        fam["F2"] = [fd(chi0, chi0, [z, D1], [z, D1], [sub(mul(D1, D1), mul(u, D1)), z], u)
                     for D1 in e for u in e]
        fam["F3"] = [fd(chi0, chi0, [z, D1], [z, d1], [neg(mul(D1, d1)), z], add(D1, d1))
                     for D1 in e for d1 in e if D1 != d1]
    else:
        fam["F1"] = [fd(chi0, chi0, [z, D1], [z, D1], [sub(sub(mul(D1, D1), mul(u, D1)), a01), a01], u)
                     for D1 in e for a01 in e for u in e]
        fam["F2"] = [fd(chi1, chi1, [D1, neg(D1)], [D1, neg(D1)], [add(mul(D1, D1), mul(u, D1)), a01], u)
                     for D1 in e for a01 in e for u in e]
        fam["F3"] = [fd(chi0, chi1, [z, D1], [d1, neg(d1)], [mul(D1, d1), z], sub(D1, d1))
                     for D1 in e for d1 in e]
        fam["F4"] = [fd(chi1, chi0, [D1, neg(D1)], [z, d1], [mul(D1, d1), z], sub(d1, D1))
                     for D1 in e for d1 in e]
    return fam
