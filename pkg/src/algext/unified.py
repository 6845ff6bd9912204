"""Extending datums, the twelve compatibility axioms and unified products.

An extending datum of an algebra A (dim n) by a vector space V (dim m)
consists of six bilinear maps stored as tensors:

=========  ====================  =============
attribute  map                   shape
=========  ====================  =============
lact       x <| a   : V x A -> V  (m, n, m)
ract       x |> a   : V x A -> A  (m, n, n)
lhar       a <- x   : A x V -> A  (n, m, n)
rhar       a -> x   : A x V -> V  (n, m, m)
cocycle    f(x, y)  : V x V -> A  (m, m, n)
vmult      x . y    : V x V -> V  (m, m, m)
=========  ====================  =============

The unified product lives on A x V with basis (A basis, V basis) and
multiplication

    (a, x)(b, y) = (ab + a <- y + x |> b + f(x, y),  a -> y + x <| b + x . y).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .algebra import Algebra, algebra_from_json, algebra_to_json, is_closed, restrict, transport
from .errors import (
    AxiomsFailed,
    CocycleConditionFailed,
    MatchedPairFailed,
    NotACharacter,
    NotAFactorization,
    NotARetraction,
    NotASubalgebra,
    NotAnAutomorphism,
    NotCommutativeBase,
    NotSymmetric,
    ShapeMismatch,
    UnsupportedOverInfiniteField,
)
from .groups import FiniteGroup

TENSORS = ("lact", "ract", "lhar", "rhar", "cocycle", "vmult")


@dataclass(frozen=True, eq=False)
class ExtendingDatum:
    A: Algebra
    V_dim: int
    lact: np.ndarray
    ract: np.ndarray
    lhar: np.ndarray
    rhar: np.ndarray
    cocycle: np.ndarray
    vmult: np.ndarray

    def __post_init__(self):
        n, m = self.A.dim, self.V_dim
        shapes = {
            "lact": (m, n, m), "ract": (m, n, n), "lhar": (n, m, n),
            "rhar": (n, m, m), "cocycle": (m, m, n), "vmult": (m, m, m),
        }
        F = self.A.field
        for name, shape in shapes.items():
            arr = getattr(self, name)
            arr = F.array(arr) if not isinstance(arr, np.ndarray) else arr.copy()
            if arr.shape != shape:
                raise ShapeMismatch(f"{name} has shape {arr.shape}, expected {shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def field(self):
        return self.A.field

    def replace(self, **changes) -> "ExtendingDatum":
        kw = {name: getattr(self, name) for name in TENSORS}
        kw.update(changes)
        return ExtendingDatum(self.A, self.V_dim, **kw)

    def key(self) -> tuple:
        F = self.field
        return (self.A.key(), self.V_dim) + tuple(F.key(getattr(self, t)) for t in TENSORS)


def zero_datum(A: Algebra, m: int, lact=None, rhar=None) -> ExtendingDatum:
    """Datum with the given bimodule structure (default: a -> x = x <| a = 0 except
    for the unit, which is forced) and every other map zero."""
    F, n = A.field, A.dim
    if lact is None or rhar is None:
        # the only normalized choice available without further structure
        eps = _unit_functional(A)
        if lact is None:
            lact = F.einsum("a,xv->xav", eps, F.eye(m))
        if rhar is None:
            rhar = F.einsum("a,xv->axv", eps, F.eye(m))
    return ExtendingDatum(
        A, m, lact, F.zeros((m, n, n)), F.zeros((n, m, n)), rhar, F.zeros((m, m, n)), F.zeros((m, m, m))
    )


def _unit_functional(A: Algebra):
    """A character of A if one exists, used to build a default bimodule."""
    from .algebra import characters

    chars = characters(A) if A.field.is_finite or A.dim <= 2 else []
    if not chars:
        raise NotACharacter("no character available to build a default bimodule")
    return chars[0]


# -- reports ---------------------------------------------------------------------

@dataclass
class Report:
    """Named checks, each holding None (pass) or the first failing basis tuple."""

    results: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def passed(self, name: str) -> bool:
        return self.results[name] is None

    def failed(self) -> list:
        return [k for k, w in self.results.items() if w is not None]

    def to_json(self) -> dict:
        return {k: {"ok": w is None, "witness": w} for k, w in self.results.items()}


AxiomReport = Report


def _witness(F, residual, roles):
    idx = F.first_nonzero(residual)
    if idx is None:
        return None
    return {role: i for role, i in zip(roles, idx)}


def _maps(Om: ExtendingDatum):
    return Om.A.table, Om.lact, Om.ract, Om.lhar, Om.rhar, Om.cocycle, Om.vmult


def normalization_residuals(Om: ExtendingDatum) -> dict:
    F, u, m = Om.field, Om.A.unit, Om.V_dim
    eye = F.eye(m)
    return {
        "x|>1": (F.einsum("a,xap->xp", u, Om.ract), "xp"),
        "x<|1": (F.sub(F.einsum("a,xav->xv", u, Om.lact), eye), "xv"),
        "1<-x": (F.einsum("a,axp->xp", u, Om.lhar), "xp"),
        "1->x": (F.sub(F.einsum("a,axv->xv", u, Om.rhar), eye), "xv"),
    }


def axiom_residuals(Om: ExtendingDatum) -> dict:
    """Residual tensors of the twelve axioms; an axiom holds iff its residual is zero.

    The last index of each residual is the output coordinate; the leading
    indices are the basis tuple named by the roles string.
    """
    F = Om.field
    C, L, R, H, K, Fc, M = _maps(Om)
    e = F.einsum
    s = F.sub
    a = F.add
    out = {}
    out["A1"] = [
        (s(e("abc,cxv->abxv", C, K), e("bxw,awv->abxv", K, K)), "abxv"),
        (s(e("abc,xcv->xabv", C, L), e("xaw,wbv->xabv", L, L)), "xabv"),
        (s(e("xbw,awv->axbv", L, K), e("axw,wbv->axbv", K, L)), "axbv"),
    ]
    out["A2"] = [(s(s(e("yzw,xwv->xyzv", M, M), e("xyw,wzv->xyzv", M, M)),
                    s(e("xyc,czv->xyzv", Fc, K), e("yzc,xcv->xyzv", Fc, L))), "xyzv")]
    out["A3"] = [(s(s(e("yzw,xwp->xyzp", M, Fc), e("xyw,wzp->xyzp", M, Fc)),
                    s(e("xyc,czp->xyzp", Fc, H), e("yzc,xcp->xyzp", Fc, R))), "xyzp")]
    out["A4"] = [(s(e("xyw,awv->axyv", M, K), a(e("axw,wyv->axyv", K, M), e("axc,cyv->axyv", H, K))), "axyv")]
    out["A5"] = [(s(a(e("axc,cyp->axyp", H, H), e("axw,wyp->axyp", K, Fc)),
                    a(e("xyw,awp->axyp", M, H), e("xyc,acp->axyp", Fc, C))), "axyp")]
    out["A6"] = [(s(e("abc,cxp->abxp", C, H), a(e("bxc,acp->abxp", H, C), e("bxw,awp->abxp", K, H))), "abxp")]
    out["A7"] = [(s(e("abc,xcp->xabp", C, R), a(e("xac,cbp->xabp", R, C), e("xaw,wbp->xabp", L, R))), "xabp")]
    out["A8"] = [(s(a(e("yac,xcp->xyap", R, R), e("yaw,xwp->xyap", L, Fc)),
                    a(e("xyw,wap->xyap", M, R), e("xyc,cap->xyap", Fc, C))), "xyap")]
    out["A9"] = [(s(e("xyw,wav->xyav", M, L), a(e("yac,xcv->xyav", R, L), e("yaw,xwv->xyav", L, M))), "xyav")]
    out["A10"] = [(s(a(e("xbc,acp->axbp", R, C), e("xbw,awp->axbp", L, H)),
                     a(e("axc,cbp->axbp", H, C), e("axw,wbp->axbp", K, R))), "axbp")]
    out["A11"] = [(s(a(e("ayc,xcp->xayp", H, R), e("ayw,xwp->xayp", K, Fc)),
                     a(e("xac,cyp->xayp", R, H), e("xaw,wyp->xayp", L, Fc))), "xayp")]
    out["A12"] = [(s(a(e("ayc,xcv->xayv", H, L), e("ayw,xwv->xayv", K, M)),
                     a(e("xac,cyv->xayv", R, K), e("xaw,wyv->xayv", L, M))), "xayv")]
    return out


def _role_names(roles: str) -> list:
    names = {"a": "a", "b": "b", "x": "x", "y": "y", "z": "z"}
    return [names[r] for r in roles[:-1]]


def check_axioms(Om: ExtendingDatum) -> Report:
    F = Om.field
    rep = Report()
    norm_w = None
    for _, (res, roles) in normalization_residuals(Om).items():
        norm_w = norm_w or _witness(F, res, _role_names(roles))
    rep.results["normalized"] = norm_w
    for name, parts in axiom_residuals(Om).items():
        w = None
        for res, roles in parts:
            w = w or _witness(F, res, _role_names(roles))
        rep.results[name] = w
    return rep


# -- products -----------------------------------------------------------------------

def raw_product_table(Om: ExtendingDatum):
    """Structure constants of the product formula, without checking any axiom."""
    F = Om.field
    n, m = Om.A.dim, Om.V_dim
    N = n + m
    T = F.zeros((N, N, N))
    T[:n, :n, :n] = Om.A.table
    T[:n, n:, :n] = Om.lhar
    T[:n, n:, n:] = Om.rhar
    T[n:, :n, :n] = Om.ract
    T[n:, :n, n:] = Om.lact
    T[n:, n:, :n] = Om.cocycle
    T[n:, n:, n:] = Om.vmult
    return T


def product_unit(Om: ExtendingDatum):
    F = Om.field
    return np.concatenate([Om.A.unit, F.zeros(Om.V_dim)])


def unified_product(Om: ExtendingDatum) -> Algebra:
    rep = check_axioms(Om)
    if not rep.ok:
        raise AxiomsFailed(rep)
    return Algebra(Om.field, raw_product_table(Om), product_unit(Om))


def datum_from_table(F, table, n: int, A: Algebra | None = None) -> ExtendingDatum:
    """Read the six maps off a product table written in a basis (A basis, V basis)."""
    N = table.shape[0]
    if A is None:
        unit = None
        A = Algebra(F, table[:n, :n, :n], _unit_of(F, table[:n, :n, :n]))
    return ExtendingDatum(
        A, N - n,
        lact=table[n:, :n, n:], ract=table[n:, :n, :n], lhar=table[:n, n:, :n],
        rhar=table[:n, n:, n:], cocycle=table[n:, n:, :n], vmult=table[n:, n:, n:],
    )


def _unit_of(F, table):
    n = table.shape[0]
    # solve u e_j = e_j for u
    M = np.transpose(table, (1, 2, 0)).reshape(n * n, n)
    sol = la.solve_affine(F, M, F.eye(n).reshape(n * n))
    if sol is None:
        raise NotASubalgebra("no unit")
    return sol[0]


def datum_from_retraction(E: Algebra, A_basis, p, V_basis=None):
    """Extending datum of E over span(A_basis) determined by the retraction p.

    Returns (datum, phi) where the columns of phi are the A basis followed by
    the V basis (V = ker p), so phi is the isomorphism from the unified
    product onto E.
    """
    F = E.field
    A_rows = np.array([F.array(v) for v in A_basis]).reshape(len(A_basis), E.dim)
    n = A_rows.shape[0]
    p = F.array(p)
    if la.rank(F, A_rows) != n:
        raise NotASubalgebra("A_basis is linearly dependent")
    if not (la.in_span(F, A_rows, E.unit) and is_closed(E, A_rows)):
        raise NotASubalgebra("A_basis does not span a unital subalgebra")
    if p.shape != (n, E.dim) or not F.allzero(F.sub(la.matmul(F, p, A_rows.T), F.eye(n))):
        raise NotARetraction("p does not restrict to the identity on A")
    if V_basis is None:
        V_rows = la.nullspace(F, p)
    else:
        V_rows = np.array([F.array(v) for v in V_basis]).reshape(len(V_basis), E.dim)
        if V_rows.shape[0] != E.dim - n or not F.allzero(la.matmul(F, p, V_rows.T)) \
                or la.rank(F, np.concatenate([A_rows, V_rows])) != E.dim:
            raise NotARetraction("V_basis is not a basis of the kernel of p")
    phi = np.concatenate([A_rows, V_rows]).T
    A = restrict(E, A_rows)
    m = V_rows.shape[0]
    # products of the combined basis, split as (p(w), coordinates of w - p(w) in V)
    B = phi.T
    prods = F.einsum("ia,jb,abc->ijc", B, B, E.table)
    a_part = F.einsum("ijc,pc->ijp", prods, p)
    rest = F.sub(prods, F.einsum("ijp,pc->ijc", a_part, A_rows))
    phi_inv = la.inverse(F, phi)
    v_part = F.einsum("ijc,vc->ijv", rest, phi_inv[n:])
    table = np.concatenate([a_part, v_part], axis=2)
    Om = ExtendingDatum(
        A, m, lact=table[n:, :n, n:], ract=table[n:, :n, :n], lhar=table[:n, n:, :n],
        rhar=table[:n, n:, n:], cocycle=table[n:, n:, :n], vmult=table[n:, n:, n:],
    )
    return Om, phi


# -- morphisms ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MorphismPair:
    r: np.ndarray  # n x m, column x is r(x)
    v: np.ndarray  # m x m, column x is v(x)


def psi_matrix(F, r, v):
    """Matrix of (a, x) -> (a + r(x), v(x))."""
    n, m = r.shape
    top = np.concatenate([F.eye(n), r], axis=1)
    bottom = np.concatenate([F.zeros((m, n)), v], axis=1)
    return np.concatenate([top, bottom], axis=0)


def morphism_residuals(Om: ExtendingDatum, Om2: ExtendingDatum, r, v) -> dict:
    F = Om.field
    e, s, a = F.einsum, F.sub, F.add
    C, L, R, H, K, Fc, M = _maps(Om)
    _, L2, R2, H2, K2, F2, M2 = _maps(Om2)
    out = {}
    out["M1"] = (s(a(e("xyw,pw->xyp", M, r), Fc),
                   a(a(e("ax,by,abp->xyp", r, r, C), e("wx,zy,wzp->xyp", v, v, F2)),
                     a(e("ax,wy,awp->xyp", r, v, H2), e("wx,ay,wap->xyp", v, r, R2)))), "xyp")
    out["M2"] = (s(e("xyw,uw->xyu", M, v),
                   a(a(e("ax,wy,awu->xyu", r, v, K2), e("wx,ay,wau->xyu", v, r, L2)),
                     e("wx,zy,wzu->xyu", v, v, M2))), "xyu")
    out["M3"] = (s(a(e("xaw,pw->xap", L, r), R), a(e("bx,bap->xap", r, C), e("wx,wap->xap", v, R2))), "xap")
    out["M4"] = (s(e("xaw,uw->xau", L, v), e("wx,wau->xau", v, L2)), "xau")
    out["M5"] = (s(a(e("axw,pw->axp", K, r), H), a(e("bx,abp->axp", r, C), e("wx,awp->axp", v, H2))), "axp")
    out["M6"] = (s(e("axw,uw->axu", K, v), e("wx,awu->axu", v, K2)), "axu")
    return out


def _check_shared(Om, Om2):
    if not Om.A.same(Om2.A) or Om.V_dim != Om2.V_dim:
        raise ShapeMismatch("datums must share A and V_dim")


def morphism_report(Om, Om2, pair: MorphismPair) -> Report:
    _check_shared(Om, Om2)
    F = Om.field
    r, v = F.array(pair.r), F.array(pair.v)
    if r.shape != (Om.A.dim, Om.V_dim) or v.shape != (Om.V_dim, Om.V_dim):
        raise ShapeMismatch("pair shapes do not match the datum")
    rep = Report()
    for name, (res, roles) in morphism_residuals(Om, Om2, r, v).items():
        rep.results[name] = _witness(F, res, list(roles[:-1]))
    return rep


def morphism_check(Om, Om2, pair: MorphismPair) -> bool:
    return morphism_report(Om, Om2, pair).ok


def is_multiplicative(F, table1, table2, M) -> bool:
    """Whether the matrix M is multiplicative from table1 to table2."""
    lhs = F.einsum("da,eb,dec->abc", M, M, table2)
    rhs = F.einsum("abk,ck->abc", table1, M)
    return F.allzero(F.sub(lhs, rhs))


def transport_datum(Om: ExtendingDatum, r, v) -> ExtendingDatum:
    """The datum implemented from Om by (r, v), with v invertible.

    It is the unique datum Om2 for which (a, x) -> (a + r(x), v(x)) is an
    isomorphism of the two products.
    """
    F = Om.field
    e, s, a = F.einsum, F.sub, F.add
    C, L, R, H, K, Fc, M = _maps(Om)
    r, v = F.array(r), F.array(v)
    vi = la.inverse(F, v)
    if vi is None:
        raise ValueError("v must be invertible")
    RX = e("bw,wx->bx", r, vi)  # r(v^-1 x)
    K2 = e("wx,awz,uz->axu", vi, K, v)
    H2 = a(s(e("wx,awz,pz->axp", vi, K, r), e("bx,abp->axp", RX, C)), e("wx,awp->axp", vi, H))
    L2 = e("wx,waz,uz->xau", vi, L, v)
    R2 = a(s(e("wx,waz,pz->xap", vi, L, r), e("bx,bap->xap", RX, C)), e("wx,wap->xap", vi, R))
    M2 = s(s(e("wx,zy,wzs,us->xyu", vi, vi, M, v), e("bx,zy,bzs,us->xyu", RX, vi, K, v)),
           e("wx,by,wbs,us->xyu", vi, RX, L, v))
    F2 = e("wx,zy,wzs,ps->xyp", vi, vi, M, r)
    F2 = a(F2, e("wx,zy,wzp->xyp", vi, vi, Fc))
    F2 = s(F2, e("bx,zy,bzs,ps->xyp", RX, vi, K, r))
    F2 = s(F2, e("bx,zy,bzp->xyp", RX, vi, H))
    F2 = s(F2, e("wx,by,wbs,ps->xyp", vi, RX, L, r))
    F2 = a(F2, e("bx,cy,bcp->xyp", RX, RX, C))
    F2 = s(F2, e("wx,by,wbp->xyp", vi, RX, R))
    return ExtendingDatum(Om.A, Om.V_dim, lact=L2, ract=R2, lhar=H2, rhar=K2, cocycle=F2, vmult=M2)


def morphism_solutions(Om, Om2, vs, first_only: bool = False):
    """All pairs (r, v), v drawn from ``vs``, satisfying the six morphism conditions.

    For each v the v-only conditions are tested first, then the conditions
    that are affine in r are solved, and only then the quadratic one.
    """
    F = Om.field
    if not F.is_finite:
        raise UnsupportedOverInfiniteField("exhaustive (r, v) search needs a finite field")
    n, m = Om.A.dim, Om.V_dim
    zero_r = F.zeros((n, m))
    out = []
    for v in vs:
        base = morphism_residuals(Om, Om2, zero_r, v)
        if not (F.allzero(base["M4"][0]) and F.allzero(base["M6"][0])):
            continue

        def affine(rvec, v=v):
            res = morphism_residuals(Om, Om2, rvec.reshape(n, m), v)
            return np.concatenate([res[k][0].ravel() for k in ("M2", "M3", "M5")])

        for rvec in la.affine_solutions(F, affine, n * m):
            r = rvec.reshape(n, m)
            if F.allzero(morphism_residuals(Om, Om2, r, v)["M1"][0]):
                out.append(MorphismPair(r, v))
                if first_only:
                    return out
    return out


def find_equivalence(Om, Om2):
    _check_shared(Om, Om2)
    found = morphism_solutions(Om, Om2, la.invertible_matrices(Om.field, Om.V_dim), first_only=True)
    return found[0] if found else None


def find_cohomologous(Om, Om2):
    _check_shared(Om, Om2)
    F = Om.field
    if not (F.allzero(F.sub(Om.lact, Om2.lact)) and F.allzero(F.sub(Om.rhar, Om2.rhar))):
        return None
    found = morphism_solutions(Om, Om2, [F.eye(Om.V_dim)], first_only=True)
    return found[0].r if found else None


# -- special products ----------------------------------------------------------------

def classify_special(Om: ExtendingDatum) -> set:
    rep = check_axioms(Om)
    if not rep.ok:
        raise AxiomsFailed(rep)
    F = Om.field
    z = {name: F.allzero(getattr(Om, name)) for name in ("ract", "lhar", "cocycle", "vmult")}
    tags = set()
    if z["lhar"]:
        tags.add("left-split")
    if z["ract"]:
        tags.add("right-split")
    if z["lhar"] and z["ract"]:
        tags.add("cocycle-semidirect")
        if z["cocycle"]:
            tags.add("semidirect")
    if z["cocycle"]:
        tags.add("matched-pair")
    if z["ract"] and z["lhar"] and z["vmult"]:
        tags.add("cocycle-deformed-trivial")
        if z["cocycle"]:
            tags.add("trivial-extension")
    return tags


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """A, a (possibly non-unital) algebra structure on V and four actions."""

    A: Algebra
    V_dim: int
    vmult: np.ndarray
    lact: np.ndarray
    ract: np.ndarray
    lhar: np.ndarray
    rhar: np.ndarray

    def as_datum(self) -> ExtendingDatum:
        F, n, m = self.A.field, self.A.dim, self.V_dim
        return ExtendingDatum(self.A, m, lact=self.lact, ract=self.ract, lhar=self.lhar,
                              rhar=self.rhar, cocycle=F.zeros((m, m, n)), vmult=self.vmult)


MATCHED_PAIR_AXIOMS = {"MP1": "A4", "MP2": "A6", "MP3": "A7", "MP4": "A9", "MP5": "A10", "MP6": "A12"}


def matched_pair_check(mp: MatchedPair) -> Report:
    Om = mp.as_datum()
    F = Om.field
    e, s = F.einsum, F.sub
    full = check_axioms(Om)
    C, L, R, H, K, _, M = _maps(Om)
    rep = Report()
    rep.results["normalized"] = full.results["normalized"]
    rep.results["V-associative"] = _witness(
        F, s(e("yzw,xwv->xyzv", M, M), e("xyw,wzv->xyzv", M, M)), ["x", "y", "z"])
    rep.results["A-bimodule"] = full.results["A1"]
    w = _witness(F, s(e("yac,xcp->xyap", R, R), e("xyw,wap->xyap", M, R)), ["x", "y", "a"])
    w = w or _witness(F, s(e("axc,cyp->axyp", H, H), e("xyw,awp->axyp", M, H)), ["a", "x", "y"])
    w = w or _witness(F, s(e("ayc,xcp->xayp", H, R), e("xac,cyp->xayp", R, H)), ["x", "a", "y"])
    rep.results["V-bimodule"] = w
    for mp_name, ax in MATCHED_PAIR_AXIOMS.items():
        rep.results[mp_name] = full.results[ax]
    return rep


def bicrossed_product(mp: MatchedPair) -> Algebra:
    rep = matched_pair_check(mp)
    if not rep.ok:
        raise MatchedPairFailed(rep)
    Om = mp.as_datum()
    return Algebra(Om.field, raw_product_table(Om), product_unit(Om))


def factorize(E: Algebra, A_basis, V_basis):
    """Matched pair (and the map phi = [A_basis | V_basis]) of a factorization E = A + V."""
    F = E.field
    A_rows = np.array([F.array(v) for v in A_basis]).reshape(len(A_basis), E.dim)
    V_rows = np.array([F.array(v) for v in V_basis]).reshape(len(V_basis), E.dim)
    both = np.concatenate([A_rows, V_rows])
    if both.shape[0] != E.dim or la.rank(F, both) != E.dim:
        raise NotAFactorization("A and V are not complementary")
    if not (la.in_span(F, A_rows, E.unit) and is_closed(E, A_rows)):
        raise NotAFactorization("A is not a unital subalgebra")
    if not is_closed(E, V_rows):
        raise NotAFactorization("V is not closed under multiplication")
    n = A_rows.shape[0]
    p = la.inverse(F, both.T)[:n]
    Om, phi = datum_from_retraction(E, A_rows, p, V_rows)
    assert F.allzero(Om.cocycle)
    mp = MatchedPair(Om.A, Om.V_dim, Om.vmult, Om.lact, Om.ract, Om.lhar, Om.rhar)
    return mp, phi


# -- crossed products ------------------------------------------------------------------

def _is_unit(A: Algebra, a) -> bool:
    return la.inverse(A.field, A.lmul_matrix(a)) is not None


def _algebra_inverse(A: Algebra, a):
    F = A.field
    sol = la.solve_affine(F, A.lmul_matrix(a), A.unit)
    return None if sol is None else sol[0]


def crossed_product(A: Algebra, G: FiniteGroup, action, cocycle) -> Algebra:
    """Crossed product with basis a_i g (index g * dim A + i, g in group-table order).

    ``action[g]`` is the matrix of b -> g |> b; ``cocycle[g][h]`` is f(g, h) in A.
    """
    F, n, order = A.field, A.dim, G.order
    act = [F.array(M) for M in action]
    f = [[F.array(cocycle[g][h]) for h in range(order)] for g in range(order)]
    for g, M in enumerate(act):
        if la.inverse(F, M) is None or F.key(la.matvec(F, M, A.unit)) != F.key(A.unit) \
                or not is_multiplicative(F, A.table, A.table, M):
            raise NotAnAutomorphism(f"action of {G.labels[g]} is not an algebra automorphism")
    one = G.identity
    if F.key(f[one][one]) != F.key(A.unit):
        raise CocycleConditionFailed("f(1, 1) != 1")
    for g in range(order):
        for h in range(order):
            if not _is_unit(A, f[g][h]):
                raise CocycleConditionFailed(f"f({G.labels[g]}, {G.labels[h]}) is not a unit")
    for g in range(order):
        for h in range(order):
            gh = G.mul(g, h)
            fgh = f[g][h]
            inv = _algebra_inverse(A, fgh)
            lhs = la.matmul(F, act[g], act[h])
            for i in range(n):
                rhs = A.mul(A.mul(fgh, la.matvec(F, act[gh], A.basis_vector(i))), inv)
                if F.key(lhs[:, i]) != F.key(rhs):
                    raise CocycleConditionFailed(
                        f"twisted module condition fails at ({G.labels[g]}, {G.labels[h]})")
            for l in range(order):
                left = A.mul(fgh, f[gh][l])
                right = A.mul(la.matvec(F, act[g], f[h][l]), f[g][G.mul(h, l)])
                if F.key(left) != F.key(right):
                    raise CocycleConditionFailed(
                        f"cocycle condition fails at ({G.labels[g]}, {G.labels[h]}, {G.labels[l]})")
    N = n * order
    table = F.zeros((N, N, N))
    for g in range(order):
        for h in range(order):
            gh = G.mul(g, h)
            for i in range(n):
                for j in range(n):
                    coeff = A.mul(A.mul(A.basis_vector(i), act[g][:, j]), f[g][h])
                    table[g * n + i, h * n + j, gh * n: gh * n + n] = coeff
    unit = F.zeros(N)
    unit[one * n: one * n + n] = A.unit
    return Algebra(F, table, unit)


def crossed_product_retraction(A: Algebra, G: FiniteGroup):
    """(A_basis, p): the copy of A at the identity block and the augmentation a g -> a."""
    F, n = A.field, A.dim
    N = n * G.order
    A_basis = [np.eye(N, dtype=int)[G.identity * n + i] for i in range(n)]
    p = np.concatenate([F.eye(n)] * G.order, axis=1)
    return [F.array(v) for v in A_basis], p


# -- commutative datums ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CommutativeDatum:
    """(x <| a, x |> a, f, x . y) over a commutative A with f and . symmetric."""

    A: Algebra
    V_dim: int
    lact: np.ndarray
    ract: np.ndarray
    cocycle: np.ndarray
    vmult: np.ndarray

    def expand(self) -> ExtendingDatum:
        return ExtendingDatum(
            self.A, self.V_dim, lact=self.lact, ract=self.ract,
            lhar=np.transpose(self.ract, (1, 0, 2)), rhar=np.transpose(self.lact, (1, 0, 2)),
            cocycle=self.cocycle, vmult=self.vmult,
        )


def commutative_check(cd: CommutativeDatum) -> Report:
    A = cd.A
    F = A.field
    e, s, a = F.einsum, F.sub, F.add
    if not F.allzero(s(A.table, np.transpose(A.table, (1, 0, 2)))):
        raise NotCommutativeBase("A is not commutative")
    for name in ("cocycle", "vmult"):
        t = getattr(cd, name)
        if not F.allzero(s(t, np.transpose(t, (1, 0, 2)))):
            raise NotSymmetric(f"{name} is not symmetric")
    C, L, R, Fc, M = A.table, cd.lact, cd.ract, cd.cocycle, cd.vmult
    u, m = A.unit, cd.V_dim
    rep = Report()
    w = _witness(F, s(e("abc,xcv->xabv", C, L), e("xaw,wbv->xabv", L, L)), ["x", "a", "b"])
    w = w or _witness(F, s(e("a,xav->xv", u, L), F.eye(m)), ["x"])
    w = w or _witness(F, e("a,xap->xp", u, R), ["x"])
    rep.results["CA1"] = w
    rep.results["CA2"] = _witness(F, s(s(e("yzw,xwv->xyzv", M, M), e("xyw,wzv->xyzv", M, M)),
                                       s(e("xyc,zcv->xyzv", Fc, L), e("yzc,xcv->xyzv", Fc, L))), "xyz")
    rep.results["CA3"] = _witness(F, s(e("xyw,wav->xyav", M, L),
                                       a(e("yac,xcv->xyav", R, L), e("yaw,xwv->xyav", L, M))), "xya")
    rep.results["CA4"] = _witness(F, s(e("abc,xcp->xabp", C, R),
                                       a(e("xbc,acp->xabp", R, C), e("xbw,wap->xabp", L, R))), "xab")
    rep.results["CA5"] = _witness(F, s(a(e("xyw,wap->xyap", M, R), e("xyc,cap->xyap", Fc, C)),
                                       a(e("yac,xcp->xyap", R, R), e("yaw,xwp->xyap", L, Fc))), "xya")
    rep.results["CA6"] = _witness(F, s(s(e("yzw,xwp->xyzp", M, Fc), e("xyw,wzp->xyzp", M, Fc)),
                                       s(e("xyc,zcp->xyzp", Fc, R), e("yzc,xcp->xyzp", Fc, R))), "xyz")
    return rep


# -- JSON ------------------------------------------------------------------------------

def _fmt_tensor(F, t):
    if np.asarray(t).ndim == 0:
        return F.format_element(t)
    return [_fmt_tensor(F, x) for x in t]


def _parse_tensor(F, data, shape):
    def rec(d):
        return [rec(x) for x in d] if isinstance(d, list) else F.parse_element(str(d))

    if 0 in shape:
        return F.zeros(shape)
    return F.array(rec(data)).reshape(shape)


def datum_to_json(Om: ExtendingDatum) -> dict:
    F = Om.field
    out = {"algebra": algebra_to_json(Om.A), "V_dim": Om.V_dim}
    for name in TENSORS:
        out[name] = _fmt_tensor(F, getattr(Om, name))
    return out


def datum_from_json(data: dict) -> ExtendingDatum:
    A = algebra_from_json(data["algebra"])
    F, n, m = A.field, A.dim, int(data["V_dim"])
    shapes = {"lact": (m, n, m), "ract": (m, n, n), "lhar": (n, m, n),
              "rhar": (n, m, m), "cocycle": (m, m, n), "vmult": (m, m, m)}
    return ExtendingDatum(A, m, **{k: _parse_tensor(F, data[k], s) for k, s in shapes.items()})
