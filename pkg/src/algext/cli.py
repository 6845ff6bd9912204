"""Command-line entry point: ``algext <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad arguments, unreadable or malformed input files).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .algebra import (
    Algebra,
    algebra_from_json,
    algebra_from_presentation,
    algebra_to_json,
    algebra_validate,
    parse_linear,
    presentation,
)
from .errors import AlgExtError, NotPrime, ParseError, ReducibleModulus, ShapeMismatch, UsageError
from .field import field_parse

DEFAULT_FIELD = "GF(2)"


@dataclass
class RunConfig:
    command: str
    field: str | None = None
    json: bool = False
    jobs: int | None = None
    seed: int = 0
    options: dict = dc_field(default_factory=dict)


class Output:
    """Collects a JSON document or prints human-readable lines."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {}

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text)

    def set(self, **items) -> None:
        self.doc.update(items)

    def finish(self) -> None:
        if self.as_json:
            json.dump(self.doc, sys.stdout, indent=2, default=str)
            sys.stdout.write("\n")


# -- input helpers ----------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}")


def _field(args, data: dict | None = None):
    spec = args.field or (data or {}).get("field") or DEFAULT_FIELD
    return field_parse(spec)


def _named_base(name: str, F):
    from .flag import base_field_algebra, two_dim_algebra

    if name == "k":
        return base_field_algebra(F)
    if name.startswith("k") and name[1:].isdigit() and len(name) == 3:
        return two_dim_algebra(F, F.from_int(int(name[1])), F.from_int(int(name[2])))
    return None


def load_algebra(spec: str, args) -> Algebra:
    """A JSON file, a builtin name (k, k00, k01, k20, ...) or a presentation in x, y."""
    if spec.endswith(".json"):
        data = _load_json(spec)
        data = data.get("algebra", data)
        return with_default_names(algebra_from_json(data, _field(args, data)))
    F = _field(args)
    named = _named_base(spec, F)
    if named is not None:
        return named
    if "=" in spec:
        names = ("1", "x") if "y" not in spec else ("1", "x", "y")
        return algebra_from_presentation(F, spec, names)
    raise UsageError(f"cannot read an algebra from {spec!r}")


def with_default_names(A: Algebra) -> Algebra:
    """Name a unit-first basis 1, x, y, z, ... so presentations can be printed and parsed."""
    F = A.field
    if A.names is None and A.unit[0] == F.one and F.allzero(A.unit[1:]):
        letters = "xyzwuvst"
        if A.dim - 1 <= len(letters):
            return Algebra(F, A.table, A.unit, ("1",) + tuple(letters[: A.dim - 1]))
    return A


def _names_of(A: Algebra):
    return A.names or tuple(["1"] + [f"e{i}" for i in range(1, A.dim)])


def parse_sub(A: Algebra, text: str) -> list:
    """Vectors spanning a subalgebra, written as ``1,x`` in the algebra's basis names."""
    F = A.field
    names = _names_of(A)
    vecs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "1":
            vecs.append(A.unit)
        else:
            vecs.append(parse_linear(F, part, names))
    return vecs


def _parse_rows(A: Algebra, text: str):
    return np.array(parse_sub(A, text)).reshape(-1, A.dim)


def _fmt_matrix(F, M) -> list:
    return [[F.format_element(c) for c in row] for row in M]


def _describe(A: Algebra) -> str:
    try:
        text = presentation(A)
    except ValueError:
        text = ""
    return text or f"{A.dim}-dimensional algebra over {A.field}"


# -- commands ------------------------------------------------------------------------

def cmd_verify(args, out: Output) -> int:
    from .flag import flag_check, flag_from_json
    from .unified import check_axioms, datum_from_json

    if args.sample:
        return _verify_sample(args, out)
    if args.datum:
        data = _load_json(args.datum)
        Om = datum_from_json(data)
        rep = check_axioms(Om)
        kind = "extending datum"
    elif args.flag:
        if not args.base:
            raise UsageError("--flag needs --base")
        A = load_algebra(args.base, args)
        rep = flag_check(A, flag_from_json(A.field, _load_json(args.flag)))
        kind = "flag datum"
    elif args.algebra:
        A = load_algebra(args.algebra, args)
        r = algebra_validate(A)
        ok = r.ok
        out.set(kind="algebra", ok=ok, report={k: str(v) for k, v in vars(r).items()})
        out.line(f"algebra: {'PASS' if ok else 'FAIL'}")
        if not ok:
            out.line(f"  {vars(r)}")
        return 0 if ok else 1
    else:
        raise UsageError("verify needs --datum, --flag or --algebra")
    out.set(kind=kind, ok=rep.ok, failed=rep.failed(), report=rep.to_json())
    out.line(f"{kind}: {'PASS' if rep.ok else 'FAIL'}")
    for name in rep.failed():
        out.line(f"  {name} fails at {rep.results[name]}")
    return 0 if rep.ok else 1


def _verify_sample(args, out: Output) -> int:
    """Seeded comparison of the axiom check against direct associativity."""
    from .algebra import is_associative_unital
    from .sampling import mixed_datum
    from .unified import check_axioms, product_unit, raw_product_table

    F = _field(args)
    rng = np.random.default_rng(args.seed)
    bad, passing = [], 0
    for t in range(args.sample):
        n = int(rng.integers(1, args.max_dim + 1))
        m = int(rng.integers(1, 3))
        Om = mixed_datum(F, rng, n, m)
        axioms = check_axioms(Om).ok
        direct = False
        unit = product_unit(Om)
        if unit is not None:
            direct = is_associative_unital(Algebra(F, raw_product_table(Om), unit))
        passing += axioms
        if axioms != direct:
            bad.append(t)
    out.set(kind="sample", field=str(F), seed=args.seed, samples=args.sample,
            passing=passing, discrepancies=bad)
    out.line(f"{args.sample} datums over {F} (seed {args.seed}): {passing} satisfy the axioms, "
             f"{len(bad)} discrepancies")
    return 0 if not bad else 1


def cmd_product(args, out: Output) -> int:
    from .groups import group_from_json
    from .unified import MatchedPair, bicrossed_product, crossed_product, datum_from_json, unified_product

    data = _load_json(args.input)
    if args.kind == "crossed":
        A = algebra_from_json(data["algebra"], _field(args, data["algebra"]))
        F, n = A.field, A.dim
        G = group_from_json(data["group"])
        action = [F.array(_nested(F, M)).reshape(n, n) for M in data["action"]]
        cocycle = [[F.array(_nested(F, v)).reshape(n) for v in row] for row in data["cocycle"]]
        E = crossed_product(A, G, action, cocycle)
    else:
        # accept the output of `factorize` as well as a bare datum
        Om = datum_from_json(data.get("matched_pair", data))
        if args.kind == "unified":
            E = unified_product(Om)
        else:
            if not Om.field.allzero(Om.cocycle):
                raise UsageError("a matched pair has no cocycle; the datum's cocycle is nonzero")
            E = bicrossed_product(MatchedPair(Om.A, Om.V_dim, Om.vmult, Om.lact, Om.ract, Om.lhar, Om.rhar))
    out.set(kind=args.kind, algebra=algebra_to_json(E))
    out.line(f"{args.kind} product: dimension {E.dim} over {E.field}")
    out.line(json.dumps(algebra_to_json(E)))
    return 0


def _nested(F, data):
    return [_nested(F, d) for d in data] if isinstance(data, list) else F.parse_element(str(data))


def cmd_factorize(args, out: Output) -> int:
    from .unified import datum_to_json, factorize

    E = load_algebra(args.algebra, args)
    mp, phi = factorize(E, parse_sub(E, args.sub), parse_sub(E, args.complement))
    F = E.field
    out.set(matched_pair=datum_to_json(mp.as_datum()), phi=_fmt_matrix(F, phi))
    out.line(f"matched pair: A of dimension {mp.A.dim}, V of dimension {mp.V_dim}")
    out.line(json.dumps(datum_to_json(mp.as_datum())))
    return 0


def cmd_flag_enum(args, out: Output) -> int:
    from .flag import enumerate_flag_datums, raw_flag_extension

    A = load_algebra(args.base, args)
    F = A.field
    datums = enumerate_flag_datums(A)
    items = []
    for fd in datums:
        items.append({"datum": fd.to_json(F), "presentation": _safe(raw_flag_extension(A, fd))})
    out.set(base=algebra_to_json(A), count=len(datums), datums=items)
    out.line(f"{len(datums)} flag datums over {_describe(A)} ({F})")
    for it in items:
        out.line(f"  {it['datum']}  ->  {it['presentation']}")
    return 0


def _safe(E):
    try:
        return presentation(E)
    except ValueError:
        return None


def cmd_classify(args, out: Output) -> int:
    from .flag import classify_codim1

    if not args.codim1:
        raise UsageError("only --codim1 classification is available")
    A = load_algebra(args.base, args)
    fam = classify_codim1(A, args.mode)
    doc = fam.to_json()
    out.set(**doc)
    out.line(f"{len(fam)} classes of flag datums ({args.mode}) among {len(fam.datums)}")
    for c, cls in enumerate(doc["classes"]):
        out.line(f"  [{c}] {cls['presentation']}  (size {cls['size']})")
        out.line(f"      representative {cls['representative']}")
    return 0


def cmd_supersolvable(args, out: Output) -> int:
    from .flag import supersolvable_catalog

    F = _field(args)
    algs = supersolvable_catalog(F, args.dim)
    out.set(field=str(F), dim=args.dim, count=len(algs),
            algebras=[{"presentation": _safe(E), "algebra": algebra_to_json(E)} for E in algs])
    out.line(f"{len(algs)} supersolvable algebras of dimension {args.dim} over {F}")
    for E in algs:
        out.line(f"  {_describe(E)}")
    return 0


def cmd_catalog(args, out: Output) -> int:
    from .flag import paper_catalog_dim2, paper_catalog_dim3

    F = _field(args)
    build = {2: paper_catalog_dim2, 3: paper_catalog_dim3}.get(args.dim)
    if build is None:
        raise UsageError("catalogs exist for dimensions 2 and 3")
    cat = build(F, args.degree_bound)
    out.set(field=str(F), dim=args.dim, entries=[e.to_json() for e in cat.entries],
            families=[e.to_json() for e in cat.families], notes=cat.notes)
    out.line(f"{len(cat.entries)} named presentations of dimension {args.dim} over {F}")
    for e in cat.entries:
        out.line(f"  {e.name:10s} {e.presentation}")
    for e in cat.families:
        out.line(f"  {e.name:10s} {e.template}   ({e.parameter}; not listed)")
    for note in cat.notes:
        out.line(f"  note: {note}")
    if not args.check:
        return 0
    from .oracle import compare_catalog

    res = compare_catalog(F, args.dim, jobs=args.jobs)
    out.set(check=res)
    out.line(f"oracle check: {'PASS' if res['passed'] else 'FAIL'} "
             f"({res['supersolvable_classes']} supersolvable classes, "
             f"{res['catalog_distinct_classes']} distinct among the catalog entries)")
    return 0 if res["passed"] else 1


def cmd_galois(args, out: Output) -> int:
    from .flag import flag_from_datum
    from .galois import (
        codim1_action,
        galois_group_brute,
        galois_group_codim1,
        galois_group_unified,
        group_report,
        invariants_and_galois_test,
        pair_action,
    )
    from .groups import is_isomorphic_action
    from .unified import datum_from_retraction

    B = load_algebra(args.algebra, args)
    F = B.field
    A_vecs = parse_sub(B, args.sub)
    A_rows = la.row_basis(F, np.array(A_vecs).reshape(-1, B.dim), B.dim)
    n, m = A_rows.shape[0], B.dim - A_rows.shape[0]
    methods = ["brute", "unified", "codim1"] if args.method == "all" else [args.method]
    if "codim1" in methods and m != 1:
        if args.method == "codim1":
            raise UsageError("the codim1 method needs a subalgebra of codimension one")
        methods.remove("codim1")
    # coordinates: the datum's basis (A rows, then a coordinate complement) -> B
    comp = la.complement_indices(F, A_rows, B.dim)
    W = F.zeros((m, B.dim))
    for k, c in enumerate(comp):
        W[k, c] = F.one
    p = la.inverse(F, np.concatenate([A_rows, W]).T)[:n]
    Om, phi = datum_from_retraction(B, list(A_rows), p)
    phi_inv = la.inverse(F, phi)
    to_B = lambda M: la.matmul(F, la.matmul(F, phi, M), phi_inv)

    groups, actions = {}, {}
    if "brute" in methods:
        G = galois_group_brute(B, list(A_rows))
        groups["brute"] = G
        actions["brute"] = lambda g, G=G: F.key(G.data[g])
    if "unified" in methods:
        G = galois_group_unified(Om)
        groups["unified"] = G
        actions["unified"] = lambda g, G=G: F.key(to_B(pair_action(F, G.data[g])))
    if "codim1" in methods:
        G = galois_group_codim1(Om.A, flag_from_datum(Om))
        groups["codim1"] = G
        actions["codim1"] = lambda g, G=G: F.key(to_B(codim1_action(F, *G.data[g])))

    first = methods[0]
    doc = group_report(groups[first], F, n, m)
    fixed, is_galois = invariants_and_galois_test(B, list(A_rows))
    doc["is_galois"] = is_galois
    doc["fixed_subalgebra"] = [format_vec(F, v, _names_of(B)) for v in fixed]
    if len(methods) > 1:
        agree = {name: is_isomorphic_action(groups[first], groups[name], actions[first], actions[name])
                 for name in methods[1:]}
        doc["methods"] = {name: groups[name].order for name in methods}
        doc["agreement"] = agree
    out.set(**doc)
    out.line(f"Gal over span({args.sub}): order {doc['order']}, "
             f"{'abelian' if doc['abelian'] else 'non-abelian'} ({doc['name']})")
    out.line(f"  fixed subalgebra: span({', '.join(doc['fixed_subalgebra'])}); Galois: {is_galois}")
    if "embedding_order" in doc:
        out.line(f"  index in k^(n m) x GL(m): {doc['index_in_embedding']}")
    if len(methods) > 1:
        for name, ok in doc["agreement"].items():
            out.line(f"  {first} vs {name}: {'agree' if ok else 'DISAGREE'}")
        if not all(doc["agreement"].values()):
            return 1
    return 0


def format_vec(F, v, names) -> str:
    from .algebra import format_linear

    return format_linear(F, v, names)


def cmd_oracle(args, out: Output) -> int:
    from .flag import classify_codim1
    from .oracle import (
        EnumerationTask,
        brute_extensions_codim1,
        enumerate_algebras,
        iso_classes,
        report_json,
    )

    F = _field(args)
    if args.codim1:
        A = load_algebra(args.codim1, args)
        ext = brute_extensions_codim1(A, budget=args.budget, jobs=args.jobs)
        flag_count = len(classify_codim1(A, "equivalent"))
        doc = report_json(F, A.dim + 1, ext.candidates, ext.tables, ext.classes)
        doc["flag_classes"] = flag_count
        doc["agree"] = flag_count == len(ext)
        out.set(**doc)
        out.line(f"{len(ext.tables)} extension tables, {len(ext)} classes up to A-fixing isomorphism; "
                 f"flag classification: {flag_count} ({'agree' if doc['agree'] else 'DISAGREE'})")
        return 0 if doc["agree"] else 1
    task = EnumerationTask(F, args.dim, budget=args.budget, jobs=args.jobs,
                           supersolvable=True if args.supersolvable else None)
    if not args.json:
        print(f"candidate bound: {task.candidate_count} tables")
    algs = enumerate_algebras(task)
    classes = iso_classes(algs)
    doc = report_json(F, args.dim, task.candidate_count, algs, classes)
    out.set(**doc)
    out.line(f"{len(algs)} valid tables, {len(classes.representatives)} isomorphism classes")
    for cls in doc["classes"]:
        out.line(f"  {cls.get('presentation') or cls['representative']}  (size {cls['size']})")
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec: GF(p), GF(q), GF(q)=GF(p)[t]/(f), Q or GF(2)(t)")
    common.add_argument("--json", action="store_true", help="emit a single JSON document")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $ALGEXT_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = argparse.ArgumentParser(prog="algext", description="Extensions of finite dimensional algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check axioms of a datum, flag datum or algebra")
    p.add_argument("--datum")
    p.add_argument("--flag")
    p.add_argument("--base")
    p.add_argument("--algebra")
    p.add_argument("--sample", type=int, default=0, help="compare axioms and associativity on N random datums")
    p.add_argument("--max-dim", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", parents=[common], help="build a unified, bicrossed or crossed product")
    p.add_argument("kind", choices=["unified", "bicrossed", "crossed"])
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("factorize", parents=[common], help="matched pair of a factorization E = A + V")
    p.add_argument("--algebra", required=True)
    p.add_argument("--sub", required=True, help="basis of A, e.g. 1,x")
    p.add_argument("--complement", required=True, help="basis of V, e.g. y")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("flag-enum", parents=[common], help="list all flag datums of an algebra")
    p.add_argument("--base", required=True)
    p.set_defaults(func=cmd_flag_enum)

    p = sub.add_parser("classify", parents=[common], help="classify codimension-one extensions")
    p.add_argument("--codim1", action="store_true")
    p.add_argument("--base", required=True)
    p.add_argument("--mode", choices=["equivalent", "cohomologous"], default="equivalent")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("supersolvable", parents=[common], help="supersolvable algebras of a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_supersolvable)

    p = sub.add_parser("catalog", parents=[common], help="named presentations of dimension 2 or 3")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare against brute-force enumeration")
    p.add_argument("--degree-bound", type=int, default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("galois", parents=[common], help="Galois group of an extension")
    p.add_argument("--algebra", required=True)
    p.add_argument("--sub", required=True, help="basis of the subalgebra, e.g. 1,x")
    p.add_argument("--method", choices=["brute", "unified", "codim1", "all"], default="brute")
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("oracle", parents=[common], help="brute-force enumeration and classification")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--supersolvable", action="store_true")
    p.add_argument("--codim1", metavar="BASE", help="classify extensions of BASE by one dimension")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(config: RunConfig, args) -> int:
    out = Output(config.json)
    try:
        status = args.func(args, out)
    except (UsageError, ParseError, ShapeMismatch, NotPrime, ReducibleModulus) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except AlgExtError as exc:
        out.set(error=type(exc).__name__, message=str(exc))
        out.finish()
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.finish()
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(args.command, args.field, args.json, args.jobs, args.seed, vars(args))
    return run(config, args)


if __name__ == "__main__":
    sys.exit(main())
