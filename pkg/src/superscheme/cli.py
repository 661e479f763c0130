"""Batch command-line surface with deterministic reports.

Every command reads object files, runs one operation and prints a report
with a stable key order; the same inputs always produce byte-identical
output.  Exit codes: 0 success, 1 axiom or validation failure,
2 unsupported computation, 3 parse or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .fields import ExtensionField, FieldError
from .objfile import ParseError, parse_path, serialize_document
from .superalgebra import (
    FactorizationIncomplete, SuperAlgebra, ksdim_finite, local_decomposition,
    radical, validate_superalgebra,
)
from .supercoalgebra import (
    SearchBoundExceeded, coradical, coradical_filtration, dualize_algebra,
    dualize_coalgebra, grouplikes, grouplikes_over, irreducible_components,
    validate_supercoalgebra, wedge,
)
from .supercomodule import NotConnected, cotensor, flat_check, validate_comodule
from .formal_scheme import (
    CotensorNotSubcoalgebra, FormalSuperscheme, base_change, coproduct,
    descent_check, fiber, fiber_product, finite_bounded_degree,
    is_closed_immersion, is_faithfully_flat, is_finite_morphism, is_flat,
    is_flat_at, is_open_immersion, is_strictly_surjective, is_surjective,
    points, product,
)
from .ksdim import (
    SubsetBoundExceeded, ksdim, oracle_annihilator_dim,
    theorem_fiber_dimension_check, theorem_product_dimension_check,
)
from .corpus import seeded_random, validate_entry

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_IO = 3


class Report:
    def __init__(self, command, docs=()):
        self.lines = [f"superscheme-report {command}", f"tool-version {__version__}"]
        for path, doc in docs:
            self.lines.append(f"input {path} sha256 {doc.digest}")

    def add(self, key, *values):
        txt = " ".join(str(v) for v in values)
        self.lines.append(f"{key} {txt}".rstrip())

    def emit(self, status="ok"):
        self.lines.append(f"status {status}")
        return "\n".join(self.lines) + "\n"


def _sdim(pair):
    return f"{pair[0]}|{pair[1]}"


def _load(path):
    return path, parse_path(path)


def _basis_line(space, vec):
    F = space.field
    parts = [f"{F.format(c)}*{l}" for c, l in zip(vec, space.labels)
             if not F.is_zero(c)]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# command handlers; each returns (report_text, exit_code)

def cmd_validate(args):
    path, doc = _load(args.file)
    rep = Report("validate", [(path, doc)])
    failures = 0
    for name, (kind, value) in doc.built.items():
        if kind == "algebra":
            problems = validate_superalgebra(value)
        elif kind == "coalgebra":
            problems = validate_supercoalgebra(value)
        elif kind == "comodule":
            problems = validate_comodule(value)
        elif kind == "morphism":
            problems = value.validate()
        elif kind == "tower":
            problems = value.validate()
        else:
            problems = []
        rep.add(f"object {name}", "pass" if not problems else "FAIL")
        for p in problems:
            rep.add(f"  violation {name}", p)
            failures += 1
    return rep.emit("ok" if failures == 0 else "fail"), \
        EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_dual(args):
    path, doc = _load(args.file)
    rep = Report("dual", [(path, doc)])
    name, value = doc.first("algebra", "coalgebra")
    if isinstance(value, SuperAlgebra):
        out = dualize_algebra(value)
        rep.add("dualized algebra", name)
    else:
        out = dualize_coalgebra(value)
        rep.add("dualized coalgebra", name)
    body = serialize_document(doc.field, [(f"{name}_dual", out)])
    return rep.emit() + body, EXIT_OK


def cmd_radical(args):
    path, doc = _load(args.file)
    rep = Report("radical", [(path, doc)])
    name, A = doc.first("algebra")
    rad = radical(A)
    rep.add("algebra", name)
    rep.add("radical-dim", rad.subspace.dim)
    rep.add("radical-sdim", _sdim(rad.subspace.sdim))
    for row in rad.subspace.basis():
        rep.add("radical-basis", _basis_line(A.space, row))
    return rep.emit(), EXIT_OK


def cmd_coradical(args):
    path, doc = _load(args.file)
    rep = Report("coradical", [(path, doc)])
    name, C = doc.first("coalgebra")
    cor = coradical(C)
    rep.add("coalgebra", name)
    rep.add("coradical-dim", cor.dim)
    for row in cor.basis():
        rep.add("coradical-basis", _basis_line(C.space, row))
    return rep.emit(), EXIT_OK


def cmd_filtration(args):
    path, doc = _load(args.file)
    rep = Report("filtration", [(path, doc)])
    name, C = doc.first("coalgebra")
    chain = coradical_filtration(C)
    rep.add("coalgebra", name)
    rep.add("stages", len(chain))
    for n, stage in enumerate(chain):
        rep.add(f"stage {n} dim", stage.dim)
    return rep.emit(), EXIT_OK


def cmd_wedge(args):
    path, doc = _load(args.file)
    rep = Report("wedge", [(path, doc)])
    _, C = doc.first("coalgebra")
    X = doc.get(args.x)
    Y = doc.get(args.y)
    W = wedge(C, X, Y)
    rep.add("wedge-dim", W.dim)
    for row in W.basis():
        rep.add("wedge-basis", _basis_line(C.space, row))
    return rep.emit(), EXIT_OK


def cmd_components(args):
    path, doc = _load(args.file)
    rep = Report("components", [(path, doc)])
    name, C = doc.first("coalgebra")
    comps = irreducible_components(C)
    rep.add("coalgebra", name)
    rep.add("component-count", len(comps))
    for i, comp in enumerate(comps):
        res = "base" if comp.residue.is_base else f"extension-degree-{comp.residue.degree}"
        rep.add(f"component {i}", f"dim {comp.subspace.dim} residue {res}")
    return rep.emit(), EXIT_OK


def cmd_grouplikes(args):
    path, doc = _load(args.file)
    docs = [(path, doc)]
    over = None
    if args.over:
        opath, odoc = _load(args.over)
        docs.append((opath, odoc))
        _, over = odoc.first("algebra")
    rep = Report("grouplikes", docs)
    name, C = doc.first("coalgebra")
    rep.add("coalgebra", name)
    if over is None:
        gls = grouplikes(C)
        rep.add("grouplike-count", len(gls))
        for g in gls:
            rep.add("grouplike", _basis_line(C.space, g))
    else:
        gls = grouplikes_over(C, over, workers=args.threads)
        rep.add("grouplike-count", len(gls))
        for u in gls:
            flat = [c for row in u for c in row]
            rep.add("grouplike", " ".join(C.field.format(c) for c in flat))
    return rep.emit(), EXIT_OK


def cmd_cotensor(args):
    path, doc = _load(args.file)
    rep = Report("cotensor", [(path, doc)])
    mods = doc.all_of("comodule")
    if len(mods) < 2:
        raise ParseError("cotensor needs two comodules in the file")
    (nm, M), (nn, N) = mods[0], mods[1]
    W = cotensor(M, N)
    rep.add("left", nm)
    rep.add("right", nn)
    rep.add("cotensor-dim", W.dim)
    rep.add("cotensor-sdim", _sdim(W.sdim))
    return rep.emit(), EXIT_OK


def cmd_product(args):
    path, doc = _load(args.file)
    rep = Report("product", [(path, doc)])
    coalgs = doc.all_of("coalgebra")
    if len(coalgs) < 2:
        raise ParseError("product needs two coalgebras in the file")
    (na, A), (nb, B) = coalgs[0], coalgs[1]
    P = product(FormalSuperscheme.finite(A), FormalSuperscheme.finite(B))
    rep.add("factors", na, nb)
    rep.add("product-dim", P.coalgebra.dim)
    rep.add("product-points", len(points(P)))
    body = serialize_document(doc.field, [(f"{na}_x_{nb}", P.coalgebra)])
    return rep.emit() + body, EXIT_OK


def cmd_coproduct(args):
    path, doc = _load(args.file)
    rep = Report("coproduct", [(path, doc)])
    coalgs = doc.all_of("coalgebra")
    if not coalgs:
        raise ParseError("coproduct needs coalgebras in the file")
    S = coproduct([FormalSuperscheme.finite(C) for _, C in coalgs])
    rep.add("summands", *(n for n, _ in coalgs))
    rep.add("coproduct-dim", S.coalgebra.dim)
    rep.add("coproduct-points", len(points(S)))
    return rep.emit(), EXIT_OK


def cmd_fiber_product(args):
    path, doc = _load(args.file)
    rep = Report("fiber-product", [(path, doc)])
    f = doc.get(args.f)
    g = doc.get(args.g)
    W = fiber_product(f, g)
    rep.add("carrier-dim", W.coalgebra.dim)
    rep.add("carrier-sdim", _sdim(W.coalgebra.space.sdim))
    rep.add("points", len(points(W)))
    return rep.emit(), EXIT_OK


def cmd_fiber(args):
    path, doc = _load(args.file)
    rep = Report("fiber", [(path, doc)])
    f = doc.get(args.morphism)
    pts = points(f.target)
    if args.point >= len(pts):
        raise ParseError(f"target has only {len(pts)} points")
    fib = fiber(f, pts[args.point])
    rep.add("morphism", args.morphism)
    rep.add("point", args.point)
    rep.add("fiber-dim", fib.coalgebra.dim)
    rep.add("fiber-sdim", _sdim(fib.coalgebra.space.sdim))
    return rep.emit(), EXIT_OK


def cmd_base_change(args):
    path, doc = _load(args.file)
    rep = Report("base-change", [(path, doc)])
    name, C = doc.first("coalgebra")
    minpoly = [doc.field.parse(t) for t in args.minpoly.split()]
    try:
        ext = ExtensionField(doc.field, minpoly, args.name)
    except FieldError as exc:
        raise ParseError(str(exc))
    X = FormalSuperscheme.finite(C)
    before = len(points(X))
    after = len(points(base_change(X, ext)))
    rep.add("coalgebra", name)
    rep.add("extension", ext.describe())
    rep.add("points-before", before)
    rep.add("points-after", after)
    return rep.emit(), EXIT_OK


def cmd_immersion_check(args):
    path, doc = _load(args.file)
    rep = Report("immersion-check", [(path, doc)])
    name, f = doc.first("morphism")
    rep.add("morphism", name)
    rep.add("closed-immersion", is_closed_immersion(f))
    rep.add("open-immersion", is_open_immersion(f))
    rep.add("surjective", is_surjective(f))
    rep.add("strictly-surjective", is_strictly_surjective(f))
    return rep.emit(), EXIT_OK


def cmd_flat_check(args):
    path, doc = _load(args.file)
    rep = Report("flat-check", [(path, doc)])
    mods = doc.all_of("comodule")
    if mods:
        name, M = mods[0]
        verdict = flat_check(M)
        rep.add("comodule", name)
        rep.add("flat", verdict.free)
        if verdict.free:
            rep.add("rank", _sdim(verdict.rank))
        return rep.emit(), EXIT_OK
    name, f = doc.first("morphism")
    rep.add("morphism", name)
    for x in points(f.source):
        rep.add(f"flat-at {x.index}", is_flat_at(f, x))
    rep.add("flat", is_flat(f))
    rep.add("faithfully-flat", is_faithfully_flat(f))
    return rep.emit(), EXIT_OK


def cmd_descent_check(args):
    path, doc = _load(args.file)
    rep = Report("descent-check", [(path, doc)])
    name, f = doc.first("morphism")
    result = descent_check(f, depth=args.depth)
    rep.add("morphism", name)
    rep.add("depth", args.depth)
    for cname, degs in zip(result.comodules, result.degrees):
        for deg, ok in degs:
            rep.add(f"exact {cname} degree {deg}", "yes" if ok else "NO")
    rep.add("coequalizer", "ok" if result.coequalizer_ok else "FAIL")
    for cname, deg in result.failures:
        rep.add("failure", f"comodule {cname} degree {deg}")
    rep.add("descent", "pass" if result.passed else "fail")
    return rep.emit("ok" if result.passed else "fail"), \
        EXIT_OK if result.passed else EXIT_FAIL


def cmd_finite_check(args):
    path, doc = _load(args.file)
    rep = Report("finite-check", [(path, doc)])
    name, f = doc.first("morphism")
    finite, max_dim = is_finite_morphism(f)
    rep.add("morphism", name)
    rep.add("finite", finite)
    rep.add("max-fiber-dim", max_dim)
    rep.add("bounded-degree", finite_bounded_degree(f))
    return rep.emit(), EXIT_OK


def cmd_ksdim(args):
    path, doc = _load(args.file)
    rep = Report("ksdim", [(path, doc)])
    name, P = doc.first("presentation")
    val = ksdim(P)
    rep.add("presentation", name)
    rep.add("generators", *(P.generator_labels() or ["(zero ideal)"]))
    rep.add("ksdim", _sdim(val))
    rep.add("note", "even part computed on the even contraction;"
            " theta-even nilpotents cannot change it")
    if args.oracle:
        rep.add("oracle-even", oracle_annihilator_dim(P))
    return rep.emit(), EXIT_OK


def cmd_check_thm513(args):
    path, doc = _load(args.file)
    rep = Report("check-thm513", [(path, doc)])
    name, f = doc.first("presmorphism")
    result = theorem_fiber_dimension_check(f, assert_flat=args.assert_flat)
    rep.add("morphism", name)
    rep.add("sdim-source", _sdim(result.sdim_source))
    rep.add("sdim-target", _sdim(result.sdim_target))
    rep.add("sdim-fiber", _sdim(result.sdim_fiber))
    rep.add("even-inequality", result.even_inequality)
    rep.add("flat-mode", result.flat_mode or "none")
    if result.flat_mode:
        rep.add("even-equality", result.even_equality)
    rep.add("target-regular", result.target_regular)
    if result.target_regular:
        rep.add("odd-inequality", result.odd_inequality)
    rep.add("odd-equality-observed", result.odd_equality_observed)
    for note in result.notes:
        rep.add("note", note)
    return rep.emit("ok" if result.passed else "fail"), \
        EXIT_OK if result.passed else EXIT_FAIL


def cmd_check_thm515(args):
    path, doc = _load(args.file)
    rep = Report("check-thm515", [(path, doc)])
    pres = doc.all_of("presentation")
    if len(pres) < 2:
        raise ParseError("check-thm515 needs two presentations")
    (na, P), (nb, Q) = pres[0], pres[1]
    result = theorem_product_dimension_check(P, Q)
    rep.add("left", na, _sdim(result.sdim_left))
    rep.add("right", nb, _sdim(result.sdim_right))
    rep.add("product", _sdim(result.sdim_product))
    rep.add("even-additive", result.even_additive)
    rep.add("odd-superadditive", result.odd_superadditive)
    return rep.emit("ok" if result.passed else "fail"), \
        EXIT_OK if result.passed else EXIT_FAIL


def cmd_corpus(args):
    rep = Report("corpus")
    kinds = [args.kind] if args.kind else \
        ["subspace-triple", "comodule", "morphism", "presentation",
         "presentation-morphism"]
    failures = 0
    for kind in kinds:
        entry = seeded_random(kind, args.seed)
        problems = validate_entry(entry)
        rep.add(f"entry {kind} seed {args.seed}",
                "pass" if not problems else "FAIL")
        rep.add(f"  provenance {kind}", entry.provenance)
        for k in sorted(entry.expected):
            rep.add(f"  expected {kind} {k}", entry.expected[k])
        for p in problems:
            rep.add(f"  mismatch {kind}", p)
            failures += 1
    return rep.emit("ok" if failures == 0 else "fail"), \
        EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_report_all(args):
    path, doc = _load(args.file)
    rep = Report("report-all", [(path, doc)])
    failures = 0
    for name, (kind, value) in doc.built.items():
        if kind == "algebra":
            problems = validate_superalgebra(value)
            rep.add(f"algebra {name} valid", not problems)
            failures += len(problems)
            if not problems:
                rep.add(f"algebra {name} sdim", _sdim(value.space.sdim))
                rep.add(f"algebra {name} radical-dim", radical(value).subspace.dim)
                rep.add(f"algebra {name} ksdim-finite", _sdim(ksdim_finite(value)))
                try:
                    rep.add(f"algebra {name} local-factors",
                            len(local_decomposition(value)))
                except FactorizationIncomplete:
                    rep.add(f"algebra {name} local-factors",
                            "unsupported-factorization")
        elif kind == "coalgebra":
            problems = validate_supercoalgebra(value)
            rep.add(f"coalgebra {name} valid", not problems)
            failures += len(problems)
            if not problems:
                rep.add(f"coalgebra {name} coradical-dim", coradical(value).dim)
                rep.add(f"coalgebra {name} filtration-dims",
                        *(s.dim for s in coradical_filtration(value)))
                rep.add(f"coalgebra {name} components",
                        len(irreducible_components(value)))
                rep.add(f"coalgebra {name} grouplikes", len(grouplikes(value)))
        elif kind == "comodule":
            problems = validate_comodule(value)
            rep.add(f"comodule {name} valid", not problems)
            failures += len(problems)
            if not problems:
                try:
                    rep.add(f"comodule {name} flat", flat_check(value).free)
                except NotConnected:
                    rep.add(f"comodule {name} flat", "needs-connected-base")
        elif kind == "morphism":
            problems = value.validate()
            rep.add(f"morphism {name} valid", not problems)
            failures += len(problems)
            if not problems:
                rep.add(f"morphism {name} closed-immersion",
                        is_closed_immersion(value))
                rep.add(f"morphism {name} flat", is_flat(value))
                rep.add(f"morphism {name} faithfully-flat",
                        is_faithfully_flat(value))
        elif kind == "presentation":
            rep.add(f"presentation {name} ksdim", _sdim(ksdim(value)))
        elif kind == "presmorphism":
            result = theorem_fiber_dimension_check(value)
            rep.add(f"presmorphism {name} even-inequality",
                    result.even_inequality)
        elif kind == "tower":
            problems = value.validate()
            rep.add(f"tower {name} valid", not problems)
            failures += len(problems)
    return rep.emit("ok" if failures == 0 else "fail"), \
        EXIT_OK if failures == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="superscheme",
        description="exact checks for superalgebra duality, formal "
                    "superschemes and Krull superdimension")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker count for internal enumerations; output "
                             "is identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate).add_argument("file")
    add("dual", cmd_dual).add_argument("file")
    add("radical", cmd_radical).add_argument("file")
    add("coradical", cmd_coradical).add_argument("file")
    add("filtration", cmd_filtration).add_argument("file")
    p = add("wedge", cmd_wedge)
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    add("components", cmd_components).add_argument("file")
    p = add("grouplikes", cmd_grouplikes)
    p.add_argument("file")
    p.add_argument("--over", default=None)
    add("cotensor", cmd_cotensor).add_argument("file")
    add("product", cmd_product).add_argument("file")
    add("coproduct", cmd_coproduct).add_argument("file")
    p = add("fiber-product", cmd_fiber_product)
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add("fiber", cmd_fiber)
    p.add_argument("file")
    p.add_argument("--morphism", required=True)
    p.add_argument("--point", type=int, required=True)
    p = add("base-change", cmd_base_change)
    p.add_argument("file")
    p.add_argument("--minpoly", required=True,
                   help="monic minimal polynomial, low to high, e.g. '1 0 1'")
    p.add_argument("--name", default="a")
    add("immersion-check", cmd_immersion_check).add_argument("file")
    add("flat-check", cmd_flat_check).add_argument("file")
    p = add("descent-check", cmd_descent_check)
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=3)
    add("finite-check", cmd_finite_check).add_argument("file")
    p = add("ksdim", cmd_ksdim)
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true",
                   help="recompute the even dimension by exhaustive "
                        "monomial membership")
    p = add("check-thm513", cmd_check_thm513)
    p.add_argument("file")
    p.add_argument("--assert-flat", action="store_true",
                   help="caller asserts flatness; echoed in the report")
    add("check-thm515", cmd_check_thm515).add_argument("file")
    p = add("corpus", cmd_corpus)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", default=None)
    add("report-all", cmd_report_all).add_argument("file")
    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return "", EXIT_OK
        return "superscheme-report error\nargument-error\nstatus error\n", EXIT_IO
    try:
        text, code = args.handler(args)
    except ParseError as exc:
        return f"superscheme-report error\nparse-error {exc}\nstatus error\n", EXIT_IO
    except (FactorizationIncomplete, SearchBoundExceeded, SubsetBoundExceeded,
            NotConnected, FieldError) as exc:
        return (f"superscheme-report error\nunsupported {exc}\nstatus error\n",
                EXIT_UNSUPPORTED)
    except CotensorNotSubcoalgebra as exc:
        return (f"superscheme-report error\nclosure-failure {exc}\nstatus error\n",
                EXIT_FAIL)
    return text, code


def main(argv=None):
    text, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
