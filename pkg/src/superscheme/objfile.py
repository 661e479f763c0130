"""Line-oriented text format for exact algebra objects.

A file declares one field, any number of named objects, and an optional
expected block.  Scalars are exact strings: "a/b" or "a" over Q, integer
residues over F_p, comma-separated coordinates over an extension field.
Parsing then serializing is the identity on canonical files.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field

from .fields import ExtensionField, FieldError, PrimeField, QQ
from .superlinear import GradedMap, Matrix, Subspace, SuperVectorSpace
from .superalgebra import SuperAlgebra, make_superalgebra
from .supercoalgebra import SuperCoalgebra
from .supercomodule import SuperComodule
from .formal_scheme import FormalSuperscheme, SchemeMorphism
from .ksdim import presentation, presentation_morphism

FORMAT_HEADER = "superscheme"
FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message, lineno=None):
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)
        self.lineno = lineno


@dataclass
class ParsedObject:
    kind: str
    name: str
    over: str = None
    source: str = None
    target: str = None
    lines: list = dc_field(default_factory=list)


@dataclass
class ObjectFile:
    field: object
    objects: list
    expected: dict
    digest: str
    built: dict = dc_field(default_factory=dict)

    def first(self, *kinds):
        for name, (kind, value) in self.built.items():
            if kind in kinds:
                return name, value
        raise ParseError(f"no object of kind {'/'.join(kinds)} in file")

    def all_of(self, *kinds):
        return [(name, value) for name, (kind, value) in self.built.items()
                if kind in kinds]

    def get(self, name):
        if name not in self.built:
            raise ParseError(f"no object named {name!r} in file")
        return self.built[name][1]


def _parse_field(tokens, lineno):
    if tokens == ["Q"]:
        return QQ
    if tokens[0] == "Fp" and len(tokens) == 2:
        try:
            return PrimeField(int(tokens[1]))
        except (ValueError, FieldError) as exc:
            raise ParseError(str(exc), lineno)
    if tokens[0] == "ext":
        # field ext <base...> poly <c0> ... <cn> name <label>
        try:
            split_poly = tokens.index("poly")
            split_name = tokens.index("name")
        except ValueError:
            raise ParseError("extension needs 'poly' and 'name' sections", lineno)
        base = _parse_field(tokens[1:split_poly], lineno)
        coeffs = [base.parse(t) for t in tokens[split_poly + 1:split_name]]
        gen_name = tokens[split_name + 1]
        try:
            return ExtensionField(base, coeffs, gen_name)
        except FieldError as exc:
            raise ParseError(str(exc), lineno)
    raise ParseError(f"unknown field descriptor {' '.join(tokens)!r}", lineno)


def _field_tokens(F):
    if F == QQ:
        return ["Q"]
    if isinstance(F, PrimeField):
        return ["Fp", str(F.p)]
    if isinstance(F, ExtensionField):
        return (["ext"] + _field_tokens(F.base) + ["poly"]
                + [F.base.format(c) for c in F.minpoly] + ["name", F.gen_name])
    raise ValueError(f"cannot serialize field {F!r}")


def parse_text(text):
    """Parse a document; objects are built and cross-checked on load."""
    digest = hashlib.sha256(text.encode()).hexdigest()
    lines = text.splitlines()
    field = None
    objects = []
    expected = {}
    current = None
    in_expected = False
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not header_seen:
            if tokens[0] != FORMAT_HEADER or len(tokens) != 2:
                raise ParseError("file must start with 'superscheme <version>'", lineno)
            if int(tokens[1]) != FORMAT_VERSION:
                raise ParseError(f"unsupported format version {tokens[1]}", lineno)
            header_seen = True
            continue
        if tokens[0] == "field":
            if field is not None:
                raise ParseError("duplicate field declaration", lineno)
            field = _parse_field(tokens[1:], lineno)
            continue
        if tokens[0] == "object":
            if current is not None or in_expected:
                raise ParseError("nested object", lineno)
            if len(tokens) < 3:
                raise ParseError("object needs a kind and a name", lineno)
            current = ParsedObject(tokens[1], tokens[2])
            rest = tokens[3:]
            while rest:
                if rest[0] == "over" and len(rest) >= 2:
                    current.over = rest[1]
                    rest = rest[2:]
                elif rest[0] == "from" and len(rest) >= 2:
                    current.source = rest[1]
                    rest = rest[2:]
                elif rest[0] == "to" and len(rest) >= 2:
                    current.target = rest[1]
                    rest = rest[2:]
                else:
                    raise ParseError(f"bad object qualifier {rest[0]!r}", lineno)
            continue
        if tokens[0] == "expected":
            if current is not None:
                raise ParseError("expected block inside object", lineno)
            in_expected = True
            continue
        if tokens[0] == "end":
            if current is not None:
                objects.append(current)
                current = None
            elif in_expected:
                in_expected = False
            else:
                raise ParseError("stray end", lineno)
            continue
        if current is not None:
            current.lines.append((lineno, tokens))
        elif in_expected:
            expected[tokens[0]] = tokens[1:]
        else:
            raise ParseError(f"unexpected content {line!r}", lineno)
    if current is not None:
        raise ParseError("unterminated object")
    if field is None:
        raise ParseError("missing field declaration")
    doc = ObjectFile(field, objects, expected, digest)
    _build_all(doc)
    return doc


def parse_path(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_text(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")


def _build_all(doc):
    for po in doc.objects:
        if po.name in doc.built:
            raise ParseError(f"duplicate object name {po.name!r}")
        builder = _BUILDERS.get(po.kind)
        if builder is None:
            raise ParseError(f"unknown object kind {po.kind!r}")
        doc.built[po.name] = (po.kind, builder(doc, po))


def _collect_basis(doc, po):
    labels, parities = [], []
    for lineno, tokens in po.lines:
        if tokens[0] == "basis":
            if len(tokens) != 3 or tokens[2] not in ("even", "odd"):
                raise ParseError("basis line needs 'basis <label> even|odd'", lineno)
            labels.append(tokens[1])
            parities.append(0 if tokens[2] == "even" else 1)
    return SuperVectorSpace(doc.field, tuple(labels), tuple(parities))


def _triple_tensor(doc, po, keyword, n, ncols=None, depth=3):
    F = doc.field
    ncols = ncols if ncols is not None else n
    tensor = [[[F.zero] * ncols for _ in range(n)] for _ in range(n)]
    for lineno, tokens in po.lines:
        if tokens[0] != keyword:
            continue
        if len(tokens) != 5:
            raise ParseError(f"{keyword} line needs 3 indices and a scalar", lineno)
        try:
            i, j, k = int(tokens[1]), int(tokens[2]), int(tokens[3])
            tensor[i][j][k] = F.parse(tokens[4])
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad {keyword} entry: {exc}", lineno)
        except FieldError as exc:
            raise ParseError(str(exc), lineno)
    return tensor


def _vector(doc, po, keyword, n):
    F = doc.field
    vec = [F.zero] * n
    for lineno, tokens in po.lines:
        if tokens[0] != keyword:
            continue
        if len(tokens) != 3:
            raise ParseError(f"{keyword} line needs an index and a scalar", lineno)
        try:
            vec[int(tokens[1])] = F.parse(tokens[2])
        except (ValueError, IndexError, FieldError) as exc:
            raise ParseError(f"bad {keyword} entry: {exc}", lineno)
    return tuple(vec)


def _build_algebra(doc, po):
    space = _collect_basis(doc, po)
    n = space.dim
    mul = _triple_tensor(doc, po, "mul", n)
    unit = _vector(doc, po, "unit", n)
    try:
        return make_superalgebra(space, mul, unit, check=False)
    except ValueError as exc:
        raise ParseError(str(exc))


def _build_coalgebra(doc, po):
    space = _collect_basis(doc, po)
    n = space.dim
    delta = _triple_tensor(doc, po, "delta", n)
    counit = _vector(doc, po, "counit", n)
    return SuperCoalgebra(space,
                          tuple(tuple(tuple(c) for c in row) for row in delta),
                          counit)


def _build_comodule(doc, po):
    if po.over is None:
        raise ParseError(f"comodule {po.name} needs 'over <coalgebra>'")
    C = doc.get(po.over)
    space = _collect_basis(doc, po)
    n = space.dim
    F = doc.field
    psi = [[[F.zero] * C.dim for _ in range(n)] for _ in range(n)]
    for lineno, tokens in po.lines:
        if tokens[0] != "coaction":
            continue
        if len(tokens) != 5:
            raise ParseError("coaction line needs 3 indices and a scalar", lineno)
        try:
            psi[int(tokens[1])][int(tokens[2])][int(tokens[3])] = F.parse(tokens[4])
        except (ValueError, IndexError, FieldError) as exc:
            raise ParseError(f"bad coaction entry: {exc}", lineno)
    return SuperComodule(space, C,
                         tuple(tuple(tuple(c) for c in row) for row in psi))


def _build_morphism(doc, po):
    if po.source is None or po.target is None:
        raise ParseError(f"morphism {po.name} needs 'from <C> to <D>'")
    C = doc.get(po.source)
    D = doc.get(po.target)
    F = doc.field
    rows = [[F.zero] * C.dim for _ in range(D.dim)]
    for lineno, tokens in po.lines:
        if tokens[0] != "map":
            continue
        if len(tokens) != 4:
            raise ParseError("map line needs 'map <row> <col> <scalar>'", lineno)
        try:
            rows[int(tokens[1])][int(tokens[2])] = F.parse(tokens[3])
        except (ValueError, IndexError, FieldError) as exc:
            raise ParseError(f"bad map entry: {exc}", lineno)
    try:
        gm = GradedMap(C.space, D.space, Matrix(F, rows, C.dim), 0)
    except ValueError as exc:
        raise ParseError(f"morphism {po.name}: {exc}")
    return SchemeMorphism(FormalSuperscheme.finite(C),
                          FormalSuperscheme.finite(D), (gm,))


def _build_subspace(doc, po):
    if po.over is None:
        raise ParseError(f"subspace {po.name} needs 'over <object>'")
    host = doc.get(po.over)
    space = host.space
    F = doc.field
    vecs = []
    for lineno, tokens in po.lines:
        if tokens[0] != "row":
            continue
        coords = tokens[1:]
        if len(coords) != space.dim:
            raise ParseError(f"row needs {space.dim} scalars", lineno)
        try:
            vecs.append(tuple(F.parse(c) for c in coords))
        except FieldError as exc:
            raise ParseError(str(exc), lineno)
    return Subspace.from_vectors(space, vecs)


def _parse_monomial_tokens(tokens, evars, ovars, lineno):
    exps = [0] * len(evars)
    odds = set()
    for tok in tokens:
        if "^" in tok:
            name, power = tok.split("^", 1)
            try:
                power = int(power)
            except ValueError:
                raise ParseError(f"bad exponent in {tok!r}", lineno)
        else:
            name, power = tok, 1
        if name in evars:
            exps[evars.index(name)] += power
        elif name in ovars:
            if power != 1:
                raise ParseError(f"odd variable {name} cannot carry a power", lineno)
            if ovars.index(name) in odds:
                raise ParseError(f"odd variable {name} repeated", lineno)
            odds.add(ovars.index(name))
        else:
            raise ParseError(f"unknown variable {name!r}", lineno)
    return tuple(exps), frozenset(odds)


def _presentation_vars(po):
    evars, ovars = [], []
    for lineno, tokens in po.lines:
        if tokens[0] == "evar":
            evars.extend(tokens[1:])
        elif tokens[0] == "ovar":
            ovars.extend(tokens[1:])
    return evars, ovars


def _build_presentation(doc, po):
    evars, ovars = _presentation_vars(po)
    gens = []
    for lineno, tokens in po.lines:
        if tokens[0] == "gen":
            gens.append(_parse_monomial_tokens(tokens[1:], evars, ovars, lineno))
    try:
        return presentation(len(evars), len(ovars), gens, doc.field)
    except ValueError as exc:
        raise ParseError(str(exc))


def _build_presmorphism(doc, po):
    if po.source is None or po.target is None:
        raise ParseError(f"presmorphism {po.name} needs 'from <P> to <Q>'")
    src = doc.get(po.source)
    dst = doc.get(po.target)
    src_po = next(p for p in doc.objects if p.name == po.source)
    evars, ovars = _presentation_vars(src_po)
    even_images = [None] * dst.p
    odd_images = [None] * dst.q
    dst_po = next(p for p in doc.objects if p.name == po.target)
    devars, dovars = _presentation_vars(dst_po)
    for lineno, tokens in po.lines:
        if tokens[0] == "eimage":
            if tokens[1] not in devars:
                raise ParseError(f"unknown target even variable {tokens[1]!r}", lineno)
            even_images[devars.index(tokens[1])] = \
                _parse_monomial_tokens(tokens[2:], evars, ovars, lineno)
        elif tokens[0] == "oimage":
            if tokens[1] not in dovars:
                raise ParseError(f"unknown target odd variable {tokens[1]!r}", lineno)
            odd_images[dovars.index(tokens[1])] = \
                _parse_monomial_tokens(tokens[2:], evars, ovars, lineno)
    if any(v is None for v in even_images) or any(v is None for v in odd_images):
        raise ParseError(f"presmorphism {po.name} is missing variable images")
    try:
        return presentation_morphism(src, dst, even_images, odd_images)
    except ValueError as exc:
        raise ParseError(str(exc))


def _build_tower(doc, po):
    levels = []
    tmaps = []
    for lineno, tokens in po.lines:
        if tokens[0] == "level":
            levels.append(doc.get(tokens[1]))
        elif tokens[0] == "tmap":
            m = doc.get(tokens[1])
            tmaps.append(m.deep if isinstance(m, SchemeMorphism) else m)
    if len(levels) == 1 and not tmaps:
        return FormalSuperscheme.finite(levels[0])
    try:
        return FormalSuperscheme.tower(levels, tmaps)
    except ValueError as exc:
        raise ParseError(str(exc))


_BUILDERS = {
    "algebra": _build_algebra,
    "coalgebra": _build_coalgebra,
    "comodule": _build_comodule,
    "morphism": _build_morphism,
    "subspace": _build_subspace,
    "presentation": _build_presentation,
    "presmorphism": _build_presmorphism,
    "tower": _build_tower,
}


# ---------------------------------------------------------------------------
# serialization

def _scalar_lines(F, keyword, tensor):
    lines = []
    for i, row in enumerate(tensor):
        for j, cell in enumerate(row):
            for k, c in enumerate(cell):
                if not F.is_zero(c):
                    lines.append(f"  {keyword} {i} {j} {k} {F.format(c)}")
    return lines


def _vector_lines(F, keyword, vec):
    return [f"  {keyword} {i} {F.format(c)}"
            for i, c in enumerate(vec) if not F.is_zero(c)]


def serialize_object(name, value, F, over=None, endpoints=None):
    lines = []
    if isinstance(value, SuperAlgebra):
        lines.append(f"object algebra {name}")
        for l, p in zip(value.space.labels, value.space.parities):
            lines.append(f"  basis {l} {'odd' if p else 'even'}")
        lines.extend(_vector_lines(F, "unit", value.unit))
        lines.extend(_scalar_lines(F, "mul", value.mul))
    elif isinstance(value, SuperCoalgebra):
        lines.append(f"object coalgebra {name}")
        for l, p in zip(value.space.labels, value.space.parities):
            lines.append(f"  basis {l} {'odd' if p else 'even'}")
        lines.extend(_vector_lines(F, "counit", value.counit))
        lines.extend(_scalar_lines(F, "delta", value.delta))
    elif isinstance(value, SuperComodule):
        lines.append(f"object comodule {name} over {over}")
        for l, p in zip(value.space.labels, value.space.parities):
            lines.append(f"  basis {l} {'odd' if p else 'even'}")
        lines.extend(_scalar_lines(F, "coaction", value.psi))
    elif isinstance(value, SchemeMorphism):
        src, dst = endpoints
        lines.append(f"object morphism {name} from {src} to {dst}")
        mat = value.deep.matrix
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                if not F.is_zero(mat.rows[i][j]):
                    lines.append(f"  map {i} {j} {F.format(mat.rows[i][j])}")
    else:
        raise ValueError(f"cannot serialize {type(value).__name__}")
    lines.append("end")
    return lines


def serialize_document(F, named_objects, expected=None):
    lines = [f"{FORMAT_HEADER} {FORMAT_VERSION}", "field " + " ".join(_field_tokens(F))]
    for entry in named_objects:
        lines.extend(serialize_object(*entry[:2], F, *entry[2:]))
    if expected:
        lines.append("expected")
        for k in sorted(expected):
            v = expected[k]
            vtxt = " ".join(str(x) for x in v) if isinstance(v, (list, tuple)) else str(v)
            lines.append(f"  {k} {vtxt}")
        lines.append("end")
    return "\n".join(lines) + "\n"
