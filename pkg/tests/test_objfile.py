import pytest

from superscheme.fields import PrimeField, QQ
from superscheme.objfile import (
    ParseError, parse_text, serialize_document,
)
from superscheme.corpus import (
    divided_power, grassmann, grouplike_coalgebra, truncated_polynomial,
)
from superscheme.supercoalgebra import dualize_algebra, unit_coalgebra

F3 = PrimeField(3)


def test_algebra_round_trip():
    G = grassmann(2)
    text = serialize_document(QQ, [("G2", G)])
    doc = parse_text(text)
    _, A = doc.first("algebra")
    assert A.mul == G.mul and A.unit == G.unit
    assert A.space.labels == G.space.labels
    assert serialize_document(QQ, [("G2", A)]) == text


def test_coalgebra_round_trip_fp():
    C = divided_power(2, F3)
    text = serialize_document(F3, [("D2", C)])
    doc = parse_text(text)
    _, back = doc.first("coalgebra")
    assert back.delta == C.delta and back.counit == C.counit


def test_extension_field_header():
    text = """superscheme 1
field ext Fp 3 poly 1 0 1 name j
object coalgebra C
  basis g even
  counit 0 1,0
  delta 0 0 0 1,0
end
"""
    doc = parse_text(text)
    assert doc.field.order == 9
    _, C = doc.first("coalgebra")
    assert C.counit == ((1, 0),)


def test_comodule_and_morphism_sections():
    text = """superscheme 1
field Q
object coalgebra C
  basis g even
  counit 0 1
  delta 0 0 0 1
end
object comodule M over C
  basis m even
  coaction 0 0 0 1
end
object morphism f from C to C
  map 0 0 1
end
"""
    doc = parse_text(text)
    _, M = doc.first("comodule")
    assert M.coalgebra.dim == 1
    _, f = doc.first("morphism")
    assert f.validate() == []


def test_subspace_section():
    text = """superscheme 1
field Q
object coalgebra C
  basis g even
  basis x even
  counit 0 1
  delta 0 0 0 1
  delta 1 0 1 1
  delta 1 1 0 1
end
object subspace W over C
  row 1 0
end
"""
    doc = parse_text(text)
    W = doc.get("W")
    assert W.dim == 1


def test_presentation_and_morphism_sections():
    text = """superscheme 1
field Q
object presentation P
  evar T S
  ovar a b
  gen T a
end
object presentation Q
  evar U
  ovar c
end
object presmorphism f from P to Q
  eimage U S
  oimage c b
end
"""
    doc = parse_text(text)
    P = doc.get("P")
    assert P.p == 2 and P.q == 2
    assert P.generators == (((1, 0), frozenset({0})),)
    f = doc.get("f")
    assert f.even_images == (((0, 1), frozenset()),)
    assert f.odd_images == (((0, 0), frozenset({1})),)


def test_tower_section():
    D1 = divided_power(1)
    D2 = divided_power(2)
    text = """superscheme 1
field Q
object coalgebra C1
  basis g even
  basis x1 even
  counit 0 1
  delta 0 0 0 1
  delta 1 0 1 1
  delta 1 1 0 1
end
object coalgebra C2
  basis g even
  basis x1 even
  basis x2 even
  counit 0 1
  delta 0 0 0 1
  delta 1 0 1 1
  delta 1 1 0 1
  delta 2 0 2 1
  delta 2 1 1 1
  delta 2 2 0 1
end
object morphism i from C1 to C2
  map 0 0 1
  map 1 1 1
end
object tower X
  level C1
  level C2
  tmap i
end
"""
    doc = parse_text(text)
    X = doc.get("X")
    assert len(X.levels) == 2
    assert X.validate() == []


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_text("not a header\n")
    with pytest.raises(ParseError):
        parse_text("superscheme 99\nfield Q\n")
    with pytest.raises(ParseError):
        parse_text("superscheme 1\n")  # missing field
    with pytest.raises(ParseError):
        parse_text("superscheme 1\nfield Fp 2\n")  # char 2 rejected at parse
    with pytest.raises(ParseError):
        parse_text("superscheme 1\nfield Q\nobject widget W\nend\n")
    with pytest.raises(ParseError):
        parse_text("superscheme 1\nfield Q\nobject coalgebra C\n"
                    "  basis g even\n  counit 0 nonsense\nend\n")
    dup = ("superscheme 1\nfield Q\n"
           "object coalgebra C\n  basis g even\n  counit 0 1\n"
           "  delta 0 0 0 1\nend\n") * 1
    with pytest.raises(ParseError):
        parse_text("superscheme 1\nfield Q\n" + 2 * (
            "object coalgebra C\n  basis g even\n  counit 0 1\n"
            "  delta 0 0 0 1\nend\n"))


def test_expected_block():
    text = """superscheme 1
field Q
object coalgebra C
  basis g even
  counit 0 1
  delta 0 0 0 1
end
expected
  components 1
  grouplikes 1
end
"""
    doc = parse_text(text)
    assert doc.expected == {"components": ["1"], "grouplikes": ["1"]}


def test_readme_format_example_validates():
    from superscheme.superalgebra import validate_superalgebra
    text = """superscheme 1
field Q
object algebra A
  basis 1 even
  basis th odd
  unit 0 1
  mul 0 0 0 1
  mul 0 1 1 1
  mul 1 0 1 1
end
"""
    doc = parse_text(text)
    _, A = doc.first("algebra")
    assert validate_superalgebra(A) == []


def test_comments_and_blank_lines():
    text = """superscheme 1
# a comment
field Q

object coalgebra C   # trailing comment
  basis g even
  counit 0 1
  delta 0 0 0 1
end
"""
    doc = parse_text(text)
    assert doc.get("C").dim == 1
