from fractions import Fraction

import pytest

from superscheme.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_UNSUPPORTED, run
from superscheme.fields import QQ, PrimeField
from superscheme.objfile import serialize_document
from superscheme.superlinear import GradedMap, Matrix
from superscheme.supercoalgebra import dualize_algebra, unit_coalgebra
from superscheme.formal_scheme import FormalSuperscheme, SchemeMorphism
from superscheme.corpus import (
    divided_power, grassmann, grouplike_coalgebra, quotient_ring_algebra,
    truncated_polynomial,
)

F3 = PrimeField(3)


@pytest.fixture
def files(tmp_path):
    out = {}

    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)

    write("g2.alg", serialize_document(QQ, [("G2", grassmann(2))]))
    write("d3.coalg", serialize_document(QQ, [("D3", divided_power(3))]))
    GK = grouplike_coalgebra(2)
    K = unit_coalgebra(QQ)
    m = GradedMap(GK.space, K.space, Matrix(QQ, [[QQ.one, QQ.one]]), 0)
    f = SchemeMorphism.finite(m, FormalSuperscheme.finite(GK),
                              FormalSuperscheme.finite(K))
    write("collapse.mor", serialize_document(
        QQ, [("GK", GK), ("K", K), ("f", f, None, ("GK", "K"))]))
    j = GradedMap(K.space, GK.space, Matrix(QQ, [[QQ.one], [QQ.zero]]), 0)
    fj = SchemeMorphism.finite(j, FormalSuperscheme.finite(K),
                               FormalSuperscheme.finite(GK))
    write("inclusion.mor", serialize_document(
        QQ, [("K", K), ("GK", GK), ("fj", fj, None, ("K", "GK"))]))
    write("pres.pres", """superscheme 1
field Q
object presentation P
  evar T
  ovar a b
  gen T a
end
""")
    write("twopres.pres", """superscheme 1
field Q
object presentation P
  ovar a
end
object presentation Q2
  ovar b
end
""")
    write("presmor.pres", """superscheme 1
field Q
object presentation S
  evar T U
  ovar a b
end
object presentation Y
  evar T
  ovar a
end
object presmorphism proj from S to Y
  eimage T T
  oimage a a
end
""")
    C3 = dualize_algebra(quotient_ring_algebra([F3.one, F3.zero, F3.one], F3))
    write("f9split.coalg", serialize_document(F3, [("C", C3)]))
    GD = dualize_algebra(grassmann(1, F3))
    write("gdual3.coalg", serialize_document(F3, [("C", GD)]))
    write("r3.alg", serialize_document(F3, [("R", grassmann(1, F3))]))
    wedge_host = serialize_document(QQ, [("D3", divided_power(3))]).rstrip()
    write("wedge.coalg", wedge_host + """
object subspace X over D3
  row 1 0 0 0
end
object subspace Y over D3
  row 1 0 0 0
end
""")
    two = serialize_document(QQ, [("A", grouplike_coalgebra(2)),
                                  ("B", divided_power(1))])
    write("pair.coalg", two)
    from superscheme.supercomodule import regular_comodule, trivial_comodule
    from superscheme.superlinear import unit_vec
    D1 = divided_power(1)
    write("mods.comod", serialize_document(QQ, [
        ("C", D1),
        ("M", regular_comodule(D1), "C"),
        ("N", trivial_comodule(D1, unit_vec(QQ, 2, 0)), "C")]))
    bad = serialize_document(QQ, [("G2", grassmann(2))])
    bad = bad.replace("mul 2 1 3 -1", "mul 2 1 3 1")
    write("bad.alg", bad)
    return out


def _ok(argv):
    text, code = run(argv)
    assert code == EXIT_OK, text
    return text


def test_validate(files):
    text = _ok(["validate", files["g2.alg"]])
    assert "object G2 pass" in text
    bad_text, bad_code = run(["validate", files["bad.alg"]])
    assert bad_code == EXIT_FAIL
    assert "supercommutativity" in bad_text


def test_dual_and_product(files):
    text = _ok(["dual", files["g2.alg"]])
    assert "object coalgebra G2_dual" in text
    text2 = _ok(["product", files["pair.coalg"]])
    assert "product-points 2" in text2


def test_radical_coradical_filtration(files):
    assert "radical-sdim 1|2" in _ok(["radical", files["g2.alg"]])
    assert "coradical-dim 1" in _ok(["coradical", files["d3.coalg"]])
    text = _ok(["filtration", files["d3.coalg"]])
    assert "stage 3 dim 4" in text


def test_wedge(files):
    text = _ok(["wedge", files["wedge.coalg"], "--x", "X", "--y", "Y"])
    assert "wedge-dim 2" in text


def test_components_and_grouplikes(files):
    assert "component-count 1" in _ok(["components", files["f9split.coalg"]])
    text = _ok(["grouplikes", files["gdual3.coalg"], "--over", files["r3.alg"]])
    assert "grouplike-count 3" in text
    assert "grouplike-count 0" in _ok(["grouplikes", files["f9split.coalg"]])


def test_morphism_commands(files):
    assert "faithfully-flat True" in _ok(["flat-check", files["collapse.mor"]])
    text = _ok(["immersion-check", files["inclusion.mor"]])
    assert "closed-immersion True" in text and "open-immersion True" in text
    assert "descent pass" in _ok(["descent-check", files["collapse.mor"],
                                  "--depth", "2"])
    fail_text, fail_code = run(["descent-check", files["inclusion.mor"],
                                "--depth", "1"])
    assert fail_code == EXIT_FAIL and "failure comodule kappa(1) degree 0" in fail_text
    assert "bounded-degree 2" in _ok(["finite-check", files["collapse.mor"]])


def test_cotensor_and_comodule_flat(files):
    text = _ok(["cotensor", files["mods.comod"]])
    assert "cotensor-dim 1" in text
    text2 = _ok(["flat-check", files["mods.comod"]])
    assert "flat True" in text2 and "rank 1|0" in text2


def test_fiber_commands(files):
    text = _ok(["fiber", files["collapse.mor"], "--morphism", "f",
                "--point", "0"])
    assert "fiber-dim 2" in text
    text2 = _ok(["fiber-product", files["collapse.mor"], "--f", "f", "--g", "f"])
    assert "carrier-dim 4" in text2


def test_base_change(files):
    text = _ok(["base-change", files["f9split.coalg"],
                "--minpoly", "1 0 1", "--name", "j"])
    assert "points-before 1" in text and "points-after 2" in text


def test_ksdim_and_theorems(files):
    text = _ok(["ksdim", files["pres.pres"], "--oracle"])
    assert "ksdim 1|1" in text and "oracle-even 1" in text
    text2 = _ok(["check-thm513", files["presmor.pres"]])
    assert "flat-mode split-projection" in text2
    assert "even-equality True" in text2
    text3 = _ok(["check-thm515", files["twopres.pres"]])
    assert "even-additive True" in text3 and "odd-superadditive True" in text3


def test_corpus_and_report_all(files):
    assert "status ok" in _ok(["corpus", "--seed", "5"])
    text = _ok(["report-all", files["g2.alg"]])
    assert "algebra G2 ksdim-finite 0|2" in text


def test_exit_codes(files, tmp_path):
    _, code = run(["validate", str(tmp_path / "missing.alg")])
    assert code == EXIT_IO
    p = tmp_path / "char2.alg"
    p.write_text("superscheme 1\nfield Fp 2\n")
    _, code2 = run(["validate", str(p)])
    assert code2 == EXIT_IO
    # group-like enumeration over Q is unsupported
    d3 = tmp_path / "d3q.coalg"
    d3.write_text(serialize_document(QQ, [("C", divided_power(1))]))
    qalg = serialize_document(QQ, [("R", grassmann(0))])
    r = tmp_path / "r.alg"
    r.write_text(qalg)
    _, code3 = run(["grouplikes", str(d3), "--over", str(r)])
    assert code3 == EXIT_UNSUPPORTED
    _, code4 = run(["no-such-command"])
    assert code4 == EXIT_IO


def test_byte_identical_runs_and_threads(files):
    argv = ["grouplikes", files["gdual3.coalg"], "--over", files["r3.alg"]]
    outs = {run(argv)[0] for _ in range(3)}
    assert len(outs) == 1
    threaded = run(["--threads", "4"] + argv)[0]
    assert threaded == outs.pop()


def test_every_command_deterministic(files):
    cases = [
        ["validate", files["g2.alg"]],
        ["dual", files["g2.alg"]],
        ["radical", files["g2.alg"]],
        ["coradical", files["d3.coalg"]],
        ["filtration", files["d3.coalg"]],
        ["wedge", files["wedge.coalg"], "--x", "X", "--y", "Y"],
        ["components", files["f9split.coalg"]],
        ["grouplikes", files["gdual3.coalg"], "--over", files["r3.alg"]],
        ["product", files["pair.coalg"]],
        ["coproduct", files["pair.coalg"]],
        ["cotensor", files["mods.comod"]],
        ["fiber-product", files["collapse.mor"], "--f", "f", "--g", "f"],
        ["fiber", files["collapse.mor"], "--morphism", "f", "--point", "0"],
        ["base-change", files["f9split.coalg"], "--minpoly", "1 0 1"],
        ["immersion-check", files["inclusion.mor"]],
        ["flat-check", files["collapse.mor"]],
        ["descent-check", files["collapse.mor"], "--depth", "1"],
        ["finite-check", files["collapse.mor"]],
        ["ksdim", files["pres.pres"]],
        ["check-thm513", files["presmor.pres"]],
        ["check-thm515", files["twopres.pres"]],
        ["corpus", "--seed", "2"],
        ["report-all", files["collapse.mor"]],
    ]
    for argv in cases:
        a = run(argv)
        b = run(argv)
        assert a == b, argv
