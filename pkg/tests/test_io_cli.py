import json

import pytest

from lqres.cli import EXIT_CERTIFY, EXIT_OK, EXIT_PARSE, EXIT_VERIFY, main
from lqres.corpus import power_ideal, squarefree_veronese
from lqres.ideals import certify_linear_quotients
from lqres.io import (
    FormatError,
    ideal_to_json,
    load_ideal,
    parse_ideal_text,
    resolution_from_json,
    resolution_to_json,
)
from lqres.resolution import build_resolution, koszul_resolution
from lqres.poly import Ring


TEXT = """
# the square of the maximal ideal
field: QQ
variables: x y
generators: x^2, x*y,
    y^2
order: 1 2 3
certificate 2: x
certificate 3: x
"""


def test_parse_text_format():
    f = parse_ideal_text(TEXT)
    assert [str(g) for g in f.ideal.generators] == ["x^2", "x*y", "y^2"]
    assert f.order == (0, 1, 2)
    assert f.certificate == [[], ["x"], ["x"]]
    assert certify_linear_quotients(f.ideal, f.certificate).q_values == (0, 1, 1)


@pytest.mark.parametrize("text", ["generators: x", "variables: x\n", "variables: x\ngenerators: x\norder: 2",
                                  "hello\nvariables: x"])
def test_parse_text_errors(text):
    with pytest.raises((FormatError, ValueError)):
        parse_ideal_text(text)


def test_json_ideal_round_trip(tmp_path):
    I = squarefree_veronese(4, 2)
    p = tmp_path / "i.json"
    p.write_text(json.dumps(ideal_to_json(I, order=[5, 4, 3, 2, 1, 0])))
    f = load_ideal(p)
    assert f.ideal.generators == I.generators
    assert f.order == (5, 4, 3, 2, 1, 0)


def test_resolution_json_round_trip():
    I = power_ideal(3, 2)
    res = build_resolution(I, certify_linear_quotients(I))
    data = json.loads(json.dumps(resolution_to_json(res)))
    back = resolution_from_json(data)
    assert back == res
    kos = koszul_resolution(Ring(3), Ring(3).gens(), 2)
    assert resolution_from_json(resolution_to_json(kos)) == kos


def test_resolution_json_rejects_garbage():
    with pytest.raises(FormatError):
        resolution_from_json({"format": "other"})
    with pytest.raises(FormatError):
        resolution_from_json({"format": "lqres-resolution", "ring": {"variables": ["x"]}})


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write, tmp_path


def test_cli_check(files, capsys):
    write, _ = files
    assert main(["check", write("p.txt", "variables: x y\ngenerators: x^2, x*y, y^2")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "q = [0, 1, 1], q(I) = 1" in out
    assert main(["check", write("bad.txt", "variables: x y z w\ngenerators: x*y, z*w")]) == EXIT_CERTIFY
    assert "fails at k=2" in capsys.readouterr().err
    assert main(["check", write("one.txt", "variables: x y\ngenerators: x*y")]) == EXIT_OK
    assert "q(I) = 0" in capsys.readouterr().out


def test_cli_parse_error(files, capsys):
    write, _ = files
    assert main(["check", write("p.txt", "variables: x\ngenerators: x^2, q")]) == EXIT_PARSE
    assert main(["check", write("p.txt", "variables: x y\ngenerators: x^2, y")]) == EXIT_PARSE


def test_cli_order(files, capsys):
    write, tmp = files
    out = tmp / "ordered.json"
    assert main(["order", write("v.txt", "variables: x y z\ngenerators: x*z, x*y, y*z"), "--out", str(out)]) == 0
    assert "order: x*y, x*z, y*z" in capsys.readouterr().out
    assert json.loads(out.read_text())["generators"] == ["x*y", "x*z", "y*z"]
    assert main(["order", write("b.txt", "variables: x y z w\ngenerators: x*y, z*w"),
                 "--order-mode", "greedy"]) == EXIT_CERTIFY


def test_cli_resolve_and_verify(files, capsys):
    write, tmp = files
    ideal = write("xyz.txt", "variables: x y z\ngenerators: x, y, z")
    res_path = tmp / "res.json"
    report = tmp / "report.json"
    assert main(["resolve", ideal, "--out", str(res_path), "--report", str(report)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "total: 3 3 1" in out and "pd = 2" in out
    rep = json.loads(report.read_text())
    assert rep["passed"] and rep["config"]["command"] == "resolve"
    assert main(["verify", str(res_path), ideal]) == EXIT_OK
    capsys.readouterr()

    data = json.loads(res_path.read_text())
    r, c, p = data["differentials"][0][0]
    data["differentials"][0][0] = [r, c, p[1:] if p.startswith("-") else "-" + p]
    bad = tmp / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", str(bad), ideal]) == EXIT_VERIFY
    assert "FAIL complex" in capsys.readouterr().out

    other = write("other.txt", "variables: x y z\ngenerators: x, y")
    assert main(["verify", str(res_path), other]) == EXIT_VERIFY
    assert "FAIL augmentation" in capsys.readouterr().out


def test_cli_resolve_non_lq(files, capsys):
    write, tmp = files
    out = tmp / "never.json"
    assert main(["resolve", write("b.txt", "variables: x y z w\ngenerators: x*y, z*w"),
                 "--out", str(out)]) == EXIT_CERTIFY
    assert not out.exists()


def test_cli_resolve_general_kind_prime_field(files, capsys):
    write, _ = files
    path = write("g.txt", "variables: x y\ngenerators: y^2, x*y, x^2 + y^2\nkind: general")
    assert main(["resolve", path, "--field", "GF(32003)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS exactness" in out and "total: 3 2" in out


def test_cli_betti_and_hilbert(files, capsys):
    write, _ = files
    path = write("p.txt", "variables: x y\ngenerators: x^2, x*y, y^2")
    assert main(["betti", path]) == 0
    assert "2: 3 2" in capsys.readouterr().out
    assert main(["betti", path, "--bruteforce"]) == 0
    assert "2: 3 2" in capsys.readouterr().out
    assert main(["hilbert", path]) == 0
    assert "1 - 3t^2 + 2t^3" in capsys.readouterr().out


def test_cli_corpus(files, capsys):
    write, tmp = files
    manifest = write("m.json", json.dumps([
        {"family": "power", "params": {"n": 2, "d": 2}},
        {"family": "random_lq", "params": {"n": 3, "d": 2, "m": 4}, "seed": 5},
        {"family": "alexander", "params": {"n": 3, "facets": [[1, 2], [2, 3]]}},
    ]))
    outdir = tmp / "corpus"
    assert main(["corpus", manifest, "--out", str(outdir)]) == 0
    produced = sorted(p.name for p in outdir.iterdir())
    assert len(produced) == 3
    for p in outdir.iterdir():
        assert main(["resolve", str(p)]) == 0
