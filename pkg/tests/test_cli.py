import csv
import io
import json

import pytest

from charvar.cli import main, parse_character, run
from charvar.covers import load_ceva_group, fermat_group
from charvar.dsl import parse_group_dsl
from charvar.fixtures import data_text
from charvar.words import Character


@pytest.fixture
def c7_file(tmp_path):
    p = tmp_path / "c7.lines"
    p.write_text(data_text("c7.lines"))
    return str(p)


def test_parse_character():
    G = load_ceva_group()
    assert parse_character("e5=z(2,1)", G) == Character(2, (0, 0, 0, 0, 0, 1))
    assert parse_character("e1=z(3,1),e2=z(2,1)", G) == Character(6, (0, 2, 3, 0, 0, 0))
    assert parse_character("e0=-1,e1=1", G) == Character(2, (1, 0, 0, 0, 0, 0))
    assert parse_character("", G).is_trivial()


def test_depth_command():
    code, out = run(["depth", "fermat:2", "--char", "e5=z(2,1)", "--method", "both"])
    assert code == 0
    d = json.loads(out)
    assert d["depth"] == 3 and d["stratum"] == "V_3" and d["character"] == {"order": 2, "exponents": [1, 0, 0, 0, 0]}


def test_depth_on_line_file(c7_file):
    code, out = run(["depth", c7_file, "--char", "l2=-1,l3=-1,l5=-1,l6=-1"])
    assert code == 0 and json.loads(out)["depth"] == 2


def test_scan_csv_and_json(c7_file):
    code, out = run(["scan", "fermat:2", "2", "--mask", "e5", "--format", "csv", "--jobs", "1"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows == [["order", "e5", "e3_0", "e3_1", "e4_0", "e4_1", "depth", "method"],
                                  ["2", "1", "0", "0", "0", "0", "3", "fox"]]
    code, out = run(["scan", c7_file, "2", "--jobs", "2"])
    res = json.loads(out)["results"]
    assert code == 0 and {"order": 2, "exponents": [0, 1, 1, 0, 1, 1, 0]} in [r["character"] for r in res]
    code2, out2 = run(["scan", c7_file, "2", "--jobs", "1"])
    assert out2 == out


def test_arrangement_command(c7_file):
    code, out = run(["arrangement", c7_file, "--name", "C7"])
    P = parse_group_dsl(out)
    assert code == 0 and P.ngens == 7 and P.degrees == (1,) * 7


def test_cover_command():
    code, out = run(["cover", "ceva", "--factors", "2,2", "--image", "e0=-1,-1", "--image", "e1=1,0",
                     "--image", "e2=0,1", "--transversal", "e1,e2", "--kill", "e0^2", "--kill", "e1^2",
                     "--kill", "e2^2", "--simplify", "--keep", "e5_0_0,e3_0_0,e3_0_1,e4_0_0,e4_1_0"])
    assert code == 0
    K = parse_group_dsl(out)
    assert sorted(K.names) == ["e3_0_0", "e3_0_1", "e4_0_0", "e4_1_0", "e5_0_0"]
    assert len(K.relators) == len(fermat_group(2).relators)


def test_pencil_commands():
    code, out = run(["pencil", "verify", "sc_pencils.json"])
    assert code == 0 and out.count("marked=True depth=2") == 6
    code, out = run(["pencil", "verify", "fermat_pencils_n3.json"])
    assert code == 0 and out.count(" ok") == 3
    code, out = run(["pencil", "independence", "fermat_pencils_n2.json"])
    res = json.loads(out)
    assert code == 0 and res["independent"] and res["cokernel"] == [2] and "note" in res


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("group X {\n  gens a;\n  rel a^0;\n}\n")
    assert main(["depth", str(bad), "--char", ""]) == 2
    assert "line 3, column 9" in capsys.readouterr().err
    assert main(["depth", "ceva", "--char", "e9=-1"]) == 2
    assert main(["depth", "ceva", "--char", "e5=q"]) == 2
    assert main(["depth", str(tmp_path / "missing.grp"), "--char", ""]) == 2
    assert main(["depth", "ceva", "--char", "e0=-1"]) == 2  # does not kill the product relator
    assert main(["depth", "fermat:2", "--char", "", "--method", "fox"]) == 1
    assert main(["scan", "fermat:3", "7", "--budget", "10"]) == 1
    assert main(["nonsense"]) == 2
