import json

import jsonschema
import pytest

from cshom import cli, workspace
from cshom.errors import DuplicateName, ParseError, UnresolvedReference

SAMPLE = """\
# canonical instances
group Z2
elements 0 1
table
0 1
1 0
end
group Z3
elements 0 1 2
table
0 1 2
1 2 0
2 0 1
end
rms S2
group Z2
I 2
L 2
matrix
0 0
0 1
end
rms S4
group Z2
I 4
L 4
matrix
0 0 0 0
0 0 1 1
0 1 0 1
0 1 1 0
end
semigroup mono
elements a a2 a3
table
a2 a3 a2
a3 a2 a3
a2 a3 a2
end
graph pair
colours x y
left 2
right 2
matrix
x y
y x
end
"""

BOOL = {"type": "boolean"}
STR = {"type": "string"}
INT = {"type": "integer"}
STRLIST = {"type": "array", "items": STR}
MATRIX = {"type": "array", "items": STRLIST}


def envelope(result_schema):
    return {
        "type": "object",
        "required": ["schema_version", "command", "result"],
        "properties": {
            "schema_version": {"const": "1"},
            "command": STR,
            "result": result_schema,
        },
    }


RESULT_SCHEMAS = {
    "multiply": {"type": "object", "required": ["product"],
                 "properties": {"product": STR}},
    "normalize": {"type": "object", "required": ["matrix"],
                  "properties": {"matrix": MATRIX}},
    "egens": {"type": "object", "required": ["group_order", "matrix"],
              "properties": {"group_order": INT, "matrix": MATRIX}},
    "green": {"type": "object",
              "required": ["r_classes", "l_classes", "h_classes"]},
    "coordinatize": {"type": "object",
                     "required": ["group_order", "cols", "rows", "matrix"]},
    "automorphisms": {"type": "object", "required": ["count", "automorphisms"],
                      "properties": {"count": INT}},
    "isomorphic": {"type": "object", "required": ["isomorphic", "count"],
                   "properties": {"isomorphic": BOOL, "count": INT}},
    "homogeneous": {"type": "object", "required": ["homogeneous", "method"],
                    "properties": {"homogeneous": BOOL, "method": STR}},
    "classify": {"type": "object", "required": ["homogeneous", "verdict"],
                 "properties": {"homogeneous": BOOL, "verdict": STR}},
    "screen": {"type": "object", "required": ["pass", "violations"],
               "properties": {"pass": BOOL, "violations": STRLIST}},
    "graph": {"type": "object", "required": ["left", "right", "matrix"],
              "properties": {"matrix": MATRIX}},
    "graph-classify": {"type": "object", "required": ["pattern", "homogeneous"],
                       "properties": {"pattern": STR, "homogeneous": BOOL}},
    "age": {"type": "object", "required": ["classes", "orders"],
            "properties": {"classes": INT}},
    "jep": {"type": "object", "required": ["jep"], "properties": {"jep": BOOL}},
    "ap": {"type": "object", "required": ["ap"], "properties": {"ap": BOOL}},
    "amalgamate": {"type": "object"},
    "grow-generic": {"type": "object", "required": ["matrix", "open_constraints"]},
    "sweep": {"type": "object",
              "required": ["instances", "homogeneous", "disagreements"]},
}


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / "sample.txt"
    path.write_text(SAMPLE)
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv, "--json")
    return code, json.loads(out)


# -- workspace ----------------------------------------------------------


def test_parse_sample():
    ws = workspace.parse(SAMPLE)
    assert set(ws.groups) == {"Z2", "Z3"}
    assert set(ws.rms) == {"S2", "S4"}
    assert ws.rms["S2"].order == 8
    assert set(ws.semigroups) == {"mono"}
    assert set(ws.graphs) == {"pair"}


def test_parse_serialize_roundtrip():
    ws = workspace.parse(SAMPLE)
    text = workspace.serialize(ws)
    again = workspace.parse(text)
    assert workspace.serialize(again) == text
    for name, g in ws.groups.items():
        assert again.groups[name].labels == g.labels
        assert again.groups[name].table == g.table
    for name, s in ws.rms.items():
        assert again.rms[name].matrix.entries == s.matrix.entries
        assert again.rms_group_names[name] == ws.rms_group_names[name]
    for name, s in ws.semigroups.items():
        assert again.semigroups[name].table == s.table
    for name, graph in ws.graphs.items():
        assert again.graphs[name].rows() == graph.rows()
        assert again.graphs[name].colours == graph.colours


def test_parse_errors_name_line_and_triple():
    bad = "semigroup s\nelements a b\ntable\na a\nb a\nend\n"
    with pytest.raises(ParseError) as err:
        workspace.parse(bad)
    assert "associativity fails at (" in str(err.value)

    with pytest.raises(DuplicateName):
        workspace.parse("group g\nelements e\ntable\ne\nend\n"
                        "group g\nelements e\ntable\ne\nend\n")

    with pytest.raises(UnresolvedReference):
        workspace.parse("rms r\ngroup nope\nI 1\nL 1\nmatrix\nx\nend\n")

    with pytest.raises(ParseError):
        workspace.parse("group g\nelements e\ntable\n")


# -- commands ------------------------------------------------------------


def test_multiply_command(capsys, sample_file):
    code, out = run_cli(capsys, "-f", sample_file, "multiply", "S2", "1:0:2", "2:0:1")
    assert code == 0 and out.strip() == "1:1:1"


def test_homogeneous_exit_codes(capsys, sample_file):
    code, out = run_cli(capsys, "-f", sample_file, "homogeneous", "S2",
                        "--method", "brute")
    assert code == 0 and out.strip() == "true"
    code, out = run_cli(capsys, "-f", sample_file, "isomorphic", "S2", "Z3")
    assert code == 1 and out.strip() == "false"


def test_classify_command(capsys, sample_file):
    code, out = run_cli(capsys, "-f", sample_file, "classify", "S4")
    assert code == 0 and out.strip() == "Homogeneous(case 4)"


def test_error_exit_code(capsys, sample_file):
    code = cli.main(["-f", sample_file, "coordinatize", "mono"])
    assert code == 2


def test_error_json_envelope(capsys, sample_file):
    code, out = run_cli(capsys, "-f", sample_file, "coordinatize", "mono", "--json")
    assert code == 2
    data = json.loads(out)
    assert data["schema_version"] == "1"
    assert data["error"]["type"] == "NotCompletelySimple"


def test_json_reports_validate(capsys, sample_file, tmp_path):
    report_dir = str(tmp_path / "report")
    invocations = {
        "multiply": ["multiply", "S2", "1:0:2", "2:0:1"],
        "normalize": ["normalize", "S2", "--row", "1", "--col", "1"],
        "egens": ["egens", "S2"],
        "green": ["green", "S4"],
        "coordinatize": ["coordinatize", "S2"],
        "automorphisms": ["automorphisms", "S2", "--method", "rees"],
        "isomorphic": ["isomorphic", "S2", "S2"],
        "homogeneous": ["homogeneous", "S2", "--method", "decompose"],
        "classify": ["classify", "S2"],
        "screen": ["screen", "S4"],
        "graph": ["graph", "S4", "--report-dir", report_dir],
        "graph-classify": ["graph-classify", "pair"],
        "age": ["age", "S2", "--max", "8"],
        "jep": ["jep", "S2", "Z2", "--within", "S4", "--max", "32"],
        "ap": ["ap", "Z2", "Z2", "Z2", "--within", "Z2", "--max", "2"],
        "amalgamate": ["amalgamate", "--group", "Z2", "--sub", "0,1",
                       "--sample", "3", "--max-index", "2", "--seed", "5"],
        "grow-generic": ["grow-generic", "--group", "Z2", "--sub", "0,1",
                         "--level", "1"],
        "sweep": ["sweep", "--max-group", "2", "--max-index", "2"],
    }
    for command, argv in invocations.items():
        code, data = run_json(capsys, "-f", sample_file, *argv)
        assert code in (0, 1), (command, data)
        jsonschema.validate(data, envelope(RESULT_SCHEMAS[command]))
        assert data["command"] == command


def test_report_dir_outputs(capsys, sample_file, tmp_path):
    report_dir = tmp_path / "out"
    code, data = run_json(capsys, "-f", sample_file, "sweep", "--max-group", "2",
                          "--max-index", "2", "--report-dir", str(report_dir))
    assert code == 0
    assert (report_dir / "sweep.csv").exists()
    assert (report_dir / "sweep.png").exists()
    header = (report_dir / "sweep.csv").read_text().splitlines()[0]
    assert header.split(",")[:3] == ["group", "cols", "rows"]

    code, data = run_json(capsys, "-f", sample_file, "graph", "S4",
                          "--report-dir", str(report_dir))
    assert code == 0
    assert (report_dir / "graph-S4.png").exists()
    assert (report_dir / "graph-S4.csv").exists()


def test_predicate_exit_matches_json_boolean(capsys, sample_file):
    code, data = run_json(capsys, "-f", sample_file, "homogeneous", "mono",
                          "--method", "brute")
    assert code == 0 and data["result"]["homogeneous"] is True
    code, data = run_json(capsys, "-f", sample_file, "screen", "S2")
    assert (code == 0) == data["result"]["pass"]


def test_grow_generic_seed_rms(capsys, sample_file):
    code, data = run_json(capsys, "-f", sample_file, "grow-generic", "--group",
                          "Z2", "--sub", "0,1", "--level", "1",
                          "--seed-rms", "S2")
    assert code == 0
    assert data["result"]["open_constraints"] == 0


def test_amalgamate_named_wings(capsys, sample_file):
    code, data = run_json(capsys, "-f", sample_file, "amalgamate", "S2", "S2",
                          "S2", "--group", "Z2", "--sub", "0,1")
    assert code == 0
    assert data["result"]["group_order"] == 2
