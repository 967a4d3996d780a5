import io
import json
import subprocess
import sys

import jsonschema
import pytest

from pseudofix import formats as fmt
from pseudofix import groups
from pseudofix.cli import run

# (argv, expected exit code)
CORPUS = [
    (["classify", "@a5"], 0),
    (["classify", "@s4"], 0),
    (["classify", "@z6"], 0),
    (["classify", "@z2"], 3),
    (["degree-zero", "@s3"], 0),
    (["degree-zero", "@a5"], 0),
    (["complex", "fixed", "@square_cover", "--subgroup", "0,1"], 0),
    (["complex", "fixed", "@conjugation_circle"], 0),
    (["complex", "homology", "@projective_plane", "--primes", "2,3"], 0),
    (["complex", "homology", "@reflected_sphere", "--subgroup", "0,1"], 0),
    (["complex", "validate", "@disk2"], 0),
    (["rebalance", "--profile", "@disk_profile", "--modulus", "2"], 0),
    (["rebalance", "--profile", "@disk_profile", "--modulus", "3"], 3),
    (["check", "smith", "@antipodal_circle", "@conjugation_circle"], 1),
    (["check", "smith", "@square_cover", "@square_cover"], 0),
    (["check", "verdict", "--deficits", "@zero", "--n-g", "0"], 0),
    (["check", "verdict", "--deficits", "@conjugation_deficits", "--cover", "@square_cover"], 1),
    (["check", "verdict", "--deficits", "@conjugation_zero", "--cover", "@square_cover"], 0),
    (["check", "verdict", "--deficits", "@conjugation_deficits", "--n-g", "1"], 0),
    (["check", "verdict", "--deficits", "@conjugation_deficits"], 2),
    (["check", "verdict", "--deficits", "@conjugation_deficits", "--cover", "@theta_z6", "--p-subgroup", "0,3"], 2),
    (["check", "cyclic", "--cover", "@square_cover", "--fixed", "@square_fixed"], 0),
    (["check", "compwise", "--cover", "@theta_z6", "--p-subgroup", "0,3", "--fixed", "@theta_fixed"], 0),
    (["trace", "rank", "--cover", "@square_cover"], 0),
    (["catalog", "list"], 0),
    (["catalog", "export", "s3"], 0),
    (["catalog", "export", "square_cover"], 0),
    (["catalog", "export", "nothing"], 3),
]


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def _schema_for(report):
    name = report["schema"].split(".", 1)[1].rsplit("/", 1)[0]
    return fmt.SCHEMAS[name]


@pytest.mark.parametrize("argv,code", CORPUS, ids=lambda x: " ".join(x) if isinstance(x, list) else str(x))
def test_reports_match_schema_and_exit_code(argv, code):
    got, text = invoke(argv)
    assert got == code
    report = json.loads(text)
    jsonschema.validate(report, _schema_for(report))
    assert ("error" in report) == (code >= 3)


@pytest.mark.parametrize("argv,code", CORPUS[:12], ids=str)
def test_runs_are_byte_identical(argv, code):
    assert invoke(argv) == invoke(argv)
    assert invoke(argv + ["--compact"]) == invoke(argv + ["--compact"])


def test_compact_flag_before_and_after_the_verb():
    before = invoke(["--compact", "classify", "@a5"])
    after = invoke(["classify", "@a5", "--compact"])
    assert before == after
    assert "\n" not in before[1].rstrip("\n")


def test_reference_invocations():
    code, text = invoke(["classify", "@a5"])
    assert code == 0 and json.loads(text)["tag"] == "One"
    code, text = invoke(["degree-zero", "@s3"])
    assert code == 0 and json.loads(text)["check"] == 0
    code, _ = invoke(["check", "verdict", "--deficits", "@zero", "--n-g", "0"])
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["classify", "@a5", "--bogus"],
    ["classify"],
    ["frobnicate"],
    [],
    ["check", "verdict", "--deficits", "@zero", "--n-g", "-1"],
    ["classify", "@a5", "--order-cap", "0"],
    ["classify", "/does/not/exist.json"],
    ["check", "verdict", "--deficits", "@zero", "--n-g", "2", "--group", "@z6"],
    ["check", "verdict", "--deficits", "@zero", "--cover", "@square_cover"],
    ["check", "verdict", "--deficits", "@zero", "--p-subgroup", "0"],
])
def test_bad_input_exits_with_an_error_object(argv):
    code, text = invoke(argv)
    assert code >= 3
    report = json.loads(text)
    jsonschema.validate(report, fmt.SCHEMAS["error"])


def test_order_cap_is_enforced_and_restored():
    saved = groups.ORDER_CAP
    code, text = invoke(["classify", "@a5", "--order-cap", "10"])
    assert code == 3
    assert groups.ORDER_CAP == saved
    assert invoke(["classify", "@a5"])[0] == 0


def test_malformed_json_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text("{not json")
    assert invoke(["classify", str(p)])[0] == 3
    p.write_text(json.dumps({"kind": "table", "mul": [[0, 1], [1, 1]]}))
    assert invoke(["classify", str(p)])[0] == 3


def test_exported_documents_load_back(tmp_path):
    for name in ("a5", "square_cover", "conjugation_circle"):
        _, text = invoke(["catalog", "export", name])
        doc = json.loads(text)["document"]
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        verb = ["classify"] if json.loads(text)["kind"] == "group" else ["complex", "validate"]
        code, _ = invoke(verb + [str(path)])
        assert code == 0


def test_schema_flag():
    code, text = invoke(["--schema"])
    assert code == 0
    schemas = json.loads(text)
    assert set(schemas) == set(fmt.SCHEMAS)
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)
    code, text = invoke(["--schema", "check.verdict"])
    assert code == 0 and json.loads(text) == fmt.SCHEMAS["check.verdict"]
    assert invoke(["--schema", "nope"])[0] == 3


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pseudofix.cli", "check", "verdict", "--deficits", "@zero", "--n-g", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["conclusion"] == "SufficientPass"
