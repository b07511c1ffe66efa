import json
import subprocess
import sys

import pytest

from hopfcyc.cli import main, parse_element
from hopfcyc.errors import SchemaError, UnknownFixture
from hopfcyc.fixtures import FIXTURES, build_fixture, fixture_document, fixtures_emit
from hopfcyc.groups import sweedler_h4
from hopfcyc.serialize import dumps, from_document, load, to_document


@pytest.fixture(scope="module")
def fixdir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    fixtures_emit([], str(out))
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    text = capsys.readouterr().out
    return code, text


def run_json(capsys, *argv):
    code, text = run(capsys, *argv)
    return code, json.loads(text)


class TestSerialization:
    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_round_trip_is_byte_identical(self, name):
        doc = fixture_document(name)
        text = dumps(doc)
        again = dumps(to_document(from_document(json.loads(text))))
        assert again == text

    def test_emitted_files_load(self, fixdir):
        for name, (fname, _) in FIXTURES.items():
            obj = load(str(fixdir / fname))
            assert dumps(to_document(obj)) == (fixdir / fname).read_text()

    def test_schema_errors_name_the_problem(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SchemaError):
            load(str(bad))
        with pytest.raises(SchemaError):
            load(str(tmp_path / "missing.json"))
        with pytest.raises(SchemaError):
            from_document({"kind": "nonsense"})
        doc = fixture_document("sweedler-h4")
        doc["counit"] = doc["counit"][:2]
        with pytest.raises(SchemaError):
            from_document(doc)

    def test_unknown_fixture(self):
        with pytest.raises(UnknownFixture):
            build_fixture("nope")


class TestCommands:
    def test_verify_hopf(self, capsys, fixdir):
        code, doc = run_json(capsys, "verify", fixdir / "h4.json")
        assert code == 0 and doc["pass"] is True

    @pytest.mark.parametrize("fname", ["f1.json", "f2.json", "f3.json", "s3_z2.json",
                                       "worked_index.json", "worked_index_z2.json",
                                       "trivial.json"])
    def test_verify_every_fixture(self, capsys, fixdir, fname):
        code, doc = run_json(capsys, "verify", fixdir / fname)
        assert code == 0, doc

    def test_cohomology(self, capsys, fixdir):
        code, doc = run_json(capsys, "cohomology", fixdir / "f1.json", "--max-degree", "4")
        assert code == 0
        cyc = [r["dim"] for r in doc["results"]["cyclic"]]
        assert cyc == [1, 0, 1]
        assert [r["dim"] for r in doc["results"]["hochschild"]][:3] == [1, 0, 0]

    def test_cohomology_single_theory(self, capsys, fixdir):
        code, doc = run_json(capsys, "cohomology", fixdir / "f2.json", "--theory", "lambda")
        assert code == 0 and "lambda" in doc["results"]
        assert "cyclic" not in doc["results"] and "hochschild" not in doc["results"]

    def test_pair_with_twist(self, capsys, fixdir):
        code, doc = run_json(capsys, "pair", fixdir / "f3.json", "--rho", "e1", "--omega", "1")
        assert code == 0
        assert doc["results"]["pairings"]
        assert any(c["title"] == "twisted-square" for c in doc["checks"])

    def test_ktheory_semisimple(self, capsys, fixdir):
        code, doc = run_json(capsys, "ktheory", fixdir / "f2.json")
        assert code == 0
        assert doc["results"]["k0_crossed_product"]["rank"] == 1

    def test_ktheory_not_semisimple_exits_one(self, capsys, fixdir):
        code, doc = run_json(capsys, "ktheory", fixdir / "f3.json")
        assert code == 1 and doc["error"]["code"] == "not-semisimple"

    def test_index(self, capsys, fixdir):
        code, doc = run_json(capsys, "index", fixdir / "worked_index.json")
        assert code == 0 and doc["pass"]

    def test_homogeneous(self, capsys, fixdir):
        code, doc = run_json(capsys, "homogeneous", fixdir / "s3_z2.json", "--max-dim", "6")
        assert code == 0 and doc["pass"]

    def test_table_format(self, capsys, fixdir):
        code, text = run(capsys, "cohomology", fixdir / "f1.json", "--format", "table")
        assert code == 0 and text.startswith("command:") and "pass: True" in text

    def test_timings_only_on_request(self, capsys, fixdir):
        _, doc = run_json(capsys, "verify", fixdir / "f1.json")
        assert "timings" not in doc
        _, doc = run_json(capsys, "verify", fixdir / "f1.json", "--timings")
        assert set(doc["timings"]) == {"load", "verify"}

    def test_fixture_listing(self, capsys):
        code, doc = run_json(capsys, "fixtures", "--list")
        assert code == 0 and doc == sorted(FIXTURES)


class TestExitCodes:
    def test_missing_file(self, capsys, tmp_path):
        code, doc = run_json(capsys, "verify", tmp_path / "nothing.json")
        assert code == 2 and doc["error"]["code"] == "schema-error"

    def test_wrong_kind_for_command(self, capsys, fixdir):
        code, doc = run_json(capsys, "index", fixdir / "f2.json")
        assert code == 2

    def test_budget(self, capsys, fixdir):
        code, doc = run_json(capsys, "cohomology", fixdir / "f3.json", "--budget", "10")
        assert code == 2 and doc["error"]["code"] == "size-budget-exceeded"
        assert "guidance" in doc["error"]

    def test_bad_arguments(self, capsys):
        assert main(["frobnicate"]) == 2
        assert main(["verify", "x.json", "--max-degree", "-1"]) == 2
        capsys.readouterr()

    def test_unknown_fixture_name(self, capsys, tmp_path):
        assert main(["fixtures", "nope", "--out", str(tmp_path)]) == 2
        capsys.readouterr()


def test_output_is_deterministic(capsys, fixdir):
    outs = [run(capsys, "pair", fixdir / "f2.json", "--rho", "e1")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point(fixdir):
    proc = subprocess.run([sys.executable, "-m", "hopfcyc", "verify", str(fixdir / "f1.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True


def test_parse_element():
    h = sweedler_h4()
    assert parse_element("1", h) == {0: 1}
    assert parse_element("e2", h) == {2: 1}
    assert parse_element("0,1/2,0,0", h) == {1: h.field("1/2")}
    with pytest.raises(SchemaError):
        parse_element("e9", h)
