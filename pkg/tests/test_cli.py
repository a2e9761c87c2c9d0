"""Command-line interface tests: output shapes, exit codes, JSON canonicity."""

import json
import subprocess
import sys

import rootheight.identities as identities
from rootheight.cli import main
from rootheight.identities import IdentityReport


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


class TestInfo:
    def test_json_fields(self, capsys):
        code, out = run_cli(capsys, "info", "G", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["h"] == 6
        assert doc["exponents"] == [1, 5]
        assert doc["coxeter_charpoly"]["factorization"] == \
            "(q^6-1)(q-1)/((q^3-1)(q^2-1))"

    def test_rank_one(self, capsys):
        code, out = run_cli(capsys, "info", "A", "1", "--format", "json")
        assert code == 0
        assert json.loads(out)["b"] == [1]

    def test_largest_exceptional(self, capsys):
        code, out = run_cli(capsys, "info", "E", "8", "--format", "json")
        assert code == 0
        assert json.loads(out)["num_positive_roots"] == 120

    def test_lowercase_family_accepted(self, capsys):
        code, _ = run_cli(capsys, "info", "g", "2")
        assert code == 0

    def test_bad_rank_usage_error(self, capsys):
        assert run_cli(capsys, "info", "E", "9")[0] == 2

    def test_rank_limit(self, capsys):
        assert run_cli(capsys, "info", "A", "501")[0] == 2
        assert run_cli(capsys, "verify", "A", "99999", "--props", "prop2")[0] == 2


class TestVerify:
    def test_single_prop(self, capsys):
        code, out = run_cli(capsys, "verify", "G", "2", "--props", "prop15")
        assert code == 0
        assert "pass" in out

    def test_json_schema(self, capsys):
        code, out = run_cli(capsys, "verify", "A", "2", "--format", "json")
        assert code == 0
        docs = json.loads(out)
        assert docs[0]["system"] == "A2"
        for check in docs[0]["checks"]:
            assert set(check) == {"id", "verdict", "witness"}
            assert check["verdict"] == "pass"

    def test_json_roundtrip_is_byte_identical(self, capsys):
        _, out = run_cli(capsys, "verify", "B", "2", "--props",
                         "prop8,prop13", "--format", "json")
        redumped = json.dumps(json.loads(out), sort_keys=True,
                              separators=(",", ":")) + "\n"
        assert redumped == out
        assert out.endswith("\n")

    def test_unknown_prop_usage_error(self, capsys):
        assert run_cli(capsys, "verify", "G", "2", "--props", "prop99")[0] == 2

    def test_bad_selector_usage_error(self, capsys):
        assert run_cli(capsys, "verify", "Z", "1")[0] == 2
        assert run_cli(capsys, "verify", "A")[0] == 2

    def test_failure_exit_code(self, capsys, monkeypatch):
        def broken(rs):
            return IdentityReport("cohen", str(rs.id), "fail", "forced")

        monkeypatch.setattr(identities, "cohen_check", broken)
        code, out = run_cli(capsys, "verify", "A", "1", "--props", "cohen",
                            "--format", "json")
        assert code == 1
        assert json.loads(out)[0]["checks"][0]["witness"] == "forced"

    def test_jobs_flag(self, capsys):
        code, out = run_cli(capsys, "verify", "A", "2", "--props",
                            "prop8,cohen", "--jobs", "2", "--format", "json")
        assert code == 0
        assert json.loads(out)[0]["system"] == "A2"

    def test_bfs_cap_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ROOTHEIGHT_BFS_CAP", "1")
        code, _ = run_cli(capsys, "verify", "A", "2", "--props", "eq5")
        assert code == 0  # cap of 1 skips enumeration; products still checked


class TestMunagi:
    def test_cohen_constants(self, capsys):
        code, out = run_cli(capsys, "munagi", "0,1,0,0,0,1", "--h", "6",
                            "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert {d: p["coeffs"] for d, p in doc["parts"].items()} == {
            "1": ["1"], "2": ["-1"], "3": ["-1"], "6": ["1"]}

    def test_trivial_period(self, capsys):
        code, out = run_cli(capsys, "munagi", "1", "--h", "1")
        assert code == 0
        assert out.strip() == "H_1 = 1"

    def test_non_cohen_has_linear_part(self, capsys):
        code, out = run_cli(capsys, "munagi", "0,1,0,0", "--h", "4",
                            "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert any(len(p["coeffs"]) > 1 for p in doc["parts"].values())

    def test_rational_coefficients(self, capsys):
        code, out = run_cli(capsys, "munagi", "1/2,-3/4", "--h", "2",
                            "--roundtrip", "--format", "json")
        assert code == 0
        assert json.loads(out)["roundtrip"] == "ok"

    def test_length_violation(self, capsys):
        assert run_cli(capsys, "munagi", "1,2,3", "--h", "2")[0] == 2

    def test_bad_coefficient(self, capsys):
        assert run_cli(capsys, "munagi", "1,zebra", "--h", "2")[0] == 2


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "rootheight", "info", "A", "1", "--format",
         "json"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["h"] == 2


def test_usage_error_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "rootheight", "info", "A"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 2
