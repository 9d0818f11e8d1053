import json

from dshuffle.cli import emit, golden_corpus, run
from dshuffle.ratfun import RationalFunction, parse
from dshuffle.gens import psi_odd


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_psi_text(self, capsys):
        code, out, _ = invoke(capsys, "gen", "psi", "--weight", "3",
                              "--depth", "2")
        assert code == 0
        assert "depth 1: (1*x1^2)" in out

    def test_psi_json_round_trip(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "gen", "psi",
                              "--weight", "-1", "--depth", "3")
        assert code == 0
        from dshuffle.series import DepthSeries
        series = DepthSeries.from_json_dict(json.loads(out))
        from dshuffle.gens import psi_minus_one
        assert series.equals(psi_minus_one(3))

    def test_vines(self, capsys):
        code, out, _ = invoke(capsys, "gen", "vine", "--n", "3", "--list")
        assert code == 0
        assert "g111" in out and "g3" in out

    def test_determinism(self, capsys):
        _, out1, _ = invoke(capsys, "gen", "sd", "--d", "3")
        _, out2, _ = invoke(capsys, "gen", "sd", "--d", "3")
        assert out1 == out2


class TestVerify:
    def test_psi3_passes(self, capsys):
        code, out, _ = invoke(capsys, "verify", "--gen", "psi3",
                              "--max-depth", "3")
        assert code == 0
        assert "all 4 checks passed" in out

    def test_json_reports(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "verify",
                              "--gen", "psi0", "--max-depth", "3")
        assert code == 0
        reports = json.loads(out.splitlines()[0])
        assert all(r["passed"] for r in reports)
        assert {tuple(r["indices"]) for r in reports} == {(1, 1), (1, 2)}

    def test_failing_element_exit_code(self, capsys):
        code, out, _ = invoke(capsys, "verify", "--gen", "mono:3",
                              "--max-depth", "2")
        assert code == 1
        assert "FAIL" in out


class TestBracketRes:
    def test_bracket(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "bracket",
                              "--f", "sd:1", "--g", "sd:2",
                              "--max-depth", "3")
        assert code == 0
        from dshuffle.series import DepthSeries
        series = DepthSeries.from_json_dict(json.loads(out))
        from dshuffle.gens import s_d
        assert series.component(3).equals(s_d(3))

    def test_res(self, capsys, tmp_path):
        path = tmp_path / "element.json"
        path.write_text(json.dumps(psi_odd(3, 3).to_json_dict()))
        code, out, _ = invoke(capsys, "res", "--element", str(path),
                              "--depth", "3", "--iterate", "1")
        assert code == 0
        assert out.strip()

    def test_res_missing_file(self, capsys):
        code, _, err = invoke(capsys, "res", "--element", "/nonexistent",
                              "--depth", "2")
        assert code == 2
        assert "error" in err


class TestDecompose:
    def test_sigma5(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "decompose",
                              "--weight", "5", "--max-depth", "4")
        assert code == 0
        data = json.loads(out)
        assert {"word": [3, 3, -1], "coeff": "-1/5"} in data["terms"]
        assert {"word": [-1, -1, 7], "coeff": "-1/60"} in data["terms"]

    def test_sigma11_constrained(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "decompose",
                              "--weight", "11", "--max-depth", "4",
                              "--require-minus-one")
        assert code == 0
        data = json.loads(out)
        assert data["kernel_dim"] == 1
        assert {"word": [9, 3, -1], "coeff": "-241/2112"} in data["terms"]


class TestDims:
    def test_pe_table(self, capsys):
        code, out, _ = invoke(capsys, "--format", "json", "dims", "--space",
                              "Pe", "--max-weight", "16",
                              "--min-weight", "8")
        assert code == 0
        dims = json.loads(out)["dims"]
        assert dims["12"] == 1 and dims["14"] == 0 and dims["16"] == 1

    def test_c2_table(self, capsys):
        code, out, _ = invoke(capsys, "dims", "--space", "C2",
                              "--max-weight", "5")
        assert code == 0
        assert "weight  dim(C2)" in out


class TestCoeff:
    def test_sigma9_word(self, capsys):
        code, out, _ = invoke(capsys, "coeff", "--weight", "9",
                              "--word", "5,2,2")
        assert code == 0
        assert out.strip() == "-3319/72"


class TestParsing:
    def test_usage_error_exit_2(self, capsys):
        assert run(["bogus"]) == 2

    def test_emit_rational_function(self):
        f = parse("1/(x1*(x2-x1))")
        assert emit(f, "text") == f.text()
        blob = emit(f, "json")
        assert RationalFunction.from_json(blob).equals(f)


class TestGoldenCorpus:
    def test_all_replay(self):
        results = [(name, fn()) for name, fn in golden_corpus()]
        failed = [name for name, ok in results if not ok]
        assert failed == []
