import io
import json

import pytest

from kfermion.cli import VerifyDispatcher, build_interpreter
from kfermion.interpreter import DispatcherBase
from kfermion.exact import NSigmaPoly
from kfermion.exceptions import CommandSyntaxError, DispatcherError, EmptyDispatchError
from kfermion.interpreter.interpreter import EXIT_FAILURE, EXIT_SUCCESS, EXIT_USAGE, Instruction, _split_global_options
from kfermion.ordering import bell
from kfermion.report import Report


def run(*argv):
    out = io.StringIO()
    code = build_interpreter().run(list(argv), stdout=out)
    return code, out.getvalue()


def test_spectrum_text():
    code, out = run("spectrum", "--kappa", "4/5", "--operator", "f+f-", "--levels", "6", "--format", "text")
    assert code == EXIT_SUCCESS
    assert out == "0, 1, 8/5, 13/5, 16/5, 21/5\n"


def test_spectrum_json():
    code, out = run("spectrum", "--kappa", "4/5", "--operator", "f-f+", "--levels", "3", "--json")
    assert code == EXIT_SUCCESS
    payload = json.loads(out)
    assert payload == {"kappa": "4/5", "operator": "f-f+", "eigenvalues": ["1", "8/5", "13/5"], "gaps": ["3/5", "1"]}


def test_spectrum_csv():
    code, out = run("--format", "csv", "spectrum", "--kappa", "1/3", "--operator", "f+f-", "--levels", "3")
    assert code == EXIT_SUCCESS
    assert out.splitlines() == ["n,eigenvalue", "0,0", "1,1", "2,2/3"]


def test_bell_at_kappa_zero():
    code, out = run("bell", "--max-r", "4", "--kappa", "0", "--format", "text")
    assert code == EXIT_SUCCESS
    assert out.splitlines() == ["B_1 = 1", "B_2 = 0", "B_3 = -1", "B_4 = -1"]


def test_bell_json_uses_polynomial_schema():
    code, out = run("bell", "--max-r", "3", "--json")
    assert code == EXIT_SUCCESS
    values = json.loads(out)["details"]["bell"]
    assert set(values["2"]) == {"even", "sigma"}
    for r in (1, 2, 3):
        assert NSigmaPoly.from_json(values[str(r)]) == bell(r)


def test_stirling_csv():
    code, out = run("stirling", "--r", "2", "--format", "csv")
    assert code == EXIT_SUCCESS
    assert out.splitlines() == ["k,S", "1,2*N*kappa + 1", "2,-1"]


def test_audit_json():
    code, out = run("audit")
    assert code == EXIT_SUCCESS
    payload = json.loads(out)
    assert payload["passed"] is True
    verdicts = {e["label"]: e["verdict"] for e in payload["entries"]}
    assert verdicts["S(2,2)"] == "agree"
    assert verdicts["S(3,3)"] == "disagree"


def test_coherent_json():
    code, out = run("coherent", "--kappa", "0.5", "--z", "0.3+0.4j")
    assert code == EXIT_SUCCESS
    payload = json.loads(out)
    assert payload["kappa"] == "1/2"
    assert payload["residual"] <= 1e-10
    assert len(payload["coefficients"]) == payload["D"]


def test_bargmann_check_at_kappa_zero():
    code, _ = run("bargmann-check", "--max-degree", "10", "--kappa", "0")
    assert code == EXIT_SUCCESS


def test_calogero_small_ladder():
    code, out = run(
        "calogero", "--potential", "v0", "--kappa", "1/3", "--levels", "2", "--grids", "400,800,1600", "--format", "csv"
    )
    assert code == EXIT_SUCCESS
    assert out.splitlines()[0] == "family,n,extrapolated,target,relative_error"


def test_verify_suite():
    code, out = run("verify", "--suite", "algebra")
    assert code == EXIT_SUCCESS
    payload = json.loads(out)
    assert payload["name"] == "algebra"
    assert payload["passed"] is True


def test_output_file(tmp_path):
    target = tmp_path / "spectrum.json"
    code, out = run("spectrum", "--kappa", "1", "--operator", "f+f-", "--levels", "2", "--output", str(target))
    assert code == EXIT_SUCCESS
    assert out == ""
    assert json.loads(target.read_text())["eigenvalues"] == ["0", "1"]


def test_output_is_deterministic():
    argv = ("stirling", "--r", "3", "--kappa", "1/2")
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize("argv", [
    (),
    ("nope",),
    ("spectrum", "--kappa", "-1", "--operator", "f+f-", "--levels", "3"),
    ("spectrum", "--kappa", "1", "--operator", "f+f+", "--levels", "3"),
    ("bell", "--max-r", "4", "--kappa", "0.5"),
    ("stirling", "--kappa", "1/2"),
    ("stirling", "--r", "2", "--s", "1"),
    ("coherent", "--kappa", "0", "--z", "1"),
    ("verify", "--suite", "bogus"),
    ("audit", "--format", "xml"),
    ("audit", "--max-r", "9"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_failed_check_exits_one():
    class Failing(Instruction):
        @staticmethod
        def parse_arguments(args):
            return []

        @staticmethod
        def syntax():
            return ""

        def execute(self):
            return Report("failing", False)

    interpreter = build_interpreter()
    interpreter.register("fail", Failing)
    assert interpreter.run(["fail"], stdout=io.StringIO()) == EXIT_FAILURE


def test_summary_lists_commands():
    code, out = run("summary", "--format", "text")
    assert code == EXIT_SUCCESS
    assert "verify: [--suite all|" in out
    assert "--parallel" in out


def test_global_options():
    config = _split_global_options(["-vv", "audit", "--output", "x.json", "--parallel", "--format", "text"])
    assert config.keyword == "audit"
    assert config.tokens == []
    assert config.format == "text"
    assert config.output == "x.json"
    assert config.parallel
    assert config.verbosity == 2
    with pytest.raises(CommandSyntaxError):
        _split_global_options(["--output"])


def test_verify_dispatcher_branches():
    assert VerifyDispatcher("ordering").target.name == "ordering"
    assert VerifyDispatcher("all").target.name == "all"
    with pytest.raises(DispatcherError):
        VerifyDispatcher("bogus")


def test_dispatcher_without_branches():
    class Bare(DispatcherBase):
        pass

    with pytest.raises(EmptyDispatchError):
        Bare("anything")


def test_unknown_suite_is_usage_error():
    code, out = run("verify", "--suite", "bogus")
    assert code == EXIT_USAGE
    assert out == ""


def test_unwritable_output_is_usage_error(tmp_path):
    target = tmp_path / "missing" / "report.json"
    code, _ = run("bell", "--max-r", "2", "--output", str(target))
    assert code == EXIT_USAGE
    assert not target.exists()
