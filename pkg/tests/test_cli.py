"""
Unit tests for the rmwb command line and the pipeline behind it
Run with: python -m pytest tests/test_cli.py -v
"""
import os
import sys
import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.builtins import builtin  # noqa: E402
from core.fileformat import write_structure  # noqa: E402
from main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main  # noqa: E402


E_CONE_DOT = """\
digraph "E-" {
\trankdir=BT;
\tnode [shape=circle];
\t"0" [label="(-2,-2)"];
\t"1" [label="(-1,-1)"];
\t"2" [label="(-1,1)"];
\t"3" [label="(0,-1)"];
\t"4" [label="(0,1)"];
\t"0" -> "1";
\t"1" -> "2";
\t"1" -> "3";
\t"2" -> "4";
\t"3" -> "4";
}
"""


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch):
    monkeypatch.setenv("RMWB_LOG_FILE", "0")
    monkeypatch.delenv("RMWB_MAX_CARRIER", raising=False)
    monkeypatch.delenv("RMWB_LOG_LEVEL", raising=False)


@pytest.fixture
def e_file(tmp_path):
    path = tmp_path / "E.txt"
    write_structure(builtin("E"), path)
    return path


class TestCommands:
    """Test subcommands and their exit codes"""

    def test_builtin_list(self, capsys):
        assert main(["builtin", "--list"]) == EXIT_OK
        names = capsys.readouterr().out.split()
        assert "E_neg" in names and "S8" in names

    def test_builtin_to_stdout_parses(self, capsys):
        from core.fileformat import parse_text

        assert main(["builtin", "S4"]) == EXIT_OK
        assert parse_text(capsys.readouterr().out).same_structure(builtin("S4"))

    def test_unknown_builtin(self, capsys):
        assert main(["builtin", "S42"]) == EXIT_INPUT
        assert "S42" in capsys.readouterr().err

    def test_validate_ok(self, e_file, capsys):
        assert main(["validate", str(e_file)]) == EXIT_OK
        assert capsys.readouterr().out.strip().endswith("E: valid")

    def test_validate_broken(self, tmp_path, capsys):
        path = tmp_path / "broken.txt"
        path.write_text("space Y flavor bRS\npoints x y\ncovers x<y\ndesignated y\ntop y\n", encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_FAILED
        assert "invalid, first failure FAIL" in capsys.readouterr().out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("algebra X profile nope\n", encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_INPUT
        assert "line 1" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "absent.txt")]) == EXIT_INPUT
        assert "Cannot access" in capsys.readouterr().err

    def test_functor_then_render_golden(self, e_file, tmp_path):
        cone = tmp_path / "cone.txt"
        dot = tmp_path / "cone.dot"
        assert main(["functor", "--functor", "neg-cone", str(e_file), "--out", str(cone)]) == EXIT_OK
        assert main(["render", str(cone), "--out", str(dot)]) == EXIT_OK
        assert dot.read_text(encoding="utf-8") == E_CONE_DOT

    def test_functor_wrong_input(self, tmp_path, capsys):
        path = tmp_path / "eneg.txt"
        write_structure(builtin("E_neg"), path)
        assert main(["functor", "--functor", "dw", str(path)]) == EXIT_INPUT

    def test_functor_bounded_flag(self, tmp_path, capsys):
        from core.fileformat import parse_text

        path = tmp_path / "s3.txt"
        write_structure(builtin("S3"), path)
        assert main(["functor", "--functor", "dw", "--bounded", str(path)]) == EXIT_OK
        X = parse_text(capsys.readouterr().out)
        assert X.top is None

    def test_roundtrip(self, e_file, capsys):
        assert main(["roundtrip", str(e_file)]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("PASS") == 3
        assert "FAIL" not in out

    def test_iso(self, tmp_path, capsys):
        first, second = tmp_path / "a.txt", tmp_path / "b.txt"
        write_structure(builtin("S4"), first)
        write_structure(builtin("S5"), second)
        assert main(["iso", str(first), str(first)]) == EXIT_OK
        assert "↦" in capsys.readouterr().out
        assert main(["iso", str(first), str(second)]) == EXIT_FAILED
        assert capsys.readouterr().out.strip() == "not isomorphic"

    def test_render_relevant_legend(self, tmp_path, capsys):
        from core.reflection import urquhart_dual

        path = tmp_path / "y.txt"
        write_structure(urquhart_dual(builtin("S2")), path)
        assert main(["render", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert '\tlegend [shape=note, label="R(^1,^1,^1)\\l"];' in out
        assert 'peripheries=2' in out

    def test_sweep(self, capsys):
        assert main(["sweep", "--max-size", "4"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        rows = lines[:-1]
        assert len(rows) == 10
        counts = [sum(f"size={k} " in row for row in rows) for k in range(1, 5)]
        assert counts == [1, 2, 2, 5]
        assert lines[-1] == "10 bRS-algebras, 0 failures"

    def test_sweep_default_from_settings(self, mocker, capsys):
        from core import config

        mocker.patch.object(config, "load_settings", return_value={"sweep_max_size": 2})
        assert main(["sweep"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "3 bRS-algebras, 0 failures"

    def test_verbose_sets_level(self, mocker):
        import main as cli

        setup = mocker.patch.object(cli, "setup_logging")
        cli.main(["-vv", "builtin", "--list"])
        setup.assert_called_once_with(level=10)

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert "rmwb" in capsys.readouterr().out


class TestPipeline:
    """Test functor dispatch and round trips without the CLI"""

    def test_unknown_functor(self):
        from core.exceptions import SignatureError
        from core.pipeline import apply_functor

        with pytest.raises(SignatureError):
            apply_functor("dual", builtin("E"))

    def test_invalid_input_rejected(self):
        from core.exceptions import ValidationFailed
        from core.pipeline import apply_functor

        S3 = builtin("S3")
        arrow = S3.arrow.copy()
        arrow[2, 0] = 1
        with pytest.raises(ValidationFailed):
            apply_functor("dw", S3.evolve(arrow=arrow))

    def test_generalized_flag(self):
        from core.pipeline import apply_functor
        from core.spaces import Flavor

        G = apply_functor("twist-down", builtin("E_bot"))
        assert apply_functor("esakia", G).flavor is Flavor.BG
        assert apply_functor("esakia", G, generalized=True).flavor is Flavor.BRS

    @pytest.mark.parametrize("functor,name", [
        (None, "E_neg"),
        (None, "S5"),
        ("esakia", "E_neg"),
        ("dw", "E_bot"),
        ("urquhart", "S3"),
    ])
    def test_roundtrips_pass(self, functor, name):
        from core.pipeline import apply_functor, roundtrips

        obj = builtin(name)
        if functor:
            obj = apply_functor(functor, obj)
        trips = roundtrips(obj)
        assert trips
        assert all(t.ok for t in trips), [t.lines() for t in trips]

    def test_roundtrip_without_applicable_functor(self):
        from core.exceptions import SignatureError
        from core.pipeline import roundtrips

        with pytest.raises(SignatureError):
            roundtrips(builtin("L3"))

    def test_roundtrip_failure_line(self):
        from core.pipeline import RoundTrip

        trip = RoundTrip("A ≅ B", error="boom")
        assert not trip.ok
        assert trip.lines() == ["FAIL A ≅ B: boom"]

    def test_find_any_isomorphism_mixed_kinds(self):
        from core.esakia import dual_space
        from core.pipeline import find_any_isomorphism

        assert find_any_isomorphism(builtin("E_neg"), dual_space(builtin("E_neg"))) is None


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
