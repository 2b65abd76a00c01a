"""
Unit tests for the algebra and space file formats
Run with: python -m pytest tests/test_fileformat.py -v
"""
import os
import sys
import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.builtins import BUILTIN_NAMES, builtin  # noqa: E402
from core.exceptions import ParseError  # noqa: E402
from core.fileformat import emit, parse_text  # noqa: E402


S3_TEXT = """\
# the three-element Sugihara chain
algebra S3 profile Sugihara
elements -1 0 1
covers -1<0 0<1
unit 0
neg 1 0 -1
mult -1: -1 -1 -1
mult 0: -1 0 1
mult 1: -1 1 1
arrow -1: 1 1 1
arrow 0: -1 0 1
arrow 1: -1 -1 1
"""


def _functor_outputs():
    from core import esakia, natural_duality, reflection, twist

    return [
        esakia.dual_space(builtin("E_neg")),
        natural_duality.dw_dual(builtin("E")),
        natural_duality.dw_dual(builtin("E_bot")),
        reflection.urquhart_dual(builtin("S3")),
        twist.bowtie_up(builtin("E_neg")),
    ]


class TestRoundTrip:
    """Test that emitted files parse back to the same structure"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_builtins(self, name):
        A = builtin(name)
        back = parse_text(emit(A))
        assert back.name == A.name
        assert back.same_structure(A)

    def test_functor_outputs(self):
        for obj in _functor_outputs():
            back = parse_text(emit(obj))
            assert back.same_structure(obj), obj.name

    def test_emit_is_stable(self):
        text = emit(builtin("E"))
        assert emit(parse_text(text)) == text

    def test_handwritten_s3(self):
        A = parse_text(S3_TEXT)
        assert A.same_structure(builtin("S3"))

    def test_read_and_write(self, tmp_path):
        from core.fileformat import read_structure, write_structure

        path = tmp_path / "e.txt"
        write_structure(builtin("E"), path)
        assert read_structure(path).same_structure(builtin("E"))

    def test_missing_file(self, tmp_path):
        from core.fileformat import read_structure

        with pytest.raises(OSError):
            read_structure(tmp_path / "absent.txt")


class TestParseErrors:
    """Test error reporting with line numbers"""

    @pytest.mark.parametrize("text,line_no", [
        ("algebra X profile nope\n", 1),
        ("algebra X profile Sugihara\nelements a b\ncovers a<c\n", 3),
        ("algebra X profile Sugihara\nelements a b\ncovers a-b\n", 3),
        ("algebra X profile Sugihara\nelements a b\nneg a\n", 3),
        ("algebra X profile Sugihara\nunit a\n", 2),
        ("algebra X profile Sugihara\nelements a\nelements b\n", 3),
        ("algebra X profile Sugihara\nelements a\nwobble a\n", 3),
        ("algebra X profile Sugihara\nelements a\nmult a a\n", 3),
        ("space Y flavor bogus\n", 1),
        ("space Y flavor bRS\npoints x y\ntop x y\n", 3),
        ("space Y flavor Kleene\npoints x y\nQ x-y\n", 3),
        ("space Y flavor relevant\npoints x\nR x x\n", 3),
        ("frob x\n", 1),
    ])
    def test_line_numbers(self, text, line_no):
        with pytest.raises(ParseError) as info:
            parse_text(text)
        assert info.value.line_no == line_no
        assert f"line {line_no}" in info.value.user_message

    def test_comments_and_blank_lines_keep_numbering(self):
        with pytest.raises(ParseError) as info:
            parse_text("# header follows\n\nalgebra X profile nope\n")
        assert info.value.line_no == 3

    def test_empty_file(self):
        with pytest.raises(ParseError, match="empty file") as info:
            parse_text("# nothing here\n")
        assert info.value.line_no is None

    def test_cycle_becomes_parse_error(self):
        with pytest.raises(ParseError, match="cycle"):
            parse_text("algebra X profile CRL\nelements a b\ncovers a<b b<a\n")

    def test_missing_table_row(self):
        text = "\n".join(S3_TEXT.splitlines()[:-1]) + "\n"
        with pytest.raises(ParseError, match="arrow table lacks the row for '1'"):
            parse_text(text)

    def test_relevant_needs_prime(self):
        with pytest.raises(ParseError, match="prime"):
            parse_text("space Y flavor relevant\npoints x\n")


class TestNoValidationOnParse:
    """Test that parsing leaves axiom checks to the caller"""

    def test_broken_tables_parse(self):
        from core.algebra import validate

        broken = S3_TEXT.replace("mult 0: -1 0 1", "mult 0: -1 0 0")
        A = parse_text(broken)
        assert not validate(A).ok

    def test_invalid_space_parses(self):
        from core.spaces import validate_space

        X = parse_text("space Y flavor bRS\npoints x y\ncovers x<y\ndesignated y\ntop y\n")
        assert not validate_space(X).ok


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
