from __future__ import annotations

import itertools

import pytest

from conftest import FIXTURES
from xdt.core import Ident, Program, Severity
from xdt.dsl_parser import parse_program
from xdt.validator import has_errors, unextended_constructors, validate_program

BAD = FIXTURES / "bad"

EXPECTED_CODES = {
    "bad_duplicate_name.xdt": "E001",
    "bad_unknown_base.xdt": "E002",
    "bad_parammap.xdt": "E003",
    "bad_unknown_ctor.xdt": "E004",
    "bad_duplicate_clause.xdt": "E005",
    "bad_oplus.xdt": "E006",
    "bad_arity.xdt": "E007",
    "bad_not_covered.xdt": "E008",
}


def _load(name: str) -> Program:
    return parse_program((BAD / name).read_text(encoding="utf-8"))


def test_paper_fixtures_validate_clean(growlang_program, typx_program):
    assert validate_program(growlang_program) == []
    assert validate_program(typx_program) == []


def test_all_six_extensions_present(growlang_program):
    names = {e.name.text for e in growlang_program.extensions}
    assert names == {"ExpDot", "TypDot", "DecDot", "ExpRing", "TypRing", "DecRing"}


@pytest.mark.parametrize("fixture,code", sorted(EXPECTED_CODES.items()))
def test_bad_fixture_produces_exactly_one_code(fixture, code):
    diagnostics = validate_program(_load(fixture))
    assert [d.code for d in diagnostics] == [code], [str(d) for d in diagnostics]


def test_bad_parammap_matches_spec_example():
    # baseArgs containing a variable outside the parameter list is E003
    diagnostics = validate_program(_load("bad_parammap.xdt"))
    assert has_errors(diagnostics)
    assert diagnostics[0].code == "E003"


def test_two_clauses_on_one_constructor_is_e005():
    diagnostics = validate_program(_load("bad_duplicate_clause.xdt"))
    assert [d.code for d in diagnostics] == ["E005"]


def test_not_covered_suppressed_by_partial_flag():
    program = _load("bad_not_covered.xdt")
    assert [d.code for d in validate_program(program)] == ["E008"]
    assert validate_program(program, assume_partial=True) == []


def test_partial_keyword_suppresses_coverage_check():
    program = parse_program(
        "extensible data T = A | B\n"
        "partial data TD extends T = AD extends A by empty"
    )
    assert validate_program(program) == []


def test_unused_parameter_warns():
    program = parse_program("extensible data T a = MkT Integer")
    diagnostics = validate_program(program)
    assert [d.code for d in diagnostics] == ["W001"]
    assert diagnostics[0].severity is Severity.WARNING
    assert not has_errors(diagnostics)


def test_new_constructor_colliding_with_base_is_rejected():
    program = parse_program(
        "extensible data T = A\ndata TD extends T = A Integer | AD extends A by empty"
    )
    assert "E001" in [d.code for d in validate_program(program)]


def test_collision_with_generated_payload_name():
    # None_A is reserved for the empty clause over A
    program = parse_program(
        "extensible data T = A\n"
        "data TD extends T = None_A Integer | AD extends A by empty"
    )
    assert "E001" in [d.code for d in validate_program(program)]


def test_validator_is_idempotent(growlang_program):
    first = validate_program(growlang_program)
    second = validate_program(growlang_program)
    assert first == second == []


def test_validator_order_insensitive_findings():
    text = (
        "extensible data T = A | B\n"
        "data TD extends T = AD extends A by empty\n"
        "data UD extends Missing = X extends A by empty\n"
    )
    program = parse_program(text)
    base_findings = {(d.severity, d.code, d.message) for d in validate_program(program)}
    for perm in itertools.permutations(program.extensions):
        permuted = Program(program.extensibles, tuple(perm))
        findings = {(d.severity, d.code, d.message) for d in validate_program(permuted)}
        assert findings == base_findings


def test_unextended_constructors_all_covered(growlang_program):
    ext = growlang_program.extension("ExpDot")
    base = growlang_program.extensible("ExpX")
    assert unextended_constructors(ext, base) == []


def test_unextended_constructors_partial_cover():
    program = parse_program(
        "extensible data TypX = IntX | Arr TypX TypX\n"
        "partial data TD extends TypX = ID extends IntX by empty"
    )
    ext = program.extensions[0]
    base = program.extensibles[0]
    assert unextended_constructors(ext, base) == [Ident("Arr")]


def test_unextended_constructors_no_clauses():
    program = parse_program(
        "extensible data TypX = IntX | Arr TypX TypX\npartial data TD extends TypX"
    )
    ext = program.extensions[0]
    base = program.extensibles[0]
    assert unextended_constructors(ext, base) == [Ident("IntX"), Ident("Arr")]
