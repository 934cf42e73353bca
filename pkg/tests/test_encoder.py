from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xdt.core import Ident, OplusType, SlotRef, TypeApp, TypeVarRef, slot_labels
from xdt.dsl_parser import parse_fragment, parse_program, render_fragment_term
from xdt.encoder import (
    EncodeError,
    XI,
    encode_compact,
    encode_naive,
    family_names,
    fresh_name,
    house_type,
    lower_extension,
    rewrite_oplus,
)


# --------------------------------------------------------------------------
# fresh_name (oracle: enumerate suffixes independently)


def _fresh_oracle(base: str, scope: set[str]) -> str:
    candidates = [base] + [f"{base}{k}" for k in range(1, len(scope) + 2)]
    return next(c for c in candidates if c not in scope)


def test_fresh_name_no_collision():
    assert fresh_name("Ext_TypDot", set()) == Ident("Ext_TypDot")


def test_fresh_name_first_suffix():
    assert fresh_name("NoneI", {"NoneI"}) == Ident(_fresh_oracle("NoneI", {"NoneI"}))
    assert fresh_name("NoneI", {"NoneI"}).text == "NoneI1"


def test_fresh_name_skips_taken_suffixes():
    scope = {"C", "C1", "C2"}
    assert fresh_name("C", scope) == Ident(_fresh_oracle("C", scope)) == Ident("C3")


@given(
    st.text(alphabet="AB", min_size=1, max_size=3),
    st.sets(st.text(alphabet="AB12", min_size=1, max_size=4), max_size=8),
)
def test_fresh_name_matches_enumeration_oracle(base, scope):
    scope = {s for s in scope if s[0].isalpha()}
    assert fresh_name(base, scope).text == _fresh_oracle(base, scope)
    assert fresh_name(base, scope).text not in scope


# --------------------------------------------------------------------------
# house_type


def _ext_names():
    return frozenset({"TypX", "ExpX", "DecX"})


def test_house_type_extensible_head():
    t = TypeApp(Ident("TypX"))
    assert house_type(t, XI, _ext_names()) == TypeApp(
        Ident("TypX"), (TypeVarRef(XI),)
    )


def test_house_type_atomic_untouched():
    t = TypeApp(Ident("Integer"))
    assert house_type(t, XI, _ext_names()) == t


def test_house_type_recurses_into_arguments():
    t = TypeApp(Ident("Listy"), (TypeApp(Ident("ExpX")),))
    housed = house_type(t, XI, _ext_names())
    assert housed == TypeApp(
        Ident("Listy"), (TypeApp(Ident("ExpX"), (TypeVarRef(XI),)),)
    )


def test_house_type_idempotent_on_output():
    cases = [
        TypeApp(Ident("TypX")),
        TypeApp(Ident("Listy"), (TypeApp(Ident("ExpX")),)),
        TypeApp(Ident("ExpX"), (TypeApp(Ident("TypX")),)),
        TypeVarRef(Ident("a")),
    ]
    for t in cases:
        once = house_type(t, XI, _ext_names())
        assert house_type(once, XI, _ext_names()) == once


def test_house_type_rejects_oplus():
    t = OplusType(TypeApp(Ident("TypX")), TypeVarRef(Ident("a")))
    with pytest.raises(EncodeError):
        house_type(t, XI, _ext_names())


# --------------------------------------------------------------------------
# encode_compact / encode_naive


def test_encode_compact_typx(typx_program):
    encoded = encode_compact(typx_program.extensible("TypX"), typx_program)
    assert encoded.compact and encoded.xi_param == XI
    assert [c.name.text for c in encoded.constructors] == ["IntX", "ArrX"]
    int_ctor, arr_ctor = encoded.constructors
    assert int_ctor.fields == (SlotRef(XI, "IntX"),)
    assert arr_ctor.fields[0] == SlotRef(XI, "ArrX")
    assert arr_ctor.fields[1] == TypeApp(Ident("TypX"), (TypeVarRef(XI),))
    assert encoded.terminal_constructor.name.text == "TypX"
    assert encoded.terminal_constructor.fields == (SlotRef(XI, "TypX"),)


def test_encode_compact_minimal():
    program = parse_program("extensible data U = A")
    encoded = encode_compact(program.extensible("U"), program)
    assert encoded.constructors[0].fields == (SlotRef(XI, "A"),)
    assert encoded.terminal_constructor.fields == (SlotRef(XI, "U"),)


def test_encode_compact_expx_shape(growlang_program):
    encoded = encode_compact(growlang_program.extensible("ExpX"), growlang_program)
    all_ctors = list(encoded.constructors) + [encoded.terminal_constructor]
    assert len(all_ctors) == 7
    # extensible heads get xi; Var/Integer stay atomic
    typ_ctor = encoded.constructors[2]
    assert typ_ctor.name.text == "TypX"
    assert typ_ctor.fields[1] == TypeApp(Ident("ExpX"), (TypeVarRef(XI),))
    assert typ_ctor.fields[2] == TypeApp(Ident("TypX"), (TypeVarRef(XI),))
    lit_ctor = encoded.constructors[0]
    assert lit_ctor.fields[1] == TypeApp(Ident("Integer"))


def test_encode_naive_typx(typx_program):
    encoded = encode_naive(typx_program.extensible("TypX"), typx_program)
    assert not encoded.compact
    assert [v.text for v in encoded.slot_params] == ["xIntX", "xArrX", "xTypX"]
    arr = encoded.constructors[1]
    full = tuple(TypeVarRef(Ident(v)) for v in ("xIntX", "xArrX", "xTypX"))
    assert arr.fields == (
        TypeVarRef(Ident("xArrX")),
        TypeApp(Ident("TypX"), full),
        TypeApp(Ident("TypX"), full),
    )


def test_encode_naive_minimal():
    program = parse_program("extensible data U = A")
    encoded = encode_naive(program.extensible("U"), program)
    assert [v.text for v in encoded.slot_params] == ["xA", "xU"]
    assert encoded.constructors[0].fields == (TypeVarRef(Ident("xA")),)
    assert encoded.terminal_constructor.fields == (TypeVarRef(Ident("xU")),)


def test_encode_naive_mutual_group_uses_referenced_types_slots(growlang_program):
    encoded = encode_naive(growlang_program.extensible("DecX"), growlang_program)
    val_ctor = encoded.constructors[0]
    exp_slots = tuple(
        TypeVarRef(Ident(f"x{l}"))
        for l in slot_labels(growlang_program.extensible("ExpX"))
    )
    assert val_ctor.fields[2] == TypeApp(Ident("ExpX"), exp_slots)


def test_encode_requires_extensible_flag():
    program = parse_program("data U = A\nextensible data T = B")
    with pytest.raises(EncodeError):
        encode_compact(program.extensibles[0], program)


def test_encode_rejects_invalid_program():
    program = parse_program(
        "extensible data T = A\ndata TD extends Missing = AD extends A by empty"
    )
    with pytest.raises(EncodeError):
        encode_compact(program.extensibles[0], program)


def test_compact_naive_correspondence(growlang_program):
    # one naive slot variable per compact label, in the same order
    for decl in growlang_program.extensibles:
        labels = slot_labels(decl)
        naive = encode_naive(decl, growlang_program)
        assert [v.text for v in naive.slot_params] == [f"x{l}" for l in labels]


def test_arity_law(growlang_program, typx_program):
    for program in (growlang_program, typx_program):
        for decl in program.extensibles:
            encoded = encode_compact(decl, program)
            for base_ctor, enc_ctor in zip(decl.constructors, encoded.constructors):
                assert enc_ctor.arity == base_ctor.arity + 1
            assert encoded.terminal_constructor.arity == 1
        for ext in program.extensions:
            low = lower_extension(ext, program)
            for syn in low.synonyms:
                clause = ext.clause_for(syn.underlying_constructor.text)
                if clause is not None and syn.public_name == clause.new_name:
                    base = program.extensible(ext.base_name.text)
                    assert syn.ordinary_arg_count == base.constructor(
                        clause.base_constructor.text
                    ).arity
                    assert syn.ext_arg_count == len(clause.added_fields)


# --------------------------------------------------------------------------
# rewrite_oplus (the three-rule table)

REWRITE_TABLE = [
    ("conapp", "LitX 42 <+> (SrcSpan 0 2)", "LitX (SrcSpan 0 2) 42"),
    ("type", "TypX <+> xi", "TypX xi"),
    ("pattern", "AppX l m <+> _", "AppX _ l m"),
    ("pattern", "LitX i <+> _", "LitX _ i"),
    ("type", "ExpX a b <+> xi", "ExpX xi a b"),
    ("conapp", "ArrX t u <+> NoneA", "ArrX NoneA t u"),
]


@pytest.mark.parametrize("kind,source,expected", REWRITE_TABLE)
def test_rewrite_oplus_moves_extension_first(kind, source, expected):
    rewritten = rewrite_oplus(parse_fragment(source, kind))
    assert render_fragment_term(rewritten) == expected


def test_rewrite_preserves_head_and_arity():
    frag = parse_fragment("AppX l m <+> d", "pattern")
    rewritten = rewrite_oplus(frag)
    assert rewritten.head == frag.head
    assert len(rewritten.args) == len(frag.ordinary_args) + 1


# --------------------------------------------------------------------------
# lower_extension


def test_lower_typdot_structure(typx_program):
    low = lower_extension(typx_program.extension("TypDot"), typx_program)
    assert low.family_name.text == "Ext_TypDot"
    assert [i.label for i in low.instances] == ["IntX", "ArrX", "TypX"]
    nullary = [i for i in low.instances if i.label in ("IntX", "ArrX")]
    assert all(
        len(i.payload_constructors) == 1 and i.payload_constructors[0].arity == 0
        for i in nullary
    )
    assert [i.payload_constructors[0].name.text for i in low.instances] == [
        "None_IntX",
        "None_ArrX",
        "ProdDot_P",
    ]
    assert [s.public_name.text for s in low.synonyms] == ["ProdDot", "IntDot", "ArrDot"]
    prod = low.synonyms[0]
    assert prod.underlying_constructor.text == "TypX"
    assert (prod.ext_arg_count, prod.ordinary_arg_count) == (2, 0)


def test_lower_expdot_clause_with_field(growlang_program):
    low = lower_extension(growlang_program.extension("ExpDot"), growlang_program)
    app_inst = next(i for i in low.instances if i.label == "AppX")
    assert app_inst.payload_constructors[0].name.text == "AppDot_P"
    assert app_inst.payload_constructors[0].fields == (TypeApp(Ident("TypDot")),)
    app_syn = next(s for s in low.synonyms if s.public_name.text == "AppDot")
    assert (app_syn.ext_arg_count, app_syn.ordinary_arg_count) == (1, 2)
    let_syn = next(s for s in low.synonyms if s.public_name.text == "LetDot")
    assert let_syn.ext_arg_count + let_syn.ordinary_arg_count == 3


def test_lower_all_empty_extension_has_no_type_label_instance():
    program = parse_program(
        "extensible data T = A | B T\n"
        "data TD extends T = AD extends A by empty | BD extends B by empty"
    )
    low = lower_extension(program.extensions[0], program)
    assert [i.label for i in low.instances] == ["A", "B"]
    assert all(c.arity == 0 for i in low.instances for c in i.payload_constructors)
    assert all(s.ext_arg_count == 0 for s in low.synonyms)


def test_lower_partial_extension_synthesizes_empty_clauses():
    program = parse_program(
        "extensible data T = A | B T\npartial data TD extends T = AD extends A by empty"
    )
    low = lower_extension(program.extensions[0], program)
    assert [i.label for i in low.instances] == ["A", "B"]
    b_inst = next(i for i in low.instances if i.label == "B")
    assert b_inst.payload_constructors[0].name.text == "None_B"
    implicit = next(s for s in low.synonyms if s.underlying_constructor.text == "B")
    assert implicit.public_name.text == "B_TD"
    assert (implicit.ext_arg_count, implicit.ordinary_arg_count) == (0, 1)


def test_lower_alias_carries_params_and_base_args():
    program = parse_program(
        "extensible data T a = MkT a\n"
        "data TD b extends T b = MkTD extends MkT by empty"
    )
    low = lower_extension(program.extensions[0], program)
    assert [p.text for p in low.alias_params] == ["b"]
    assert low.alias_rhs == TypeApp(
        Ident("T"), (TypeApp(Ident("Ext_TD")), TypeVarRef(Ident("b")))
    )


def test_family_shared_across_mutual_group(growlang_program):
    fams = family_names(growlang_program)
    assert fams["ExpDot"] == fams["TypDot"] == fams["DecDot"] == Ident("Ext_ExpDot")
    assert fams["ExpRing"] == fams["TypRing"] == fams["DecRing"] == Ident("Ext_ExpRing")
    assert len({fams["ExpDot"].text, fams["ExpRing"].text}) == 2


def test_family_name_in_isolated_program(typx_program):
    assert family_names(typx_program)["TypDot"] == Ident("Ext_TypDot")


def test_lowered_family_matches_mapping(growlang_program):
    for ext in growlang_program.extensions:
        low = lower_extension(ext, growlang_program)
        assert low.family_name == family_names(growlang_program)[ext.name.text]


# --------------------------------------------------------------------------
# Instantiation isomorphism against the declaration encoding (unit payloads,
# empty new-constructor slot, versus the pre-extensibility data type).


def _enumerate_encoded(encoded, depth: int) -> list:
    """Value shapes of the encoded type with unit slots and no terminal values."""
    self_name = encoded.name.text

    def rec(d: int) -> list:
        if d == 0:
            return []
        out = []
        for c in encoded.constructors:
            recursive = [
                f
                for f in c.fields[1:]
                if isinstance(f, TypeApp) and f.head.text == self_name
            ]
            if len(recursive) != len(c.fields) - 1:
                raise AssertionError("enumerator handles self-recursive fields only")
            if not recursive:
                out.append((c.name.text, "unit"))
            else:
                subs = rec(d - 1)
                if len(recursive) == 2:
                    out.extend(
                        (c.name.text, "unit", l, r) for l in subs for r in subs
                    )
                elif len(recursive) == 1:
                    out.extend((c.name.text, "unit", s) for s in subs)
        return out

    return rec(depth)


def _enumerate_original(depth: int) -> list:
    """Independent oracle: the declaration as written, no slots."""
    if depth == 0:
        return []
    subs = _enumerate_original(depth - 1)
    return [("IntX",)] + [("ArrX", l, r) for l in subs for r in subs]


def _drop_unit(v):
    if v[0] == "IntX":
        return ("IntX",)
    return ("ArrX", _drop_unit(v[2]), _drop_unit(v[3]))


def _add_unit(v):
    if v[0] == "IntX":
        return ("IntX", "unit")
    return ("ArrX", "unit", _add_unit(v[1]), _add_unit(v[2]))


def test_unit_instantiation_bijects_with_original_declaration(typx_program):
    encoded = encode_compact(typx_program.extensible("TypX"), typx_program)
    for depth in (1, 2, 3):
        enc_values = _enumerate_encoded(encoded, depth)
        orig_values = _enumerate_original(depth)
        assert len(enc_values) == len(orig_values)
        assert {_drop_unit(v) for v in enc_values} == set(orig_values)
        assert all(_add_unit(_drop_unit(v)) == v for v in enc_values)
    assert len(_enumerate_encoded(encoded, 3)) == 5
