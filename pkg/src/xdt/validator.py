"""Well-formedness checks for parsed programs; gatekeeper before encoding."""

from __future__ import annotations

from .core import (
    ARITY_MISMATCH,
    BAD_PARAM_MAP,
    CONSTRUCTOR_NOT_COVERED,
    DUPLICATE_EXTENSION_CLAUSE,
    DUPLICATE_NAME,
    Diagnostic,
    ExtensibleDataDecl,
    ExtensionDecl,
    Ident,
    OPLUS_ON_NONEXTENSIBLE,
    OplusType,
    Program,
    Severity,
    TypeApp,
    TypeExpr,
    TypeVarRef,
    UNKNOWN_BASE,
    UNKNOWN_CONSTRUCTOR,
    UNUSED_PARAMETER,
    empty_payload_name,
    error,
    family_base_name,
    payload_ctor_name,
    warning,
)


def validate_program(program: Program, *, assume_partial: bool = False) -> list[Diagnostic]:
    """All findings for the program; empty means clean.

    `assume_partial` treats every extension as if marked `partial`,
    suppressing the not-covered check (missing constructors then get the
    implicit empty clause during lowering).
    """
    out: list[Diagnostic] = []
    _check_declaration_names(program, out)
    for decl in program.extensibles:
        _check_extensible(decl, program, out)
    for ext in program.extensions:
        _check_extension(ext, program, out, assume_partial)
    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def unextended_constructors(ext: ExtensionDecl, base: ExtensibleDataDecl) -> list[Ident]:
    """Base constructors with no clause in the extension, in declaration order."""
    covered = {cl.base_constructor.text for cl in ext.extended_constructors}
    return [c.name for c in base.constructors if c.name.text not in covered]


def _check_declaration_names(program: Program, out: list[Diagnostic]) -> None:
    seen: set[str] = set()
    for decl in list(program.extensibles) + list(program.extensions):
        name = decl.name.text
        if name in seen:
            out.append(error(DUPLICATE_NAME, f"duplicate declaration name {name}"))
        seen.add(name)


def _check_extensible(decl: ExtensibleDataDecl, program: Program, out: list[Diagnostic]) -> None:
    seen_ctor: set[str] = set()
    for c in decl.constructors:
        if c.name.text in seen_ctor:
            out.append(
                error(
                    DUPLICATE_NAME,
                    f"duplicate constructor {c.name} in declaration {decl.name}",
                )
            )
        seen_ctor.add(c.name.text)
    seen_param: set[str] = set()
    for p in decl.params:
        if p.text in seen_param:
            out.append(
                error(DUPLICATE_NAME, f"duplicate parameter {p} in declaration {decl.name}")
            )
        seen_param.add(p.text)
    used: set[str] = set()
    for c in decl.constructors:
        for f in c.fields:
            _check_oplus(f, program, f"constructor {c.name} of {decl.name}", out)
            _collect_vars(f, used)
    for p in decl.params:
        if p.text not in used:
            out.append(
                warning(UNUSED_PARAMETER, f"parameter {p} of {decl.name} is never used")
            )


def _check_extension(
    ext: ExtensionDecl, program: Program, out: list[Diagnostic], assume_partial: bool
) -> None:
    base = program.extensible(ext.base_name.text)
    if base is None or not base.extensible:
        out.append(
            error(
                UNKNOWN_BASE,
                f"extension {ext.name} extends unknown base {ext.base_name}",
            )
        )
        return

    params = {p.text for p in ext.params}
    for b in ext.base_args:
        if b.text not in params:
            out.append(
                error(
                    BAD_PARAM_MAP,
                    f"base argument {b} of {ext.name} is not among its parameters",
                )
            )
    if len(ext.base_args) > len(ext.params):
        out.append(
            error(
                BAD_PARAM_MAP,
                f"extension {ext.name} maps more base arguments than it has parameters",
            )
        )
    if len(ext.base_args) != len(base.params):
        out.append(
            error(
                ARITY_MISMATCH,
                f"extension {ext.name} instantiates {len(ext.base_args)} of "
                f"{len(base.params)} parameters of {base.name}",
            )
        )

    base_ctors = {c.name.text for c in base.constructors}
    claused: set[str] = set()
    for cl in ext.extended_constructors:
        if cl.base_constructor.text not in base_ctors:
            out.append(
                error(
                    UNKNOWN_CONSTRUCTOR,
                    f"clause {cl.new_name} extends unknown constructor "
                    f"{cl.base_constructor} of {base.name}",
                )
            )
        if cl.base_constructor.text in claused:
            out.append(
                error(
                    DUPLICATE_EXTENSION_CLAUSE,
                    f"constructor {cl.base_constructor} is extended twice by {ext.name}",
                )
            )
        claused.add(cl.base_constructor.text)

    _check_introduced_names(ext, base, out)

    if not (ext.partial or assume_partial):
        for missing in unextended_constructors(ext, base):
            out.append(
                error(
                    CONSTRUCTOR_NOT_COVERED,
                    f"constructor {missing} of {base.name} is not covered by {ext.name} "
                    f"(mark the extension 'partial' for implicit empty clauses)",
                )
            )

    used: set[str] = set()
    for cl in ext.extended_constructors:
        for f in cl.added_fields:
            _check_oplus(f, program, f"clause {cl.new_name} of {ext.name}", out)
            _collect_vars(f, used)
    for c in ext.new_constructors:
        for f in c.fields:
            _check_oplus(f, program, f"constructor {c.name} of {ext.name}", out)
            _collect_vars(f, used)
    mapped = {b.text for b in ext.base_args}
    for p in ext.params:
        if p.text not in used and p.text not in mapped:
            out.append(
                warning(UNUSED_PARAMETER, f"parameter {p} of {ext.name} is never used")
            )


def _check_introduced_names(
    ext: ExtensionDecl, base: ExtensibleDataDecl, out: list[Diagnostic]
) -> None:
    base_ctors = {c.name.text for c in base.constructors}
    reserved = {family_base_name(ext.name.text)}
    for cl in ext.extended_constructors:
        reserved.add(empty_payload_name(cl.base_constructor.text))
        if cl.added_fields:
            reserved.add(payload_ctor_name(cl.new_name.text))
    for c in ext.new_constructors:
        reserved.add(payload_ctor_name(c.name.text))

    introduced: set[str] = set()
    for name in [cl.new_name for cl in ext.extended_constructors] + [
        c.name for c in ext.new_constructors
    ]:
        if name.text in introduced:
            out.append(
                error(
                    DUPLICATE_NAME,
                    f"{ext.name} introduces the constructor name {name} twice",
                )
            )
        introduced.add(name.text)
        if name.text in base_ctors:
            out.append(
                error(
                    DUPLICATE_NAME,
                    f"constructor {name} of {ext.name} collides with a constructor "
                    f"of {base.name}",
                )
            )
        if name.text in reserved:
            out.append(
                error(
                    DUPLICATE_NAME,
                    f"constructor {name} of {ext.name} collides with a generated name",
                )
            )


def _check_oplus(
    t: TypeExpr, program: Program, where: str, out: list[Diagnostic], *, nested: bool = False
) -> None:
    if isinstance(t, OplusType):
        if nested:
            out.append(
                error(OPLUS_ON_NONEXTENSIBLE, f"nested '<+>' has no meaning in {where}")
            )
        head = t.base.head.text if isinstance(t.base, TypeApp) else None
        if head is None or head not in program.extensible_names:
            shown = head or str(t.base)
            out.append(
                error(
                    OPLUS_ON_NONEXTENSIBLE,
                    f"'<+>' applied to non-extensible type {shown} in {where}",
                )
            )
        _check_oplus(t.base, program, where, out, nested=True)
        _check_oplus(t.extension, program, where, out, nested=True)
    elif isinstance(t, TypeApp):
        for a in t.args:
            _check_oplus(a, program, where, out, nested=nested)


def _collect_vars(t: TypeExpr, out: set[str]) -> None:
    if isinstance(t, TypeVarRef):
        out.add(t.name.text)
    elif isinstance(t, TypeApp):
        for a in t.args:
            _collect_vars(a, out)
    elif isinstance(t, OplusType):
        _collect_vars(t.base, out)
        _collect_vars(t.extension, out)
