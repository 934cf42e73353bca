"""Deterministic text rendering of encoded declarations and lowered extensions.

The haskell backend is the golden-test surface: fixed 2-space indent, one
constructor per line, `\\n` newlines, trailing newline. The dsl-echo
backend prints a Program back in source syntax such that re-parsing yields
a structurally equal Program.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ConstructorDecl,
    ExtensibleDataDecl,
    ExtensionDecl,
    OplusType,
    Program,
    SlotRef,
    TypeApp,
    TypeExpr,
    TypeVarRef,
)
from .encoder import EncodedDataDecl, LoweredExtension

BACKENDS = ("haskell", "dsl-echo")


@dataclass(frozen=True)
class RenderConfig:
    """Rendering knobs; indent and separators are fixed so output is byte-stable."""

    backend: str = "haskell"
    indent: int = 2
    line_width: int = 80  # advisory only; layout never depends on it

    def __post_init__(self) -> None:
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")


def render_type(t: TypeExpr) -> str:
    """One-line rendering; argument positions are parenthesized when applied."""
    if isinstance(t, TypeVarRef):
        return t.name.text
    if isinstance(t, SlotRef):
        return f'{t.param} "{t.label}"'
    if isinstance(t, OplusType):
        return f"{render_type(t.base)} <+> {_atom(t.extension)}"
    if not t.args:
        return t.head.text
    return f"{t.head} " + " ".join(_atom(a) for a in t.args)


def _atom(t: TypeExpr) -> str:
    if isinstance(t, TypeVarRef) or (isinstance(t, TypeApp) and not t.args):
        return render_type(t)
    return f"({render_type(t)})"


def emit_encoded(decl: EncodedDataDecl, cfg: RenderConfig = RenderConfig()) -> str:
    """`data` header plus one constructor per line, slot field first."""
    pad = " " * cfg.indent
    head_params = (
        [decl.xi_param.text] if decl.compact else [p.text for p in decl.slot_params]
    )
    head_params += [p.text for p in decl.params]
    lines = [" ".join(["data", decl.name.text] + head_params)]
    ctors = list(decl.constructors) + [decl.terminal_constructor]
    for i, c in enumerate(ctors):
        sep = "=" if i == 0 else "|"
        lines.append(f"{pad}{sep} " + _ctor_text(c))
    return "\n".join(lines) + "\n"


def _ctor_text(c: ConstructorDecl) -> str:
    return " ".join([c.name.text] + [_atom(f) for f in c.fields])


def emit_lowered(low: LoweredExtension, cfg: RenderConfig = RenderConfig()) -> str:
    """Alias, family declaration, instances in slot-label order, synonyms."""
    alias_params = "".join(f" {p}" for p in low.alias_params)
    sections = [
        f"type {low.alias_name}{alias_params} = {render_type(low.alias_rhs)}",
        f"data family {low.family_name} (label :: Symbol) :: *",
    ]
    instance_lines = [
        f'data instance {low.family_name} "{inst.label}" = '
        + " | ".join(_ctor_text(c) for c in inst.payload_constructors)
        for inst in low.instances
    ]
    sections.append("\n".join(instance_lines))
    synonym_lines = []
    for syn in low.synonyms:
        ext_vars = [f"x{i + 1}" for i in range(syn.ext_arg_count)]
        ord_vars = [f"y{i + 1}" for i in range(syn.ordinary_arg_count)]
        payload = (
            f"({syn.payload_constructor} " + " ".join(ext_vars) + ")"
            if ext_vars
            else syn.payload_constructor.text
        )
        lhs = " ".join([f"pattern {syn.public_name}"] + ext_vars + ord_vars)
        rhs = " ".join([syn.underlying_constructor.text, payload] + ord_vars)
        synonym_lines.append(f"{lhs} = {rhs}")
    sections.append("\n".join(synonym_lines))
    return "\n\n".join(s for s in sections if s) + "\n"


def emit_program_dsl(program: Program, cfg: RenderConfig = RenderConfig()) -> str:
    """Echo a Program in DSL surface syntax (the round-trip backend)."""
    pad = " " * cfg.indent
    blocks: list[str] = []
    for d in program.extensibles:
        blocks.append(_echo_extensible(d, pad))
    for e in program.extensions:
        blocks.append(_echo_extension(e, pad))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def _echo_extensible(d: ExtensibleDataDecl, pad: str) -> str:
    keyword = "extensible data" if d.extensible else "data"
    header = " ".join([keyword, d.name.text] + [p.text for p in d.params])
    lines = [header]
    for i, c in enumerate(d.constructors):
        sep = "=" if i == 0 else "|"
        lines.append(f"{pad}{sep} " + _ctor_text(c))
    return "\n".join(lines)


def _echo_extension(e: ExtensionDecl, pad: str) -> str:
    partial = "partial " if e.partial else ""
    header = " ".join(
        [f"{partial}data", e.name.text]
        + [p.text for p in e.params]
        + ["extends", e.base_name.text]
        + [b.text for b in e.base_args]
    )
    lines = [header.rstrip()]
    items: list[str] = [_ctor_text(c) for c in e.new_constructors]
    for cl in e.extended_constructors:
        added = (
            " ".join(_atom(f) for f in cl.added_fields) if cl.added_fields else "empty"
        )
        items.append(f"{cl.new_name} extends {cl.base_constructor} by {added}")
    for i, item in enumerate(items):
        sep = "=" if i == 0 else "|"
        lines.append(f"{pad}{sep} {item}")
    return "\n".join(lines)
