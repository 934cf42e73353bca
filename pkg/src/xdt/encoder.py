"""Translation of extensible declarations into their encoded forms.

Two encodings are produced for a declaration: the naive one threads one
ordinary slot parameter per label, the compact one threads a single
higher-order parameter projected by string labels. Extension declarations
lower to a type alias, a data family, per-label family instances, and
constructor wrapper synonyms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ConExtensionClause,
    ConstructorDecl,
    ExtensibleDataDecl,
    ExtensionDecl,
    Ident,
    Label,
    OplusType,
    Program,
    SlotRef,
    TypeApp,
    TypeExpr,
    TypeVarRef,
    empty_payload_name,
    family_base_name,
    payload_ctor_name,
    slot_labels,
)
from .dsl_parser import FragApp, OplusFragment
from .validator import has_errors, unextended_constructors, validate_program

XI = Ident("xi")


class EncodeError(Exception):
    """Input precondition violated (unvalidated program, oplus in a field, ...)."""


@dataclass(frozen=True)
class EncodedDataDecl:
    """An extensible declaration after slot introduction.

    Compact mode carries `xi_param`; naive mode carries `slot_params`
    instead. Every non-terminal constructor's first field is its slot; the
    terminal constructor is named after the type and carries only the
    new-constructor slot.
    """

    name: Ident
    params: tuple[Ident, ...]
    constructors: tuple[ConstructorDecl, ...]
    terminal_constructor: ConstructorDecl
    xi_param: Ident | None = None
    slot_params: tuple[Ident, ...] = ()

    @property
    def compact(self) -> bool:
        return self.xi_param is not None


@dataclass(frozen=True)
class FamilyInstance:
    """The payload type at one label: its alternatives."""

    label: Label
    payload_constructors: tuple[ConstructorDecl, ...]


@dataclass(frozen=True)
class Synonym:
    """A public constructor wrapper over a base constructor and its payload."""

    public_name: Ident
    underlying_constructor: Ident
    payload_constructor: Ident
    ext_arg_count: int
    ordinary_arg_count: int


@dataclass(frozen=True)
class LoweredExtension:
    """An extension declaration lowered to alias + family instances + synonyms."""

    alias_name: Ident
    alias_params: tuple[Ident, ...]
    alias_rhs: TypeExpr
    family_name: Ident
    instances: tuple[FamilyInstance, ...]
    synonyms: tuple[Synonym, ...]


def fresh_name(base: Ident | str, scope: set[str]) -> Ident:
    """`base` itself when free, else base suffixed with the smallest free decimal."""
    text = base.text if isinstance(base, Ident) else base
    if text not in scope:
        return Ident(text)
    k = 1
    while f"{text}{k}" in scope:
        k += 1
    return Ident(f"{text}{k}")


def house_type(t: TypeExpr, xi: Ident, extensible_names: frozenset[str]) -> TypeExpr:
    """Thread the slot parameter through every extensible occurrence.

    Idempotent: an extensible application whose first argument is already
    the slot parameter is treated as rewritten.
    """
    if isinstance(t, OplusType):
        raise EncodeError(f"'<+>' cannot appear in a declaration field: {t}")
    if isinstance(t, (TypeVarRef, SlotRef)):
        return t
    if t.head.text in extensible_names:
        if t.args and t.args[0] == TypeVarRef(xi):
            rest = tuple(house_type(a, xi, extensible_names) for a in t.args[1:])
            return TypeApp(t.head, (t.args[0],) + rest)
        args = tuple(house_type(a, xi, extensible_names) for a in t.args)
        return TypeApp(t.head, (TypeVarRef(xi),) + args)
    return TypeApp(t.head, tuple(house_type(a, xi, extensible_names) for a in t.args))


def encode_compact(decl: ExtensibleDataDecl, program: Program) -> EncodedDataDecl:
    """Single higher-order slot parameter, projected by per-constructor labels."""
    _require_encodable(decl, program)
    names = program.extensible_names
    labels = slot_labels(decl)
    ctors = tuple(
        ConstructorDecl(
            c.name,
            (SlotRef(XI, label),) + tuple(house_type(f, XI, names) for f in c.fields),
        )
        for c, label in zip(decl.constructors, labels)
    )
    terminal = ConstructorDecl(decl.name, (SlotRef(XI, labels[-1]),))
    return EncodedDataDecl(decl.name, decl.params, ctors, terminal, xi_param=XI)


def encode_naive(decl: ExtensibleDataDecl, program: Program) -> EncodedDataDecl:
    """One ordinary slot parameter per label; recursion repeats full slot lists."""
    _require_encodable(decl, program)
    slot_vars = tuple(Ident(f"x{label}") for label in slot_labels(decl))
    ctors = tuple(
        ConstructorDecl(
            c.name,
            (TypeVarRef(var),) + tuple(_house_naive(f, program) for f in c.fields),
        )
        for c, var in zip(decl.constructors, slot_vars)
    )
    terminal = ConstructorDecl(decl.name, (TypeVarRef(slot_vars[-1]),))
    return EncodedDataDecl(decl.name, decl.params, ctors, terminal, slot_params=slot_vars)


def _house_naive(t: TypeExpr, program: Program) -> TypeExpr:
    if isinstance(t, OplusType):
        raise EncodeError(f"'<+>' cannot appear in a declaration field: {t}")
    if isinstance(t, (TypeVarRef, SlotRef)):
        return t
    if t.head.text in program.extensible_names:
        ref = program.extensible(t.head.text)
        slots = tuple(TypeVarRef(Ident(f"x{label}")) for label in slot_labels(ref))
        return TypeApp(t.head, slots + tuple(_house_naive(a, program) for a in t.args))
    return TypeApp(t.head, tuple(_house_naive(a, program) for a in t.args))


def rewrite_oplus(frag: OplusFragment) -> FragApp:
    """Move the extension argument to the first argument position."""
    return FragApp(frag.head, (frag.extension_arg,) + frag.ordinary_args)


def lower_extension(ext: ExtensionDecl, program: Program) -> LoweredExtension:
    """Alias, family instances, and wrapper synonyms for one extension."""
    _require_valid(program)
    base = program.extensible(ext.base_name.text)
    family = family_names(program)[ext.name.text]

    clauses = list(ext.extended_constructors)
    if ext.partial:
        clauses += _implicit_clauses(ext, base, program)
    clause_by_ctor = {cl.base_constructor.text: cl for cl in clauses}

    instances: list[FamilyInstance] = []
    for label in slot_labels(base):
        if label == base.name.text:
            if ext.new_constructors:
                payloads = tuple(
                    ConstructorDecl(Ident(payload_ctor_name(c.name.text)), c.fields)
                    for c in ext.new_constructors
                )
                instances.append(FamilyInstance(label, payloads))
        elif label in clause_by_ctor:
            cl = clause_by_ctor[label]
            if cl.added_fields:
                payload = ConstructorDecl(
                    Ident(payload_ctor_name(cl.new_name.text)), cl.added_fields
                )
            else:
                payload = ConstructorDecl(Ident(empty_payload_name(label)))
            instances.append(FamilyInstance(label, (payload,)))

    synonyms: list[Synonym] = []
    for c in ext.new_constructors:
        synonyms.append(
            Synonym(
                public_name=c.name,
                underlying_constructor=base.name,
                payload_constructor=Ident(payload_ctor_name(c.name.text)),
                ext_arg_count=c.arity,
                ordinary_arg_count=0,
            )
        )
    for cl in clauses:
        base_ctor = base.constructor(cl.base_constructor.text)
        payload = (
            payload_ctor_name(cl.new_name.text)
            if cl.added_fields
            else empty_payload_name(cl.base_constructor.text)
        )
        synonyms.append(
            Synonym(
                public_name=cl.new_name,
                underlying_constructor=cl.base_constructor,
                payload_constructor=Ident(payload),
                ext_arg_count=len(cl.added_fields),
                ordinary_arg_count=base_ctor.arity,
            )
        )

    rhs = TypeApp(
        base.name, (TypeApp(family),) + tuple(TypeVarRef(b) for b in ext.base_args)
    )
    return LoweredExtension(
        alias_name=ext.name,
        alias_params=ext.params,
        alias_rhs=rhs,
        family_name=family,
        instances=tuple(instances),
        synonyms=tuple(synonyms),
    )


def family_names(program: Program) -> dict[str, Ident]:
    """The extension family each extension declaration defines instances on.

    Extensions over one mutual group are folded into waves: the k-th
    extension of each base (in declaration order) shares one family, named
    after the wave's extension over the group's earliest-declared base.
    Splitting families across a group would leave the slot parameter of a
    cross-reference uninstantiated.
    """
    taken = _declared_names(program)
    by_base: dict[str, list[ExtensionDecl]] = {}
    for ext in program.extensions:
        by_base.setdefault(ext.base_name.text, []).append(ext)

    out: dict[str, Ident] = {}
    for group in program.mutual_groups:
        depth = max((len(by_base.get(b, [])) for b in group), default=0)
        for k in range(depth):
            wave = [by_base[b][k] for b in group if len(by_base.get(b, [])) > k]
            if not wave:
                continue
            family = fresh_name(family_base_name(wave[0].name.text), taken)
            taken.add(family.text)
            for ext in wave:
                out[ext.name.text] = family
    # Extensions over bases outside every group (unknown bases) never lower,
    # but keep the mapping total for callers that probe before validating.
    for ext in program.extensions:
        if ext.name.text not in out:
            family = fresh_name(family_base_name(ext.name.text), taken)
            taken.add(family.text)
            out[ext.name.text] = family
    return out


def _implicit_clauses(
    ext: ExtensionDecl, base: ExtensibleDataDecl, program: Program
) -> list[ConExtensionClause]:
    taken = _declared_names(program)
    taken.update(cl.new_name.text for cl in ext.extended_constructors)
    taken.update(c.name.text for c in ext.new_constructors)
    out = []
    for con in unextended_constructors(ext, base):
        name = fresh_name(f"{con.text}_{ext.name.text}", taken)
        taken.add(name.text)
        out.append(ConExtensionClause(name, con, ()))
    return out


def _declared_names(program: Program) -> set[str]:
    names: set[str] = set()
    for d in program.extensibles:
        names.add(d.name.text)
        names.update(c.name.text for c in d.constructors)
    for e in program.extensions:
        names.add(e.name.text)
        names.update(c.name.text for c in e.new_constructors)
        names.update(cl.new_name.text for cl in e.extended_constructors)
    return names


def _require_valid(program: Program) -> None:
    # Coverage (E008) is a lint-level policy, not an encodability requirement;
    # everything else must hold or the translation has no meaning.
    diags = validate_program(program, assume_partial=True)
    if has_errors(diags):
        raise EncodeError(
            "program does not validate: " + "; ".join(str(d) for d in diags)
        )


def _require_encodable(decl: ExtensibleDataDecl, program: Program) -> None:
    if not decl.extensible:
        raise EncodeError(f"{decl.name} is not declared extensible")
    _require_valid(program)
