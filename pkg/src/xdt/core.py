"""Core syntax, program container, labels, and diagnostics for the xdt DSL."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


@dataclass(frozen=True, order=True)
class Ident:
    """An identifier, classified by its leading character.

    Uppercase-led names denote type or data constructors, lowercase-led
    names denote variables.
    """

    text: str

    def __post_init__(self) -> None:
        if not _IDENT_RE.match(self.text):
            raise ValueError(f"invalid identifier: {self.text!r}")

    @property
    def is_constructor(self) -> bool:
        return self.text[0].isupper()

    @property
    def is_variable(self) -> bool:
        return not self.is_constructor

    def __str__(self) -> str:
        return self.text


# Extension-slot labels are exactly source names, no mangling.
Label = str


@dataclass(frozen=True)
class TypeVarRef:
    """A type-variable occurrence."""

    name: Ident

    def __str__(self) -> str:
        return self.name.text


@dataclass(frozen=True)
class TypeApp:
    """A type constructor applied to zero or more argument types."""

    head: Ident
    args: tuple[TypeExpr, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.head.text
        return f"{self.head} " + " ".join(_atom_str(a) for a in self.args)


@dataclass(frozen=True)
class OplusType:
    """A base type paired with an extension argument (the `<+>` form)."""

    base: TypeExpr
    extension: TypeExpr

    def __str__(self) -> str:
        return f"{self.base} <+> {_atom_str(self.extension)}"


@dataclass(frozen=True)
class SlotRef:
    """A slot parameter applied to a string label.

    Appears only in encoder output, never in parsed source.
    """

    param: Ident
    label: Label

    def __str__(self) -> str:
        return f'{self.param} "{self.label}"'


TypeExpr = TypeVarRef | TypeApp | OplusType | SlotRef


def _atom_str(t: TypeExpr) -> str:
    if isinstance(t, TypeApp) and not t.args or isinstance(t, TypeVarRef):
        return str(t)
    return f"({t})"


@dataclass(frozen=True)
class ConstructorDecl:
    """A data constructor with its field types (possibly none)."""

    name: Ident
    fields: tuple[TypeExpr, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.fields)


@dataclass(frozen=True)
class ExtensibleDataDecl:
    """A data type declaration, optionally marked extensible."""

    name: Ident
    params: tuple[Ident, ...]
    constructors: tuple[ConstructorDecl, ...]
    extensible: bool = True
    span: object = field(default=None, compare=False, repr=False)

    def constructor(self, name: str) -> ConstructorDecl | None:
        for c in self.constructors:
            if c.name.text == name:
                return c
        return None


@dataclass(frozen=True)
class ConExtensionClause:
    """`New extends Base by F1..Fn`; an empty field tuple spells `by empty`."""

    new_name: Ident
    base_constructor: Ident
    added_fields: tuple[TypeExpr, ...] = ()


@dataclass(frozen=True)
class ExtensionDecl:
    """An extension of a base declaration: new constructors plus per-constructor clauses."""

    name: Ident
    params: tuple[Ident, ...]
    base_name: Ident
    base_args: tuple[Ident, ...]
    new_constructors: tuple[ConstructorDecl, ...]
    extended_constructors: tuple[ConExtensionClause, ...]
    partial: bool = False
    span: object = field(default=None, compare=False, repr=False)

    def clause_for(self, base_constructor: str) -> ConExtensionClause | None:
        for cl in self.extended_constructors:
            if cl.base_constructor.text == base_constructor:
                return cl
        return None


@dataclass(frozen=True)
class Program:
    """The declarations of one source unit, in source order per kind."""

    extensibles: tuple[ExtensibleDataDecl, ...] = ()
    extensions: tuple[ExtensionDecl, ...] = ()

    def extensible(self, name: str) -> ExtensibleDataDecl | None:
        for d in self.extensibles:
            if d.name.text == name:
                return d
        return None

    def extension(self, name: str) -> ExtensionDecl | None:
        for e in self.extensions:
            if e.name.text == name:
                return e
        return None

    @property
    def extensible_names(self) -> frozenset[str]:
        return frozenset(d.name.text for d in self.extensibles if d.extensible)

    @property
    def mutual_groups(self) -> tuple[tuple[str, ...], ...]:
        """Partition of extensible names into reference-connected groups.

        Two declarations land in one group when either one's fields
        mention the other (directly or transitively); the slot parameter
        must be threaded through every such reference, so the whole
        component shares one extension family.
        """
        names = [d.name.text for d in self.extensibles if d.extensible]
        index = {n: i for i, n in enumerate(names)}
        parent = list(range(len(names)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i: int, j: int) -> None:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for d in self.extensibles:
            if not d.extensible:
                continue
            for ref in referenced_type_names(d):
                if ref in index and ref != d.name.text:
                    union(index[d.name.text], index[ref])

        groups: dict[int, list[str]] = {}
        for n in names:
            groups.setdefault(find(index[n]), []).append(n)
        return tuple(tuple(groups[root]) for root in sorted(groups))

    def mutual_group_of(self, name: str) -> tuple[str, ...]:
        for g in self.mutual_groups:
            if name in g:
                return g
        return (name,)


def referenced_type_names(decl: ExtensibleDataDecl) -> frozenset[str]:
    """Names of type constructors mentioned anywhere in the declaration's fields."""
    out: set[str] = set()

    def walk(t: TypeExpr) -> None:
        if isinstance(t, TypeApp):
            out.add(t.head.text)
            for a in t.args:
                walk(a)
        elif isinstance(t, OplusType):
            walk(t.base)
            walk(t.extension)

    for c in decl.constructors:
        for f in c.fields:
            walk(f)
    return frozenset(out)


# --------------------------------------------------------------------------
# Diagnostics


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Location:
    """A source position; file may be absent for in-memory text."""

    line: int
    column: int
    file: str | None = None

    def __str__(self) -> str:
        prefix = f"{self.file}:" if self.file else ""
        return f"{prefix}{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """One finding: a machine code, a human message, and an optional position."""

    severity: Severity
    code: str
    message: str
    location: Location | None = None

    def __str__(self) -> str:
        loc = f"{self.location}: " if self.location else ""
        return f"{loc}{self.severity.value} {self.code}: {self.message}"


# Validator findings.
DUPLICATE_NAME = "E001"
UNKNOWN_BASE = "E002"
BAD_PARAM_MAP = "E003"
UNKNOWN_CONSTRUCTOR = "E004"
DUPLICATE_EXTENSION_CLAUSE = "E005"
OPLUS_ON_NONEXTENSIBLE = "E006"
ARITY_MISMATCH = "E007"
CONSTRUCTOR_NOT_COVERED = "E008"
UNUSED_PARAMETER = "W001"
# Parser findings.
LEXICAL_ERROR = "E101"
UNEXPECTED_TOKEN = "E102"
UNTERMINATED_DECLARATION = "E103"

PUBLISHED_CODES = frozenset(
    {
        DUPLICATE_NAME,
        UNKNOWN_BASE,
        BAD_PARAM_MAP,
        UNKNOWN_CONSTRUCTOR,
        DUPLICATE_EXTENSION_CLAUSE,
        OPLUS_ON_NONEXTENSIBLE,
        ARITY_MISMATCH,
        CONSTRUCTOR_NOT_COVERED,
        UNUSED_PARAMETER,
        LEXICAL_ERROR,
        UNEXPECTED_TOKEN,
        UNTERMINATED_DECLARATION,
    }
)


def error(code: str, message: str, location: Location | None = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, location)


def warning(code: str, message: str, location: Location | None = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, location)


# --------------------------------------------------------------------------
# Slot labels and extension-form classification


def slot_labels(decl: ExtensibleDataDecl) -> list[Label]:
    """One label per constructor, in declaration order, then the type's own name.

    The trailing label indexes the new-constructor slot; the others index
    the per-constructor field slots.
    """
    if not decl.extensible:
        raise ValueError(f"{decl.name} is not declared extensible")
    return [c.name.text for c in decl.constructors] + [decl.name.text]


class ExtensionForm(Enum):
    """The three shapes an extension can take."""

    FIELD_EXTENSION = "field"
    CONSTRUCTOR_EXTENSION = "constructor"
    PARAMETER_EXTENSION = "parameter"


class UnknownBaseError(Exception):
    """The extension names a base that is not an extensible declaration in scope."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


def classify_extension_forms(ext: ExtensionDecl, program: Program) -> set[ExtensionForm]:
    """Which of the three extension forms the declaration uses."""
    base = program.extensible(ext.base_name.text)
    if base is None or not base.extensible:
        raise UnknownBaseError(
            error(UNKNOWN_BASE, f"unknown base declaration {ext.base_name}")
        )
    forms: set[ExtensionForm] = set()
    if any(cl.added_fields for cl in ext.extended_constructors):
        forms.add(ExtensionForm.FIELD_EXTENSION)
    if ext.new_constructors:
        forms.add(ExtensionForm.CONSTRUCTOR_EXTENSION)
    if len(ext.params) > len(ext.base_args):
        forms.add(ExtensionForm.PARAMETER_EXTENSION)
    return forms


# --------------------------------------------------------------------------
# Generated-name schemes, shared by the validator (collision checks) and the
# encoder (actual generation).


def family_base_name(extension_name: str) -> str:
    """The extension family name an extension declaration seeds."""
    return f"Ext_{extension_name}"


def empty_payload_name(base_constructor: str) -> str:
    """The nullary payload constructor for a `by empty` clause."""
    return f"None_{base_constructor}"


def payload_ctor_name(new_name: str) -> str:
    """The payload constructor behind a field-carrying clause or new constructor."""
    return f"{new_name}_P"
