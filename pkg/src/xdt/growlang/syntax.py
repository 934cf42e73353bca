"""Runtime trees for the demo lambda language.

One schema of base constructors serves every decoration level; a
Descriptor says what each constructor's extension slot carries and which
new constructors the per-type slot admits. The `plain` descriptor keeps
every slot at unit, the `typed` descriptor stores the argument type on
applications and the produced environment on lets.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping


# --------------------------------------------------------------------------
# Types of the object language


@dataclass(frozen=True)
class IntTy:
    def __repr__(self) -> str:
        return "IntTy"


@dataclass(frozen=True)
class Arrow:
    arg: Ty
    res: Ty


@dataclass(frozen=True)
class Prod:
    left: Ty
    right: Ty


Ty = IntTy | Arrow | Prod

# Ordered association list; the first binding for a name wins.
TypeEnv = list[tuple[str, Ty]]


def env_lookup(env: TypeEnv, name: str) -> Ty | None:
    for n, t in env:
        if n == name:
            return t
    return None


@dataclass(frozen=True)
class SrcSpan:
    """A half-open character range in some source text."""

    begins: int
    ends: int

    def __post_init__(self) -> None:
        if not 0 <= self.begins <= self.ends:
            raise ValueError(f"invalid span {self.begins}..{self.ends}")


class _Unit:
    _instance: _Unit | None = None

    def __new__(cls) -> _Unit:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "unit"


UNIT = _Unit()


# --------------------------------------------------------------------------
# Nodes and descriptors


@dataclass(frozen=True)
class Node:
    """One tree node: syntax class, constructor tag, slot payload, fields."""

    klass: str  # "exp" or "dec"
    ctor: str
    fields: tuple[Any, ...]
    ext: Any = UNIT
    span: SrcSpan | None = field(default=None, compare=False, repr=False)


# Base constructor signatures, shared by every descriptor. Field kinds:
# "exp"/"dec" are child nodes, "ty" a Ty, "name" a string, "int" an integer.
EXP_CONSTRUCTORS: Mapping[str, tuple[str, ...]] = {
    "Lit": ("int",),
    "Var": ("name",),
    "Ann": ("exp", "ty"),
    "Abs": ("name", "exp"),
    "App": ("exp", "exp"),
    "Let": ("dec", "exp"),
}
DEC_CONSTRUCTORS: Mapping[str, tuple[str, ...]] = {
    "Val": ("name", "exp"),
}

# Payload shapes a descriptor can demand for a slot.
UNIT_SHAPE = "unit"
TY_SHAPE = "ty"
TYPENV_SHAPE = "typenv"


@dataclass(frozen=True)
class Descriptor:
    """One instantiation of the extension slots.

    `payloads` maps (class, constructor) to the slot's payload shape
    (default unit); `exp_constructors`/`dec_constructors` are the new
    constructors the per-type slot admits; `allow_prod` admits product
    types in Ty values.
    """

    name: str
    payloads: Mapping[tuple[str, str], Any] = field(default_factory=dict)
    exp_constructors: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    dec_constructors: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    allow_prod: bool = False

    def constructors(self, klass: str) -> dict[str, tuple[str, ...]]:
        base = EXP_CONSTRUCTORS if klass == "exp" else DEC_CONSTRUCTORS
        news = self.exp_constructors if klass == "exp" else self.dec_constructors
        return {**base, **news}

    def is_new_constructor(self, klass: str, ctor: str) -> bool:
        news = self.exp_constructors if klass == "exp" else self.dec_constructors
        return ctor in news

    def payload_shape(self, klass: str, ctor: str) -> Any:
        return self.payloads.get((klass, ctor), UNIT_SHAPE)


_NEW_EXP = {"Tup": ("exp", "exp")}
_NEW_DEC = {"Prj": ("name", "name", "exp")}

PLAIN = Descriptor("plain", {}, _NEW_EXP, _NEW_DEC, allow_prod=True)
TYPED = Descriptor(
    "typed",
    {("exp", "App"): TY_SHAPE, ("exp", "Let"): TYPENV_SHAPE},
    _NEW_EXP,
    _NEW_DEC,
    allow_prod=True,
)
# The bare instantiation: no extension at all, as first declared.
BARE = Descriptor("bare")


class DescriptorError(Exception):
    """A node does not conform to the descriptor it was used under."""


def validate_ty(t: Any, descriptor: Descriptor) -> None:
    if isinstance(t, IntTy):
        return
    if isinstance(t, Arrow):
        validate_ty(t.arg, descriptor)
        validate_ty(t.res, descriptor)
        return
    if isinstance(t, Prod):
        if not descriptor.allow_prod:
            raise DescriptorError(
                f"product types are not admitted by descriptor {descriptor.name!r}"
            )
        validate_ty(t.left, descriptor)
        validate_ty(t.right, descriptor)
        return
    raise DescriptorError(f"not a type: {t!r}")


def _validate_payload(node: Node, descriptor: Descriptor) -> None:
    if descriptor.is_new_constructor(node.klass, node.ctor):
        if node.ext is not UNIT:
            raise DescriptorError(
                f"new constructor {node.ctor} carries a non-unit payload"
            )
        return
    shape = descriptor.payload_shape(node.klass, node.ctor)
    if shape == UNIT_SHAPE:
        if node.ext is not UNIT:
            raise DescriptorError(
                f"{node.ctor} must carry the unit payload under {descriptor.name!r}"
            )
    elif shape == TY_SHAPE:
        validate_ty(node.ext, descriptor)
    elif shape == TYPENV_SHAPE:
        if not isinstance(node.ext, list) or not all(
            isinstance(b, tuple) and len(b) == 2 and isinstance(b[0], str)
            for b in node.ext
        ):
            raise DescriptorError(f"{node.ctor} must carry a type environment")
        for _, t in node.ext:
            validate_ty(t, descriptor)
    elif isinstance(shape, type):
        if not isinstance(node.ext, shape):
            raise DescriptorError(
                f"{node.ctor} must carry a {shape.__name__} payload"
            )
    else:
        raise DescriptorError(f"unknown payload shape {shape!r}")


def validate_node(node: Node, descriptor: Descriptor) -> None:
    """Check constructor tags, field arities and kinds, and payload shapes."""
    if node.klass not in ("exp", "dec"):
        raise DescriptorError(f"unknown syntax class {node.klass!r}")
    signature = descriptor.constructors(node.klass).get(node.ctor)
    if signature is None:
        raise DescriptorError(
            f"constructor {node.ctor} is not admitted in class {node.klass!r} "
            f"by descriptor {descriptor.name!r}"
        )
    if len(node.fields) != len(signature):
        raise DescriptorError(
            f"{node.ctor} takes {len(signature)} fields, got {len(node.fields)}"
        )
    _validate_payload(node, descriptor)
    for kind, value in zip(signature, node.fields):
        if kind in ("exp", "dec"):
            if not isinstance(value, Node) or value.klass != kind:
                raise DescriptorError(f"{node.ctor}: expected a {kind} child")
            validate_node(value, descriptor)
        elif kind == "ty":
            validate_ty(value, descriptor)
        elif kind == "name":
            if not isinstance(value, str):
                raise DescriptorError(f"{node.ctor}: expected a variable name")
        elif kind == "int":
            if not isinstance(value, int) or isinstance(value, bool):
                raise DescriptorError(f"{node.ctor}: expected an integer")


def strip(node: Node) -> Node:
    """Replace every payload with unit, keeping the shape intact."""
    fields = tuple(strip(f) if isinstance(f, Node) else f for f in node.fields)
    return replace(node, fields=fields, ext=UNIT)


# --------------------------------------------------------------------------
# Construction helpers (payload defaults keep them plain)


def lit(i: int, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Lit", (i,), ext, span)


def var(name: str, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Var", (name,), ext, span)


def ann(m: Node, t: Ty, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Ann", (m, t), ext, span)


def abs_(x: str, n: Node, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Abs", (x, n), ext, span)


def app(l: Node, m: Node, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "App", (l, m), ext, span)


def tup(m: Node, n: Node, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Tup", (m, n), UNIT, span)


def let(d: Node, n: Node, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("exp", "Let", (d, n), ext, span)


def val(x: str, m: Node, ext: Any = UNIT, span: SrcSpan | None = None) -> Node:
    return Node("dec", "Val", (x, m), ext, span)


def prj(x: str, y: str, l: Node, span: SrcSpan | None = None) -> Node:
    return Node("dec", "Prj", (x, y, l), UNIT, span)
