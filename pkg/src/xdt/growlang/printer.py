"""Decoration-oblivious printers with per-class extension handlers.

Base constructors print by fixed concatenation equations; payloads are
never inspected. A value built from a new constructor is handed to the
matching handler, which recurses back through the printers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .syntax import Arrow, IntTy, Node, Prod, Ty


class PrintError(Exception):
    """A handler was not total over the value it received."""


@dataclass(frozen=True)
class PrintHandlers:
    """One handler per syntax class for the new-constructor slot."""

    exp_ext: Callable[[Node, "PrintHandlers"], str]
    dec_ext: Callable[[Node, "PrintHandlers"], str]
    ty_ext: Callable[[Any, "PrintHandlers"], str]


def print_ty(t: Ty, handlers: PrintHandlers) -> str:
    if isinstance(t, IntTy):
        return "Int"
    if isinstance(t, Arrow):
        return "(" + print_ty(t.arg, handlers) + ") → " + print_ty(t.res, handlers)
    return handlers.ty_ext(t, handlers)


def print_exp(n: Node, handlers: PrintHandlers) -> str:
    ctor, f = n.ctor, n.fields
    if ctor == "Lit":
        return str(f[0])
    if ctor == "Var":
        return f[0]
    if ctor == "Ann":
        return "(" + print_exp(f[0], handlers) + ") :: (" + print_ty(f[1], handlers) + ")"
    if ctor == "Abs":
        return "λ" + f[0] + "." + print_exp(f[1], handlers)
    if ctor == "App":
        return "(" + print_exp(f[0], handlers) + ") (" + print_exp(f[1], handlers) + ")"
    if ctor == "Let":
        return "let " + print_dec(f[0], handlers) + " in " + print_exp(f[1], handlers)
    return handlers.exp_ext(n, handlers)


def print_dec(n: Node, handlers: PrintHandlers) -> str:
    if n.ctor == "Val":
        return n.fields[0] + " := " + print_exp(n.fields[1], handlers)
    return handlers.dec_ext(n, handlers)


def _default_ty_ext(t: Any, handlers: PrintHandlers) -> str:
    if isinstance(t, Prod):
        return "(" + print_ty(t.left, handlers) + ") × " + print_ty(t.right, handlers)
    raise PrintError(f"no type printer for {t!r}")


def _default_exp_ext(n: Node, handlers: PrintHandlers) -> str:
    if n.ctor == "Tup":
        m, k = n.fields
        return "(" + print_exp(m, handlers) + " , " + print_exp(k, handlers) + ")"
    raise PrintError(f"no expression printer for constructor {n.ctor}")


def _default_dec_ext(n: Node, handlers: PrintHandlers) -> str:
    if n.ctor == "Prj":
        x, y, l = n.fields
        return "(" + x + " , " + y + ") := " + print_exp(l, handlers)
    raise PrintError(f"no declaration printer for constructor {n.ctor}")


DEFAULT_HANDLERS = PrintHandlers(_default_exp_ext, _default_dec_ext, _default_ty_ext)
