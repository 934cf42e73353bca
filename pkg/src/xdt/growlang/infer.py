"""Type inference producing decorated trees.

Unification over integers, arrows, and products; explicit annotations seed
checking; metavariables left unconstrained at the end default to Int with
a warning. The output tree carries the argument type on every application
and the produced environment on every let, and satisfies the checker at
the inferred type; stripping it recovers the input exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from enum import Enum

from .syntax import (
    Arrow,
    IntTy,
    Node,
    PLAIN,
    Prod,
    SrcSpan,
    Ty,
    TypeEnv,
    UNIT,
    validate_node,
)


class InferReason(Enum):
    UNBOUND_VARIABLE = "unbound variable"
    OCCURS_CHECK = "occurs check failed"
    CONSTRUCTOR_CLASH = "type constructor clash"
    UNINFERABLE_BINDER = "un-annotated binder cannot be inferred"


class TypeInferenceError(Exception):
    """Inference failure with a reason and, when known, a source span."""

    def __init__(self, reason: InferReason, message: str, span: SrcSpan | None = None):
        super().__init__(message)
        self.reason = reason
        self.message = message
        self.span = span


class DefaultedTypeWarning(Warning):
    """An unconstrained type was defaulted to Int."""


def format_type_error(err: TypeInferenceError, source: str) -> str:
    """Render an inference error as `line:col: message`."""
    line, col = 1, 1
    if err.span is not None:
        offset = min(err.span.begins, len(source))
        line = source.count("\n", 0, offset) + 1
        col = offset - source.rfind("\n", 0, offset)
    return f"{line}:{col}: {err.message}"


@dataclass(frozen=True)
class _Meta:
    """An inference-time type variable; never escapes this module."""

    id: int


class _State:
    def __init__(self) -> None:
        self.subst: dict[int, object] = {}
        self.counter = 0
        self.defaulted = 0

    def fresh(self) -> _Meta:
        self.counter += 1
        return _Meta(self.counter)

    def walk(self, t):
        while isinstance(t, _Meta) and t.id in self.subst:
            t = self.subst[t.id]
        return t

    def _occurs(self, m: _Meta, t) -> bool:
        t = self.walk(t)
        if isinstance(t, _Meta):
            return t.id == m.id
        if isinstance(t, Arrow):
            return self._occurs(m, t.arg) or self._occurs(m, t.res)
        if isinstance(t, Prod):
            return self._occurs(m, t.left) or self._occurs(m, t.right)
        return False

    def unify(self, a, b, span: SrcSpan | None) -> None:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, _Meta) or isinstance(b, _Meta):
            meta, other = (a, b) if isinstance(a, _Meta) else (b, a)
            if self._occurs(meta, other):
                raise TypeInferenceError(
                    InferReason.OCCURS_CHECK,
                    "occurs check failed: the type would be infinite",
                    span,
                )
            self.subst[meta.id] = other
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.arg, b.arg, span)
            self.unify(a.res, b.res, span)
            return
        if isinstance(a, Prod) and isinstance(b, Prod):
            self.unify(a.left, b.left, span)
            self.unify(a.right, b.right, span)
            return
        raise TypeInferenceError(
            InferReason.CONSTRUCTOR_CLASH,
            f"cannot match {_show(self, a)} against {_show(self, b)}",
            span,
        )

    def zonk(self, t) -> Ty:
        """Resolve a type fully, defaulting residual metavariables to Int."""
        t = self.walk(t)
        if isinstance(t, _Meta):
            self.subst[t.id] = IntTy()
            self.defaulted += 1
            return IntTy()
        if isinstance(t, Arrow):
            return Arrow(self.zonk(t.arg), self.zonk(t.res))
        if isinstance(t, Prod):
            return Prod(self.zonk(t.left), self.zonk(t.right))
        return t


def _show(st: _State, t) -> str:
    t = st.walk(t)
    if isinstance(t, _Meta):
        return f"?{t.id}"
    if isinstance(t, IntTy):
        return "Int"
    if isinstance(t, Arrow):
        return f"({_show(st, t.arg)}) → {_show(st, t.res)}"
    return f"({_show(st, t.left)}) × {_show(st, t.right)}"


def infer_exp(n: Node) -> tuple[Node, Ty]:
    """Infer a closed plain expression; returns the decorated tree and its type."""
    validate_node(n, PLAIN)
    st = _State()
    decorated, t = _infer_exp(n, [], st)
    result = (_zonk_node(decorated, st), st.zonk(t))
    _warn_defaulted(st)
    return result


def infer_dec(n: Node) -> tuple[Node, TypeEnv]:
    """Infer a closed plain declaration; returns the decorated tree and its Δ."""
    validate_node(n, PLAIN)
    st = _State()
    decorated, delta = _infer_dec(n, [], st)
    result = (_zonk_node(decorated, st), [(x, st.zonk(t)) for x, t in delta])
    _warn_defaulted(st)
    return result


def _warn_defaulted(st: _State) -> None:
    if st.defaulted:
        warnings.warn(
            f"defaulted {st.defaulted} unconstrained type(s) to Int",
            DefaultedTypeWarning,
            stacklevel=3,
        )


def _infer_exp(n: Node, env: list, st: _State) -> tuple[Node, object]:
    ctor, f = n.ctor, n.fields
    if ctor == "Lit":
        return n, IntTy()
    if ctor == "Var":
        for name, t in env:
            if name == f[0]:
                return n, t
        raise TypeInferenceError(
            InferReason.UNBOUND_VARIABLE, f"unbound variable {f[0]}", n.span
        )
    if ctor == "Ann":
        m, annotated = f
        m1, t = _infer_exp(m, env, st)
        st.unify(t, annotated, n.span)
        return replace(n, fields=(m1, annotated)), annotated
    if ctor == "Abs":
        x, body = f
        alpha = st.fresh()
        body1, t = _infer_exp(body, [(x, alpha)] + env, st)
        return replace(n, fields=(x, body1)), Arrow(alpha, t)
    if ctor == "App":
        l, m = f
        l1, tl = _infer_exp(l, env, st)
        m1, tm = _infer_exp(m, env, st)
        beta = st.fresh()
        st.unify(tl, Arrow(tm, beta), n.span)
        return replace(n, fields=(l1, m1), ext=tm), beta
    if ctor == "Tup":
        m, k = f
        m1, tm = _infer_exp(m, env, st)
        k1, tk = _infer_exp(k, env, st)
        return replace(n, fields=(m1, k1)), Prod(tm, tk)
    if ctor == "Let":
        d, body = f
        d1, delta = _infer_dec(d, env, st)
        body1, t = _infer_exp(body, list(delta) + env, st)
        return replace(n, fields=(d1, body1), ext=delta), t
    raise TypeInferenceError(
        InferReason.CONSTRUCTOR_CLASH, f"cannot infer constructor {ctor}", n.span
    )


def _infer_dec(n: Node, env: list, st: _State) -> tuple[Node, list]:
    ctor, f = n.ctor, n.fields
    if ctor == "Val":
        x, m = f
        m1, t = _infer_exp(m, env, st)
        return replace(n, fields=(x, m1)), [(x, t)]
    if ctor == "Prj":
        x, y, l = f
        l1, t = _infer_exp(l, env, st)
        alpha, beta = st.fresh(), st.fresh()
        st.unify(t, Prod(alpha, beta), n.span)
        return replace(n, fields=(x, y, l1)), [(x, alpha), (y, beta)]
    raise TypeInferenceError(
        InferReason.CONSTRUCTOR_CLASH, f"cannot infer constructor {ctor}", n.span
    )


def _zonk_node(n: Node, st: _State) -> Node:
    fields = tuple(_zonk_node(x, st) if isinstance(x, Node) else x for x in n.fields)
    if n.ctor == "App":
        return replace(n, fields=fields, ext=st.zonk(n.ext))
    if n.ctor == "Let":
        return replace(n, fields=fields, ext=[(x, st.zonk(t)) for x, t in n.ext])
    return replace(n, fields=fields)
