"""Syntax-directed type checking over decorated trees.

Each clause consumes the decoration it needs (applications carry the
argument type, lets carry the environment their declaration produces) and
anything that matches no clause checks false rather than erroring.
"""

from __future__ import annotations

from .syntax import (
    Arrow,
    IntTy,
    Node,
    Prod,
    TYPED,
    Ty,
    TypeEnv,
    env_lookup,
    validate_node,
    validate_ty,
)


def chk_exp(n: Node, env: TypeEnv, ty: Ty) -> bool:
    """Does the decorated expression check against `ty` under `env`?"""
    if n.klass != "exp":
        raise ValueError(f"expected an expression node, got class {n.klass!r}")
    validate_node(n, TYPED)
    validate_ty(ty, TYPED)
    return _chk_exp(n, env, ty)


def chk_dec(n: Node, env: TypeEnv, delta: TypeEnv) -> bool:
    """Does the decorated declaration produce exactly `delta` under `env`?"""
    if n.klass != "dec":
        raise ValueError(f"expected a declaration node, got class {n.klass!r}")
    validate_node(n, TYPED)
    return _chk_dec(n, env, delta)


def _chk_exp(n: Node, env: TypeEnv, ty: Ty) -> bool:
    ctor, f = n.ctor, n.fields
    if ctor == "Lit" and isinstance(ty, IntTy):
        return True
    if ctor == "Var":
        found = env_lookup(env, f[0])
        return found is not None and found == ty
    if ctor == "Ann":
        return f[1] == ty and _chk_exp(f[0], env, ty)
    if ctor == "Abs" and isinstance(ty, Arrow):
        return _chk_exp(f[1], [(f[0], ty.arg)] + env, ty.res)
    if ctor == "App":
        a = n.ext
        return _chk_exp(f[0], env, Arrow(a, ty)) and _chk_exp(f[1], env, a)
    if ctor == "Tup" and isinstance(ty, Prod):
        return _chk_exp(f[0], env, ty.left) and _chk_exp(f[1], env, ty.right)
    if ctor == "Let":
        delta = n.ext
        return _chk_dec(f[0], env, delta) and _chk_exp(f[1], list(delta) + env, ty)
    return False


def _chk_dec(n: Node, env: TypeEnv, delta: TypeEnv) -> bool:
    ctor, f = n.ctor, n.fields
    if ctor == "Val" and len(delta) == 1:
        (x1, a) = delta[0]
        return f[0] == x1 and _chk_exp(f[1], env, a)
    if ctor == "Prj" and len(delta) == 2:
        (x1, a), (y1, b) = delta
        return f[0] == x1 and f[1] == y1 and _chk_exp(f[2], env, Prod(a, b))
    return False
