"""The demo lambda language: trees, parser, printers, checker, inference."""

from .checker import chk_dec, chk_exp
from .infer import (
    DefaultedTypeWarning,
    InferReason,
    TypeInferenceError,
    format_type_error,
    infer_dec,
    infer_exp,
)
from .parser import GlParseError, parse_dec, parse_exp, parse_ty
from .printer import DEFAULT_HANDLERS, PrintError, PrintHandlers, print_dec, print_exp, print_ty
from .syntax import (
    BARE,
    Arrow,
    Descriptor,
    DescriptorError,
    IntTy,
    Node,
    PLAIN,
    Prod,
    SrcSpan,
    TYPED,
    Ty,
    TypeEnv,
    UNIT,
    abs_,
    ann,
    app,
    env_lookup,
    let,
    lit,
    prj,
    strip,
    tup,
    val,
    validate_node,
    validate_ty,
    var,
)

__all__ = [
    "Arrow",
    "BARE",
    "DEFAULT_HANDLERS",
    "DefaultedTypeWarning",
    "Descriptor",
    "DescriptorError",
    "GlParseError",
    "InferReason",
    "IntTy",
    "Node",
    "PLAIN",
    "PrintError",
    "PrintHandlers",
    "Prod",
    "SrcSpan",
    "TYPED",
    "Ty",
    "TypeEnv",
    "TypeInferenceError",
    "UNIT",
    "abs_",
    "ann",
    "app",
    "chk_dec",
    "chk_exp",
    "env_lookup",
    "format_type_error",
    "infer_dec",
    "infer_exp",
    "let",
    "lit",
    "parse_dec",
    "parse_exp",
    "parse_ty",
    "print_dec",
    "print_exp",
    "print_ty",
    "prj",
    "strip",
    "tup",
    "val",
    "validate_node",
    "validate_ty",
    "var",
]
