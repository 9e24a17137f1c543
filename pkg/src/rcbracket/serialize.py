"""Exact text and JSON forms of parameters, scalars and tables.

Numerators are written as sums of ``c*l^a*m^b`` (lambda -> ``l``, mu ->
``m``); denominators as a list of monic factors such as ``l+1/2``.  The
parser accepts only this small arithmetic language, never floats.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Dict, Optional

from .algebra import ONE, ParamPoly, ParamScalar, Var, as_fraction
from .operators import Poly, VarSpace

PARAM_NAMES = {"l": Var.LAMBDA, "lam": Var.LAMBDA, "lambda": Var.LAMBDA, "m": Var.MU, "mu": Var.MU}

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


class ParseError(ValueError):
    pass


def _promote(a, b, space):
    if space is not None and (isinstance(a, Poly) or isinstance(b, Poly)):
        if not isinstance(a, Poly):
            a = Poly.const(space, a)
        if not isinstance(b, Poly):
            b = Poly.const(space, b)
    return a, b


def _eval(node, space: Optional[VarSpace]):
    if isinstance(node, ast.Expression):
        return _eval(node.body, space)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"only integer literals are allowed, got {node.value!r}")
        return ParamScalar.coerce(node.value)
    if isinstance(node, ast.Name):
        if space is not None and node.id in space.names:
            return Poly.var(space, node.id)
        if node.id in PARAM_NAMES:
            return ParamScalar(ParamPoly.var(PARAM_NAMES[node.id]), (), _reduced=True)
        raise ParseError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, space)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        a = _eval(node.left, space)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int) and node.right.value >= 0):
                raise ParseError("exponents must be nonnegative integer literals")
            return a ** node.right.value
        b = _eval(node.right, space)
        if isinstance(node.op, ast.Div):
            if isinstance(b, Poly):
                if b.total_degree() > 0:
                    raise ParseError("division by a polynomial in the space variables")
                b = b.coeff(b.space.zero)
            return a.scale(1 / b) if isinstance(a, Poly) else a / b
        a, b = _promote(a, b, space)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(a, Poly) or isinstance(b, Poly):
            return a * b if isinstance(a, Poly) else b * a
        return a * b
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _parse(text: str, space: Optional[VarSpace]):
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression")
    if any(ch in text for ch in ".eE") and not _only_names_with_e(text):
        raise ParseError(f"floating point is not accepted: {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc
    return _eval(tree, space)


def _only_names_with_e(text: str) -> bool:
    # 'e' may appear inside identifiers such as 'eta1'
    stripped = re.sub(r"[A-Za-z_][A-Za-z_0-9]*", "", text)
    return not any(ch in stripped for ch in ".eE")


def parse_scalar(text: str) -> ParamScalar:
    """Exact element of Q(lambda, mu) from text like ``(2*l*m - 3)/(2*l + 1)``."""
    v = _parse(text, None)
    if isinstance(v, Poly):
        raise ParseError("unexpected space variable")
    return v


def parse_param_poly(text: str) -> ParamPoly:
    v = parse_scalar(text)
    if not v.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial in l, m")
    return v.numer


def parse_poly(text: str, space: VarSpace) -> Poly:
    """Polynomial in the variables of ``space`` with coefficients in Q(l, m)."""
    v = _parse(text, space)
    return v if isinstance(v, Poly) else Poly.const(space, v)


def parse_parameter(text: str):
    """``"symbolic"`` -> None, otherwise an exact rational such as ``-3/2``."""
    if text is None or text == "symbolic":
        return None
    try:
        return as_fraction(text.strip())
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_to_dict(x: ParamScalar) -> Dict[str, object]:
    factors = []
    for atom, k in x.factors:
        factors += [str(atom)] * k
    return {
        "numer": str(x.numer),
        "denom_factors": factors,
        "denom_const": fraction_str(x.denom_const),
        "expr": str(x),
    }


def scalar_from_dict(d: Dict[str, object]) -> ParamScalar:
    out = ParamScalar(parse_param_poly(d["numer"]), (), _reduced=True)
    den = ParamScalar.coerce(parse_parameter(d.get("denom_const", "1")))
    for f in d.get("denom_factors", []):
        den = den * parse_scalar(f)
    return out / den if den != ONE else out
