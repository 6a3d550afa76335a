# utils/scalars.py
"""Exact scalars in the field tower Q, Q(i), Q(sqrt d), Q(i, sqrt d).

Scalars are plain sympy expressions kept in a canonical normal form. Lattice
data may additionally carry period symbols: ``pi`` and the log-unit times
``t_m`` (log of (m+sqrt(m^2-4))/2) and ``s_m`` (log of (m+sqrt(m^2+4))/2),
which are treated as independent transcendentals.
"""

import logging
import re
from fractions import Fraction

import sympy as sp
from sympy.parsing.sympy_parser import (
    parse_expr,
    rationalize,
    standard_transformations,
)

from utils.exceptions import ScalarError

logger = logging.getLogger(__name__)

ZERO = sp.Integer(0)
ONE = sp.Integer(1)
I = sp.I
PI = sp.pi

_TRANSFORMATIONS = standard_transformations + (rationalize,)
_ALLOWED_TEXT = re.compile(r"^[0-9A-Za-z_+\-*/().\s^]*$")
_LOG_UNIT_NAME = re.compile(r"^([ts])_(\d+)$")


def normalize(value):
    """Bring a scalar to canonical form.

    Args:
        value: int, Fraction, str or sympy expression

    Returns:
        sympy.Expr: Canonical expression (rationalized denominators, expanded)
    """
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    expr = sp.sympify(value)
    if expr.is_Rational:
        return expr
    if expr.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
        raise ScalarError(f"Undefined value {expr}")
    if expr.free_symbols or expr.has(sp.pi):
        expr = sp.cancel(sp.together(expr))
    return sp.expand(sp.radsimp(expr))


scalar = normalize


def is_zero(value):
    """Exact zero test."""
    return normalize(value) == 0


def equal(a, b):
    return is_zero(sp.sympify(a) - sp.sympify(b))


def divide(a, b):
    """Exact division; dividing by zero raises instead of producing zoo."""
    if is_zero(b):
        raise ScalarError(f"Division by zero: {a} / {b}")
    return normalize(sp.sympify(a) / sp.sympify(b))


def inverse(a):
    return divide(ONE, a)


def conjugate(value):
    return normalize(sp.conjugate(normalize(value)))


def imag_part(value):
    return normalize(sp.im(normalize(value)))


def is_rational(value):
    return normalize(value).is_Rational


def is_integer(value):
    return normalize(value).is_Integer


def parameter(name):
    """Real symbolic parameter usable inside structure constants."""
    return sp.Symbol(name, real=True)


def field_of(value):
    """Name the smallest field of the tower containing a scalar.

    Args:
        value: Scalar

    Returns:
        str: One of "Q", "Q(i)", "Q(√d)", "Q(i,√d)"

    Raises:
        ScalarError: If the value uses two different square roots, a non-square-root
            radical or a transcendental
    """
    expr = normalize(value)
    if expr.free_symbols or expr.has(sp.pi):
        raise ScalarError(f"{format_scalar(expr)} carries period symbols")
    radicands = set()
    for power in expr.atoms(sp.Pow):
        if power.exp in (sp.Rational(1, 2), sp.Rational(-1, 2)) and power.base.is_Integer:
            radicands.add(int(power.base))
        elif power.base is not sp.I:
            raise ScalarError(f"{format_scalar(expr)} leaves the quadratic tower")
    if len(radicands) > 1:
        raise ScalarError(f"{format_scalar(expr)} mixes square roots {sorted(radicands)}")
    gaussian = expr.has(sp.I)
    if not radicands:
        return "Q(i)" if gaussian else "Q"
    d = radicands.pop()
    return f"Q(i,√{d})" if gaussian else f"Q(√{d})"


def log_unit_symbol(m, norm=1):
    """Transcendental time log(u) for a quadratic unit u.

    For ``norm=1`` the unit is u = (m+sqrt(m^2-4))/2 with u + 1/u = m, for
    ``norm=-1`` it is u = (m+sqrt(m^2+4))/2 with u - 1/u = m.
    """
    prefix = "t" if norm == 1 else "s"
    return sp.Symbol(f"{prefix}_{m}", positive=True)


def unit_value(m, norm=1):
    if norm == 1:
        return normalize((m + sp.sqrt(m * m - 4)) / 2)
    return normalize((m + sp.sqrt(m * m + 4)) / 2)


def log_unit_of(symbol):
    """Return (m, norm) for a log-unit symbol, or None for other symbols."""
    match = _LOG_UNIT_NAME.match(getattr(symbol, "name", ""))
    if not match:
        return None
    return int(match.group(2)), (1 if match.group(1) == "t" else -1)


def _prepare_text(text):
    s = text.strip()
    s = s.replace("−", "-").replace("·", "*").replace("π", "pi")
    s = re.sub(r"√\(", "sqrt(", s)
    s = re.sub(r"√(\d+)", r"sqrt(\1)", s)
    if not _ALLOWED_TEXT.match(s):
        raise ScalarError(f"Unreadable scalar literal '{text}'")
    s = s.replace("^", "**")
    # implicit multiplication: 2i, 2sqrt(5), (1+i)(1-i), 3pi
    s = re.sub(r"(\d|\))\s*(?=[A-Za-z(])", r"\1*", s)
    return s


def parse_scalar(text, symbols=None):
    """Parse a scalar literal such as "3/2", "1+2i", "(1+√5)/2" or "pi/2".

    Args:
        text (str): Literal text
        symbols (dict): Optional name -> expression bindings (parameters)

    Returns:
        sympy.Expr: Canonical scalar
    """
    if not isinstance(text, str) or not text.strip():
        raise ScalarError(f"Empty scalar literal {text!r}")
    local_dict = {"i": sp.I, "I": sp.I, "sqrt": sp.sqrt, "pi": sp.pi}
    if symbols:
        local_dict.update({name: sp.sympify(v) for name, v in symbols.items()})
    prepared = _prepare_text(text)
    for name in re.findall(r"\b[ts]_\d+\b", prepared):
        m, norm = log_unit_of(sp.Symbol(name))
        local_dict.setdefault(name, log_unit_symbol(m, norm))
    try:
        expr = parse_expr(prepared, local_dict=local_dict, transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise ScalarError(f"Cannot parse scalar '{text}': {e}") from e
    allowed = {v for v in local_dict.values() if isinstance(v, sp.Symbol)}
    unbound = [s for s in expr.free_symbols if s not in allowed and log_unit_of(s) is None]
    if unbound:
        raise ScalarError(f"Unbound name(s) {sorted(str(s) for s in unbound)} in '{text}'")
    return normalize(expr)


def format_scalar(value):
    """Print a scalar in the compact notation read back by parse_scalar."""
    expr = normalize(value)
    s = sp.sstr(expr).replace(" ", "")
    s = re.sub(r"sqrt\((\d+)\)", r"√\1", s)
    s = re.sub(r"\bI\b", "i", s)
    s = re.sub(r"\bpi\b", "π", s)
    s = re.sub(r"(\d)\*i\b", r"\1i", s)
    return s
