# components/salamon_parser.py
"""Reader and printer for Salamon tuples such as (e^{15}, -e^{25}, 0, 0).

Entry l gives d e^l as a sum of terms q e^{jk}; with d alpha(x, y) = -alpha([x, y])
a term q e^{jk} in d e^l means c_jk^l = -q.
"""

import logging

from utils.exceptions import SalamonElaborationError, SalamonSyntaxError, ScalarError, ValidationError
from utils.lie_algebra import default_labels, lie_algebra, validate_jacobi
from utils.scalars import format_scalar, normalize, parse_scalar

logger = logging.getLogger(__name__)


class _Reader:
    """Recursive-descent reader over the normalized source text."""

    def __init__(self, text):
        self.text = text.replace("−", "-").replace("–", "-")
        self.pos = 0

    def error(self, message, position=None):
        position = self.pos if position is None else position
        if position >= len(self.text):
            message = f"{message} (unexpected end of input)"
        return SalamonSyntaxError(message, position)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char):
        if self.peek() != char:
            raise self.error(f"Expected '{char}'")
        self.pos += 1

    def at_atom(self, p=None):
        p = self.pos if p is None else p
        t = self.text
        return p + 1 < len(t) and t[p] == "e" and (t[p + 1] in "^{" or t[p + 1].isdigit())

    def read_tuple(self):
        self.expect("(")
        entries = [self.read_sum()]
        while self.peek() == ",":
            self.pos += 1
            entries.append(self.read_sum())
        self.expect(")")
        if self.peek():
            raise self.error("Trailing text after the tuple")
        return entries

    def read_sum(self):
        terms = []
        first = True
        while True:
            ch = self.peek()
            if ch in (",", ")", ""):
                if first:
                    raise self.error("Empty entry")
                return terms
            sign = 1
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                self.pos += 1
                self.skip_ws()
            elif not first:
                raise self.error("Expected '+' or '-' between terms")
            start = self.pos
            coeff = self.read_coefficient()
            self.skip_ws()
            if self.at_atom():
                j, k = self.read_atom()
                terms.append((sign, coeff, j, k, start))
            elif coeff is not None and coeff.strip() == "0" and first and self.peek() in (",", ")"):
                pass
            else:
                raise self.error("Expected a term e^{jk}")
            first = False

    def read_coefficient(self):
        """Text of the coefficient before an atom, or None."""
        t = self.text
        start = self.pos
        depth = 0
        p = start
        while p < len(t):
            ch = t[p]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif depth == 0:
                if ch == "," or (ch in "+-" and p > start):
                    break
                if self.at_atom(p) and (p == start or not (t[p - 1].isascii() and t[p - 1].isalpha() or t[p - 1] == "_")):
                    break
                if ch == "*":
                    q = p + 1
                    while q < len(t) and t[q].isspace():
                        q += 1
                    if self.at_atom(q):
                        self.pos = q
                        return t[start:p].strip() or None
            p += 1
        self.pos = p
        text = t[start:p].strip()
        return text or None

    def read_atom(self):
        t = self.text
        start = self.pos
        self.pos += 1
        if t[self.pos] == "^":
            self.pos += 1
        if self.pos < len(t) and t[self.pos] == "{":
            close = t.find("}", self.pos)
            if close < 0:
                raise self.error("Unclosed '{'", len(t))
            body = t[self.pos + 1:close]
            self.pos = close + 1
        else:
            end = self.pos
            while end < len(t) and t[end].isdigit():
                end += 1
            body = t[self.pos:end]
            self.pos = end
        parts = [p.strip() for p in body.split(",")] if "," in body else list(body.strip())
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise self.error(f"Atom needs exactly two indices, got '{body}'", start)
        return int(parts[0]), int(parts[1])


def parse_salamon(text, params=None, labels=None, index_base=1):
    """Parse a Salamon tuple into a Lie algebra.

    Args:
        text (str): Tuple text
        params (dict): Parameter bindings name -> scalar
        labels (list): Optional basis labels
        index_base (int): Index of the first basis covector (1 for e^1, 0 for e^0)

    Returns:
        LieAlgebra: Algebra whose Chevalley-Eilenberg differential is the tuple

    Raises:
        SalamonSyntaxError: Malformed text, with position
        SalamonElaborationError: Unbound parameter, bad index or Jacobi failure
    """
    if not isinstance(text, str):
        raise SalamonSyntaxError("Input must be text", 0)
    reader = _Reader(text)
    entries = reader.read_tuple()
    dim = len(entries)
    brackets = {}
    for l, terms in enumerate(entries):
        for sign, coeff, j, k, position in terms:
            try:
                c = parse_scalar(coeff, params) if coeff else normalize(1)
            except ScalarError as e:
                raise SalamonElaborationError(f"Bad coefficient at position {position}: {e}") from e
            j, k = j - index_base, k - index_base
            if not (0 <= j < dim and 0 <= k < dim):
                raise SalamonElaborationError(f"Index out of range in entry {l + index_base}", witness=(j, k))
            if j == k:
                raise SalamonElaborationError(f"Repeated index in entry {l + index_base}", witness=(j, k))
            entry = brackets.setdefault((j, k), {})
            entry[l] = entry.get(l, 0) - sign * c
    try:
        L = lie_algebra(dim, brackets, labels or default_labels(dim, start=index_base))
    except ValidationError as e:
        raise SalamonElaborationError(str(e), witness=e.witness) from e
    report = validate_jacobi(L)
    if not report.passed:
        raise SalamonElaborationError(
            f"Jacobi identity fails at {tuple(i + index_base for i in report.triple)}",
            witness=report.triple,
        )
    logger.debug(f"Parsed Salamon tuple of dimension {dim}")
    return L


def _coefficient_text(c):
    text = format_scalar(c)
    if text == "1":
        return "", 1
    if text == "-1":
        return "", -1
    if text.startswith("-") and not any(ch in text[1:] for ch in "+-"):
        return text[1:] + "*", -1
    if any(ch in text[1:] for ch in "+-"):
        return f"({text})*", 1
    return text + "*", 1


def format_salamon(L, index_base=1):
    """Print L as a Salamon tuple; parse_salamon reads it back to the same algebra."""
    wide = L.dim - 1 + index_base >= 10
    entries = []
    for l in range(L.dim):
        parts = []
        for (j, k), coeffs in sorted(L.brackets.items()):
            if l not in coeffs:
                continue
            body, sign = _coefficient_text(-coeffs[l])
            a, b = j + index_base, k + index_base
            atom = f"e^{{{a},{b}}}" if wide else f"e^{{{a}{b}}}"
            if not parts:
                parts.append(("-" if sign < 0 else "") + body + atom)
            else:
                parts.append(("-" if sign < 0 else "+") + body + atom)
        entries.append("".join(parts) if parts else "0")
    return "(" + ",".join(entries) + ")"
