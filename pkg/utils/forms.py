# utils/forms.py
"""Exterior algebra over the complexified dual of a Lie algebra.

A form is a sparse map from strictly increasing multi-indices to scalars.
The Chevalley-Eilenberg differential uses d(alpha)(x, y) = -alpha([x, y]) on
1-forms, extended as an antiderivation.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field

import sympy as sp

from utils.exceptions import ScalarError, ValidationError
from utils.linalg import basis_vector, extend, inverse, matrices_equal, rank, columns
from utils.scalars import I, format_scalar, is_zero, normalize, parse_scalar

logger = logging.getLogger(__name__)


def _sort_with_sign(indices):
    """Sort a multi-index, returning (sign, sorted tuple) or (0, None) on repeats."""
    if len(set(indices)) != len(indices):
        return 0, None
    perm = list(indices)
    sign = 1
    # bubble sort counts transpositions; degrees stay small
    for i in range(len(perm)):
        for j in range(len(perm) - 1 - i):
            if perm[j] > perm[j + 1]:
                perm[j], perm[j + 1] = perm[j + 1], perm[j]
                sign = -sign
    return sign, tuple(perm)


@dataclass(frozen=True, eq=False)
class Form:
    """Homogeneous exterior form.

    Attributes:
        dim (int): Dimension of the underlying algebra
        degree (int): Form degree
        terms (dict): Strictly increasing index tuple -> nonzero scalar
    """

    dim: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __add__(self, other):
        _check_compatible(self, other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValidationError(f"Cannot add forms of degrees {self.degree} and {other.degree}")
        degree = self.degree if self.terms else other.degree
        merged = dict(self.terms)
        for idx, c in other.terms.items():
            merged[idx] = merged.get(idx, 0) + c
        return make_form(self.dim, degree, merged)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def scale(self, c):
        return make_form(self.dim, self.degree, {idx: c * v for idx, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def coefficient(self, indices):
        sign, key = _sort_with_sign(tuple(indices))
        if not sign:
            return sp.Integer(0)
        return sign * self.terms.get(key, sp.Integer(0))

    def conjugate(self):
        return make_form(self.dim, self.degree, {idx: sp.conjugate(v) for idx, v in self.terms.items()})

    def equals(self, other):
        return self.dim == other.dim and (self - other).is_zero()


def _check_compatible(a, b):
    if a.dim != b.dim:
        raise ValidationError(f"Dimension mismatch: {a.dim} vs {b.dim}")


def make_form(dim, degree, terms):
    """Normalize coefficients, sort indices and drop zeros."""
    clean = {}
    for idx, c in terms.items():
        sign, key = _sort_with_sign(tuple(idx))
        if not sign:
            continue
        clean[key] = clean.get(key, 0) + sign * c
    out = {}
    for key in sorted(clean):
        value = normalize(clean[key])
        if value != 0:
            out[key] = value
    return Form(dim, degree, out)


def zero_form(dim, degree):
    return Form(dim, degree, {})


def basis_form(dim, *indices):
    """e^{i1} ^ ... ^ e^{ik} with 0-based indices."""
    return make_form(dim, len(indices), {tuple(indices): 1})


def one_form(covector):
    """1-form from a covector given as a flat list or row/column vector."""
    values = list(covector)
    return make_form(len(values), 1, {(i,): c for i, c in enumerate(values)})


def covector_of(a):
    """Coefficient list of a 1-form."""
    if a.degree != 1:
        raise ValidationError("Only 1-forms have a covector")
    return [a.terms.get((i,), sp.Integer(0)) for i in range(a.dim)]


def wedge(a, b):
    """Exterior product with exact signs."""
    _check_compatible(a, b)
    terms = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            sign, key = _sort_with_sign(ia + ib)
            if not sign:
                continue
            terms[key] = terms.get(key, 0) + sign * ca * cb
    return make_form(a.dim, a.degree + b.degree, terms)


def wedge_all(forms):
    forms = list(forms)
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


def differential_of_coordinate(L, l):
    """d e^l = -sum_{j<k} c_jk^l e^{jk}."""
    terms = {}
    for (j, k), coeffs in L.brackets.items():
        if l in coeffs:
            terms[(j, k)] = -coeffs[l]
    return make_form(L.dim, 2, terms)


def ce_d(L, a):
    """Chevalley-Eilenberg differential of a form on L."""
    if a.dim != L.dim:
        raise ValidationError(f"Form of dimension {a.dim} on an algebra of dimension {L.dim}")
    d_basis = [differential_of_coordinate(L, l) for l in range(L.dim)]
    terms = {}
    for idx, c in a.terms.items():
        for pos, l in enumerate(idx):
            dl = d_basis[l]
            if dl.is_zero():
                continue
            sign = -1 if pos % 2 else 1
            before, after = idx[:pos], idx[pos + 1:]
            for jk, v in dl.terms.items():
                s, key = _sort_with_sign(before + jk + after)
                if not s:
                    continue
                terms[key] = terms.get(key, 0) + sign * s * c * v
    return make_form(L.dim, a.degree + 1, terms)


def substitute(a, images, new_dim):
    """Pull a form through e^i -> images[i] (1-forms in another coframe)."""
    terms = {}
    for idx, c in a.terms.items():
        expanded = {(): c}
        for i in idx:
            nxt = {}
            for key, v in expanded.items():
                for (j,), w in images[i].terms.items():
                    s, k2 = _sort_with_sign(key + (j,))
                    if not s:
                        continue
                    nxt[k2] = nxt.get(k2, 0) + s * v * w
            expanded = nxt
        for key, v in expanded.items():
            terms[key] = terms.get(key, 0) + v
    return make_form(new_dim, a.degree, terms)


@dataclass(frozen=True, eq=False)
class Coframe:
    """Adapted coframe of an almost complex structure.

    Attributes:
        u (tuple): Real vectors u_j
        v (tuple): Real vectors v_j = J u_j
        dual (ImmutableMatrix): Rows u^1, v^1, u^2, v^2, ... dual to (u_1, v_1, ...)
    """

    u: tuple
    v: tuple
    dual: sp.ImmutableMatrix

    @property
    def n(self):
        return len(self.u)

    @property
    def dim(self):
        return 2 * len(self.u)

    def u_form(self, j):
        return one_form(list(self.dual[2 * j, :]))

    def v_form(self, j):
        return one_form(list(self.dual[2 * j + 1, :]))

    def gamma(self, j):
        """gamma_j = u^j + i v^j."""
        return self.u_form(j) + self.v_form(j).scale(I)

    def gamma_bar(self, j):
        return self.u_form(j) - self.v_form(j).scale(I)

    def sigma(self):
        """sigma = gamma_1 ^ ... ^ gamma_n."""
        return wedge_all(self.gamma(j) for j in range(self.n))

    def volume(self):
        """u^1 ^ v^1 ^ ... ^ u^n ^ v^n."""
        return wedge_all(f for j in range(self.n) for f in (self.u_form(j), self.v_form(j)))


def coframe_from_pairs(u_vectors, J):
    """Coframe for the ordered pairs (u_j, J u_j)."""
    J = sp.ImmutableMatrix(J)
    u = tuple(sp.ImmutableMatrix(x) for x in u_vectors)
    v = tuple(normalize_vector(J * x) for x in u)
    basis = columns([w for pair in zip(u, v) for w in pair])
    if rank(basis) != J.rows:
        raise ValidationError("Coframe vectors do not form a basis")
    return Coframe(u, v, inverse(basis))


def normalize_vector(x):
    return sp.ImmutableMatrix(x).applyfunc(normalize)


def adapted_coframe(L, J):
    """Deterministic adapted coframe: scan e_1, e_2, ... and pair each new vector with its J-image.

    Raises:
        ValidationError: If J is not almost complex
    """
    J = sp.ImmutableMatrix(J)
    dim = J.rows
    if dim % 2 or not matrices_equal(J * J, -sp.ImmutableMatrix.eye(dim)):
        raise ValidationError("J is not an almost complex structure")
    chosen = []
    u_vectors = []
    for i in range(dim):
        e = basis_vector(dim, i)
        if extend(chosen, [e]):
            u_vectors.append(e)
            chosen.extend([e, normalize_vector(J * e)])
        if len(chosen) == dim:
            break
    logger.debug(f"Adapted coframe pairs start at {[list(x).index(1) for x in u_vectors]}")
    return coframe_from_pairs(u_vectors, J)


def bigrade(J, a, coframe=None):
    """Split a form into its (p, q) components relative to J.

    Args:
        J: Almost complex structure matrix
        a (Form): Form to split
        coframe (Coframe): Optional coframe (defaults to the adapted one)

    Returns:
        dict: (p, q) -> Form, only nonzero components
    """
    J = sp.ImmutableMatrix(J)
    dim = J.rows
    cf = coframe or adapted_coframe(None, J)
    n = cf.n
    # e^i = sum_j e^i(u_j) u^j + e^i(v_j) v^j, u^j = (g_j + gb_j)/2, v^j = -i (g_j - gb_j)/2
    images = []
    for i in range(dim):
        terms = {}
        for j in range(n):
            cu, cv = cf.u[j][i], cf.v[j][i]
            terms[(j,)] = terms.get((j,), 0) + cu / 2 - I * cv / 2
            terms[(n + j,)] = terms.get((n + j,), 0) + cu / 2 + I * cv / 2
        images.append(make_form(2 * n, 1, terms))
    in_gamma = substitute(a, images, 2 * n)
    grouped = {}
    for idx, c in in_gamma.terms.items():
        p = sum(1 for t in idx if t < n)
        grouped.setdefault((p, len(idx) - p), {})[idx] = c
    back = [cf.gamma(j) for j in range(n)] + [cf.gamma_bar(j) for j in range(n)]
    result = {}
    for pq in sorted(grouped):
        component = substitute(make_form(2 * n, a.degree, grouped[pq]), back, dim)
        if not component.is_zero():
            result[pq] = component
    return result


def _label_table(labels):
    if labels is None:
        return None
    suffixes = [lbl[1:] if lbl.startswith("e") else lbl for lbl in labels]
    return suffixes


def format_form(a, labels=None):
    """Print a form as e.g. "-e{013} - i*e{023}"."""
    if a.is_zero():
        return "0"
    suffixes = _label_table(labels) or [str(i + 1) for i in range(a.dim)]
    joiner = "" if all(len(s) == 1 for s in suffixes) else ","
    parts = []
    for idx, c in a.terms.items():
        atom = "e{" + joiner.join(suffixes[i] for i in idx) + "}" if idx else ""
        text = format_scalar(c)
        negative = text.startswith("-") and "+" not in text[1:] and "-" not in text[1:]
        if negative:
            text = text[1:]
        if not atom:
            body = text
        elif text == "1":
            body = atom
        elif re.fullmatch(r"[0-9/√a-zπ_]+", text):
            body = f"{text}*{atom}"
        else:
            body = f"({text})*{atom}"
        parts.append(("-" if negative else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _split_top_level(text):
    """Split at top-level + and - signs, keeping the signs."""
    pieces, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > start and text[pos - 1] not in "*/(":
            pieces.append(text[start:pos])
            start = pos
    pieces.append(text[start:])
    return [p for p in pieces if p.strip()]


def parse_form(text, dim, labels=None):
    """Parse the printer's notation back into a Form."""
    suffixes = _label_table(labels) or [str(i + 1) for i in range(dim)]
    lookup = {s: i for i, s in enumerate(suffixes)}
    joiner = "" if all(len(s) == 1 for s in suffixes) else ","
    cleaned = text.replace("−", "-").replace(" ", "")
    if cleaned == "0":
        return zero_form(dim, 0)
    terms, degree = {}, None
    for piece in _split_top_level(cleaned):
        match = re.fullmatch(r"([+-]?)(?:(.*?)\*?)?e\{([^}]*)\}", piece)
        if not match:
            raise ScalarError(f"Cannot read form term '{piece}'")
        sign, coeff, body = match.groups()
        names = body.split(",") if joiner else list(body)
        try:
            idx = tuple(lookup[nm] for nm in names)
        except KeyError as e:
            raise ScalarError(f"Unknown index {e} in '{piece}'") from e
        c = parse_scalar(coeff) if coeff else sp.Integer(1)
        if sign == "-":
            c = -c
        if degree is not None and degree != len(idx):
            raise ValidationError("Mixed degrees in form text")
        degree = len(idx)
        s, key = _sort_with_sign(idx)
        if s:
            terms[key] = terms.get(key, 0) + s * c
    return make_form(dim, degree or 0, terms)
