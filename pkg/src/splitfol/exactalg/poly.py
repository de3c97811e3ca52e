"""Sparse multivariate polynomials with exact coefficients.

Monomials are packed into a single integer, 16 bits per variable with
``x0`` in the most significant slot.  Multiplying monomials is then integer
addition, and integer order coincides with lexicographic order on exponent
vectors, which the division routine and the text format both rely on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .field import FieldElem, common_radicand, div, format_scalar, normalize, parse_scalar

BITS = 16
MASK = (1 << BITS) - 1


def encode(exps: Sequence[int]) -> int:
    code = 0
    for e in exps:
        if e < 0 or e > MASK:
            raise ValueError(f"exponent out of range: {e}")
        code = (code << BITS) | e
    return code


def decode(code: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = code & MASK
        code >>= BITS
    return tuple(out)


def _clean(x):
    return normalize(x) if type(x) is Fraction else x


class Poly:
    """Polynomial in ``nvars`` variables; immutable by convention.

    ``terms`` maps packed monomials to nonzero coefficients.
    """

    __slots__ = ("nvars", "terms", "_deg")

    def __init__(self, nvars: int, terms: Optional[dict] = None, *, _trusted: bool = False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {k: _clean(v) for k, v in terms.items() if not _is_zero(v)}
        self._deg = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {0: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        return cls(nvars, {1 << (BITS * (nvars - 1 - i)): 1}, _trusted=True)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {encode(exps): c})

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[Sequence[int], object]) -> "Poly":
        terms: dict = {}
        for exps, c in data.items():
            if len(exps) != nvars:
                raise ValueError("exponent vector has wrong length")
            k = encode(exps)
            terms[k] = terms.get(k, 0) + c
        return cls(nvars, terms)

    # inspection -----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterable[tuple[tuple[int, ...], object]]:
        """``(exponent tuple, coefficient)`` pairs in ascending lex order."""
        for k in sorted(self.terms):
            yield decode(k, self.nvars), self.terms[k]

    def to_dict(self) -> dict:
        return {decode(k, self.nvars): c for k, c in self.terms.items()}

    def coefficients(self) -> list:
        return [self.terms[k] for k in sorted(self.terms)]

    def radicand(self) -> Optional[int]:
        return common_radicand(self.terms.values())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((sum(decode(k, self.nvars)) for k in self.terms), default=-1)
        return self._deg

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms, or None if inhomogeneous (or zero)."""
        degs = {sum(decode(k, self.nvars)) for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, d: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        hd = self.homogeneous_degree()
        return hd is not None and (d is None or hd == d)

    def constant_value(self):
        """The scalar value of a constant polynomial (0 for the zero polynomial)."""
        if any(k != 0 for k in self.terms):
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def variables(self) -> set[int]:
        used = set()
        for k in self.terms:
            for i, e in enumerate(decode(k, self.nvars)):
                if e:
                    used.add(i)
        return used

    def leading(self) -> tuple[int, object]:
        k = max(self.terms)
        return k, self.terms[k]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            if _is_scalar(other):
                other = Poly.const(self.nvars, other)
            else:
                return NotImplemented
        self._check(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v = v + c
                if _is_zero(v):
                    del terms[k]
                else:
                    terms[k] = _clean(v)
        return Poly(self.nvars, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if _is_scalar(other):
                other = Poly.const(self.nvars, other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if _is_zero(c):
            return Poly.zero(self.nvars)
        if c == 1 and not isinstance(c, FieldElem):
            return self
        terms = {}
        for k, v in self.terms.items():
            w = v * c
            if not _is_zero(w):
                terms[k] = _clean(w)
        return Poly(self.nvars, terms, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            a, b = self.terms, other.terms
            if len(a) < len(b):
                a, b = b, a
            out: dict = {}
            get = out.get
            for kb, cb in b.items():
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
            return Poly(self.nvars, {k: _clean(v) for k, v in out.items() if not _is_zero(v)}, _trusted=True)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Poly.const(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        shift = BITS * (self.nvars - 1 - i)
        one = 1 << shift
        terms = {}
        for k, c in self.terms.items():
            e = (k >> shift) & MASK
            if e:
                terms[k - one] = _clean(c * e)
        return Poly(self.nvars, terms, _trusted=True)

    def exact_div(self, g: "Poly") -> "Poly":
        """Quotient ``self / g``; raises ArithmeticError if ``g`` does not divide exactly."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lk, lc = g.leading()
        lexp = decode(lk, self.nvars)
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            k = max(rem)
            exps = decode(k, self.nvars)
            if any(a < b for a, b in zip(exps, lexp)):
                raise ArithmeticError("polynomial division is not exact")
            qk = k - lk
            qc = _clean(div(rem[k], lc))
            quot[qk] = qc
            for gk, gc in g.terms.items():
                t = gk + qk
                v = rem.get(t, 0) - qc * gc
                if _is_zero(v):
                    rem.pop(t, None)
                else:
                    rem[t] = _clean(v)
        return Poly(self.nvars, quot, _trusted=True)

    # evaluation / substitution -------------------------------------------
    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = 0
        for k, c in self.terms.items():
            v = c
            for x, e in zip(point, decode(k, self.nvars)):
                if e:
                    v = v * x**e
            total = total + v
        return _clean(total)

    def substitute(self, values: Mapping[int, object]) -> "Poly":
        """Replace some variables by scalars; the variable count is unchanged."""
        out: dict = {}
        for k, c in self.terms.items():
            exps = list(decode(k, self.nvars))
            v = c
            for i, x in values.items():
                if exps[i]:
                    v = v * x ** exps[i]
                    exps[i] = 0
            kk = encode(exps)
            out[kk] = out.get(kk, 0) + v
        return Poly(self.nvars, out)

    def compose_linear(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``x_i -> images[i]`` (all images share one variable count)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars
        result = Poly.zero(m)
        cache: dict = {}
        for k, c in self.terms.items():
            term = Poly.const(m, c)
            for i, e in enumerate(decode(k, self.nvars)):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def extend(self, nvars: int) -> "Poly":
        """The same polynomial read in ``nvars >= self.nvars`` variables (new ones appended)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable count")
        shift = BITS * (nvars - self.nvars)
        return Poly(nvars, {k << shift: c for k, c in self.terms.items()}, _trusted=True)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == ({0: other} if not _is_zero(other) else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def _is_zero(x) -> bool:
    return not isinstance(x, FieldElem) and x == 0


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, FieldElem))


def poly_arith(f: Poly, g, op: str) -> Poly:
    """``add``, ``mul`` (both Poly) or ``scale`` (g a scalar)."""
    if op == "add":
        return f + g
    if op == "mul":
        if not isinstance(g, Poly):
            raise TypeError("mul expects two polynomials")
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def poly_partial(f: Poly, i: int) -> Poly:
    return f.partial(i)


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(nvars, i) for i in range(nvars)]


def homogeneous_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in descending lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in homogeneous_monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


# text format ---------------------------------------------------------------

def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def format_poly(f: Poly) -> str:
    """``coeff * x0^a0 ... xn^an`` terms joined by `` + ``, ascending lex order."""
    if f.is_zero():
        return "0"
    out = []
    for exps, c in f.items():
        cs = format_scalar(c)
        if isinstance(c, FieldElem):
            cs = f"({cs})"
        mono = " ".join(f"x{i}^{e}" for i, e in enumerate(exps) if e)
        out.append(f"{cs} * {mono}" if mono else cs)
    return " + ".join(out)


def parse_poly(text: str, nvars: int) -> Poly:
    text = text.strip()
    if text == "0":
        return Poly.zero(nvars)
    data: dict = {}
    for term in _split_top(text, " + "):
        pieces = _split_top(term, " * ")
        coef_s = pieces[0].strip()
        if coef_s.startswith("(") and coef_s.endswith(")"):
            coef_s = coef_s[1:-1]
        c = parse_scalar(coef_s)
        exps = [0] * nvars
        if len(pieces) > 1:
            for tok in pieces[1].split():
                name, e = tok.split("^")
                exps[int(name[1:])] += int(e)
        data[tuple(exps)] = data.get(tuple(exps), 0) + c
    return Poly.from_dict(nvars, data)
