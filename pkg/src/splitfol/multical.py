"""Polynomial vector fields and alternating forms on affine space.

Sign conventions used throughout:

* ``i_X(f dx_I) = sum_j (-1)^j X^{I_j} f dx_{I minus I_j}`` (slot ``j`` counted from 0),
  so ``i_{d/dx_a}(dx_a ^ rest) = rest``.
* ``d(f dx_I) = sum_k (df/dx_k) dx_k ^ dx_I``.
* ``[X, Y]^k = X(Y^k) - Y(X^k)``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .exactalg.field import div, is_zero
from .exactalg.poly import Poly, format_poly, parse_poly


class VField:
    """``sum_i comps[i] d/dx_i`` with polynomial components."""

    __slots__ = ("nvars", "comps")

    def __init__(self, comps: Sequence[Poly]):
        comps = tuple(comps)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        nv = comps[0].nvars
        if len(comps) != nv or any(c.nvars != nv for c in comps):
            raise ValueError("components must be polynomials in len(comps) variables")
        self.nvars = nv
        self.comps = comps

    @classmethod
    def zero(cls, nvars: int) -> "VField":
        return cls([Poly.zero(nvars)] * nvars)

    @classmethod
    def coordinate(cls, nvars: int, i: int) -> "VField":
        """The constant field d/dx_i."""
        return cls([Poly.const(nvars, 1) if j == i else Poly.zero(nvars) for j in range(nvars)])

    @classmethod
    def radial(cls, nvars: int) -> "VField":
        return cls([Poly.var(nvars, i) for i in range(nvars)])

    @classmethod
    def from_matrix(cls, a: Sequence[Sequence]) -> "VField":
        """Linear field ``X^i = sum_j a[i][j] x_j``."""
        n = len(a)
        xs = [Poly.var(n, j) for j in range(n)]
        comps = []
        for i in range(n):
            c = Poly.zero(n)
            for j in range(n):
                if not is_zero(a[i][j]):
                    c = c + xs[j].scale(a[i][j])
            comps.append(c)
        return cls(comps)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative ``X(f)``."""
        out = Poly.zero(self.nvars)
        for i, c in enumerate(self.comps):
            if c:
                df = f.partial(i)
                if df:
                    out = out + c * df
        return out

    def degree(self) -> Optional[int]:
        """Common degree of the nonzero components (None if mixed or zero)."""
        degs = set()
        for c in self.comps:
            if c:
                hd = c.homogeneous_degree()
                if hd is None:
                    return None
                degs.add(hd)
        return degs.pop() if len(degs) == 1 else None

    def is_zero(self) -> bool:
        return not any(self.comps)

    def extend(self, nvars: int) -> "VField":
        """Same field read in more variables, with zero new components."""
        return VField([c.extend(nvars) for c in self.comps] + [Poly.zero(nvars)] * (nvars - self.nvars))

    def __add__(self, other: "VField") -> "VField":
        return VField([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VField") -> "VField":
        return VField([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VField([-a for a in self.comps])

    def scale(self, c) -> "VField":
        if isinstance(c, Poly):
            return VField([a * c for a in self.comps])
        return VField([a.scale(c) for a in self.comps])

    def __eq__(self, other):
        return isinstance(other, VField) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        parts = [f"({format_poly(c)}) d{i}" for i, c in enumerate(self.comps) if c]
        return "VField(" + (" + ".join(parts) or "0") + ")"


class PForm:
    """Alternating form ``sum_I terms[I] dx_I`` with strictly increasing ``I``."""

    __slots__ = ("nvars", "arity", "terms")

    def __init__(self, nvars: int, arity: int, terms: Optional[Mapping[tuple, Poly]] = None):
        if not 0 <= arity <= nvars:
            raise ValueError(f"arity {arity} impossible in {nvars} variables")
        self.nvars = nvars
        self.arity = arity
        clean = {}
        for idx, f in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != arity or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"bad index tuple {idx} for arity {arity}")
            if f.nvars != nvars:
                raise ValueError("coefficient has wrong variable count")
            if f:
                clean[idx] = f
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def function(cls, f: Poly) -> "PForm":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def dx(cls, nvars: int, *idx: int) -> "PForm":
        """``dx_{i1} ^ ... ^ dx_{ip}`` in the given order (sign applied when sorting)."""
        sign, key = _sort_sign(idx)
        if sign == 0:
            return cls(nvars, len(idx))
        return cls(nvars, len(idx), {key: Poly.const(nvars, sign)})

    @classmethod
    def volume(cls, nvars: int) -> "PForm":
        return cls(nvars, nvars, {tuple(range(nvars)): Poly.const(nvars, 1)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[Poly]:
        return list(self.terms.values())

    def coefficient_degree(self) -> Optional[int]:
        degs = set()
        for f in self.terms.values():
            hd = f.homogeneous_degree()
            if hd is None:
                return None
            degs.add(hd)
        return degs.pop() if len(degs) == 1 else None

    def __add__(self, other: "PForm") -> "PForm":
        _same_shape(self, other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] + f if k in out else f
        return PForm(self.nvars, self.arity, out)

    def __neg__(self):
        return PForm(self.nvars, self.arity, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other: "PForm") -> "PForm":
        return self + (-other)

    def scale(self, c) -> "PForm":
        """Multiply every coefficient by a scalar or a polynomial."""
        if isinstance(c, Poly):
            return PForm(self.nvars, self.arity, {k: f * c for k, f in self.terms.items()})
        return PForm(self.nvars, self.arity, {k: f.scale(c) for k, f in self.terms.items()})

    def extend(self, nvars: int) -> "PForm":
        return PForm(nvars, self.arity, {k: f.extend(nvars) for k, f in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return (self.nvars, self.arity, self.terms) == (other.nvars, other.arity, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.arity, tuple(self.terms.items())))

    def __repr__(self):
        return f"PForm({self.nvars}, {self.arity}, {len(self.terms)} terms)"


def _same_shape(a: PForm, b: PForm) -> None:
    if a.nvars != b.nvars or a.arity != b.arity:
        raise ValueError(f"shape mismatch: ({a.nvars},{a.arity}) vs ({b.nvars},{b.arity})")


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the sorting permutation of ``idx`` (0 on repeats) and the sorted tuple."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inv = sum(1 for a, b in combinations(idx, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(idx))


# operations -----------------------------------------------------------------

def interior_product(x: VField, w: PForm) -> PForm:
    if w.arity == 0:
        raise ValueError("cannot contract a 0-form")
    if x.nvars != w.nvars:
        raise ValueError("variable count mismatch")
    out: dict = {}
    for idx, f in w.terms.items():
        for j, a in enumerate(idx):
            xa = x.comps[a]
            if not xa:
                continue
            t = xa * f
            if j % 2:
                t = -t
            rest = idx[:j] + idx[j + 1:]
            out[rest] = out[rest] + t if rest in out else t
    return PForm(w.nvars, w.arity - 1, out)


def wedge(a: PForm, b: PForm) -> PForm:
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    if a.arity + b.arity > a.nvars:
        raise ValueError("arity overflow")
    out: dict = {}
    for i, f in a.terms.items():
        si = set(i)
        for j, g in b.terms.items():
            if si.intersection(j):
                continue
            sign, key = _sort_sign(i + j)
            t = f * g
            if sign < 0:
                t = -t
            out[key] = out[key] + t if key in out else t
    return PForm(a.nvars, a.arity + b.arity, out)


def exterior_derivative(w: PForm) -> PForm:
    if w.arity == w.nvars:
        raise ValueError("a top-degree form has no room for a derivative")
    out: dict = {}
    for idx, f in w.terms.items():
        for k in range(w.nvars):
            if k in idx:
                continue
            df = f.partial(k)
            if not df:
                continue
            pos = sum(1 for i in idx if i < k)
            key = idx[:pos] + (k,) + idx[pos:]
            if pos % 2:
                df = -df
            out[key] = out[key] + df if key in out else df
    return PForm(w.nvars, w.arity + 1, out)


def lie_bracket(x: VField, y: VField) -> VField:
    if x.nvars != y.nvars:
        raise ValueError("variable count mismatch")
    return VField([x.apply(yk) - y.apply(xk) for xk, yk in zip(x.comps, y.comps)])


def divergence(x: VField) -> Poly:
    out = Poly.zero(x.nvars)
    for i, c in enumerate(x.comps):
        out = out + c.partial(i)
    return out


def lie_derivative(x: VField, w: PForm) -> PForm:
    """Cartan's formula ``L_X = i_X d + d i_X``."""
    dw = exterior_derivative(w) if w.arity < w.nvars else None
    first = interior_product(x, dw) if dw is not None else PForm(w.nvars, w.arity)
    if w.arity == 0:
        return first
    return first + exterior_derivative(interior_product(x, w))


def lie_derivative_direct(x: VField, w: PForm) -> PForm:
    """``L_X`` from the Leibniz rule: ``X(f) dx_I + f sum_j dx_.. ^ d(X^{I_j}) ^ dx_..``."""
    out = PForm(w.nvars, w.arity)
    for idx, f in w.terms.items():
        acc = PForm(w.nvars, w.arity, {idx: x.apply(f)})
        for j, a in enumerate(idx):
            dxa = x.comps[a]
            for k in range(w.nvars):
                c = dxa.partial(k)
                if not c:
                    continue
                new = idx[:j] + (k,) + idx[j + 1:]
                sign, key = _sort_sign(new)
                if sign == 0:
                    continue
                acc = acc + PForm(w.nvars, w.arity, {key: (c * f).scale(sign)})
        out = out + acc
    return out


def contract_volume(fields: Sequence[VField]) -> PForm:
    """``i_{X_1} ... i_{X_k} (dx_0 ^ ... ^ dx_n)``; the last field is contracted first."""
    fields = list(fields)
    if not fields:
        raise ValueError("need at least one field")
    nv = fields[0].nvars
    if len(fields) > nv:
        raise ValueError(f"cannot contract {len(fields)} fields into a {nv}-form")
    w = PForm.volume(nv)
    for x in reversed(fields):
        w = interior_product(x, w)
    return w


def function_form(f: Poly) -> PForm:
    return PForm.function(f)


def differential(f: Poly) -> PForm:
    return exterior_derivative(PForm.function(f))


# text format ----------------------------------------------------------------

def format_form(w: PForm) -> str:
    """One entry per line, ``(poly) * dx_i^dx_j``; ``0`` for the zero form."""
    if w.is_zero():
        return "0"
    lines = []
    for idx, f in w.terms.items():
        basis = "^".join(f"dx{i}" for i in idx)
        lines.append(f"({format_poly(f)}) * {basis}" if idx else f"({format_poly(f)})")
    return "\n".join(lines)


def parse_form(text: str, nvars: int, arity: int) -> PForm:
    text = text.strip()
    if text == "0":
        return PForm(nvars, arity)
    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.endswith(")"):
            poly_s, idx = line[1:-1], ()
        else:
            head, basis = line.rsplit(" * ", 1)
            poly_s = head.strip()[1:-1]
            idx = tuple(int(t[2:]) for t in basis.split("^"))
        terms[idx] = parse_poly(poly_s, nvars)
    return PForm(nvars, arity, terms)


def forms_equal_up_to_sign(a: PForm, b: PForm) -> int:
    """``1`` if ``a == b``, ``-1`` if ``a == -b``, ``0`` otherwise."""
    if a == b:
        return 1
    if a == -b:
        return -1
    return 0


def proportionality(a: PForm, b: PForm):
    """Scalar ``c`` with ``a == c*b`` (b nonzero), or None."""
    if b.is_zero():
        return None if not a.is_zero() else 0
    k = next(iter(b.terms))
    if k not in a.terms:
        return 0 if a.is_zero() else None
    ka, kb = a.terms[k].leading(), b.terms[k].leading()
    if ka[0] != kb[0]:
        return None
    c = div(ka[1], kb[1])
    return c if a == b.scale(c) else None


def sum_forms(forms: Iterable[PForm], nvars: int, arity: int) -> PForm:
    out = PForm(nvars, arity)
    for f in forms:
        out = out + f
    return out
