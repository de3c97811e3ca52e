"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from splitfol.exactalg.field import make, normalize
from splitfol.exactalg.poly import Poly, homogeneous_monomials
from splitfol.multical import PForm, VField

small_int = st.integers(-6, 6)
rationals = st.builds(lambda a, b: normalize(Fraction(a, b)), st.integers(-20, 20), st.integers(1, 7))


def quadratic(d: int = 3):
    """Elements of Q(sqrt d), sometimes rational."""
    return st.builds(lambda a, b: make(a, b, d), rationals, rationals)


@st.composite
def polys(draw, nvars: int, max_degree: int = 3, max_terms: int = 6, coeffs=rationals):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        ex = tuple(draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars)))
        if sum(ex) > max_degree:
            continue
        terms[ex] = draw(coeffs)
    return Poly.from_dict(nvars, terms)


@st.composite
def homogeneous_polys(draw, nvars: int, degree: int, coeffs=small_int):
    monos = homogeneous_monomials(nvars, degree)
    picked = draw(st.lists(st.sampled_from(monos), max_size=5, unique=True))
    return Poly.from_dict(nvars, {m: draw(coeffs) for m in picked})


@st.composite
def homogeneous_fields(draw, nvars: int, degree: int):
    return VField([draw(homogeneous_polys(nvars, degree)) for _ in range(nvars)])


@st.composite
def homogeneous_forms(draw, nvars: int, arity: int, degree: int):
    from itertools import combinations

    keys = list(combinations(range(nvars), arity))
    picked = draw(st.lists(st.sampled_from(keys), min_size=1, max_size=4, unique=True))
    return PForm(nvars, arity, {k: draw(homogeneous_polys(nvars, degree)) for k in picked})


@st.composite
def calculus_instances(draw):
    """``(nvars, arity, field degree, form coefficient degree)`` with n <= 5, degrees <= 3."""
    nvars = draw(st.integers(2, 6))
    arity = draw(st.integers(1, nvars - 1))
    return nvars, arity, draw(st.integers(0, 3)), draw(st.integers(0, 3))
