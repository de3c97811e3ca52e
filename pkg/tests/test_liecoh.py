from __future__ import annotations

from fractions import Fraction

import pytest

from splitfol.exactalg.field import make
from splitfol.liecoh.algebra import LieAlgebraError, NotClosedError, structure_constants, unit
from splitfol.liecoh.builtins import (
    builtin_algebra,
    chain,
    diagonal,
    infinito,
    rescaled,
    sl2_sym,
    two_dim_nonabelian,
)
from splitfol.liecoh.cohomology import (
    Cochain,
    ce_coboundary,
    coboundary_is_complex,
    cohomology_dim,
)
from splitfol.liecoh.module import ad_eigenvalues, minimal_polynomial, quotient_module, sl_basis

# dim H^0, H^1, H^2 from tests/oracles/cohomology_oracle.py (independent sympy assembly)
ORACLE_COHOMOLOGY = {
    "aff2": (two_dim_nonabelian, [0, 0, 0]),
    "sl2_sym(2)": (lambda: sl2_sym(2), [0, 0, 0]),
    "sl2_sym(3)": (lambda: sl2_sym(3), [0, 0, 0]),
    "infinito(3)": (lambda: infinito(3), [0, 0, 0]),
    "chain(4,3)": (lambda: chain(4, 3), [0, 0, 0]),
    "diagonal(3)": (lambda: diagonal(3), [1, 2, 1]),
    "diagonal(2)": (lambda: diagonal(2), [1, 1, 0]),
}


@pytest.mark.parametrize("name", sorted(ORACLE_COHOMOLOGY))
def test_cohomology_against_oracle(name):
    build, expected = ORACLE_COHOMOLOGY[name]
    mod = quotient_module(build())
    cache: dict = {}
    dims = [cohomology_dim(mod, k, crosscheck_primes=2, cache=cache) for k in range(3)]
    assert [d.dimension for d in dims] == expected
    assert all(d.modular_agrees for d in dims)


@pytest.mark.parametrize("complement", ["random", "graded"])
def test_cohomology_independent_of_complement(complement):
    g = infinito(4)
    if complement == "graded":
        mod = quotient_module(g, grading_element=0)
    else:
        mod = quotient_module(g, complement="random", seed=11)
    assert mod.is_representation()
    assert cohomology_dim(mod, 1).dimension == 0


def test_graded_complement_eigenvalues_are_even():
    mod = quotient_module(infinito(4), grading_element=0)
    values = set(mod.grading)
    assert all(v % 2 == 0 and -8 <= v <= 8 for v in values)


@pytest.mark.parametrize("g", [infinito(3), diagonal(3), sl2_sym(3)], ids=lambda g: g.label)
def test_coboundary_squares_to_zero(g):
    mod = quotient_module(g)
    for k in range(g.dim - 1):
        assert coboundary_is_complex(mod, k)


def test_cochain_coboundary_matches_rows():
    g = diagonal(3)
    mod = quotient_module(g)
    f = Cochain(1, {(0,): [1] + [0] * (mod.dim - 1), (1,): [0, Fraction(1, 2)] + [0] * (mod.dim - 2)})
    assert ce_coboundary(ce_coboundary(f, mod), mod).is_zero()


def test_builtins_satisfy_jacobi_and_brackets():
    g = infinito(3)
    assert g.format_bracket(0, 1) == "[X,Y1] = (-2)Y1"
    s = sl2_sym(2)
    assert [s.format_bracket(i, j) for i, j in ((0, 1), (0, 2), (1, 2))] == [
        "[h,Y] = (-2)Y", "[h,Y'] = (2)Y'", "[Y,Y'] = (-1)h"]
    for g in (infinito(5), sl2_sym(4), chain(6, 3), two_dim_nonabelian()):
        assert g.jacobi_holds()


def test_structure_constants_rejects_bad_input():
    with pytest.raises(NotClosedError):
        structure_constants([unit(3, 0, 1), unit(3, 1, 2)], ["a", "b"])
    with pytest.raises(LieAlgebraError):
        structure_constants([unit(2, 0, 1), unit(2, 0, 1)], ["a", "b"])
    with pytest.raises(LieAlgebraError):
        structure_constants([[[1, 0], [0, 0]]], ["a"])  # not traceless


def test_rescaling_preserves_cohomology():
    g = rescaled(infinito(3), [2, make(0, 1, 3)])
    assert g.radicand == 3
    assert cohomology_dim(quotient_module(g), 1).dimension == 0


def test_minimal_polynomial_and_eigenvalues():
    a = [[2, 0, 0], [0, 2, 0], [0, 0, -1]]
    assert minimal_polynomial(a) == [-2, -1, 1]  # (t - 2)(t + 1)
    assert sorted(ad_eigenvalues(a)) == [-1, 2]
    assert len(sl_basis(3)) == 8


def test_builtin_lookup():
    assert builtin_algebra("infinito", n="4").dim == 3
    assert builtin_algebra("g6").label == "g6"
    with pytest.raises(LieAlgebraError):
        builtin_algebra("nope")
