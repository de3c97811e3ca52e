"""Acceptance criteria, one test (and one PASS/FAIL line) per criterion."""

from __future__ import annotations

import json
import time
from fractions import Fraction

import numpy as np

from splitfol.exactalg.field import make
from splitfol.exactalg.poly import Poly, homogeneous_monomials, variables
from splitfol.extsearch import build_extension_system, lie_closure_verdict, solve_extension_system
from splitfol.foliation import (
    check_descends,
    check_integrability,
    check_pluecker,
    omega_from_fields,
    pullback_linear,
)
from splitfol.liecoh.builtins import builtin_algebra, diagonal, infinito, sl2_sym
from splitfol.liecoh.cohomology import cohomology_dim
from splitfol.liecoh.module import quotient_module
from splitfol.multical import (
    PForm,
    VField,
    contract_volume,
    divergence,
    exterior_derivative,
    interior_product,
    lie_bracket,
    lie_derivative,
    proportionality,
)
from splitfol.pipeline import PipelineOptions, run_pipeline
from splitfol.singdim import (
    IdealSpec,
    build_infinito_matrix,
    codim_report,
    coefficient_ideal,
    infinito_minor_checks,
    slice_codim_certificate,
)

# ---------------------------------------------------------------------------------
# 1. calculus identities on random homogeneous instances


def _random_poly(rng, nvars, degree, max_terms=3):
    monos = homogeneous_monomials(nvars, degree)
    picks = rng.choice(len(monos), size=min(max_terms, len(monos)), replace=False)
    return Poly.from_dict(nvars, {monos[i]: int(rng.integers(-5, 6)) for i in picks})


def _random_field(rng, nvars, degree):
    return VField([_random_poly(rng, nvars, degree) for _ in range(nvars)])


def _random_form(rng, nvars, arity, degree):
    from itertools import combinations

    keys = list(combinations(range(nvars), arity))
    picks = rng.choice(len(keys), size=min(3, len(keys)), replace=False)
    return PForm(nvars, arity, {keys[i]: _random_poly(rng, nvars, degree) for i in picks})


def test_criterion_1_calculus_identities(criterion):
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    failures = []
    count = 120
    for k in range(count):
        nv = int(rng.integers(2, 7))  # n = nv - 1 <= 5
        p = int(rng.integers(1, nv))
        dx, dy, dw = (int(rng.integers(0, 4)) for _ in range(3))
        x, y = _random_field(rng, nv, dx), _random_field(rng, nv, dy)
        w = _random_form(rng, nv, p, dw)
        r = VField.radial(nv)
        checks = {
            "d^2": p + 2 > nv or exterior_derivative(exterior_derivative(w)).is_zero(),
            "[L_X,i_Y]": lie_derivative(x, interior_product(y, w)) - interior_product(y, lie_derivative(x, w))
            == interior_product(lie_bracket(x, y), w),
            "L_R": lie_derivative(r, w) == w.scale(dw + p),
            "div": divergence(lie_bracket(x, y)) == x.apply(divergence(y)) - y.apply(divergence(x)),
            "[X,R]": lie_bracket(x, r) == x.scale(1 - dx),
        }
        if p >= 2:
            # i_R w0 = 0 for w0 = i_R w; coefficients of degree dw + 1, arity p - 1
            w0 = interior_product(r, w)
            checks["i_R d"] = interior_product(r, exterior_derivative(w0)) == w0.scale(dw + 1 + p - 1)
        failures += [(k, name) for name, ok in checks.items() if not ok]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    detail = f"{count} instances, {elapsed:.1f}s, failures={failures[:3]}"
    assert criterion("1 calculus identities", ok, detail)


# ---------------------------------------------------------------------------------
# 2. Pluecker / integrability discrimination

BUILTIN_SPECS = [
    ("diagonal", {"n": 3}), ("diagonal", {"n": 4}), ("diagonal", {"n": 4, "q": 2}),
    ("chain", {"n": 5, "r": 3}), ("aff_sym", {"r": 3}), ("aff_sym", {"r": 4}), ("aff_sym", {"r": 5}),
    ("sl2_sym", {"r": 4}), ("sl2_sym", {"r": 5}), ("sl2_sym", {"r": 6}),
    ("infinito", {"n": 3}), ("infinito", {"n": 4}), ("infinito", {"n": 5}), ("infinito", {"n": 6}),
    ("infinito", {"n": 7}), ("g6", {}), ("g7", {}),
]


def test_criterion_2_pluecker_integrability(criterion):
    one = Poly.const(4, 1)
    two_planes = PForm(4, 2, {(0, 1): one, (2, 3): one})
    x = variables(4)
    contact = PForm(4, 1, {(0,): -x[1], (1,): x[0], (2,): -x[3], (3,): x[2]})
    parts = {
        "two planes fail Pluecker": not check_pluecker(two_planes).passed,
        "contact fails integrability": not check_integrability(contact).passed,
    }
    rng = np.random.default_rng(7)
    contraction_ok = True
    for _ in range(40):
        nv = int(rng.integers(3, 7))
        k = int(rng.integers(1, nv - 1))
        fields = [_random_field(rng, nv, int(rng.integers(0, 3))) for _ in range(k)]
        w = contract_volume(fields)
        contraction_ok &= w.is_zero() or check_pluecker(w).passed
    parts["contractions pass Pluecker"] = contraction_ok
    builtin_ok = True
    for name, params in BUILTIN_SPECS:
        d = omega_from_fields(builtin_algebra(name, **params).fields())
        builtin_ok &= d.nonzero and check_integrability(d.omega).passed
    parts["builtins integrable"] = builtin_ok
    bad = [k for k, v in parts.items() if not v]
    assert criterion("2 Pluecker/integrability discrimination", not bad, f"failed: {bad}" if bad else "4/4 parts")


# ---------------------------------------------------------------------------------
# 3. diagonal example


def test_criterion_3_diagonal(criterion):
    details, ok = [], True
    for n in (3, 4):
        g = diagonal(n)
        d = omega_from_fields(g.fields())
        dw = exterior_derivative(d.omega)
        c = proportionality(dw, contract_volume(g.fields()))
        exact = c in (n + 1, -(n + 1))
        sign = None if c is None else (1 if c > 0 else -1)
        cert = codim_report(d, trials=8)["sing_domega_geq_3"]
        two_primes = cert.certified and len(cert.primes) == 2 and cert.trials == 8
        ok &= exact and two_primes
        details.append(f"n={n}: d omega = {c} * contraction (sign {sign:+d}, unit scalar would be {c in (1, -1)}), "
                       f"codim>=3 {cert.verdict} at {cert.primes}")
    assert criterion("3 diagonal example", ok, "; ".join(details))


# ---------------------------------------------------------------------------------
# 4. chain algebra with r = 2


def test_criterion_4_infinito(criterion):
    parts: dict = {}
    timings = {}
    for n in range(3, 8):
        g = infinito(n)
        d = omega_from_fields(g.fields())
        dw = exterior_derivative(d.omega)
        x, ys = g.fields()[0], g.fields()[1:]
        r = VField.radial(n + 1)
        z = x.scale(n + 1) - r.scale((n - 1) * (n - 2))
        literal = dw == contract_volume([z] + ys).scale((-1) ** (n - 2))
        parts[f"identity n={n}"] = literal
        parts[f"minors n={n}"] = all(ch.ok for ch in infinito_minor_checks(build_infinito_matrix(n)))
        cert = codim_report(d, trials=8)["sing_domega_geq_3"]
        parts[f"codim n={n}"] = cert.certified
        if n <= 6:
            t0 = time.perf_counter()
            h1 = cohomology_dim(quotient_module(g), 1).dimension
            timings[n] = time.perf_counter() - t0
            parts[f"H1 n={n}"] = h1 == 0
    parts["H1 runtime n=6 <= 120s"] = timings[6] <= 120
    bad = [k for k, v in parts.items() if not v]
    detail = f"failed: {bad}" if bad else f"{len(parts)} parts"
    detail += f"; H1 n=6 in {timings[6]:.1f}s"
    assert criterion("4 chain algebra identities", not bad, detail)


# ---------------------------------------------------------------------------------
# 5. extension case analysis


def test_criterion_5_extensions(criterion):
    F = Fraction
    t0 = time.perf_counter()
    sols = {n: solve_extension_system(build_extension_system(n)) for n in (5, 6, 7, 8)}
    verdicts = {n: [lie_closure_verdict(s) for s in ss] for n, ss in sols.items()}
    parts = {}
    parts["n=5 none"] = sols[5] == []
    parts["n=6 unique (9/8,-3/2), closed, [Y2,Y3]=0"] = (
        [s.values for s in sols[6]] == [(F(9, 8), F(-3, 2))]
        and verdicts[6][0].closed
        and verdicts[6][0].brackets["[Y2,Y3]"] == {}
    )
    sqrt3_pair = {
        (make(0, F(1, 2), 3), make(1, -1, 3), make(F(-3, 2), F(1, 2), 3)),
        (make(0, F(-1, 2), 3), make(1, 1, 3), make(F(-3, 2), F(-1, 2), 3)),
    }
    parts["n=7 sqrt3 tuple, closed, [Y2,Y3]=5/2 Y5"] = (
        {s.values for s in sols[7]} == sqrt3_pair
        and all(v.closed and v.brackets["[Y2,Y3]"] == {"Y5": F(5, 2)} for v in verdicts[7])
    )
    parts["n=8 exactly two, both failing at [Y2,Y3]"] = (
        len(sols[8]) == 2 and all(not v.closed and "[Y2,Y3]" in v.failing for v in verdicts[8])
    )
    elapsed = time.perf_counter() - t0
    parts["runtime seconds"] = elapsed < 30
    bad = [k for k, v in parts.items() if not v]
    found8 = ", ".join(f"{s.format()} {'closed' if v.closed else 'open'}" for s, v in zip(sols[8], verdicts[8]))
    detail = (f"failed: {bad}; n=8 found {len(sols[8])}: {found8}" if bad else "all cases") + f"; {elapsed:.1f}s"
    assert criterion("5 extension case analysis", not bad, detail)


# ---------------------------------------------------------------------------------
# 6. semisimple examples


def test_criterion_6_semisimple(criterion):
    parts, details = {}, []
    for r in (5, 6):
        g = sl2_sym(r)
        t0 = time.perf_counter()
        d = omega_from_fields(g.fields())
        cert = codim_report(d, trials=8)["sing_omega_geq_3"]
        h1 = cohomology_dim(quotient_module(g), 1).dimension
        elapsed = time.perf_counter() - t0
        parts[f"r={r}"] = d.nonzero and d.q == r - 3 and cert.certified and h1 == 0 and elapsed <= 120
        details.append(f"r={r}: q={d.q} codim>=3 {cert.verdict}, H1={h1}, {elapsed:.1f}s")
    bad = [k for k, v in parts.items() if not v]
    assert criterion("6 semisimple examples", not bad, "; ".join(details))


# ---------------------------------------------------------------------------------
# 7. negative codimension check


def test_criterion_7_codim_one_semisimple(criterion):
    from splitfol.exactalg.modp import PrimeContext, reduce_mod

    d = omega_from_fields(sl2_sym(4).fields())
    ideal = coefficient_ideal(exterior_derivative(d.omega))
    cert = slice_codim_certificate(ideal, 3, trials=8)
    primes_with_witnesses = {w[0] for w in cert.witnesses}
    exact = all(
        all(reduce_mod(g, PrimeContext.create(w[0])).evaluate(w[1:]) == 0 for g in ideal.generators) and any(w[1:])
        for w in cert.witnesses
    )
    ok = cert.refuted and primes_with_witnesses == set(cert.primes) and exact
    assert criterion("7 sl2_sym(4) codim refuted", ok,
                     f"{cert.verdict}, {len(cert.witnesses)} witnesses at {sorted(primes_with_witnesses)}")


# ---------------------------------------------------------------------------------
# 8. pull-back stability


def test_criterion_8_pullback(criterion):
    base = omega_from_fields(diagonal(3).fields())
    ok, details = True, []
    for m in (1, 2):
        pb = pullback_linear(base, m).distribution
        good = (check_descends(pb.omega).passed and check_pluecker(pb.omega).passed
                and check_integrability(pb.omega).passed and pb.degree == base.degree)
        ok &= good
        details.append(f"m={m}: n={pb.n} degree={pb.degree} {'ok' if good else 'bad'}")
    assert criterion("8 pull-back stability", ok, "; ".join(details))


# ---------------------------------------------------------------------------------
# 9. robustness


def test_criterion_9_robustness(criterion, tmp_path):
    g = infinito(4)
    h_std = cohomology_dim(quotient_module(g), 1).dimension
    h_rand = cohomology_dim(quotient_module(g, complement="random", seed=5), 1).dimension
    h_grad = cohomology_dim(quotient_module(g, grading_element=0), 1).dimension
    parts = {"complement invariance": h_std == h_rand == h_grad}
    x = variables(6)
    coords_ok = True
    for k in range(1, 5):
        ideal = IdealSpec(6, x[:k])
        coords_ok &= slice_codim_certificate(ideal, k).certified
        coords_ok &= slice_codim_certificate(ideal, k + 1).refuted
    parts["coordinate ideals"] = coords_ok
    reports = []
    for run in range(2):
        opts = PipelineOptions(seed=9, dump_dir=str(tmp_path / f"run{run}"))
        reports.append(run_pipeline(builtin_algebra("infinito", n=4), opts).dumps())
    files_equal = all(
        (tmp_path / "run0" / f).read_bytes() == (tmp_path / "run1" / f).read_bytes()
        for f in ("omega.txt", "domega.txt", "algebra.json", "report.json")
    )
    parts["byte-stable reports"] = reports[0] == reports[1] and files_equal
    bad = [k for k, v in parts.items() if not v]
    assert criterion("9 robustness", not bad, f"H1 std/random/graded = {h_std}/{h_rand}/{h_grad}"
                     + (f"; failed: {bad}" if bad else ""))
