"""Singular sets of forms: coefficient ideals, the minor matrix, slice codimension certificates.

Certificates work over F_p on random linear slices.  For a homogeneous ideal
``I`` and a ``c``-dimensional slice ``L``, ``V(I) cap L = {0}`` holds exactly
when the restricted ideal contains every monomial of some degree ``s`` in the
slice coordinates; by Lazard's bound it suffices to look at
``s <= sum of the c largest (deg - 1) + 1``.  That is a rank test on a
Macaulay matrix.  Full rank mod ``p`` lifts: the same integer slice over Q
(or Q(sqrt d), through the chosen square root) also has full rank, so the
complex cone ``V(I)`` has codimension ``>= c``.  When the rank test fails at
the bound, F_p-points of ``V(I) cap L`` are searched and reported as witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .exactalg.linalg import det_bareiss, nullspace_mod_p, rank_mod_p
from .exactalg.modp import PrimeContext, reduce_mod, select_primes
from .exactalg.poly import BITS, Poly, decode, encode, homogeneous_monomials
from .multical import PForm, VField, exterior_derivative

ENUMERATION_LIMIT = 2_000_000


@dataclass
class IdealSpec:
    nvars: int
    generators: list
    label: str = ""

    def __post_init__(self):
        self.generators = [g for g in self.generators if g]
        if not self.generators:
            raise ValueError("ideal has no nonzero generators")
        for g in self.generators:
            if g.nvars != self.nvars:
                raise ValueError("generator has the wrong variable count")
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")

    def radicand(self) -> Optional[int]:
        from .exactalg.field import common_radicand

        return common_radicand(c for g in self.generators for c in g.terms.values())


def coefficient_ideal(w: PForm, label: str = "") -> IdealSpec:
    if w.is_zero():
        raise ValueError("the zero form has no singular-set ideal")
    return IdealSpec(w.nvars, w.coefficients(), label)


# minor matrix ----------------------------------------------------------------

@dataclass
class MinorMatrix:
    n: int
    rows: list  # list of rows of Poly
    lambdas: Optional[list] = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])


def infinito_lambdas(n: int) -> list[int]:
    return [(n + 1) * (n - 2 * j) - (n - 1) * (n - 2) for j in range(n + 1)]


def build_infinito_matrix(n: int, lambdas: Optional[Sequence] = None) -> MinorMatrix:
    """First row ``lambda_j z_j``, then the rows of ``Y_1..Y_{n-2}`` (``Y_k`` has ``z_{j+k}`` in column ``j``)."""
    if n < 3:
        raise ValueError("needs n >= 3")
    nv = n + 1
    lam = list(lambdas) if lambdas is not None else infinito_lambdas(n)
    zero = Poly.zero(nv)
    rows = [[Poly.var(nv, j).scale(lam[j]) for j in range(nv)]]
    for k in range(1, n - 1):
        rows.append([Poly.var(nv, j + k) if j + k <= n else zero for j in range(nv)])
    return MinorMatrix(n, rows, lam)


def minor_matrix_from_fields(fields: Sequence[VField]) -> MinorMatrix:
    """Rows are the component vectors of the given fields."""
    rows = [list(f.comps) for f in fields]
    return MinorMatrix(fields[0].nvars - 1, rows)


def selected_minor(m: MinorMatrix, cols: Sequence[int], substitute: Optional[dict] = None) -> Poly:
    """Determinant of the submatrix on ``cols``, after optional variable substitution."""
    nrows, ncols = m.shape
    cols = list(cols)
    if len(cols) != nrows:
        raise ValueError(f"need {nrows} columns, got {len(cols)}")
    sub = [[m.rows[r][c] for c in cols] for r in range(nrows)]
    if substitute:
        sub = [[e.substitute(substitute) for e in row] for row in sub]
    return det_bareiss(sub)


def all_maximal_minors(m: MinorMatrix) -> dict:
    nrows, ncols = m.shape
    return {cols: selected_minor(m, cols) for cols in combinations(range(ncols), nrows)}


def pure_power(f: Poly) -> Optional[tuple[int, int, object]]:
    """``(var, exponent, scalar)`` if ``f`` is a nonzero scalar times one variable power."""
    if len(f.terms) != 1:
        return None
    k, c = next(iter(f.terms.items()))
    exps = decode(k, f.nvars)
    used = [(i, e) for i, e in enumerate(exps) if e]
    if len(used) != 1:
        return None
    return used[0][0], used[0][1], c


@dataclass
class MinorCheck:
    description: str
    cols: tuple
    substitution: dict
    minor: Poly
    expected_var: int
    expected_exp: int
    scalar: object = None

    @property
    def ok(self) -> bool:
        pp = pure_power(self.minor)
        return pp is not None and pp[0] == self.expected_var and pp[1] == self.expected_exp


def infinito_minor_checks(m: MinorMatrix) -> list[MinorCheck]:
    """The three specialized minors that cut the singular set down to ``z_n = z_{n-1} = z_{n-2} = 0``."""
    n = m.n
    plans = [
        ("omit columns 0,1", tuple(range(2, n + 1)), {}, n),
        ("z_n = 0, omit columns 0 and n", tuple(range(1, n)), {n: 0}, n - 1),
        ("z_n = z_{n-1} = 0, omit columns n-1 and n", tuple(range(0, n - 1)), {n: 0, n - 1: 0}, n - 2),
    ]
    out = []
    for desc, cols, subs, var in plans:
        minor = selected_minor(m, cols, subs)
        pp = pure_power(minor)
        out.append(MinorCheck(desc, cols, subs, minor, var, n - 1, pp[2] if pp else None))
    return out


# slice certificates -------------------------------------------------------------

@dataclass
class TrialOutcome:
    prime: int
    trial: int
    certified: bool
    degree_checked: Optional[int]
    witnesses: list = field(default_factory=list)
    note: str = ""


@dataclass
class SliceCertificate:
    ideal_id: str
    claimed_codim: int
    primes: list
    trials: int
    verdict: str
    witnesses: list
    seed: int
    per_prime: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-geq"

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted-with-witnesses"

    def to_json(self) -> dict:
        return {
            "ideal_id": self.ideal_id,
            "claimed_codim": self.claimed_codim,
            "primes": list(self.primes),
            "trials": self.trials,
            "verdict": self.verdict,
            "witnesses": [list(map(int, w)) for w in self.witnesses],
            "seed": self.seed,
            "per_prime": {str(p): v for p, v in self.per_prime.items()},
        }


def _mono_codes(c: int, degree: int) -> list[int]:
    return [encode(e) for e in homogeneous_monomials(c, degree)]


def _mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = (out.get(k, 0) + ca * cb) % p
    return {k: v for k, v in out.items() if v}


def _restrict(gens_mod: list, basis: np.ndarray, p: int) -> list[tuple[int, dict]]:
    """Generators pulled back to the slice spanned by the rows of ``basis``."""
    c, nv = basis.shape
    unit = [1 << (BITS * (c - 1 - a)) for a in range(c)]
    linear = []
    for i in range(nv):
        linear.append({unit[a]: int(basis[a, i]) for a in range(c) if basis[a, i]})
    powers: dict = {}

    def power(i: int, e: int) -> dict:
        key = (i, e)
        if key not in powers:
            powers[key] = linear[i] if e == 1 else _mul(power(i, e - 1), linear[i], p)
        return powers[key]

    out = []
    for deg, terms in gens_mod:
        acc: dict = {}
        for exps, coef in terms:
            t = {0: coef}
            for i, e in enumerate(exps):
                if e:
                    t = _mul(t, power(i, e), p)
                    if not t:
                        break
            for k, v in t.items():
                acc[k] = (acc.get(k, 0) + v) % p
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            out.append((deg, acc))
    return out


def _macaulay_full_rank(restricted: list, c: int, s: int, p: int) -> bool:
    cols = _mono_codes(c, s)
    index = {k: i for i, k in enumerate(cols)}
    rows = []
    for deg, g in restricted:
        if deg > s:
            continue
        for m in _mono_codes(c, s - deg):
            row = np.zeros(len(cols), dtype=np.int64)
            for k, v in g.items():
                row[index[k + m]] = v
            rows.append(row)
    if len(rows) < len(cols):
        return False
    return rank_mod_p(np.array(rows), p) == len(cols)


def _projective_points(c: int, p: int, chunk: int = 200_000):
    """Normalized representatives of P^{c-1}(F_p), in chunks."""
    for lead in range(c):
        free = c - 1 - lead
        total = p ** free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            pts = np.zeros((idx.size, c), dtype=np.int64)
            pts[:, lead] = 1
            rem = idx.copy()
            for a in range(c - 1, lead, -1):
                pts[:, a] = rem % p
                rem //= p
            yield pts


def _eval_on_points(g: dict, c: int, pts: np.ndarray, p: int) -> np.ndarray:
    val = np.zeros(pts.shape[0], dtype=np.int64)
    for k, coef in g.items():
        term = np.full(pts.shape[0], coef, dtype=np.int64)
        for a, e in enumerate(decode(k, c)):
            for _ in range(e):
                term = (term * pts[:, a]) % p
        val = (val + term) % p
    return val


def _search_witnesses(restricted: list, c: int, p: int, limit: int) -> Optional[list]:
    """Slice-coordinate F_p-points of the restricted zero set, or None if too many to scan."""
    if all(deg == 1 for deg, _ in restricted):
        mat = np.zeros((len(restricted), c), dtype=np.int64)
        for r, (_, g) in enumerate(restricted):
            for k, v in g.items():
                a = decode(k, c).index(1)
                mat[r, a] = v
        return [v for v in nullspace_mod_p(mat, p)][:limit]
    if (p ** c - 1) // (p - 1) > ENUMERATION_LIMIT:
        return None
    found: list = []
    order = sorted(restricted, key=lambda dg: len(dg[1]))
    for pts in _projective_points(c, p):
        alive = pts
        for _, g in order:
            if alive.shape[0] == 0:
                break
            alive = alive[_eval_on_points(g, c, alive, p) == 0]
        for row in alive:
            found.append(row.copy())
            if len(found) >= limit:
                return found
    return found


def _random_slice(rng, c: int, nv: int, p: int) -> np.ndarray:
    while True:
        b = rng.integers(0, p, size=(c, nv), dtype=np.int64)
        if rank_mod_p(b, p) == c:
            return b


def _lazard_bound(degrees: list[int], c: int) -> int:
    top = sorted(degrees, reverse=True)[:c]
    return sum(d - 1 for d in top) + 1


def slice_codim_certificate(
    ideal: IdealSpec,
    c: int,
    primes: Optional[Sequence] = None,
    trials: int = 8,
    seed: int = 0,
    max_witnesses: int = 4,
) -> SliceCertificate:
    """Monte-Carlo certificate that ``codim V(ideal) >= c`` in affine ``(n+1)``-space.

    Per prime: ``certified`` as soon as one slice passes the Macaulay rank test
    (that alone proves the bound over C); ``refuted`` when no slice passes and
    F_p-witnesses were found; ``inconclusive`` otherwise.  Overall verdict is
    ``certified-geq`` if every prime certifies, ``refuted-with-witnesses`` if
    every prime refutes, ``inconclusive`` otherwise.
    """
    nv = ideal.nvars
    if not 1 <= c <= nv:
        raise ValueError(f"claimed codimension {c} outside 1..{nv}")
    rad = ideal.radicand()
    if primes is None:
        ctxs = select_primes([x for g in ideal.generators for x in g.terms.values()], 2, 101, rad)
    else:
        ctxs = [p if isinstance(p, PrimeContext) else PrimeContext.create(int(p), rad) for p in primes]
    degrees = [g.degree() for g in ideal.generators]
    bound = _lazard_bound(degrees, c)
    all_witnesses: list = []
    per_prime: dict = {}
    verdicts = []
    for ctx in ctxs:
        p = ctx.p
        gens_mod = []
        for g in ideal.generators:
            gm = reduce_mod(g, ctx)
            gens_mod.append((g.degree(), [(decode(k, nv), v) for k, v in sorted(gm.terms.items())]))
        outcomes = []
        for t in range(trials):
            rng = np.random.default_rng([seed, p, t])
            basis = _random_slice(rng, c, nv, p)
            restricted = _restrict(gens_mod, basis, p)
            ok, s_used = False, None
            if restricted:
                lo = min(d for d, _ in restricted)
                for s in range(lo, bound + 1):
                    if _macaulay_full_rank(restricted, c, s, p):
                        ok, s_used = True, s
                        break
            outcome = TrialOutcome(p, t, ok, s_used)
            if not ok:
                if not restricted:
                    pts = [np.eye(c, dtype=np.int64)[0]]
                else:
                    pts = _search_witnesses(restricted, c, p, max_witnesses)
                if pts is None:
                    outcome.note = "rank test failed; slice too large to enumerate"
                else:
                    for sp in pts:
                        w = [int(x) for x in (sp @ basis) % p]
                        if all(reduce_mod(g, ctx).evaluate(w) == 0 for g in ideal.generators):
                            outcome.witnesses.append(w)
                    if not outcome.witnesses:
                        outcome.note = "rank test failed; no F_p-point found"
            outcomes.append(outcome)
        certified_trials = [o.trial for o in outcomes if o.certified]
        witness_trials = [o.trial for o in outcomes if o.witnesses]
        if certified_trials:
            v = "certified"
        elif witness_trials:
            v = "refuted"
        else:
            v = "inconclusive"
        verdicts.append(v)
        wit = [w for o in outcomes for w in o.witnesses]
        per_prime[p] = {
            "verdict": v,
            "certified_trials": certified_trials,
            "witness_trials": witness_trials,
            "macaulay_degree": min((o.degree_checked for o in outcomes if o.certified), default=None),
            "witness_count": len(wit),
        }
        if v == "refuted":
            all_witnesses.extend([p] + w for w in wit[:max_witnesses])
    if all(v == "certified" for v in verdicts):
        verdict = "certified-geq"
    elif all(v == "refuted" for v in verdicts):
        verdict = "refuted-with-witnesses"
    else:
        verdict = "inconclusive"
    return SliceCertificate(
        ideal.label,
        c,
        [ctx.p for ctx in ctxs],
        trials,
        verdict,
        all_witnesses,
        seed,
        per_prime,
    )


# reports ---------------------------------------------------------------------------

def codim_report(dist, primes=None, trials: int = 8, seed: int = 0, label: str = "") -> dict:
    """Certificates for the hypotheses on singular sets.

    Always ``codim sing(omega) >= 2``; for ``q = 1`` also ``codim sing(d omega) >= 3``,
    for ``q >= 2`` ``codim sing(omega) >= 3``.
    """
    omega = dist.omega
    out = {}
    ideal_w = coefficient_ideal(omega, f"{label}:sing(omega)")
    out["sing_omega_geq_2"] = slice_codim_certificate(ideal_w, 2, primes, trials, seed)
    if dist.q == 1:
        dw = exterior_derivative(omega)
        out["sing_domega_geq_3"] = slice_codim_certificate(coefficient_ideal(dw, f"{label}:sing(d omega)"), 3, primes, trials, seed)
    else:
        out["sing_omega_geq_3"] = slice_codim_certificate(ideal_w, 3, primes, trials, seed)
    return out


def split_hypothesis_certified(report: dict) -> bool:
    key = "sing_domega_geq_3" if "sing_domega_geq_3" in report else "sing_omega_geq_3"
    return report[key].certified and report["sing_omega_geq_2"].certified
