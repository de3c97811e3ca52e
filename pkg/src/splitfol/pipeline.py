"""The rigidity pipeline for a Lie subalgebra of sl(n+1) and its report."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .exactalg.field import format_scalar, parse_scalar
from .foliation import (
    Distribution,
    check_descends,
    check_integrability,
    check_pluecker,
    omega_from_fields,
    pullback_linear,
)
from .liecoh.algebra import LieAlgebraData, LieAlgebraError, structure_constants
from .liecoh.builtins import builtin_algebra
from .liecoh.cohomology import cohomology_dim
from .liecoh.module import quotient_module
from .multical import exterior_derivative, format_form
from .singdim import codim_report, split_hypothesis_certified

DESK_MAX_N = 7


@dataclass
class PipelineOptions:
    seed: int = 0
    primes: Optional[list] = None
    trials: int = 8
    dump_dir: Optional[str] = None
    timing: bool = False
    crosscheck_primes: int = 2


@dataclass
class VerdictReport:
    algebra_id: str
    n: int
    q: Optional[int]
    degree: Optional[int]
    omega_nonzero: bool
    descends: Optional[bool] = None
    pluecker: Optional[bool] = None
    integrable: Optional[bool] = None
    splitting_degrees: Optional[list] = None
    codim_certificates: dict = field(default_factory=dict)
    split_certified: Optional[bool] = None
    h1: Optional[int] = None
    h1_modular_agrees: Optional[bool] = None
    rigid: bool = False
    verdict: str = "no-verdict"
    notes: list = field(default_factory=list)
    timing: Optional[dict] = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["timing"] is None:
            d.pop("timing")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# algebra specs -----------------------------------------------------------------

class SpecError(ValueError):
    pass


def _parse_params(text: str) -> dict:
    params = {}
    for part in filter(None, text.split(",")):
        k, _, v = part.partition("=")
        params[k.strip()] = v.strip()
    return params


def parse_algebra_spec(source) -> LieAlgebraData:
    """Load an algebra from a JSON file, a JSON dict, or ``name:key=val,...``.

    File schema: ``{"n", "radicand", "generators": [(n+1)^2 strings, row-major]}``
    or ``{"builtin": name, "params": {...}}``.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        path = Path(text)
        if path.exists():
            try:
                data = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise SpecError(f"{path}: malformed JSON ({exc})") from exc
        else:
            name, _, rest = text.partition(":")
            return builtin_algebra(name, **_parse_params(rest))
    if "builtin" in data:
        params = dict(data.get("params", {}))
        return builtin_algebra(data["builtin"], **params)
    try:
        n = int(data["n"])
        gens = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"algebra spec needs 'n' and 'generators' ({exc})") from exc
    radicand = data.get("radicand")
    size = n + 1
    mats = []
    for gi, flat in enumerate(gens):
        if len(flat) != size * size:
            raise SpecError(f"generator {gi} has {len(flat)} entries, expected {size * size}")
        vals = [parse_scalar(str(x), radicand) for x in flat]
        mats.append([vals[r * size:(r + 1) * size] for r in range(size)])
    names = data.get("names") or [f"X{i + 1}" for i in range(len(mats))]
    try:
        return structure_constants(mats, names, label=data.get("id", "custom"))
    except LieAlgebraError as exc:
        raise SpecError(str(exc)) from exc


def algebra_to_spec(g: LieAlgebraData) -> dict:
    return {
        "id": g.label,
        "n": g.n,
        "radicand": g.radicand,
        "names": list(g.names),
        "generators": [[format_scalar(x) for row in m for x in row] for m in g.basis],
    }


# pipeline -------------------------------------------------------------------------

def run_pipeline(g: LieAlgebraData, options: Optional[PipelineOptions] = None) -> VerdictReport:
    opts = options or PipelineOptions()
    clock: dict = {}
    t0 = time.perf_counter()

    def lap(name: str):
        nonlocal t0
        now = time.perf_counter()
        clock[name] = round(now - t0, 3)
        t0 = now

    dist = omega_from_fields(g.fields())
    lap("omega")
    rep = VerdictReport(
        algebra_id=g.label,
        n=g.n,
        q=dist.q,
        degree=dist.degree,
        omega_nonzero=dist.nonzero,
        splitting_degrees=dist.splitting_degrees,
    )
    if g.n > DESK_MAX_N:
        rep.notes.append(f"n = {g.n} exceeds the desk-scale cap {DESK_MAX_N}; runtime may be long")
    if not dist.nonzero:
        rep.notes.append("omega(g) vanishes identically: no distribution")
        return _finish(rep, clock, opts)
    _dump(opts, "omega.txt", format_form(dist.omega))
    _dump(opts, "algebra.json", json.dumps(algebra_to_spec(g), sort_keys=True, indent=2))
    rep.descends = check_descends(dist.omega).passed
    rep.pluecker = check_pluecker(dist.omega).passed if dist.q >= 1 else None
    rep.integrable = check_integrability(dist.omega).passed if dist.q >= 1 else None
    lap("checks")
    if dist.q == 1:
        _dump(opts, "domega.txt", format_form(exterior_derivative(dist.omega)))
    certs = codim_report(dist, opts.primes, opts.trials, opts.seed, g.label)
    rep.codim_certificates = {k: v.to_json() for k, v in certs.items()}
    rep.split_certified = split_hypothesis_certified(certs)
    lap("codim")
    mod = quotient_module(g)
    h1 = cohomology_dim(mod, 1, crosscheck_primes=opts.crosscheck_primes)
    rep.h1 = h1.dimension
    rep.h1_modular_agrees = h1.modular_agrees if opts.crosscheck_primes else None
    lap("cohomology")
    rep.rigid = bool(rep.split_certified and rep.h1 == 0)
    if rep.rigid:
        rep.verdict = "rigid"
    elif not rep.split_certified:
        rep.notes.append("singular-set hypothesis not certified")
    else:
        rep.notes.append("H^1 is nonzero: no rigidity conclusion")
    return _finish(rep, clock, opts)


def _finish(rep: VerdictReport, clock: dict, opts: PipelineOptions) -> VerdictReport:
    if opts.timing:
        rep.timing = clock
    _dump(opts, "report.json", rep.dumps())
    return rep


def _dump(opts: PipelineOptions, name: str, text: str) -> None:
    if opts.dump_dir:
        d = Path(opts.dump_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text + "\n")


def pullback_report(base: LieAlgebraData, m: int) -> VerdictReport:
    """Pointwise checks on the linear pull-back of ``omega(base)`` (no cohomology)."""
    dist: Distribution = omega_from_fields(base.fields())
    pb = pullback_linear(dist, m)
    d2 = pb.distribution
    rep = VerdictReport(
        algebra_id=f"pullback({base.label},m={m})",
        n=d2.n,
        q=d2.q,
        degree=d2.degree,
        omega_nonzero=d2.nonzero,
        splitting_degrees=d2.splitting_degrees,
    )
    rep.descends = check_descends(d2.omega).passed
    rep.pluecker = check_pluecker(d2.omega).passed
    rep.integrable = check_integrability(d2.omega).passed
    rep.notes.append("pull-back spot check: pointwise conditions only")
    rep.notes.extend(pb.notes)
    return rep


TABLE1_ROWS = [
    ("aff_sym", {"r": 4}),
    ("aff_sym", {"r": 5}),
    ("sl2_sym", {"r": 5}),
    ("sl2_sym", {"r": 6}),
    ("infinito", {"n": 3}),
    ("infinito", {"n": 4}),
    ("infinito", {"n": 5}),
    ("infinito", {"n": 6}),
    ("g6", {}),
    ("g7", {}),
]

TABLE1_PULLBACKS = [("infinito", {"n": 3}, 1), ("aff_sym", {"r": 4}, 1)]


def table1(options: Optional[PipelineOptions] = None) -> list[VerdictReport]:
    opts = options or PipelineOptions()
    out = []
    for name, params in TABLE1_ROWS:
        try:
            g = builtin_algebra(name, **params)
            rep = run_pipeline(g, PipelineOptions(opts.seed, opts.primes, opts.trials, None, opts.timing, opts.crosscheck_primes))
        except Exception as exc:  # per-row failures are data
            rep = VerdictReport(f"{name}{params}", -1, None, None, False, notes=[f"error: {exc}"])
        if name in ("g6", "g7"):
            if rep.h1 == 0:
                rep.notes.append("H^1 = 0 computed exactly (the rigidity argument for this row is elementary)")
            elif rep.h1 is not None:
                rep.notes.append(f"discrepancy flag: H^1 = {rep.h1} is nonzero")
        out.append(rep)
    for name, params, m in TABLE1_PULLBACKS:
        out.append(pullback_report(builtin_algebra(name, **params), m))
    if opts.dump_dir:
        _dump(opts, "table1.json", json.dumps([r.to_json() for r in out], sort_keys=True, indent=2))
    return out
