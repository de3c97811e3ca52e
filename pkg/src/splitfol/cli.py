"""Command-line front end.

Exit code 0 means the requested computation completed (negative verdicts are
data); a nonzero exit code signals an operational error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .exactalg.field import format_scalar
from .extsearch import build_extension_system, lie_closure_verdict, solve_extension_system
from .foliation import check_descends, check_integrability, check_pluecker, omega_from_fields
from .liecoh.cohomology import cohomology_dim
from .liecoh.module import quotient_module
from .multical import exterior_derivative, format_form, parse_form
from .pipeline import PipelineOptions, SpecError, parse_algebra_spec, run_pipeline, table1
from .singdim import coefficient_ideal, slice_codim_certificate


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--primes", type=lambda s: [int(x) for x in s.split(",")], default=None,
                   help="comma-separated primes for slice certificates")
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--dump-dir", default=None)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--timing", action="store_true", help="include stage timings in reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="splitfol", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("omega", help="print omega(g) for an algebra")
    p.add_argument("algebra", help="spec file or name:key=val,...")
    _add_common(p)

    p = sub.add_parser("check", help="descends / Pluecker / integrability checks")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--form", help="form text file instead of an algebra")
    p.add_argument("--nvars", type=int)
    p.add_argument("--arity", type=int)
    _add_common(p)

    p = sub.add_parser("singdim", help="slice codimension certificate")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--form")
    p.add_argument("--nvars", type=int)
    p.add_argument("--arity", type=int)
    p.add_argument("--codim", type=int, default=3)
    p.add_argument("--of", choices=["omega", "domega"], default="domega")
    _add_common(p)

    p = sub.add_parser("cohomology", help="dim H^k(g, sl(n+1)/g)")
    p.add_argument("algebra")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--complement", choices=["standard", "random", "graded"], default="standard")
    _add_common(p)

    p = sub.add_parser("extend", help="solve the extension system for n")
    p.add_argument("n", type=int)
    _add_common(p)

    p = sub.add_parser("pipeline", help="full rigidity pipeline")
    p.add_argument("algebra")
    _add_common(p)

    p = sub.add_parser("table1", help="run the pipeline over all table rows")
    _add_common(p)
    return ap


def _options(args) -> PipelineOptions:
    return PipelineOptions(seed=args.seed, primes=args.primes, trials=args.trials,
                           dump_dir=args.dump_dir, timing=args.timing)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _load_form(args):
    if args.form:
        if args.nvars is None or args.arity is None:
            raise SpecError("--form needs --nvars and --arity")
        return parse_form(Path(args.form).read_text(), args.nvars, args.arity)
    if not args.algebra:
        raise SpecError("give an algebra or --form")
    return omega_from_fields(parse_algebra_spec(args.algebra).fields()).omega


def cmd_omega(args) -> int:
    g = parse_algebra_spec(args.algebra)
    d = omega_from_fields(g.fields())
    text = format_form(d.omega)
    if args.dump_dir:
        Path(args.dump_dir).mkdir(parents=True, exist_ok=True)
        (Path(args.dump_dir) / "omega.txt").write_text(text + "\n")
    _emit(args, {"algebra": g.label, "n": d.n, "q": d.q, "degree": d.degree,
                 "nonzero": d.nonzero, "splitting_degrees": d.splitting_degrees, "omega": text},
          f"# {g.label}: n={d.n} q={d.q} degree={d.degree}\n{text}")
    return 0


def cmd_check(args) -> int:
    w = _load_form(args)
    res = {"descends": check_descends(w)}
    if w.arity >= 1:
        res["pluecker"] = check_pluecker(w)
        res["integrable"] = check_integrability(w)
    payload = {k: {"passed": v.passed, "counterexample": v.counterexample, "detail": v.detail} for k, v in res.items()}
    _emit(args, payload, "\n".join(f"{k}: {'pass' if v.passed else 'FAIL'} {v.detail}".rstrip() for k, v in res.items()))
    return 0


def cmd_singdim(args) -> int:
    w = _load_form(args)
    target = exterior_derivative(w) if args.of == "domega" else w
    ideal = coefficient_ideal(target, f"sing({args.of})")
    cert = slice_codim_certificate(ideal, args.codim, args.primes, args.trials, args.seed)
    _emit(args, cert.to_json(), f"{ideal.label} codim >= {args.codim}: {cert.verdict}")
    return 0


def cmd_cohomology(args) -> int:
    g = parse_algebra_spec(args.algebra)
    if args.complement == "graded":
        mod = quotient_module(g, grading_element=0)
    else:
        mod = quotient_module(g, complement=args.complement, seed=args.seed)
    res = cohomology_dim(mod, args.degree, crosscheck_primes=2)
    payload = {"algebra": g.label, "degree": args.degree, "dimension": res.dimension,
               "module_dim": mod.dim, "modular_agrees": res.modular_agrees}
    _emit(args, payload, f"dim H^{args.degree}({g.label}, sl/g) = {res.dimension}")
    return 0


def cmd_extend(args) -> int:
    system = build_extension_system(args.n)
    sols = solve_extension_system(system)
    rows = []
    for s in sols:
        v = lie_closure_verdict(s)
        rows.append({
            "values": [format_scalar(x) for x in s.values],
            "radicand": s.radicand,
            "lie_closed": v.closed,
            "failing": v.failing,
            "Y2_Y3": None if v.brackets.get("[Y2,Y3]") is None else
            {k: format_scalar(c) for k, c in v.brackets["[Y2,Y3]"].items()},
        })
    text = [f"n={args.n}: {len(sols)} solution(s) in {system.unknowns}"]
    for r in rows:
        status = "closed" if r["lie_closed"] else "not closed at " + ", ".join(r["failing"])
        text.append(f"  ({', '.join(r['values'])})  {status}  [Y2,Y3] = {r['Y2_Y3']}")
    _emit(args, {"n": args.n, "unknowns": system.unknowns, "solutions": rows}, "\n".join(text))
    return 0


def cmd_pipeline(args) -> int:
    rep = run_pipeline(parse_algebra_spec(args.algebra), _options(args))
    _emit(args, rep.to_json(), f"{rep.algebra_id}: {rep.verdict} (H^1={rep.h1}, split certified={rep.split_certified})")
    return 0


def cmd_table1(args) -> int:
    reps = table1(_options(args))
    lines = [f"{r.algebra_id:24s} n={r.n} q={r.q} deg={r.degree} {r.verdict} H1={r.h1}" for r in reps]
    if args.json:
        print(json.dumps([r.to_json() for r in reps], sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return 0


COMMANDS = {
    "omega": cmd_omega,
    "check": cmd_check,
    "singdim": cmd_singdim,
    "cohomology": cmd_cohomology,
    "extend": cmd_extend,
    "pipeline": cmd_pipeline,
    "table1": cmd_table1,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except (SpecError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
