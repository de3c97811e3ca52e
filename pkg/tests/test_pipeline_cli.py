from __future__ import annotations

import json

import pytest

from splitfol.cli import main
from splitfol.liecoh.builtins import infinito, sl2_sym
from splitfol.pipeline import (
    PipelineOptions,
    SpecError,
    algebra_to_spec,
    parse_algebra_spec,
    pullback_report,
    run_pipeline,
)


def test_spec_roundtrip(tmp_path):
    g = parse_algebra_spec("g7")
    path = tmp_path / "g7.json"
    path.write_text(json.dumps(algebra_to_spec(g)))
    back = parse_algebra_spec(str(path))
    assert back.structure == g.structure and back.radicand == 3


def test_spec_forms():
    assert parse_algebra_spec({"builtin": "sl2_sym", "params": {"r": 3}}).label == "sl2_sym(3)"
    assert parse_algebra_spec("infinito:n=3").dim == 2
    with pytest.raises(SpecError):
        parse_algebra_spec({"n": 1, "generators": [["0", "1", "0"]]})
    with pytest.raises(SpecError):
        parse_algebra_spec({"n": 2, "generators": [["0", "1", "0", "0", "0", "0", "0", "0", "0"],
                                                    ["0", "0", "0", "0", "0", "1", "0", "0", "0"]]})


def test_report_is_byte_stable(tmp_path):
    opts = PipelineOptions(seed=3, dump_dir=str(tmp_path / "a"))
    a = run_pipeline(infinito(3), opts).dumps()
    b = run_pipeline(infinito(3), PipelineOptions(seed=3, dump_dir=str(tmp_path / "b"))).dumps()
    assert a == b
    for name in ("omega.txt", "domega.txt", "algebra.json", "report.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert "timing" not in json.loads(a)


def test_report_contents():
    rep = run_pipeline(infinito(3))
    assert rep.verdict == "rigid" and rep.h1 == 0 and rep.h1_modular_agrees
    assert rep.descends and rep.pluecker and rep.integrable
    assert set(rep.codim_certificates) == {"sing_omega_geq_2", "sing_domega_geq_3"}
    rep = run_pipeline(sl2_sym(4))
    assert rep.verdict == "no-verdict" and not rep.split_certified
    assert run_pipeline(infinito(3), PipelineOptions(timing=True)).timing is not None


def test_pullback_report():
    rep = pullback_report(infinito(3), 1)
    assert (rep.n, rep.degree) == (4, 2)
    assert rep.descends and rep.pluecker and rep.integrable


def test_cli_commands(capsys, tmp_path):
    assert main(["extend", "6"]) == 0
    assert "(9/8, -3/2)  closed" in capsys.readouterr().out
    assert main(["omega", "infinito:n=3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degree"] == 2 and out["q"] == 1
    assert main(["check", "sl2_sym:r=5"]) == 0
    assert "integrable: pass" in capsys.readouterr().out
    assert main(["singdim", "sl2_sym:r=4", "--codim", "3"]) == 0
    assert "refuted-with-witnesses" in capsys.readouterr().out
    assert main(["cohomology", "diagonal:n=3", "--degree", "1"]) == 0
    assert capsys.readouterr().out.strip().endswith("= 2")
    assert main(["pipeline", "infinito:n=3", "--dump-dir", str(tmp_path)]) == 0
    assert (tmp_path / "report.json").exists()


def test_cli_form_input(capsys, tmp_path):
    form = tmp_path / "w.txt"
    form.write_text("(1) * dx0^dx1\n(1) * dx2^dx3\n")
    assert main(["check", "--form", str(form), "--nvars", "4", "--arity", "2"]) == 0
    assert "pluecker: FAIL" in capsys.readouterr().out


def test_cli_operational_errors(capsys):
    assert main(["pipeline", "no_such_algebra"]) != 0
    assert main(["check"]) != 0
    assert main(["extend", "3"]) != 0
    capsys.readouterr()
