"""CLI orchestration: config handling, outputs, determinism, exit codes."""

import json

import pytest

from birkhoff_lab.cli import emit_plots, main, run
from birkhoff_lab.config import load_config
from birkhoff_lab.errors import ConfigError, SchemaError

BASE = """
[system]
kind = doubling

[observable]
kind = osc_c
c = 0.2

[stats]
n = 200
m = 120
seed = 3
n_grid = 50 200

[output]
dir = {out}
format = both
"""


def cfg_file(tmp_path, text, name="cfg.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_conditions_csv_row(tmp_path):
    out = tmp_path / "o"
    path = cfg_file(tmp_path, BASE.format(out=out))
    assert run("conditions", path) == 0
    lines = (out / "conditions.csv").read_text().splitlines()
    assert lines[0] == "theorem,a,b,theta,eta_minus,eta_plus,lhs,rhs,satisfied"
    clt = [l for l in lines if l.startswith("CLT")][0]
    assert clt.endswith("True")


def test_simulate_constant_observable(tmp_path):
    out = tmp_path / "o"
    text = BASE.format(out=out).replace("kind = osc_c\nc = 0.2", "kind = custom\nexpression = 1")
    text = text.replace("n = 200", "n = 10")
    path = cfg_file(tmp_path, text)
    assert run("simulate", path) == 0
    rows = (out / "simulate.csv").read_text().splitlines()[1:]
    assert all(r.split(",")[1] == "10" for r in rows)


def test_csv_determinism_same_seed(tmp_path):
    out1, out2, out3 = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    p1 = cfg_file(tmp_path, BASE.format(out=out1), "c1.ini")
    p2 = cfg_file(tmp_path, BASE.format(out=out2), "c2.ini")
    p3 = cfg_file(tmp_path, BASE.format(out=out3), "c3.ini")
    assert run("simulate", p1) == 0
    assert run("simulate", p2) == 0
    assert run("simulate", p3, overrides={"stats.seed": "4"}) == 0
    b1 = (out1 / "simulate.csv").read_bytes()
    b2 = (out2 / "simulate.csv").read_bytes()
    b3 = (out3 / "simulate.csv").read_bytes()
    assert b1 == b2
    assert b1 != b3


def test_config_error_exit_code(tmp_path):
    assert run("simulate", str(tmp_path / "missing.ini")) == 2
    bad = cfg_file(tmp_path, "[system]\nkind = klein-bottle\n")
    assert run("simulate", bad) == 2


def test_fail_fast_inadmissible_combination(tmp_path):
    # boolean system with an interval observable fails before any sampling
    text = """
[system]
kind = boolean

[observable]
kind = osc_c
domain = I

[output]
dir = {out}
""".format(out=tmp_path / "o")
    assert run("simulate", cfg_file(tmp_path, text)) == 2
    # hypothesis violation surfaces as exit 3 with an error record
    text2 = """
[system]
kind = boolean

[observable]
kind = zeta_abs_power
power = 2.9

[stats]
n = 50
m = 120

[moments]
orbit_len = 500
n_orbits = 32
kappa3_orbits = 128
kappa3_grid = 64 128

[output]
dir = {out}
""".format(out=tmp_path / "p")
    code = run("lindelof", cfg_file(tmp_path, text2, "c2.ini"))
    assert code == 3
    record = json.loads((tmp_path / "p" / "error.json").read_text())
    assert record["error"]["exit_code"] == 3


def test_fail_fast_inadmissible_exponent(tmp_path):
    # osc_c with c above sqrt(2)-1 violates the CLT hypothesis: abort with
    # exit 3 before any sampling
    out = tmp_path / "o"
    text = BASE.format(out=out).replace("c = 0.2", "c = 0.5").replace("m = 120", "m = 1200")
    path = cfg_file(tmp_path, text)
    assert run("clt", path) == 3
    assert not (out / "clt.csv").exists()
    record = json.loads((out / "error.json").read_text())
    assert "hypothesis" in record["error"]["message"]


def test_spectrum_csv_schema_and_plots(tmp_path):
    out = tmp_path / "o"
    text = BASE.format(out=out) + "\n[spectrum]\ns_grid = -0.04:0.04:5\nn = 128\n"
    path = cfg_file(tmp_path, text)
    assert run("spectrum", path, plots=True) == 0
    header = (out / "spectrum.csv").read_text().splitlines()[0]
    assert header == "s,re_lambda,im_lambda,gap"
    assert (out / "spectrum.gp").exists()
    script = (out / "spectrum.gp").read_text()
    assert "plot" in script and "spectrum.csv" in script


def test_emit_plots_schema_error(tmp_path):
    (tmp_path / "clt_hist.csv").write_text("z,density\n0,1\n")
    with pytest.raises(SchemaError) as err:
        emit_plots(str(tmp_path))
    assert "gauss" in str(err.value)


def test_emit_plots_empty_s_grid_warns(tmp_path, capsys):
    (tmp_path / "spectrum.csv").write_text("s,re_lambda,im_lambda,gap\n")
    written = emit_plots(str(tmp_path))
    assert written == []
    assert "empty s-grid" in capsys.readouterr().err


def test_clt_subcommand_outputs(tmp_path):
    out = tmp_path / "o"
    text = BASE.format(out=out).replace("m = 120", "m = 1200")
    path = cfg_file(tmp_path, text)
    assert run("clt", path, plots=True) == 0
    csv = (out / "clt.csv").read_text().splitlines()
    assert csv[0] == "n,estimate,se,target,deviation"
    assert len(csv) == 3  # two trajectory points
    assert (out / "clt_hist.gp").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["status"] == 0
    assert "clt_hist.csv" in manifest["outputs"]


def test_coboundary_subcommand(tmp_path):
    out = tmp_path / "o"
    text = BASE.format(out=out).replace("kind = osc_c\nc = 0.2",
                                        "kind = custom\nexpression = x - 0.5")
    path = cfg_file(tmp_path, text)
    assert run("coboundary", path) == 0
    summary = json.loads((out / "coboundary_summary.json").read_text())
    assert summary["coboundary"]["verdict"] == "not cohomologous to a constant"


def test_dfly_subcommand(tmp_path):
    out = tmp_path / "o"
    text = BASE.format(out=out) + "\n[banach]\nalpha = 0.2\nbeta = 0.3\ngamma = 2.0\n[spectrum]\nn = 256\n"
    path = cfg_file(tmp_path, text)
    assert run("dfly", path) == 0
    summary = json.loads((out / "dfly_summary.json").read_text())
    assert summary["dfly"]["kappa"] == pytest.approx(2**-0.1)


def test_main_env_threads_and_flags(tmp_path, monkeypatch):
    out = tmp_path / "o"
    path = cfg_file(tmp_path, BASE.format(out=out))
    monkeypatch.setenv("BIRKHOFF_LAB_THREADS", "not-a-number")
    assert main(["conditions", "--config", path]) == 2
    monkeypatch.setenv("BIRKHOFF_LAB_THREADS", "2")
    assert main(["conditions", "--config", path, "--format", "csv"]) == 0


def test_load_config_defaults_and_overrides(tmp_path):
    cfg = load_config(text="[system]\nkind = boolean\n[observable]\nkind = zeta_re\n")
    assert cfg.observable.domain == "R"
    assert cfg.init_measure == "cauchy-on-R"
    cfg2 = load_config(
        text="[stats]\nn = 100\n", overrides={"stats.seed": "9", "output.format": "json"}
    )
    assert cfg2.seed == 9 and cfg2.out_format == "json"
    with pytest.raises(ConfigError):
        load_config(text="[output]\nformat = yaml\n")
