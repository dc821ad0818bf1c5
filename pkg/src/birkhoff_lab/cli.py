"""Command-line orchestration: configuration, experiments, persistence, plots.

Exit codes: 0 success, 2 configuration errors, 3 precondition/hypothesis
violations, 4 numerical failures.  Every run writes a manifest
(manifest.json) with the config hash, seeds and per-stage diagnostics;
rerunning with identical config and seed reproduces every CSV byte for byte.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, banach, stats, transfer
from .banach import boole_condition, clt_condition, edgeworth_condition
from .config import ExperimentConfig, load_config
from .errors import (
    BirkhoffLabError,
    ConfigError,
    PreconditionError,
    SchemaError,
    VarianceError,
)
from .maps import BooleanMap, PartitionedMap
from .stats import (
    BirkhoffSampleSet,
    BumpV,
    EdgeworthModel,
    clt_test,
    coboundary_heuristic,
    edgeworth_eval,
    edgeworth_test,
    estimate_moments,
    mlclt_test,
    sample_birkhoff,
    sample_birkhoff_checkpoints,
)
from .zeta import envelope_exponents, interval_envelope

SUBCOMMANDS = (
    "simulate",
    "variance",
    "clt",
    "edgeworth",
    "mlclt",
    "spectrum",
    "dfly",
    "conditions",
    "coboundary",
    "lindelof",
)


def _fmt(value):
    """17-significant-digit decimal formatting: floats round-trip exactly."""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if dataclasses.is_dataclass(obj):
        return dataclasses.asdict(obj)
    raise TypeError(f"not serializable: {type(obj)}")


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, default=_json_default, sort_keys=True)
        fh.write("\n")
    return path


class _Run:
    """Accumulates outputs and diagnostics for one subcommand invocation."""

    def __init__(self, cfg: ExperimentConfig, subcommand: str):
        self.cfg = cfg
        self.subcommand = subcommand
        self.outputs = []
        self.diagnostics = {}
        self.summary = {}
        self.t0 = time.time()
        os.makedirs(cfg.out_dir, exist_ok=True)

    def path(self, name):
        return os.path.join(self.cfg.out_dir, name)

    def csv(self, name, header, rows):
        if self.cfg.out_format in ("csv", "both"):
            self.outputs.append(_write_csv(self.path(name), header, rows))

    def finish(self, status=0):
        if self.cfg.out_format in ("json", "both") or self.summary:
            self.outputs.append(
                _write_json(self.path(f"{self.subcommand}_summary.json"), self.summary)
            )
        manifest = {
            "subcommand": self.subcommand,
            "config_hash": self.cfg.config_hash,
            "toolkit_version": __version__,
            "wall_clock_s": time.time() - self.t0,
            "seed": self.cfg.seed,
            "diagnostics": self.diagnostics,
            "outputs": [os.path.basename(p) for p in self.outputs],
            "status": status,
        }
        _write_json(self.path("manifest.json"), manifest)
        return status


def _system_params(cfg):
    sy = cfg.system
    if isinstance(sy, PartitionedMap):
        return {"theta": sy.theta, "eta_minus": sy.eta_minus, "eta_plus": sy.eta_plus}
    return {}


def _interval_twin(cfg):
    """The conjugated interval observable h o xi used by interval-side stages."""
    if cfg.observable.domain == "I":
        return cfg.observable
    return dataclasses.replace(cfg.observable, domain="I")


def _require_admissible(cfg, theorem):
    """Fail fast (exit 3) when the theorem hypothesis is violated, before any
    sampling; custom observables carry no envelope and are waved through."""
    if cfg.observable.kind == "custom":
        return
    if isinstance(cfg.system, BooleanMap):
        env = envelope_exponents(cfg.observable)
        rep = boole_condition(theorem, env.u, env.v)
    else:
        env = interval_envelope(cfg.observable)
        p = _system_params(cfg)
        checker = edgeworth_condition if theorem == "Edgeworth" else clt_condition
        rep = checker(env.a, env.b, p["theta"], p["eta_minus"], p["eta_plus"])
    if not rep.satisfied:
        raise PreconditionError(
            f"{rep.theorem} hypothesis fails for {cfg.observable.label}: "
            f"lhs {rep.lhs:.4f} >= rhs {rep.rhs:.4f}"
        )


def _cmd_conditions(run: _Run):
    cfg = run.cfg
    rows = []
    if isinstance(cfg.system, BooleanMap):
        env = envelope_exponents(cfg.observable)
        # zeta-line observables instantiate the sigma-interval corollary,
        # |zeta_1/2|^a the power corollary
        cor = "ZetaPowerCLT" if cfg.observable.kind == "zeta_abs_power" else (
            "ZetaLineCLT" if cfg.observable.kind.startswith("zeta") else "BooleCLT"
        )
        for kind, tag in (("CLT", cor), ("Edgeworth", "BooleEdgeworth")):
            rep = boole_condition(kind, env.u, env.v)
            rows.append(
                (tag, env.u, env.v, "", "", "", rep.lhs, rep.rhs, rep.satisfied)
            )
        header = ["theorem", "a", "b", "theta", "eta_minus", "eta_plus", "lhs", "rhs", "satisfied"]
    else:
        env = interval_envelope(cfg.observable)
        p = _system_params(cfg)
        reps = [
            clt_condition(env.a, env.b, p["theta"], p["eta_minus"], p["eta_plus"]),
            edgeworth_condition(env.a, env.b, p["theta"], p["eta_minus"], p["eta_plus"]),
        ]
        header = ["theorem", "a", "b", "theta", "eta_minus", "eta_plus", "lhs", "rhs", "satisfied"]
        for rep in reps:
            rows.append(
                (rep.theorem, env.a, env.b, p["theta"], p["eta_minus"], p["eta_plus"],
                 rep.lhs, rep.rhs, rep.satisfied)
            )
    run.csv("conditions.csv", header, rows)
    run.summary["conditions"] = [
        dict(zip(header, (str(v) if isinstance(v, bool) else v for v in row))) for row in rows
    ]
    if not all(row[-1] for row in rows[:1]):
        run.diagnostics["warning"] = "CLT condition unsatisfied"
    return 0


def _cmd_simulate(run: _Run):
    cfg = run.cfg
    ss = sample_birkhoff(
        cfg.system, cfg.observable, cfg.n, cfg.m, cfg.init_measure, cfg.seed,
        threads=cfg.threads,
    )
    run.csv(
        "simulate.csv",
        ["orbit", "S_n"],
        [(i, float(v)) for i, v in enumerate(ss.samples)],
    )
    run.diagnostics["rejected_draws"] = ss.rejected_draws
    run.summary["simulate"] = {
        "n": ss.n,
        "m": ss.m,
        "mean_per_step": float(ss.samples.mean() / ss.n),
        "rejected_draws": ss.rejected_draws,
    }
    return 0


def _cmd_variance(run: _Run):
    cfg = run.cfg
    mo = estimate_moments(cfg.system, cfg.observable, cfg.moments)
    run.summary["moments"] = dataclasses.asdict(mo)
    run.csv(
        "variance.csv",
        ["n", "estimate", "se", "target", "deviation"],
        [(cfg.moments.orbit_len, mo.sigma2, mo.sigma2_se, "", "")],
    )
    run.diagnostics["gk_truncation_K"] = mo.gk_truncation_K
    return 0


def _sample_trajectory(cfg, seed_shift=0):
    sums, rejected = sample_birkhoff_checkpoints(
        cfg.system,
        cfg.observable,
        cfg.n_grid,
        cfg.m,
        cfg.init_measure,
        cfg.seed + seed_shift,
        threads=cfg.threads,
    )
    sets = [
        BirkhoffSampleSet(
            n=n,
            samples=s,
            m=cfg.m,
            init_measure=cfg.init_measure,
            seed=cfg.seed + seed_shift,
            rejected_draws=rejected,
        )
        for n, s in sums.items()
    ]
    return sorted(sets, key=lambda s: s.n), sums


def _cmd_clt(run: _Run):
    cfg = run.cfg
    _require_admissible(cfg, "CLT")
    sets, _ = _sample_trajectory(cfg)
    rep = clt_test(sets)
    run.summary["clt"] = {
        "ks": rep.ks,
        "mc_noise": rep.mc_noise,
        "trajectory": list(rep.trajectory),
        "mean_used": rep.mean_used,
        "sigma_used": rep.sigma_used,
    }
    run.csv(
        "clt.csv",
        ["n", "estimate", "se", "target", "deviation"],
        [(n, ks, rep.mc_noise, 0.0, ks) for n, ks in rep.trajectory],
    )
    final = sets[-1]
    z = np.sort((final.samples - final.n * rep.mean_used) / (rep.sigma_used * math.sqrt(final.n)))
    hist, edges = np.histogram(z, bins=60, range=(-4, 4), density=True)
    centers = 0.5 * (edges[1:] + edges[:-1])
    gauss = np.exp(-0.5 * centers**2) / math.sqrt(2 * math.pi)
    run.csv(
        "clt_hist.csv",
        ["z", "density", "gauss"],
        list(zip(centers, hist, gauss)),
    )
    return 0


def _cmd_edgeworth(run: _Run):
    cfg = run.cfg
    _require_admissible(cfg, "Edgeworth")
    mo = estimate_moments(cfg.system, cfg.observable, cfg.moments)
    model = EdgeworthModel(sigma=math.sqrt(mo.sigma2), kappa3=mo.kappa3)
    ss = sample_birkhoff(cfg.system, cfg.observable, cfg.n, cfg.m, cfg.init_measure,
                         cfg.seed, threads=cfg.threads)
    g_err, e_err = edgeworth_test(ss, model, mean=mo.A)
    run.summary["edgeworth"] = {
        "gauss_sup_error": g_err,
        "edgeworth_sup_error": e_err,
        "model": dataclasses.asdict(model),
        "moments": dataclasses.asdict(mo),
    }
    run.csv(
        "edgeworth.csv",
        ["n", "estimate", "se", "target", "deviation"],
        [(cfg.n, e_err, 1.0 / math.sqrt(cfg.m), g_err, g_err - e_err)],
    )
    z = np.linspace(-4, 4, 161)
    run.csv(
        "edgeworth_curves.csv",
        ["z", "gauss_cdf", "edgeworth_cdf"],
        list(zip(z, stats._gaussian_cdf(z), edgeworth_eval(model, z, cfg.n))),
    )
    return 0


def _cmd_mlclt(run: _Run):
    cfg = run.cfg
    _require_admissible(cfg, "MLCLT")
    rows = mlclt_test(
        cfg.system,
        cfg.observable,
        cfg.n_grid,
        cfg.m,
        V=cfg.bump,
        seed=cfg.seed,
        init_measure=cfg.init_measure,
    )
    run.summary["mlclt"] = [dataclasses.asdict(r) for r in rows]
    run.csv(
        "mlclt.csv",
        ["n", "estimate", "se", "target", "deviation"],
        [
            (r.n, r.sup_deviation, r.mc_se, 0.05 * cfg.bump.integral, r.sup_deviation)
            for r in rows
        ],
    )
    return 0


def _cmd_spectrum(run: _Run):
    cfg = run.cfg
    if isinstance(cfg.system, BooleanMap):
        raise PreconditionError("spectrum runs on interval maps; use the conjugated twin")
    obs = _interval_twin(cfg)
    curve = transfer.eigenvalue_curve(cfg.system, obs, cfg.s_grid, N=cfg.spectrum_N)
    rows = [
        (s, lam.real, lam.imag, g)
        for s, lam, g in zip(curve.s_values, curve.lambdas, curve.gaps)
    ]
    run.csv("spectrum.csv", ["s", "re_lambda", "im_lambda", "gap"], rows)
    run.summary["spectrum"] = {
        "mean": curve.mean,
        "mean_error": curve.mean_error,
        "variance": curve.variance,
        "variance_error": curve.variance_error,
    }
    return 0


def _cmd_dfly(run: _Run):
    cfg = run.cfg
    if isinstance(cfg.system, BooleanMap):
        raise PreconditionError("dfly runs on interval maps")
    obs = _interval_twin(cfg)
    hs = banach.random_piecewise_smooth(cfg.spectrum_N, 20, cfg.seed)
    rep = transfer.dfly_check(
        cfg.system, obs, cfg.alpha, cfg.beta, cfg.gamma, hs, n_max=10, N=cfg.spectrum_N
    )
    run.summary["dfly"] = {
        "kappa": rep.kappa,
        "c_tilde": rep.c_tilde,
        "c_weak": rep.c_weak,
    }
    run.csv(
        "dfly.csv",
        ["s", "function", "n", "strong_norm", "strong_norm_0", "weak_norm_0"],
        rep.rows,
    )
    return 0


def _cmd_coboundary(run: _Run):
    cfg = run.cfg
    if isinstance(cfg.system, BooleanMap):
        raise PreconditionError("coboundary heuristics run over the doubling map")
    obs = _interval_twin(cfg)
    rep = coboundary_heuristic(cfg.system, obs, cfg.max_period)
    run.summary["coboundary"] = {
        "verdict": rep.verdict,
        "arithmetic_verdict": rep.arithmetic_verdict,
        "candidate_constant": rep.candidate_constant,
    }
    run.csv(
        "coboundary.csv",
        ["period", "representative", "sum", "normalized"],
        [(p, float(r), float(s), float(nn)) for p, r, s, nn in rep.cycles],
    )
    return 0


def _cmd_lindelof(run: _Run):
    """Composite pipeline: conditions -> coboundary -> moments -> CLT -> MLCLT."""
    cfg = run.cfg
    if not isinstance(cfg.system, BooleanMap):
        raise PreconditionError("lindelof samples zeta over the Boolean map")
    env = envelope_exponents(cfg.observable)
    cond = boole_condition("CLT", env.u, env.v)
    cond_edge = boole_condition("Edgeworth", env.u, env.v)
    run.summary["conditions"] = {
        "clt_satisfied": bool(cond.satisfied),
        "clt_margin": cond.margin,
        "edgeworth_satisfied": bool(cond_edge.satisfied),
    }
    if not cond.satisfied:
        raise PreconditionError("Boole CLT condition fails for this observable")
    from .maps import make_doubling

    cob = coboundary_heuristic(make_doubling(), _interval_twin(cfg), cfg.max_period)
    run.summary["coboundary"] = {
        "verdict": cob.verdict,
        "arithmetic_verdict": cob.arithmetic_verdict,
    }
    mo = estimate_moments(cfg.system, cfg.observable, cfg.moments)
    run.summary["moments"] = dataclasses.asdict(mo)
    sets, sums = _sample_trajectory(cfg, seed_shift=1)
    rep = clt_test(sets, sigma2=mo.sigma2, mean=mo.A, strict=False)
    if cfg.m < 1000:
        run.diagnostics["clt_warning"] = "KS diagnostic below the m >= 1000 contract"
    run.summary["clt"] = {"ks": rep.ks, "trajectory": list(rep.trajectory)}
    sig = math.sqrt(mo.sigma2)
    adaptive_v = BumpV(half_width=0.35 * sig * math.sqrt(min(cfg.n_grid)), height=1.0)
    try:
        ml_rows = mlclt_test(
            cfg.system,
            cfg.observable,
            cfg.n_grid[-2:],
            cfg.m,
            V=adaptive_v,
            ell_rhos=(0.0, 0.5, -0.5),
            mean=mo.A,
            sigma=sig,
            seed=cfg.seed + 1,
            init_measure=cfg.init_measure,
        )
        run.summary["mlclt"] = [dataclasses.asdict(r) for r in ml_rows]
    except VarianceError as exc:
        run.diagnostics["mlclt_warning"] = f"skipped: {exc}"
        run.summary["mlclt"] = []
    run.summary["lindelof"] = {
        "asymptotic_mean": mo.A,
        "asymptotic_mean_se": mo.A_se,
        "sample_mean_per_step": float(sets[-1].samples.mean() / sets[-1].n),
    }
    run.csv(
        "lindelof.csv",
        ["n", "estimate", "se", "target", "deviation"],
        [
            (
                sets[-1].n,
                run.summary["lindelof"]["sample_mean_per_step"],
                mo.A_se,
                mo.A,
                run.summary["lindelof"]["sample_mean_per_step"] - mo.A,
            )
        ],
    )
    return 0


_COMMANDS = {
    "conditions": _cmd_conditions,
    "simulate": _cmd_simulate,
    "variance": _cmd_variance,
    "clt": _cmd_clt,
    "edgeworth": _cmd_edgeworth,
    "mlclt": _cmd_mlclt,
    "spectrum": _cmd_spectrum,
    "dfly": _cmd_dfly,
    "coboundary": _cmd_coboundary,
    "lindelof": _cmd_lindelof,
}


def emit_plots(out_dir: str) -> list:
    """Write gnuplot scripts for whichever result CSVs are present.

    Scripts are plain text and render offline; a CSV missing an expected
    column raises SchemaError naming the column.
    """

    def _columns(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.readline().strip().split(",")

    written = []
    hist = os.path.join(out_dir, "clt_hist.csv")
    if os.path.exists(hist):
        cols = _columns(hist)
        for need in ("z", "density", "gauss"):
            if need not in cols:
                raise SchemaError(f"clt_hist.csv lacks column {need!r}")
        has_edge = "edgeworth" in cols
        script = [
            "set datafile separator ','",
            "set term pngcairo size 900,600",
            f"set output 'clt_hist.png'",
            "set xlabel 'normalized Birkhoff sum'",
            "set ylabel 'density'",
            "plot 'clt_hist.csv' using 1:2 skip 1 with boxes title 'empirical', \\",
            "     'clt_hist.csv' using 1:3 skip 1 with lines lw 2 title 'gaussian'"
            + (", \\\n     'clt_hist.csv' using 1:4 skip 1 with lines lw 2 title 'edgeworth'" if has_edge else ""),
        ]
        p = os.path.join(out_dir, "clt_hist.gp")
        with open(p, "w", encoding="utf-8") as fh:
            fh.write("\n".join(script) + "\n")
        written.append(p)
    spec = os.path.join(out_dir, "spectrum.csv")
    if os.path.exists(spec):
        cols = _columns(spec)
        for need in ("s", "re_lambda", "im_lambda"):
            if need not in cols:
                raise SchemaError(f"spectrum.csv lacks column {need!r}")
        with open(spec, "r", encoding="utf-8") as fh:
            n_rows = sum(1 for _ in fh) - 1
        if n_rows <= 0:
            sys.stderr.write("warning: empty s-grid, spectrum plot omitted\n")
        else:
            script = [
                "set datafile separator ','",
                "set term pngcairo size 900,600",
                "set output 'spectrum.png'",
                "set xlabel 's'",
                "set ylabel 'lambda(s)'",
                "plot 'spectrum.csv' using 1:2 skip 1 with linespoints title 'Re lambda', \\",
                "     'spectrum.csv' using 1:3 skip 1 with linespoints title 'Im lambda'",
            ]
            p = os.path.join(out_dir, "spectrum.gp")
            with open(p, "w", encoding="utf-8") as fh:
                fh.write("\n".join(script) + "\n")
            written.append(p)
    edge = os.path.join(out_dir, "edgeworth_curves.csv")
    if os.path.exists(edge):
        cols = _columns(edge)
        for need in ("z", "gauss_cdf", "edgeworth_cdf"):
            if need not in cols:
                raise SchemaError(f"edgeworth_curves.csv lacks column {need!r}")
        script = [
            "set datafile separator ','",
            "set term pngcairo size 900,600",
            "set output 'edgeworth.png'",
            "set xlabel 'x'",
            "set ylabel 'CDF'",
            "plot 'edgeworth_curves.csv' using 1:2 skip 1 with lines lw 2 title 'gaussian', \\",
            "     'edgeworth_curves.csv' using 1:3 skip 1 with lines lw 2 title 'edgeworth'",
        ]
        p = os.path.join(out_dir, "edgeworth.gp")
        with open(p, "w", encoding="utf-8") as fh:
            fh.write("\n".join(script) + "\n")
        written.append(p)
    ml = os.path.join(out_dir, "mlclt.csv")
    if os.path.exists(ml):
        cols = _columns(ml)
        for need in ("n", "estimate"):
            if need not in cols:
                raise SchemaError(f"mlclt.csv lacks column {need!r}")
        script = [
            "set datafile separator ','",
            "set term pngcairo size 900,600",
            "set output 'mlclt.png'",
            "set logscale x",
            "set xlabel 'n'",
            "set ylabel 'sup deviation'",
            "plot 'mlclt.csv' using 1:2 skip 1 with linespoints title 'MLCLT deviation'",
        ]
        p = os.path.join(out_dir, "mlclt.gp")
        with open(p, "w", encoding="utf-8") as fh:
            fh.write("\n".join(script) + "\n")
        written.append(p)
    return written


def run(subcommand: str, config_path=None, overrides=None, plots=False,
        config_text=None) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        cfg = load_config(config_path, text=config_text, overrides=overrides)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    if subcommand not in _COMMANDS:
        sys.stderr.write(f"unknown subcommand {subcommand!r}\n")
        return 2
    runner = _Run(cfg, subcommand)
    try:
        status = _COMMANDS[subcommand](runner)
        if plots:
            runner.outputs.extend(emit_plots(cfg.out_dir))
        return runner.finish(status)
    except BirkhoffLabError as exc:
        record = {
            "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "exit_code": exc.exit_code,
            }
        }
        _write_json(runner.path("error.json"), record)
        runner.finish(exc.exit_code)
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return exc.exit_code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="birkhoff-lab",
        description="Birkhoff-sum limit-theorem experiments for unbounded observables",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", default=None, help="INI experiment configuration")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--out-dir", default=None)
    parser.add_argument("--format", choices=("csv", "json", "both"), default=None)
    parser.add_argument("--plots", action="store_true")
    parser.add_argument("--map", dest="map_kind", default=None,
                        help="system kind override (doubling|piecewise-linear|boolean)")
    parser.add_argument("--observable", default=None, help="observable kind override")
    parser.add_argument("--s-grid", default=None, help="spectrum grid, e.g. -0.1:0.1:21")
    parser.add_argument("--N", type=int, default=None, help="spectrum/Ulam resolution")
    args = parser.parse_args(argv)
    overrides = {}
    if args.seed is not None:
        overrides["stats.seed"] = args.seed
    if args.out_dir is not None:
        overrides["output.dir"] = args.out_dir
    if args.format is not None:
        overrides["output.format"] = args.format
    threads = args.threads
    if threads is None and os.environ.get("BIRKHOFF_LAB_THREADS"):
        try:
            threads = int(os.environ["BIRKHOFF_LAB_THREADS"])
        except ValueError:
            sys.stderr.write("config error: BIRKHOFF_LAB_THREADS is not an integer\n")
            return 2
    if threads is not None:
        overrides["output.threads"] = threads
    if args.map_kind is not None:
        overrides["system.kind"] = args.map_kind
    if args.observable is not None:
        overrides["observable.kind"] = args.observable
    if args.s_grid is not None:
        overrides["spectrum.s_grid"] = args.s_grid
    if args.N is not None:
        overrides["spectrum.n"] = args.N
    return run(args.subcommand, args.config, overrides, plots=args.plots)


if __name__ == "__main__":
    sys.exit(main())
