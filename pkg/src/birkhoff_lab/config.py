"""Experiment configuration: INI files with one section per concern.

Every numerical default of the other modules can be overridden here; parsed
values are validated eagerly (fail-fast) so a bad configuration never starts
a simulation.
"""

from __future__ import annotations

import configparser
import hashlib
import io
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .maps import BooleanMap, PartitionedMap, make_doubling, make_piecewise_linear
from .stats import BumpV, MomentParams
from .zeta import Observable, ZetaEvaluator


def _floats(text: str):
    seps = text.replace(",", " ").split()
    return [float(v) for v in seps]


def _parse_grid(text: str):
    """Either an explicit list '0 0.05 0.1' or linear spec 'lo:hi:num'."""
    if ":" in text:
        lo, hi, num = text.split(":")
        return np.linspace(float(lo), float(hi), int(num)).tolist()
    return _floats(text)


@dataclass
class ExperimentConfig:
    """Validated bundle of system, observable and run parameters."""

    system: object
    observable: Observable
    evaluator: ZetaEvaluator
    n: int
    m: int
    seed: int
    init_measure: str
    n_grid: list
    alpha: float
    beta: float
    gamma: float
    epsilon0: float
    grid_N: int
    s_grid: list
    spectrum_N: int
    bump: BumpV
    moments: MomentParams
    out_dir: str
    out_format: str
    threads: int
    max_period: int
    raw_text: str

    @property
    def config_hash(self):
        return hashlib.sha256(self.raw_text.encode()).hexdigest()


def _build_system(section):
    kind = section.get("kind", "doubling").strip().lower()
    if kind == "doubling":
        return make_doubling()
    if kind == "piecewise-linear":
        if "breakpoints" not in section:
            raise ConfigError("piecewise-linear systems need breakpoints")
        slopes = _floats(section["slopes"]) if "slopes" in section else None
        return make_piecewise_linear(_floats(section["breakpoints"]), slopes)
    if kind == "boolean":
        return BooleanMap()
    raise ConfigError(f"unknown system kind {kind!r}")


def _build_observable(section, system, evaluator):
    kind = section.get("kind", "osc_c").strip()
    domain = section.get("domain", "R" if isinstance(system, BooleanMap) else "I").strip()
    try:
        return Observable(
            kind=kind,
            c=float(section.get("c", 0.0)),
            sigma=float(section.get("sigma", 0.5)),
            power=float(section.get("power", 1.0)),
            delta=float(section.get("delta", 0.01)),
            t_max=float(section.get("t_max", 1e8)),
            domain=domain,
            evaluator=evaluator,
            expression=section.get("expression", ""),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad observable section: {exc}") from exc


def load_config(path=None, text=None, overrides=None) -> ExperimentConfig:
    """Parse and validate an experiment configuration.

    `overrides` is a flat dict of 'section.key' -> string applied on top of
    the file, the mechanism behind the CLI flags.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if text is None:
        if path is None:
            text = ""
        else:
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    if overrides:
        for dotted, value in overrides.items():
            if "." not in dotted:
                raise ConfigError(f"override {dotted!r} must look like section.key")
            sec, key = dotted.split(".", 1)
            if not parser.has_section(sec):
                parser.add_section(sec)
            parser.set(sec, key, str(value))
        buf = io.StringIO()
        parser.write(buf)
        text = buf.getvalue()

    def sec(name):
        return parser[name] if parser.has_section(name) else {}

    try:
        zsec = sec("zeta")
        evaluator = ZetaEvaluator(
            em_terms=int(zsec.get("em_terms", 50)),
            em_bernoulli_order=int(zsec.get("em_bernoulli_order", 4)),
            rs_switch_t=float(zsec.get("rs_switch_t", 30.0)),
            target_abs_error=float(zsec.get("target_abs_error", 1e-9)),
        )
        system = _build_system(sec("system"))
        observable = _build_observable(sec("observable"), system, evaluator)
        st = sec("stats")
        n = int(float(st.get("n", 10000)))
        m = int(float(st.get("m", 500)))
        seed = int(st.get("seed", 0))
        default_init = "cauchy-on-R" if isinstance(system, BooleanMap) else "invariant-ulam"
        init_measure = st.get("init", default_init).strip()
        n_grid = [int(v) for v in _parse_grid(st.get("n_grid", ""))] if st.get("n_grid") else sorted(
            {max(n // 100, 10), max(n // 10, 10), n}
        )
        ba = sec("banach")
        alpha = float(ba.get("alpha", 0.2))
        beta = float(ba.get("beta", 0.3))
        gamma = float(ba.get("gamma", 2.0))
        epsilon0 = float(ba.get("epsilon0", 0.1))
        grid_n = int(float(ba.get("n", 4096)))
        sp = sec("spectrum")
        s_grid = _parse_grid(sp.get("s_grid", "-0.1:0.1:9"))
        spectrum_n = int(float(sp.get("n", 1024)))
        ml = sec("mlclt")
        bump = BumpV(
            half_width=float(ml.get("v_half_width", 1.0)),
            height=float(ml.get("v_height", 1.0)),
        )
        mo = sec("moments")
        moments = MomentParams(
            orbit_len=int(float(mo.get("orbit_len", 20000))),
            n_orbits=int(float(mo.get("n_orbits", 128))),
            k_max=int(float(mo.get("k_max", 200))),
            kappa3_orbits=int(float(mo.get("kappa3_orbits", 1024))),
            kappa3_grid=tuple(
                int(v) for v in _parse_grid(mo.get("kappa3_grid", ""))
            )
            or tuple(2**j for j in range(7, 13)),
            seed=seed,
            init_measure=init_measure,
        )
        out = sec("output")
        out_dir = out.get("dir", "out")
        out_format = out.get("format", "csv").strip().lower()
        if out_format not in ("csv", "json", "both"):
            raise ConfigError("output format must be csv, json or both")
        threads = int(out.get("threads", 1))
        max_period = int(st.get("max_period", 6))
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid configuration value: {exc}") from exc
    if isinstance(system, BooleanMap) and observable.domain != "R":
        raise ConfigError("a Boolean system needs a real-line observable")
    if isinstance(system, PartitionedMap) and observable.domain != "I":
        raise ConfigError("an interval system needs an interval observable")
    return ExperimentConfig(
        system=system,
        observable=observable,
        evaluator=evaluator,
        n=n,
        m=m,
        seed=seed,
        init_measure=init_measure,
        n_grid=n_grid,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        epsilon0=epsilon0,
        grid_N=grid_n,
        s_grid=list(s_grid),
        spectrum_N=spectrum_n,
        bump=bump,
        moments=moments,
        out_dir=out_dir,
        out_format=out_format,
        threads=threads,
        max_period=max_period,
        raw_text=text,
    )
