"""Scenario configuration files, evaluation of single points and sweeps.

A configuration is one JSON object.  Dimensioned fields take either a bare
number in cgs or a unit-suffixed string::

    {
      "transition": {"n": 75, "n_prime": 77},
      "mirror": {"z0": "20 um", "amplitude": "2 um",
                 "shape": {"kind": "harmonic", "omega": "resonant"}},
      "gas": {"n_atoms": 1000,
              "profile": {"kind": "parabolic", "z_center": "20 um", "half_width": "10 um"},
              "transverse_extent": "500 um"},
      "time": "0.5 us",
      "method": "auto",
      "photon": {"areal_density": "0.1 cm-2", "front_area": "1e-5 cm2"},
      "nearest_neighbor": "10 um",
      "sweep": {"axes": [{"parameter": "time", "values": ["0.1 us", "0.2 us"]}],
                "cap": 1000000},
      "outputs": ["probability", "amplitude_abs", "excited_count"]
    }

``shape.kind`` is ``harmonic`` (``omega``, ``phase``), ``square_train``
(``rep_rate``, ``duty``) or ``tabulated`` (``file`` or ``times``/``values``);
frequencies accept ``"resonant"``.  ``profile.kind`` is ``parabolic``,
``gaussian`` (``z_center``, ``sigma_z``, ``cutoff``) or ``tabulated``
(``file`` or ``z``/``rho``).  A sweep axis names a dotted path into this
object and lists ``values`` or gives ``start``/``stop``/``num`` (with
optional ``"spacing": "log"``).  ``method: "spectral"`` reads an optional
``"spectral": {"window": ..., "n_samples": ...}`` section; the default window
is the shortest whole number of drive periods covering ``time``.
"""

from __future__ import annotations

import copy
import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterator, Optional

import numpy as np

from . import excitation, gas as gas_mod
from .atom import make_transition
from .errors import ConvergenceError, RydcpError, ValidationError
from .mirror import Harmonic, MirrorMotion, SquareTrain, Tabulated, load_tabulated, min_samples, spectrum
from .quantities import parse_quantity, to_cgs
from .validity import Scenario, full_report

DEFAULT_CAP = 1_000_000
METHODS = ("auto", "resonant", "time_domain", "scaling", "spectral")
OUTPUTS = ("probability", "amplitude_abs", "excited_count", "excited_count_closed_form")
FLAG_NAMES = ("near_zone", "amplitude", "perturbative", "hierarchy")


class ConfigError(ValidationError):
    """Configuration problem, prefixed with the offending key path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass
class ScenarioConfig:
    raw: dict
    scenario: Scenario
    method: str
    outputs: list
    axes: list = field(default_factory=list)  # [(parameter, [raw values])]
    cap: int = DEFAULT_CAP
    spectral: dict = field(default_factory=dict)
    base_dir: Optional[Path] = None


def _get(d: dict, key: str, path: str, default=Ellipsis):
    if not isinstance(d, dict):
        raise ConfigError(path, "expected an object")
    if key not in d:
        if default is Ellipsis:
            raise ConfigError(f"{path}.{key}" if path else key, "missing required field")
        return default
    return d[key]


def _num(value, dimension: str, path: str) -> float:
    try:
        return to_cgs(value, dimension)
    except RydcpError as exc:
        raise ConfigError(path, str(exc)) from None


def _resolve(base_dir: Optional[Path], name: str) -> Path:
    p = Path(name)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


def _build_shape(spec: dict, omega0: float, base_dir, path: str):
    kind = _get(spec, "kind", path, "harmonic")
    try:
        if kind == "harmonic":
            om = _get(spec, "omega", path, "resonant")
            omega = omega0 if om == "resonant" else _num(om, "angular_frequency", f"{path}.omega")
            return Harmonic(omega, float(_get(spec, "phase", path, 0.0)))
        if kind == "square_train":
            rr = _get(spec, "rep_rate", path, "resonant")
            rate = omega0 if rr == "resonant" else _num(rr, "angular_frequency", f"{path}.rep_rate")
            return SquareTrain(rate, float(_get(spec, "duty", path, 0.5)))
        if kind == "tabulated":
            if "file" in spec:
                return load_tabulated(_resolve(base_dir, spec["file"]))
            return Tabulated(_get(spec, "times", path), _get(spec, "values", path))
    except ConfigError:
        raise
    except (RydcpError, OSError, TypeError) as exc:
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(f"{path}.kind", f"unknown shape kind {kind!r}")


def _build_gas(spec: dict, base_dir, path: str) -> gas_mod.GasProfile:
    n_atoms = _get(spec, "n_atoms", path)
    if isinstance(n_atoms, bool) or not isinstance(n_atoms, (int, float)):
        raise ConfigError(f"{path}.n_atoms", "expected a number")
    prof = _get(spec, "profile", path)
    ppath = f"{path}.profile"
    kind = _get(prof, "kind", ppath)
    extent = spec.get("transverse_extent")
    extent = None if extent is None else _num(extent, "length", f"{path}.transverse_extent")
    try:
        if kind == "parabolic":
            shape = gas_mod.Parabolic(
                _num(_get(prof, "z_center", ppath), "length", f"{ppath}.z_center"),
                _num(_get(prof, "half_width", ppath), "length", f"{ppath}.half_width"),
            )
        elif kind == "gaussian":
            shape = gas_mod.Gaussian(
                _num(_get(prof, "z_center", ppath), "length", f"{ppath}.z_center"),
                _num(_get(prof, "sigma_z", ppath), "length", f"{ppath}.sigma_z"),
                float(prof.get("cutoff", 6.0)),
            )
        elif kind == "tabulated":
            if "file" in prof:
                return gas_mod.load_profile(_resolve(base_dir, prof["file"]), float(n_atoms), extent)
            shape = gas_mod.TabulatedProfile(_get(prof, "z", ppath), _get(prof, "rho", ppath))
        else:
            raise ConfigError(f"{ppath}.kind", f"unknown profile kind {kind!r}")
        return gas_mod.GasProfile(float(n_atoms), shape, extent)
    except ConfigError:
        raise
    except (RydcpError, OSError, TypeError) as exc:
        raise ConfigError(ppath, str(exc)) from None


def _axis_values(axis: dict, path: str) -> list:
    if "values" in axis:
        vals = axis["values"]
        if not isinstance(vals, list):
            raise ConfigError(f"{path}.values", "expected a list")
        return vals
    start, stop = _get(axis, "start", path), _get(axis, "stop", path)
    num = int(_get(axis, "num", path))
    if num < 0:
        raise ConfigError(f"{path}.num", "must be nonnegative")
    unit = ""
    if isinstance(start, str) or isinstance(stop, str):
        # grid in the unit of ``start``
        qs, qe = parse_quantity(str(start)), parse_quantity(str(stop))
        if qs.unit != qe.unit:
            qe = qe.to(qs.unit)
        start, stop, unit = qs.value, qe.value, qs.unit
    if axis.get("spacing", "linear") == "log":
        grid = np.geomspace(float(start), float(stop), num)
    else:
        grid = np.linspace(float(start), float(stop), num)
    return [f"{v!r} {unit}" if unit else float(v) for v in grid.tolist()]


def build(raw: dict, base_dir: Optional[Path] = None) -> ScenarioConfig:
    """Validate a configuration object and assemble the scenario."""
    if not isinstance(raw, dict):
        raise ConfigError("", "configuration must be a JSON object")
    tspec = _get(raw, "transition", "")
    n = _get(tspec, "n", "transition")
    n_prime = tspec.get("n_prime")
    if n_prime is None and "delta_n" in tspec:
        n_prime = n + tspec["delta_n"]
    try:
        tr = make_transition(n, n_prime)
    except (RydcpError, TypeError) as exc:
        raise ConfigError("transition", str(exc)) from None

    mspec = _get(raw, "mirror", "")
    z0 = _num(_get(mspec, "z0", "mirror"), "length", "mirror.z0")
    amp = _num(_get(mspec, "amplitude", "mirror"), "length", "mirror.amplitude")
    if not z0 > 0:
        raise ConfigError("mirror.z0", "must be positive")
    if not 0 <= amp < z0:
        raise ConfigError("mirror.amplitude", f"must satisfy 0 <= amplitude < z0 (got {amp!r} >= {z0!r})"
                          if amp >= z0 else f"must be nonnegative (got {amp!r})")
    shape = _build_shape(mspec.get("shape", {}), tr.omega0, base_dir, "mirror.shape")
    mirror = MirrorMotion(z0, amp, shape)

    gas = None
    if raw.get("gas") is not None:
        gas = _build_gas(raw["gas"], base_dir, "gas")
        lo, _ = gas.support
        if not lo > amp:
            raise ConfigError("gas.profile", "gas geometry: support reaches the mirror excursion")

    t = _num(_get(raw, "time", ""), "time", "time")
    if not t >= 0:
        raise ConfigError("time", "must be nonnegative")

    photon = raw.get("photon") or {}
    density = photon.get("areal_density")
    area = photon.get("front_area")
    nn = raw.get("nearest_neighbor")
    scenario = Scenario(
        transition=tr,
        mirror=mirror,
        time=t,
        gas=gas,
        photon_areal_density=None if density is None else _num(density, "areal_density", "photon.areal_density"),
        front_area=None if area is None else _num(area, "area", "photon.front_area"),
        nearest_neighbor=None if nn is None else _num(nn, "length", "nearest_neighbor"),
    )

    method = raw.get("method", "auto")
    if method not in METHODS:
        raise ConfigError("method", f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    outputs = raw.get("outputs")
    if outputs is None:
        outputs = ["probability", "amplitude_abs"]
        if gas is not None:
            outputs += ["excited_count"]
            if isinstance(gas.shape, gas_mod.Parabolic):
                outputs += ["excited_count_closed_form"]
    for o in outputs:
        if o not in OUTPUTS:
            raise ConfigError("outputs", f"unknown output {o!r}")
        if o.startswith("excited_count") and gas is None:
            raise ConfigError("outputs", f"{o} needs a gas section")

    axes = []
    cap = DEFAULT_CAP
    sweep = raw.get("sweep")
    if sweep is not None:
        cap = int(sweep.get("cap", DEFAULT_CAP))
        for i, axis in enumerate(_get(sweep, "axes", "sweep")):
            apath = f"sweep.axes[{i}]"
            param = _get(axis, "parameter", apath)
            _lookup(raw, param, f"{apath}.parameter")
            axes.append((param, _axis_values(axis, apath)))
    return ScenarioConfig(
        raw=raw, scenario=scenario, method=method, outputs=list(outputs),
        axes=axes, cap=cap, spectral=dict(raw.get("spectral") or {}), base_dir=base_dir,
    )


def _lookup(raw: dict, dotted: str, path: str):
    node = raw
    for part in dotted.split("."):
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(path, f"sweep parameter {dotted!r} not found in configuration")
        node = node[part]
    return node


def _assign(raw: dict, dotted: str, value) -> dict:
    out = copy.deepcopy(raw)
    node = out
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node[part]
    node[parts[-1]] = value
    return out


def _parse_json(text: str, source: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc}") from None
    return build(_parse_json(text, str(path)), base_dir=path.parent)


PRESETS = ("paper_single_atom", "paper_gas", "paper_photon_comparison", "square_train_demo")


def preset_raw(name: str) -> dict:
    if name not in PRESETS:
        raise ConfigError("", f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("rydcp").joinpath("presets", f"{name}.json").read_text()
    return _parse_json(text, name)


def load_preset(name: str) -> ScenarioConfig:
    return build(preset_raw(name))


# ---------------------------------------------------------------- evaluation


def _fmt_flag(flag) -> str:
    return flag.value if flag is not None else ""


def _echo(cfg: ScenarioConfig) -> dict:
    s = cfg.scenario
    row = {
        "n": s.transition.n_initial,
        "n_prime": s.transition.n_final,
        "omega0_rad_s": s.transition.omega0,
        "z0_cm": s.mirror.z0,
        "amplitude_cm": s.mirror.amplitude,
        "shape": type(s.mirror.shape).__name__.lower(),
        "time_s": s.time,
        "method": cfg.method,
    }
    if s.gas is not None:
        lo, hi = s.gas.support
        row.update({"n_atoms": s.gas.n_atoms, "gas_z_min_cm": lo, "gas_z_max_cm": hi})
    return row


def _default_window(m: MirrorMotion, t: float) -> float:
    """Whole number of drive periods covering ``t``, so the DFT sees a periodic signal."""
    shape = m.shape
    if isinstance(shape, Tabulated):
        return t if t > 0 else shape.span
    freq = shape.characteristic_frequency
    if freq == 0:
        return t if t > 0 else 1.0
    period = 2.0 * math.pi / freq
    return max(t, max(1, math.ceil(t / period * (1.0 - 1e-12))) * period)


def _probability(cfg: ScenarioConfig) -> tuple[float, Optional[complex], str]:
    s = cfg.scenario
    tr, m, t = s.transition, s.mirror, s.time
    method = cfg.method
    if method == "auto":
        resonant = isinstance(m.shape, Harmonic) and abs(abs(m.shape.omega) - tr.omega0) * t < excitation.RESONANCE_TOLERANCE
        method = "resonant" if resonant else "time_domain"
    if method == "resonant":
        return excitation.probability_resonant(tr, m, t).probability, None, method
    if method == "scaling":
        return excitation.probability_scaling(tr.n_initial, m.z0, m.amplitude, t), None, method
    if method == "spectral":
        if "window" in cfg.spectral:
            window = _num(cfg.spectral["window"], "time", "spectral.window")
        else:
            window = _default_window(m, t)
        n_samples = cfg.spectral.get("n_samples")
        if n_samples is None:
            n_samples = max(min_samples(m, window, tr.omega0), 33)
        spec = spectrum(m, window, int(n_samples), max_frequency=tr.omega0)
        res = excitation.amplitude_spectral(tr, m, spec, t)
        return res.probability, res.amplitude, method
    res = excitation.amplitude_time_domain(tr, m, t, linearized=cfg.raw.get("linearized", True))
    return res.probability, res.amplitude, method


def evaluate(cfg: ScenarioConfig) -> dict:
    """Outputs and validity flags for one scenario (no echo columns)."""
    s = cfg.scenario
    out: dict[str, Any] = {}
    if "probability" in cfg.outputs or "amplitude_abs" in cfg.outputs:
        p, amp, used = _probability(cfg)
        if "probability" in cfg.outputs:
            out["probability"] = p
        if "amplitude_abs" in cfg.outputs:
            out["amplitude_abs"] = abs(amp) if amp is not None else math.sqrt(p)
        out["route"] = used
    n = s.transition.n_initial
    if "excited_count" in cfg.outputs:
        out["excited_count"] = gas_mod.excited_count_quadrature(s.gas, n, s.mirror.amplitude, s.time)
    if "excited_count_closed_form" in cfg.outputs:
        if isinstance(s.gas.shape, gas_mod.Parabolic):
            out["excited_count_closed_form"] = gas_mod.excited_count_closed_form(
                s.gas, n, s.mirror.amplitude, s.time
            )
        else:
            out["excited_count_closed_form"] = None
    report = full_report(s)
    out["max_probability"] = report.max_probability
    out["near_zone_ratio"] = report.near_zone_ratio
    out["amplitude_ratio"] = report.amplitude_ratio
    if s.photon_areal_density is not None and s.front_area is not None:
        out["photon_excitation_bound"] = report.photon_excitation_bound
        out["near_far_contrast"] = report.near_far_contrast
    if s.nearest_neighbor is not None:
        out["hierarchy_ratio"] = report.hierarchy_ratio
    for name in FLAG_NAMES:
        if name in report.flags:
            out[f"flag_{name}"] = report.flags[name].value
    out["flag_overall"] = report.overall.value
    return out


def run_single(cfg: ScenarioConfig) -> dict:
    if cfg.axes:
        raise ValidationError("configuration has sweep axes; use run_sweep")
    row = _echo(cfg)
    row.update(evaluate(cfg))
    return row


def _point(args) -> dict:
    """Evaluate one sweep point; errors are reported in the row."""
    raw, base_dir, coords = args
    row: dict[str, Any] = dict(coords)
    try:
        cfg = build(raw, base_dir)
        row.update(_echo(cfg))
        row.update(evaluate(cfg))
        row["error"] = ""
    except ConvergenceError as exc:
        row["error"] = f"convergence: {exc}"
    except RydcpError as exc:
        row["error"] = f"validation: {exc}"
    return row


def sweep_points(cfg: ScenarioConfig) -> Iterator[tuple]:
    names = [name for name, _ in cfg.axes]
    base = copy.deepcopy(cfg.raw)
    base.pop("sweep", None)
    for combo in itertools.product(*(vals for _, vals in cfg.axes)):
        raw = base
        for name, value in zip(names, combo):
            raw = _assign(raw, name, value)
        yield raw, cfg.base_dir, tuple(zip(names, combo))


def sweep_size(cfg: ScenarioConfig) -> int:
    return math.prod(len(v) for _, v in cfg.axes) if cfg.axes else 0


def run_sweep(cfg: ScenarioConfig, jobs: int = 1) -> Iterator[dict]:
    """Rows in lexicographic axis order (first axis slowest)."""
    if not cfg.axes:
        raise ValidationError("configuration has no sweep axes; use run_single")
    total = sweep_size(cfg)
    if total > cfg.cap:
        raise ValidationError(f"sweep has {total} points, above the cap of {cfg.cap}")
    points = sweep_points(cfg)
    if jobs <= 1 or total < 2:
        yield from map(_point, points)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_point, points, chunksize=max(1, total // (4 * jobs)))


def columns_for(cfg: ScenarioConfig) -> list:
    """Column order: sweep axes, echoed inputs, outputs, flags, error."""
    template = _echo(cfg)
    template.update(evaluate_template(cfg))
    axis_cols = [name for name, _ in cfg.axes]
    outputs = [k for k in template if not k.startswith("flag_")]
    flags = [k for k in template if k.startswith("flag_")]
    cols = axis_cols + [c for c in outputs if c not in axis_cols] + flags
    if cfg.axes:
        cols.append("error")
    return cols


def evaluate_template(cfg: ScenarioConfig) -> dict:
    """Keys :func:`evaluate` emits for this configuration, without computing."""
    s = cfg.scenario
    keys = [o for o in OUTPUTS[:2] if o in cfg.outputs]
    if keys:
        keys.append("route")
    keys += [o for o in OUTPUTS[2:] if o in cfg.outputs]
    keys += ["max_probability", "near_zone_ratio", "amplitude_ratio"]
    if s.photon_areal_density is not None and s.front_area is not None:
        keys += ["photon_excitation_bound", "near_far_contrast"]
    if s.nearest_neighbor is not None:
        keys += ["hierarchy_ratio"]
    keys += ["flag_near_zone", "flag_amplitude", "flag_perturbative"]
    if s.nearest_neighbor is not None:
        keys += ["flag_hierarchy"]
    keys += ["flag_overall"]
    return dict.fromkeys(keys)
