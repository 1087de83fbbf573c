"""YAML experiment configuration with unknown-key rejection.

Silent config typos are the main reproducibility hazard, so every mapping
is checked against its schema and unknown keys raise with the full dotted
path.  `config_to_dict` inverts the parse: the echoed dictionary re-parses
to an identical config (closure property, tested).
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .ensembles import ScalarDistribution
from .experiments import EnsembleDescriptor, ExperimentConfig, LcdSettings
from .vector_geometry import DecompParams


class ConfigError(ValueError):
    pass


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing required key {key!r} in {where}")
    return section[key]


_BASES = {"gaussian", "rademacher", "uniform", "discrete"}


def _parse_ensemble(section: dict) -> EnsembleDescriptor:
    _check_keys(section, {"field", "base", "values", "weights", "shift"}, "ensemble")
    field = section.get("field", "complex")
    base_kind = section.get("base", "gaussian")
    if base_kind not in _BASES:
        raise ConfigError(f"ensemble.base must be one of {sorted(_BASES)}, got {base_kind!r}")
    if base_kind == "discrete":
        values = _require(section, "values", "ensemble")
        weights = _require(section, "weights", "ensemble")
        base = ScalarDistribution("discrete", tuple(float(v) for v in values), tuple(float(w) for w in weights))
    else:
        if "values" in section or "weights" in section:
            raise ConfigError("ensemble.values/weights are only valid with base: discrete")
        base = ScalarDistribution({"uniform": "uniform_symmetric"}.get(base_kind, base_kind))
    shift = section.get("shift", {"kind": "none"})
    _check_keys(shift, {"kind", "K"}, "ensemble.shift")
    kind = shift.get("kind", "none")
    K = shift.get("K")
    try:
        return EnsembleDescriptor(field=field, base=base, shift_kind=kind, shift_K=K)
    except ValueError as exc:
        raise ConfigError(f"ensemble: {exc}") from exc


_TOP_KEYS = {
    "experiment",
    "n_values",
    "trials",
    "master_seed",
    "ensemble",
    "decomp",
    "lcd",
    "epsilons",
    "output_path",
    "extras",
}


def parse_config_dict(raw: dict, where: str = "config") -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: top level must be a mapping")
    _check_keys(raw, _TOP_KEYS, where)
    name = _require(raw, "experiment", where)
    n_values = tuple(int(n) for n in _require(raw, "n_values", where))
    trials = int(_require(raw, "trials", where))
    master_seed = int(_require(raw, "master_seed", where))

    ensemble = _parse_ensemble(raw.get("ensemble", {}))

    decomp_raw = raw.get("decomp", {})
    _check_keys(decomp_raw, {"delta", "rho"}, "decomp")
    lcd_raw = raw.get("lcd", {})
    _check_keys(lcd_raw, {"gamma", "beta"}, "lcd")
    extras = raw.get("extras", {})
    if not isinstance(extras, dict):
        raise ConfigError("extras must be a mapping")
    try:
        return ExperimentConfig(
            experiment_name=name,
            n_values=n_values,
            trials=trials,
            master_seed=master_seed,
            ensemble=ensemble,
            decomp=DecompParams(
                delta=float(decomp_raw.get("delta", 0.1)), rho=float(decomp_raw.get("rho", 0.3))
            ),
            lcd=LcdSettings(gamma=float(lcd_raw.get("gamma", 0.1)), beta=float(lcd_raw.get("beta", 0.2))),
            epsilons=tuple(float(e) for e in raw.get("epsilons", [])),
            output_path=raw.get("output_path"),
            extras=dict(extras),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config(path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if raw is None:
        raise ConfigError(f"{path}: empty config")
    return parse_config_dict(raw, where=str(path))


def config_to_dict(cfg: ExperimentConfig) -> dict:
    """Echo dictionary; parse_config_dict of it reproduces the config."""
    ensemble: dict = {"field": cfg.ensemble.field}
    if cfg.ensemble.base.kind == "discrete":
        ensemble["base"] = "discrete"
        ensemble["values"] = list(cfg.ensemble.base.values)
        ensemble["weights"] = list(cfg.ensemble.base.weights)
    else:
        ensemble["base"] = {"uniform_symmetric": "uniform"}.get(cfg.ensemble.base.kind, cfg.ensemble.base.kind)
    shift = {"kind": cfg.ensemble.shift_kind}
    if cfg.ensemble.shift_K is not None:
        shift["K"] = cfg.ensemble.shift_K
    ensemble["shift"] = shift
    out = {
        "experiment": cfg.experiment_name,
        "n_values": list(cfg.n_values),
        "trials": cfg.trials,
        "master_seed": cfg.master_seed,
        "ensemble": ensemble,
        "decomp": {"delta": cfg.decomp.delta, "rho": cfg.decomp.rho},
        "lcd": {"gamma": cfg.lcd.gamma, "beta": cfg.lcd.beta},
        "epsilons": list(cfg.epsilons),
        "extras": dict(cfg.extras),
    }
    if cfg.output_path is not None:
        out["output_path"] = cfg.output_path
    return out
