"""JSON run configuration: a top-level "params" object plus per-command sections."""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ConfigError
from .model import PARAM_NAMES, ModelParams
from .normal_form import Convention
from .pde import Perturbation, SimConfig

SECTIONS = ("params", "steady_state", "bifurcation", "normal_form", "simulate", "verify", "hooks")


def load_config(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - set(SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    return cfg


def _number(section: str, name: str, val, positive=False, integer=False):
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{section}.{name} must be a number (got {val!r})")
    if not math.isfinite(val):
        raise ConfigError(f"{section}.{name} must be finite")
    if integer and int(val) != val:
        raise ConfigError(f"{section}.{name} must be an integer (got {val!r})")
    if positive and val <= 0:
        raise ConfigError(f"{section}.{name} must be positive (got {val!r})")
    return int(val) if integer else float(val)


def params_from(cfg: dict) -> ModelParams:
    raw = cfg.get("params")
    if not isinstance(raw, dict):
        raise ConfigError("missing required field: params")
    for name in PARAM_NAMES:
        if name not in raw:
            raise ConfigError(f"missing required field: params.{name}")
    extra = set(raw) - set(PARAM_NAMES)
    if extra:
        raise ConfigError(f"unknown parameter(s): {', '.join(sorted(extra))}")
    return ModelParams(**{k: _number("params", k, raw[k]) for k in PARAM_NAMES})


def section(cfg: dict, name: str) -> dict:
    sec = cfg.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"section {name} must be an object")
    return sec


def get(sec: dict, secname: str, key: str, default, **kw):
    if key not in sec or sec[key] is None:
        return default
    return _number(secname, key, sec[key], **kw)


def convention_from(sec: dict) -> Convention:
    raw = sec.get("convention", {})
    if not isinstance(raw, dict):
        raise ConfigError("normal_form.convention must be an object")
    fields = {"complete_mixed_taxis", "alpha_rate_includes_ustar"}
    extra = set(raw) - fields
    if extra:
        raise ConfigError(f"unknown convention flag(s): {', '.join(sorted(extra))}")
    for k, v in raw.items():
        if not isinstance(v, bool):
            raise ConfigError(f"normal_form.convention.{k} must be true or false")
    return Convention(**raw)


def sim_config_from(cfg: dict) -> SimConfig:
    p = params_from(cfg)
    sec = section(cfg, "simulate")
    perts = []
    for i, item in enumerate(sec.get("perturbations", [])):
        if not isinstance(item, dict) or not {"species", "mode", "amp"} <= set(item):
            raise ConfigError(f"simulate.perturbations[{i}] needs species, mode and amp")
        if item["species"] not in ("u", "v"):
            raise ConfigError(f"simulate.perturbations[{i}].species must be 'u' or 'v'")
        perts.append(Perturbation(item["species"],
                                  _number("simulate", "mode", item["mode"], integer=True),
                                  _number("simulate", "amp", item["amp"])))
    modes = sec.get("modes", [3, 4])
    if not (isinstance(modes, list) and len(modes) == 2):
        raise ConfigError("simulate.modes must be a list of two mode numbers")
    base = sec.get("base")
    if base is not None:
        if not (isinstance(base, list) and len(base) == 2):
            raise ConfigError("simulate.base must be [u0, v0]")
        base = (_number("simulate", "base", base[0], positive=True),
                _number("simulate", "base", base[1], positive=True))
    N = get(sec, "simulate", "N", 256, integer=True)
    if N < 64:
        raise ConfigError(f"simulate.N must be >= 64 (got {N})")
    return SimConfig(
        params=p, N=N,
        t_end=get(sec, "simulate", "t_end", 3000.0, positive=True),
        dt_max=get(sec, "simulate", "dt_max", 0.05, positive=True),
        safety=get(sec, "simulate", "safety", 1.0, positive=True),
        perturbations=tuple(perts), base=base,
        snapshot_dt=get(sec, "simulate", "snapshot_dt", 10.0, positive=True),
        modes=tuple(_number("simulate", "modes", m, positive=True, integer=True) for m in modes),
        early_exit_tol=get(sec, "simulate", "early_exit_tol", 1e-9),
    )
