"""Configuration documents: one JSON object drives every CLI entry point.

Frequencies are given as plain "over 2 pi" values (GHz except Gamma, which
the paper-style captions quote in MHz) and converted here to rad/ns.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .bloch import IntegratorSettings
from .core import SystemParams, make_squeeze
from .errors import ConfigError

__all__ = ["load_config", "parse_config", "ParsedConfig"]

TWO_PI = 2.0 * math.pi

_REQUIRED = (
    "alpha",
    "r",
    "g_over_2pi_GHz",
    "Gamma_over_2pi_MHz",
    "kappa_over_2pi_GHz",
    "gamma_over_2pi_GHz",
    "sigma_ns",
    "Omega_over_2pi_GHz",
)

_OPTIONAL = {
    "phi": math.pi / 2.0,
    "Delta_over_2pi_GHz": 0.0,
    "rho11_0": 0.5,
    "rho10_0": 0.5,
    "rtol": 1e-10,
    "atol": 1e-14,
    "window_sigmas": 6.0,
    "samples": 2001,
}

# consumed only by the phase-match entry point
_PHASE_MATCH_KEYS = {"theta_targets", "r_values", "g_bracket_over_2pi_GHz", "rel_tol"}


class ParsedConfig:
    def __init__(self, params: SystemParams, settings: IntegratorSettings, extras: dict):
        self.params = params
        self.settings = settings
        self.extras = extras


def _as_complex(value, field: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(float(value))
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) for v in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"field '{field}': expected a number or [re, im] pair, got {value!r}")


def _as_float(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{field}': expected a number, got {value!r}")
    return float(value)


def load_config(path: str | Path) -> dict:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {p} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {p} must be a JSON object")
    return doc


def parse_config(doc: dict) -> ParsedConfig:
    known = set(_REQUIRED) | set(_OPTIONAL) | _PHASE_MATCH_KEYS
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
    missing = sorted(set(_REQUIRED) - set(doc))
    if missing:
        raise ConfigError(f"missing required config field(s): {', '.join(missing)}")

    vals = dict(_OPTIONAL)
    vals.update(doc)

    alpha = _as_complex(vals["alpha"], "alpha")
    rho10 = _as_complex(vals["rho10_0"], "rho10_0")
    r = _as_float(vals["r"], "r")
    phi = _as_float(vals["phi"], "phi")
    rho11 = _as_float(vals["rho11_0"], "rho11_0")

    try:
        squeeze = make_squeeze(r, phi)
    except ValueError as exc:
        raise ConfigError(f"field 'r'/'phi': {exc}") from exc

    freq_fields = {
        "g": ("g_over_2pi_GHz", 1.0),
        "Gamma": ("Gamma_over_2pi_MHz", 1e-3),
        "kappa": ("kappa_over_2pi_GHz", 1.0),
        "gamma": ("gamma_over_2pi_GHz", 1.0),
        "Omega": ("Omega_over_2pi_GHz", 1.0),
        "Delta": ("Delta_over_2pi_GHz", 1.0),
    }
    rad_per_ns = {}
    for name, (field, ghz_scale) in freq_fields.items():
        rad_per_ns[name] = TWO_PI * ghz_scale * _as_float(vals[field], field)

    try:
        params = SystemParams(
            g=rad_per_ns["g"],
            Gamma=rad_per_ns["Gamma"],
            Omega=rad_per_ns["Omega"],
            Delta=rad_per_ns["Delta"],
            kappa=rad_per_ns["kappa"],
            gamma=rad_per_ns["gamma"],
            sigma=_as_float(vals["sigma_ns"], "sigma_ns"),
            alpha=alpha,
            squeeze=squeeze,
            rho00_0=1.0 - rho11,
            rho11_0=rho11,
            rho10_0=rho10,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    samples = vals["samples"]
    if isinstance(samples, bool) or not isinstance(samples, int):
        raise ConfigError(f"field 'samples': expected an integer, got {samples!r}")
    try:
        settings = IntegratorSettings(
            rtol=_as_float(vals["rtol"], "rtol"),
            atol=_as_float(vals["atol"], "atol"),
            window_sigmas=_as_float(vals["window_sigmas"], "window_sigmas"),
            samples=samples,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    extras = {k: doc[k] for k in _PHASE_MATCH_KEYS if k in doc}
    return ParsedConfig(params, settings, extras)
