"""Flat `key = value` run configuration with dotted keys.

The format is deliberately plain text: one assignment per line, `#` starts a
comment, booleans are true/false.  Unknown keys are rejected so typos cannot
silently fall back to defaults, and the fully resolved mapping (defaults
included) is echoed into every run manifest.
"""

from __future__ import annotations

from typing import Any

from .nonlinearity import NonlinearitySpec, Perturbation, SampleBox
from .solver import InitSpec, SolveConfig

__all__ = [
    "ConfigError",
    "DEFAULTS",
    "parse_config_text",
    "load_config",
    "build_spec",
    "build_sample_box",
    "build_solve_config",
]


class ConfigError(ValueError):
    """Malformed configuration; the message names the offending key."""


def _as_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


# key -> (default, converter)
DEFAULTS: dict[str, tuple[Any, Any]] = {
    "L": (64.0, float),
    "N": (4096, int),
    "alpha": (0.75, float),
    "autonomous": (False, _as_bool),
    "p": (3.0, float),
    "theta": (4.0, float),
    "p0": (3.5, float),
    "a.kind": ("gaussian", str),
    "a.amplitude": (0.5, float),
    "a.width": (1.0, float),
    "init.kind": ("gaussian", str),
    "init.center": (0.0, float),
    "init.width": (2.0, float),
    "init.amplitude": (1.0, float),
    "init.path": ("", str),
    "tau": (0.5, float),
    "max_iters": (2000, int),
    "residual_tol": (1e-7, float),
    "recentre": (True, _as_bool),
    "window_radius": (1.0, float),
    "seed": (0, int),
    "fiber.sigma_min": (0.01, float),
    "fiber.sigma_max": (10.0, float),
    "fiber.count": (200, int),
    "hyp.t_max": (8.0, float),
    "hyp.xi_max": (1e4, float),
    "hyp.n_samples": (48, int),
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse assignments into typed values, rejecting unknown keys."""
    out: dict[str, Any] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw_line!r}")
        key, raw_value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        _, convert = DEFAULTS[key]
        try:
            out[key] = convert(raw_value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
    return out


def load_config(path: str | None, overrides: list[str]) -> dict[str, Any]:
    """Merge defaults, an optional config file, and --set overrides."""
    resolved = {key: default for key, (default, _) in DEFAULTS.items()}
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            resolved.update(parse_config_text(fh.read(), source=path))
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        resolved.update(parse_config_text(item, source="--set"))
    return resolved


def build_spec(values: dict[str, Any]) -> NonlinearitySpec:
    try:
        perturbation = Perturbation(
            kind=values["a.kind"],
            amplitude=values["a.amplitude"],
            width=values["a.width"],
        )
    except ValueError as exc:
        raise ConfigError(f"a.*: {exc}") from exc
    try:
        return NonlinearitySpec(
            p=values["p"], theta=values["theta"], p0=values["p0"], perturbation=perturbation
        )
    except ValueError as exc:
        raise ConfigError(f"p/theta/p0: {exc}") from exc


def build_sample_box(values: dict[str, Any]) -> SampleBox:
    try:
        return SampleBox(
            t_max=values["hyp.t_max"],
            xi_max=values["hyp.xi_max"],
            n_samples=values["hyp.n_samples"],
        )
    except ValueError as exc:
        raise ConfigError(f"hyp.*: {exc}") from exc


def build_solve_config(values: dict[str, Any]) -> SolveConfig:
    spec = build_spec(values)
    init = InitSpec(
        kind=values["init.kind"],
        center=values["init.center"],
        width=values["init.width"],
        amplitude=values["init.amplitude"],
        path=values["init.path"],
    )
    try:
        return SolveConfig(
            half_width=values["L"],
            n_points=values["N"],
            alpha=values["alpha"],
            spec=spec,
            autonomous=values["autonomous"],
            init=init,
            step=values["tau"],
            max_iters=values["max_iters"],
            residual_tol=values["residual_tol"],
            recentre=values["recentre"],
            window_radius=values["window_radius"],
        )
    except ValueError as exc:
        raise ConfigError(f"alpha/grid/solver: {exc}") from exc
