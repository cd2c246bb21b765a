"""Flat key-value configuration files for sweeps.

Format: one ``key = value`` pair per line, ``#`` comments and blank
lines ignored.  Keys mirror the command-line flags; unknown keys are
rejected with the offending line number.  Flags given on the command
line override file values.
"""

from __future__ import annotations

from .sweeps import KINDS, SweepSpec

__all__ = ["ConfigError", "parse_config", "load_config", "build_spec"]


class ConfigError(ValueError):
    """Configuration file could not be parsed or validated."""


_INT_KEYS = {"sites", "atoms", "cut", "distance", "states", "threads"}
_FLOAT_KEYS = {
    "hopping",
    "interaction",
    "detuning",
    "trap",
    "omega_min",
    "omega_max",
    "omega_step",
    "ramp_rate",
    "t_final",
}
_STR_KEYS = {"kind", "boundary", "out"}
KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def parse_config(path) -> dict:
    """Read a key-value file into a typed dict, rejecting unknown keys."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(
                    f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
                )
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in KNOWN_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                if key in _INT_KEYS:
                    values[key] = int(val)
                elif key in _FLOAT_KEYS:
                    values[key] = float(val)
                else:
                    values[key] = val
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: invalid value {val!r} for {key!r}"
                ) from None
    return values


def build_spec(kind: str | None, config: dict, overrides: dict) -> SweepSpec:
    """Merge config-file values and explicit flag overrides into a spec.

    ``overrides`` entries that are None are treated as unset.  The sweep
    kind comes from the argument when given, else from the config file.
    """
    merged = dict(config)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    if kind is not None:
        merged["kind"] = kind
    if "kind" not in merged:
        raise ConfigError("no sweep kind given (subcommand or 'kind =' line)")
    if merged["kind"] not in KINDS:
        raise ConfigError(
            f"kind must be one of {', '.join(KINDS)}; got {merged['kind']!r}"
        )
    return SweepSpec(**merged).validate()


def load_config(path) -> SweepSpec:
    """Build a validated sweep spec from a configuration file alone."""
    return build_spec(None, parse_config(path), {})
