"""Flat key = value experiment configuration and CSV helpers."""
from __future__ import annotations

import csv
import io
import os

from .network import BcKind, Network, build_staircase


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def parse_config(path: str) -> dict[str, str]:
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    cfg: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, val = line.split("=", 1)
            cfg[key.strip()] = val.strip()
    return cfg


def get_float(cfg, key, default=None) -> float:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required config key '{key}'")
        return default
    try:
        return float(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"config key '{key}': not a number: {cfg[key]!r}") from exc


def get_int(cfg, key, default=None) -> int:
    v = get_float(cfg, key, default)
    if v != int(v):
        raise ConfigError(f"config key '{key}': expected an integer, got {v}")
    return int(v)


def get_bool(cfg, key, default=False) -> bool:
    if key not in cfg:
        return default
    val = cfg[key].lower()
    if val in ("1", "true", "yes", "on"):
        return True
    if val in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"config key '{key}': expected a boolean, got {cfg[key]!r}")


def get_grid(cfg, key) -> list[float]:
    """Grid spec: comma list '2,5,20' or inclusive range 'from:to:step'."""
    if key not in cfg:
        raise ConfigError(f"missing required config key '{key}'")
    spec = cfg[key]
    try:
        if ":" in spec:
            lo, hi, step = (float(v) for v in spec.split(":"))
            if step <= 0 or hi < lo:
                raise ConfigError(f"config key '{key}': bad range {spec!r}")
            out, v, i = [], lo, 0
            while v <= hi + 1e-12 * max(1.0, abs(hi)):
                out.append(v)
                i += 1
                v = lo + i * step
            return out
        return [float(v) for v in spec.split(",") if v.strip()]
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config key '{key}': cannot parse grid {spec!r}") from exc


def build_network(cfg, bc: BcKind | None = None) -> Network:
    n = get_int(cfg, "n_fractures")
    nu_spec = cfg.get("nu", "1")
    nu = [float(v) for v in nu_spec.split(",")] if "," in nu_spec else float(nu_spec)
    if bc is None:
        bc_name = cfg.get("bc", "dirichlet").lower()
        try:
            bc = BcKind(bc_name)
        except ValueError as exc:
            raise ConfigError(f"config key 'bc': unknown kind {bc_name!r}") from exc
    try:
        return build_staircase(n, get_float(cfg, "length", 1.0),
                               get_float(cfg, "gamma1"), get_float(cfg, "gamma2"),
                               nu, bc)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def fmt(x) -> str:
    """17-significant-digit decimal rendering; round-trips float64 exactly."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_csv(path: str, header: list[str], rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def read_csv(path: str) -> tuple[list[str], list[list[float]]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader if row]
    return header, rows


def column(path_or_data, name: str) -> list[float]:
    header, rows = read_csv(path_or_data) if isinstance(path_or_data, str) else path_or_data
    if name not in header:
        raise ConfigError(f"column '{name}' not found; have {header}")
    i = header.index(name)
    return [r[i] for r in rows]
