"""Run configuration: defaults, ``key = value`` config files and flag overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError, DomainError
from .models import DEFAULT_PARAMS, ModelParams, Variant


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams = DEFAULT_PARAMS
    variants: tuple = (Variant.SUB, Variant.SUPRA)
    order: int = 20
    # (order for the t < T curves, order for the maturity curve)
    sub_orders: tuple = (20, 2000)
    supra_orders: tuple = (20, 300)
    s_range: tuple = (0.0, 6.0)
    samples: int = 200
    t_values: tuple = (0.0, 3.0)
    t: float = 0.0
    s: float = 3.0
    out: str = "figures"
    fmt: str = "csv"
    tol: float | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = self.s_range
        if not (0.0 <= lo < hi):
            raise ConfigError(f"s_range must satisfy 0 <= lo < hi, got {self.s_range}")
        if self.samples < 2:
            raise ConfigError(f"samples must be at least 2, got {self.samples}")
        for t in self.t_values:
            if not 0.0 <= t <= self.params.maturity:
                raise ConfigError(f"t value {t} outside [0, T]")
        for o in (self.order, *self.sub_orders, *self.supra_orders):
            if o < 0:
                raise ConfigError("truncation orders must be nonnegative")
        if self.fmt not in ("csv", "svg"):
            raise ConfigError(f"format must be csv or svg, got {self.fmt!r}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tol must be positive")

    def dump(self):
        """Resolved configuration in config-file syntax."""
        p = self.params
        lines = [
            f"sigma = {p.sigma!r}", f"rate = {p.r!r}", f"strike = {p.strike!r}",
            f"maturity = {p.maturity!r}",
            f"variant = {','.join(v.value for v in self.variants)}",
            f"order = {self.order}",
            f"sub_orders = {','.join(map(str, self.sub_orders))}",
            f"supra_orders = {','.join(map(str, self.supra_orders))}",
            f"s_range = {self.s_range[0]!r},{self.s_range[1]!r}",
            f"samples = {self.samples}",
            f"t_values = {','.join(repr(t) for t in self.t_values)}",
            f"t = {self.t!r}", f"s = {self.s!r}",
            f"out = {self.out}", f"format = {self.fmt}",
            f"tol = {'default' if self.tol is None else repr(self.tol)}",
            f"seed = {self.seed}",
        ]
        lines += [f"{k} = {v}" for k, v in sorted(self.extra.items())]
        return "\n".join(lines) + "\n"


def _floats(text, n=None):
    vals = tuple(float(x) for x in text.replace(" ", "").split(",") if x)
    if n is not None and len(vals) != n:
        raise ValueError(f"expected {n} comma-separated numbers")
    return vals


def _ints(text):
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def _variants(text):
    return tuple(Variant.parse(x) for x in text.replace(" ", "").split(",") if x)


_PARAM_KEYS = {"sigma": "sigma", "rate": "r", "strike": "strike", "maturity": "maturity"}
_FIELDS = {
    "variant": ("variants", _variants),
    "order": ("order", int),
    "sub_orders": ("sub_orders", _ints),
    "supra_orders": ("supra_orders", _ints),
    "s_range": ("s_range", lambda x: _floats(x, 2)),
    "samples": ("samples", int),
    "t_values": ("t_values", _floats),
    "t": ("t", float),
    "s": ("s", float),
    "out": ("out", str),
    "format": ("fmt", str),
    "tol": ("tol", lambda x: None if x == "default" else float(x)),
    "seed": ("seed", int),
}
# Keys accepted in a config file but only meaningful to single subcommands.
EXTRA_KEYS = {"ns", "nt", "s_max", "bc"}


def parse_assignments(items, source="<flags>"):
    """Turn ``(lineno, key, raw)`` triples into typed overrides."""
    params, fields, extra = {}, {}, {}
    for lineno, key, raw in items:
        key = key.strip().replace("-", "_")
        where = f"{source}:{lineno}" if lineno else source
        try:
            if key in _PARAM_KEYS:
                params[_PARAM_KEYS[key]] = float(raw)
            elif key in _FIELDS:
                name, conv = _FIELDS[key]
                fields[name] = conv(raw.strip())
            elif key in EXTRA_KEYS:
                extra[key] = raw.strip()
            else:
                raise ConfigError(f"{where}: unknown key {key!r}")
        except (ValueError, DomainError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{where}: bad value for {key!r}: {raw!r} ({exc})") from None
    return params, fields, extra


def read_config_file(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    items = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        items.append((lineno, key, raw))
    return parse_assignments(items, str(path))


def resolve(file_overrides=None, flag_overrides=None):
    """Defaults, then config-file values, then flags."""
    base = RunConfig()
    params = dataclasses.asdict(base.params)
    fields, extra = {}, {}
    for over in (file_overrides, flag_overrides):
        if over is None:
            continue
        p, f, e = over
        params.update(p)
        fields.update(f)
        extra.update(e)
    try:
        model = ModelParams(**params)
        return replace(base, params=model, extra=extra, **fields)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
