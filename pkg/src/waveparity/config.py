"""Run configuration, defaults, and the flat key = value config file format."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .codec import BIT_ORDERS, LSB_FIRST, pad_length
from .errors import ConfigError, InvalidRange
from .wavelet import FILTERS

UNIFORM_WEIGHTS = "uniform"
DEFAULT_BUCKET_SIZE = 1000
DEFAULT_BOUNDARY_BAND = 0.05

# evaluation knobs that may appear in a config file next to RunConfig fields
EXTRA_KEYS = ("bucket_size", "boundary_band")


@dataclass(frozen=True)
class RunConfig:
    """Everything one pipeline execution depends on.

    weights may be an explicit per-level tuple, the string "uniform", or None
    for the graded default (1.0, 1.1, 1.2, ...). kmeans_init is "minmax",
    "random", or "random:<seed>".
    """

    range_start: int
    range_end: int
    wavelet: str = "haar"
    num_levels: int = 3
    bit_order: str = LSB_FIRST
    weights: tuple[float, ...] | str | None = None
    threshold: float = 0.5
    include_approx: bool = False
    kmeans_tolerance: float = 1e-9
    kmeans_max_iterations: int = 300
    kmeans_init: str = "minmax"
    seed: int | None = None

    @property
    def num_feature_levels(self) -> int:
        """Level rows in the feature tensor (detail levels plus the approx pseudo-level)."""
        return self.num_levels + (1 if self.include_approx else 0)

    @property
    def signal_length(self) -> int:
        """Dataset-global sample count: padded to fit both the range and the level count."""
        return max(pad_length(self.range_end), 1 << self.num_levels)

    def validate(self) -> None:
        if self.range_start < 0 or self.range_end < self.range_start:
            raise InvalidRange(f"invalid range [{self.range_start}, {self.range_end}]")
        if self.wavelet not in FILTERS:
            raise ConfigError(f"unknown wavelet {self.wavelet!r}; available: {sorted(FILTERS)}")
        if self.bit_order not in BIT_ORDERS:
            raise ConfigError(f"bit_order must be one of {BIT_ORDERS}")
        if self.num_levels < 1:
            raise ConfigError("num_levels must be >= 1")
        if not 0.0 < self.threshold < 1.0:
            raise ConfigError("threshold must lie strictly between 0 and 1")
        if self.kmeans_tolerance <= 0.0:
            raise ConfigError("kmeans_tolerance must be positive")
        if self.kmeans_max_iterations < 1:
            raise ConfigError("kmeans_max_iterations must be >= 1")
        self.resolved_init()
        self.resolved_weights()

    def resolved_weights(self) -> tuple[float, ...]:
        """Concrete per-level weights covering every feature-tensor level."""
        count = self.num_feature_levels
        if self.weights is None:
            return tuple(1.0 + level / 10 for level in range(count))
        if isinstance(self.weights, str):
            if self.weights != UNIFORM_WEIGHTS:
                raise ConfigError(f"unknown weight scheme {self.weights!r}")
            return (1.0,) * count
        w = tuple(float(x) for x in self.weights)
        if any(x <= 0.0 for x in w):
            raise ConfigError("weights must all be positive")
        if len(w) == count:
            return w
        if len(w) == self.num_levels and self.include_approx:
            # graded continuation for the approx pseudo-level
            return w + (w[-1] + 0.1,)
        raise ConfigError(
            f"need {count} weights (or {self.num_levels} to auto-extend), got {len(w)}"
        )

    def resolved_init(self) -> tuple[str, int | None]:
        """Split kmeans_init into (method, seed); 'random:<n>' overrides the seed field."""
        init = self.kmeans_init
        if init == "minmax":
            return "minmax", None
        if init == "random":
            return "random", self.seed if self.seed is not None else 0
        if init.startswith("random:"):
            try:
                return "random", int(init.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"bad kmeans_init {init!r}; expected random:<int>") from None
        raise ConfigError(f"kmeans_init must be minmax, random, or random:<seed>, got {init!r}")

    def to_dict(self) -> dict:
        """JSON-friendly echo of the configuration, including derived values."""
        weights = self.weights
        if isinstance(weights, tuple):
            weights = list(weights)
        return {
            "range_start": self.range_start,
            "range_end": self.range_end,
            "wavelet": self.wavelet,
            "num_levels": self.num_levels,
            "bit_order": self.bit_order,
            "weights": weights,
            "threshold": self.threshold,
            "include_approx": self.include_approx,
            "kmeans_tolerance": self.kmeans_tolerance,
            "kmeans_max_iterations": self.kmeans_max_iterations,
            "kmeans_init": self.kmeans_init,
            "seed": self.seed,
            "signal_length": self.signal_length,
            "resolved_weights": list(self.resolved_weights()),
        }

    def sort_key(self) -> str:
        """Canonical string used to break accuracy ties deterministically."""
        items = []
        for f in fields(self):
            items.append(f"{f.name}={getattr(self, f.name)!r}")
        return ",".join(items)


def parse_config_file(path) -> dict[str, str]:
    """Read a flat ``key = value`` file; '#' starts a comment, later keys win."""
    mapping: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        mapping[key.strip()] = value.strip()
    return mapping


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def parse_weights_value(value: str):
    """Parse a weights config value: default, uniform, or colon-joined floats."""
    if value == "default":
        return None
    if value == UNIFORM_WEIGHTS:
        return UNIFORM_WEIGHTS
    try:
        return tuple(float(part) for part in value.split(":"))
    except ValueError:
        raise ConfigError(f"bad weights {value!r}; expected w1:w2:...") from None


def parse_range_value(value: str) -> tuple[int, int]:
    """Parse 'start:end' into a pair of integers."""
    try:
        start_text, end_text = value.split(":", 1)
        return int(start_text), int(end_text)
    except ValueError:
        raise ConfigError(f"bad range {value!r}; expected start:end") from None


_FIELD_PARSERS = {
    "range_start": int,
    "range_end": int,
    "wavelet": str,
    "num_levels": int,
    "bit_order": str,
    "weights": parse_weights_value,
    "threshold": float,
    "include_approx": _parse_bool,
    "kmeans_tolerance": float,
    "kmeans_max_iterations": int,
    "kmeans_init": str,
    "seed": int,
}

_EXTRA_PARSERS = {"bucket_size": int, "boundary_band": float}


def config_updates_from_strings(mapping: dict[str, str]) -> tuple[dict, dict]:
    """Convert raw config-file strings into RunConfig kwargs plus evaluation extras.

    Supports the 'range = start:end' shorthand. Unknown keys raise ConfigError.
    """
    updates: dict = {}
    extras: dict = {}
    for key, value in mapping.items():
        if key == "range":
            updates["range_start"], updates["range_end"] = parse_range_value(value)
            continue
        if key in _FIELD_PARSERS:
            parser = _FIELD_PARSERS[key]
            try:
                updates[key] = parser(value, key) if parser is _parse_bool else parser(value)
            except ConfigError:
                raise
            except ValueError:
                raise ConfigError(f"bad value for {key}: {value!r}") from None
            continue
        if key in _EXTRA_PARSERS:
            try:
                extras[key] = _EXTRA_PARSERS[key](value)
            except ValueError:
                raise ConfigError(f"bad value for {key}: {value!r}") from None
            continue
        raise ConfigError(f"unknown config key {key!r}")
    return updates, extras


def build_config(updates: dict) -> RunConfig:
    """Construct and validate a RunConfig from accumulated kwargs."""
    if "range_start" not in updates or "range_end" not in updates:
        raise ConfigError("a range is required (range = start:end)")
    config = RunConfig(**updates)
    config.validate()
    return config
