"""Flat ``key = value`` scenario files.

Keys are dotted (``array.n_antennas``, ``user.theta_deg`` ...). Blank lines
and ``#`` comments are ignored. Later layers (command-line flags) override
earlier ones; setting one member of a mutually exclusive pair removes the
other from the lower layer.
"""

from dataclasses import dataclass, field

import numpy as np

from .channel import UserLocation
from .correlation import QuadratureSpec, ScatteringRegion
from .geometry import ArrayGeometry

EXCLUSIVE = [
    ("array.carrier_hz", "array.wavelength_m"),
    ("user.theta_deg", "user.theta_rad"),
    ("region.theta1_deg", "region.theta1_rad"),
    ("region.theta2_deg", "region.theta2_rad"),
    ("sweep.start_deg", "sweep.start_rad", "sweep.start"),
    ("sweep.stop_deg", "sweep.stop_rad", "sweep.stop"),
    ("numerics.threshold_db", "numerics.threshold"),
]

# Keys that do not affect results; kept out of the echoed config.
_NOT_ECHOED = {"output.path", "output.format", "output.matrix_path"}


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value
    return out


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def merge(base: dict, override: dict) -> dict:
    merged = dict(base)
    for key, value in override.items():
        for group in EXCLUSIVE:
            if key in group:
                for other in group:
                    if other != key:
                        merged.pop(other, None)
        merged[key] = value
    return merged


@dataclass
class ScenarioConfig:
    values: dict = field(default_factory=dict)

    def has(self, key):
        return key in self.values

    def get_str(self, key, default=None):
        if key in self.values:
            return self.values[key]
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default

    def get_float(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise ConfigError(f"missing required key {key!r}")
            return float(default)
        try:
            return float(self.values[key])
        except ValueError:
            raise ConfigError(f"{key}: not a number: {self.values[key]!r}") from None

    def get_int(self, key, default=None):
        val = self.get_float(key, default)
        if val != int(val):
            raise ConfigError(f"{key}: expected an integer, got {self.values.get(key)!r}")
        return int(val)

    def get_bool(self, key, default=False):
        if key not in self.values:
            return default
        v = self.values[key].strip().lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {self.values[key]!r}")

    def _one_of(self, keys, required=True):
        present = [k for k in keys if k in self.values]
        if len(present) > 1:
            raise ConfigError(f"give only one of {', '.join(present)}")
        if not present:
            if required:
                raise ConfigError(f"one of {', '.join(keys)} is required")
            return None
        return present[0]

    def _angle(self, stem, required=True):
        key = self._one_of((stem + "_deg", stem + "_rad"), required)
        if key is None:
            return None
        val = self.get_float(key)
        return float(np.deg2rad(val)) if key.endswith("_deg") else val

    # -- typed views ---------------------------------------------------------

    def geometry(self) -> ArrayGeometry:
        n = self.get_int("array.n_antennas")
        ratio = self.get_float("array.spacing_over_lambda", 0.5)
        key = self._one_of(("array.carrier_hz", "array.wavelength_m"))
        if key == "array.carrier_hz":
            lam = ArrayGeometry.from_carrier(1, 1.0, self.get_float(key)).wavelength_m
        else:
            lam = self.get_float(key)
        return ArrayGeometry(n, ratio * lam, lam)

    def user(self) -> UserLocation:
        return UserLocation(self._angle("user.theta"), self.get_float("user.distance_m"))

    def user_theta(self, required=True):
        return self._angle("user.theta", required)

    def region(self) -> ScatteringRegion:
        return ScatteringRegion(
            self._angle("region.theta1"),
            self._angle("region.theta2"),
            self.get_float("region.d1"),
            self.get_float("region.d2"),
            self.get_float("region.beta", 1.0),
        )

    def quadrature(self):
        nt = self.get_int("numerics.n_theta", 0)
        nu = self.get_int("numerics.n_u", 0)
        if nt == 0 and nu == 0:
            return None
        if nt == 0 or nu == 0:
            raise ConfigError("set both numerics.n_theta and numerics.n_u, or neither")
        return QuadratureSpec(nt, nu)

    def threshold(self) -> float:
        key = self._one_of(("numerics.threshold_db", "numerics.threshold"), required=False)
        if key is None:
            return 0.5
        val = self.get_float(key)
        return 10.0 ** (-val / 10.0) if key.endswith("_db") else val

    def sweep_bound(self, stem):
        key = self._one_of((stem + "_deg", stem + "_rad", stem), required=False)
        if key is None:
            return None
        val = self.get_float(key)
        return float(np.deg2rad(val)) if key.endswith("_deg") else val

    def echo(self) -> dict:
        return {k: v for k, v in sorted(self.values.items()) if k not in _NOT_ECHOED}
