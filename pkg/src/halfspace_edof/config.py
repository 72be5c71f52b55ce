"""
Scenario configuration: a flat ``key = value`` text format, the sweep description and the figure
presets.

    # the default scenario
    wavelength = 0.1
    eta = 0.3-0.1i      # inf for the perfectly reflecting ground
    M = 50
"""
import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np

from .channel import make_link
from .errors import ConfigurationError, GeometryError
from .greens import GreenMode, parse_mode
from .sommerfeld import QuadratureSpec
from .spectral import ContourSpec, GroundModel


def parse_complex(text):
    """'0.3-0.1i', '2', '1j' or 'inf'."""
    cleaned = text.strip().replace(' ', '')
    if cleaned.lower() in ('inf', '+inf', 'infinity'):
        return complex(math.inf, 0)
    cleaned = cleaned.replace('i', 'j')
    try:
        return complex(cleaned)
    except ValueError:
        raise ConfigurationError(f"'{text}' is not a complex number") from None


def format_complex(value):
    value = complex(value)
    if math.isinf(abs(value)):
        return 'inf'
    sign = '-' if value.imag < 0 or (value.imag == 0 and math.copysign(1, value.imag) < 0) else '+'
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


@dataclass(frozen=True)
class ScenarioConfig:
    wavelength: float = 0.1
    eta: complex = 0.3 - 0.1j
    T: float = 10.0
    W: int = 10
    Q: int = 5
    L_s: float = 12.0
    L_r: float = 4.0
    z_s: float = 10.0
    z_r: float = 1.0
    rho: float = 10.0
    M: int = 50
    N: int = 50
    green_mode: str = GreenMode.HALF_SPACE_CLOSED.value
    line_order: int = 64
    panel_nodes: int = 32
    path_panels: int = 64
    tail_rel_tol: float = 1e-10
    max_tail_panels: int = 256

    def __post_init__(self):
        for name in ('wavelength', 'L_s', 'L_r', 'z_s', 'z_r', 'rho'):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ('M', 'N', 'line_order'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value}")
            object.__setattr__(self, name, int(value))
        object.__setattr__(self, 'eta', complex(self.eta))
        object.__setattr__(self, 'green_mode', parse_mode(self.green_mode).value)
        # the builders validate the rest
        self.ground()
        self.contour()
        self.quadrature()

    @property
    def mode(self):
        return GreenMode(self.green_mode)

    def ground(self):
        return GroundModel.from_impedance(self.wavelength, self.eta)

    def contour(self):
        return ContourSpec(self.T, self.W, self.Q)

    def quadrature(self):
        return QuadratureSpec(self.panel_nodes, self.path_panels, self.tail_rel_tol, self.max_tail_panels)

    def link(self):
        try:
            return make_link(self.L_s, self.L_r, self.z_s, self.z_r, self.rho)
        except GeometryError as e:
            raise ConfigurationError(str(e)) from None

    def replace(self, **overrides):
        unknown = set(overrides) - set(_FIELDS)
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **overrides)

    def override(self, key, text):
        key = key.strip()
        if key not in _FIELDS:
            raise ConfigurationError(f"unknown configuration key '{key}'")
        return self.replace(**{key: _parse_value(key, text)})


_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


def _parse_value(key, text):
    text = text.strip()
    kind = _FIELDS[key].type
    try:
        if kind in ('complex', complex):
            return parse_complex(text)
        if kind in ('int', int):
            return int(text)
        if kind in ('float', float):
            return float(text)
    except ValueError:
        raise ConfigurationError(f"invalid value '{text}' for {key}") from None
    return text


def _format_value(value):
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text, base=None):
    """Apply the ``key = value`` lines of ``text`` on top of ``base`` (the defaults when omitted)."""
    overrides = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigurationError(f"line {number}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split('=', 1))
        if key not in _FIELDS:
            raise ConfigurationError(f"line {number}: unknown configuration key '{key}'")
        if key in overrides:
            raise ConfigurationError(f"line {number}: duplicate configuration key '{key}'")
        overrides[key] = _parse_value(key, value)
    return (base or ScenarioConfig()).replace(**overrides)


def load_config(path):
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigurationError(f"cannot read configuration '{path}': {e.strerror}") from None
    return parse_config(text)


def format_config(config):
    return ''.join(f"{name} = {_format_value(getattr(config, name))}\n" for name in _FIELDS)


_SWEEP_ALIASES = {'M': 'M', 'rho': 'rho', 'z_r': 'z_r', 'zr': 'z_r'}


@dataclass(frozen=True)
class SweepSpec:
    """The swept variable and its strictly increasing values; sweeping M sets N = M."""

    variable: str
    values: Tuple[float, ...]

    def __post_init__(self):
        if self.variable not in _SWEEP_ALIASES:
            raise ConfigurationError(f"cannot sweep '{self.variable}'; choose M, rho or zr")
        variable = _SWEEP_ALIASES[self.variable]
        values = tuple(self.values)
        if not values:
            raise ConfigurationError("a sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigurationError("sweep values must be strictly increasing")
        if variable == 'M':
            if any(int(v) != v or v < 1 for v in values):
                raise ConfigurationError("antenna counts must be positive integers")
            values = tuple(int(v) for v in values)
        else:
            if any(not v > 0 for v in values):
                raise ConfigurationError(f"{variable} values must be positive")
            values = tuple(float(v) for v in values)
        object.__setattr__(self, 'variable', variable)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_range(cls, variable, start, stop, step):
        """start, start + step, ... up to and including ``stop``."""
        if not step > 0:
            raise ConfigurationError(f"sweep step must be positive, got {step}")
        if stop < start:
            raise ConfigurationError(f"sweep stop {stop} lies below start {start}")
        count = math.floor((stop - start) / step + 1e-9) + 1
        values = np.round(start + step * np.arange(count), 12)
        return cls(variable, tuple(float(v) for v in values))

    @classmethod
    def from_list(cls, variable, text):
        try:
            values = [float(item) for item in text.split(',') if item.strip()]
        except ValueError:
            raise ConfigurationError(f"invalid sweep values '{text}'") from None
        return cls(variable, tuple(values))

    def apply(self, config, value):
        if self.variable == 'M':
            return config.replace(M=int(value), N=int(value))
        return config.replace(**{self.variable: float(value)})


# figure scenarios: configuration overrides and the default sweep
PRESETS = {
    'fig4': ({}, SweepSpec.from_range('M', 2, 200, 1)),
    'fig4-zs50': ({'z_s': 50.0}, SweepSpec.from_range('M', 2, 200, 1)),
    'fig5': ({'z_r': 1.0, 'M': 50, 'N': 50}, SweepSpec.from_range('rho', 5, 50, 1)),
    'fig5-zs50': ({'z_r': 1.0, 'z_s': 50.0, 'M': 50, 'N': 50}, SweepSpec.from_range('rho', 5, 50, 1)),
    'fig6': ({'rho': 25.0, 'M': 50, 'N': 50}, SweepSpec.from_range('z_r', 1, 20, 1)),
    'fig6-zs50': ({'rho': 25.0, 'z_s': 50.0, 'M': 50, 'N': 50}, SweepSpec.from_range('z_r', 1, 20, 1)),
}


def preset(name, base=None):
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset '{name}'; choose one of {', '.join(PRESETS)}")
    overrides, sweep = PRESETS[name]
    return (base or ScenarioConfig()).replace(**overrides), sweep
