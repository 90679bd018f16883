"""Scenario descriptions and their YAML representation.

A scenario file has nested sections mirroring :class:`ScenarioConfig`::

    name: fig5-driven
    medium: {omega_a_thz: 0.8}
    detuning: {delta1: 250, delta2: 250}
    drive: {nu_d: 250, kappa1: 0.21, kappa2: 0.21}
    initial: {amplitude_re: 1.0, amplitude_im: 0.0}
    integration: {t_end: 550ps, steps_per_period: 50, sample_stride: 20}
    outputs: [csv, svg]

Numbers are in units of ``Omega_a`` (frequencies) and ``1/Omega_a`` (times).
A string with a ``thz`` suffix is a frequency in 10^12 s^-1 and a ``ps``
suffix a time in picoseconds; both need a physical ``Omega_a`` in the
``medium`` section. Overrides use dotted paths, e.g. ``drive.kappa1=0.14``;
``drive.kappa`` and ``detuning.delta`` set both members of the pair.
"""
from __future__ import annotations

import copy
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..dynamics import DriveParams, FrequencyShift
from ..integrator import IntegrationControls, step_size_for
from ..materials import MaterialParams, load_isotope_file, lookup_isotope

THZ = 1.0e12
PS = 1.0e-12

OUTPUT_KINDS = ("csv", "svg", "report")
SYSTEMS = ("first", "second")

_SCHEMA = {
    "name": None,
    "medium": {"omega_a_thz": None, "isotope": None, "number_density_cm3": None, "isotope_file": None},
    "detuning": {"delta1": None, "delta2": None, "delta": None},
    "drive": {
        "nu_d": None, "kappa1": None, "kappa2": None, "kappa": None,
        "freq_shift": {"offset": None, "amplitude": None, "frequency": None, "phase": None},
    },
    "initial": {"amplitude_re": None, "amplitude_im": None},
    "integration": {"t_end": None, "dt": None, "steps_per_period": None, "sample_stride": None, "system": None},
    "outputs": None,
}

_UNIT_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*(thz|ps)\s*$", re.IGNORECASE)


class ConfigError(ValueError):
    """Malformed scenario; the message names the offending key."""


@dataclass(frozen=True)
class Medium:
    """Physical scale of the run: a direct ``Omega_a`` or an isotope at a density."""

    omega_a_thz: float | None = None
    isotope: str | None = None
    number_density_cm3: float | None = None
    isotope_file: str | None = None

    def __post_init__(self):
        if self.omega_a_thz is not None and self.isotope is not None:
            raise ConfigError("medium: give either omega_a_thz or isotope, not both")
        if self.omega_a_thz is not None and not self.omega_a_thz > 0:
            raise ConfigError("medium.omega_a_thz: must be positive")
        if self.isotope is not None and self.number_density_cm3 is None:
            raise ConfigError("medium.number_density_cm3: required with an isotope")

    @property
    def material(self) -> MaterialParams | None:
        if self.isotope is None:
            return None
        extra = load_isotope_file(self.isotope_file) if self.isotope_file else None
        try:
            rec = lookup_isotope(self.isotope, extra)
        except KeyError:
            raise ConfigError(f"medium.isotope: unknown isotope {self.isotope!r}") from None
        return MaterialParams(rec, self.number_density_cm3)

    @property
    def omega_a(self) -> float | None:
        """Collective frequency in s^-1, or ``None`` for a dimensionless run."""
        if self.omega_a_thz is not None:
            return self.omega_a_thz * THZ
        mat = self.material
        return mat.collective_frequency if mat is not None else None


@dataclass(frozen=True)
class Integration:
    t_end: float
    dt: float | None = None
    steps_per_period: int = 50
    sample_stride: int = 1
    system: str = "first"

    def __post_init__(self):
        if not self.t_end > 0:
            raise ConfigError("integration.t_end: must be positive")
        if self.dt is not None and not self.dt > 0:
            raise ConfigError("integration.dt: must be positive")
        if self.steps_per_period < 1:
            raise ConfigError("integration.steps_per_period: must be >= 1")
        if self.sample_stride < 1:
            raise ConfigError("integration.sample_stride: must be >= 1")
        if self.system not in SYSTEMS:
            raise ConfigError(f"integration.system: expected one of {SYSTEMS}, got {self.system!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to run and report one integration."""

    name: str
    delta1: float
    delta2: float
    integration: Integration
    drive: DriveParams = DriveParams()
    amplitude: complex = 1.0 + 0j
    medium: Medium = field(default_factory=Medium)
    outputs: tuple[str, ...] = ("csv",)

    @property
    def omega_a(self) -> float | None:
        return self.medium.omega_a

    def controls(self) -> IntegrationControls:
        dt = self.integration.dt
        if dt is None:
            kappa = max(abs(self.drive.kappa1), abs(self.drive.kappa2))
            delta = max(abs(self.delta1), abs(self.delta2))
            dt = step_size_for(delta + self.drive.freq_shift.max_rate, self.drive.nu_d, kappa,
                               self.integration.steps_per_period)
        dt = min(dt, self.integration.t_end)
        return IntegrationControls(self.integration.t_end, dt, self.integration.sample_stride)

    def to_dict(self) -> dict:
        fs = self.drive.freq_shift
        return {
            "name": self.name,
            "medium": {
                "omega_a_thz": self.medium.omega_a_thz,
                "isotope": self.medium.isotope,
                "number_density_cm3": self.medium.number_density_cm3,
                "isotope_file": self.medium.isotope_file,
            },
            "detuning": {"delta1": self.delta1, "delta2": self.delta2},
            "drive": {
                "nu_d": self.drive.nu_d,
                "kappa1": self.drive.kappa1,
                "kappa2": self.drive.kappa2,
                "freq_shift": {"offset": fs.offset, "amplitude": fs.amplitude,
                               "frequency": fs.frequency, "phase": fs.phase},
            },
            "initial": {"amplitude_re": self.amplitude.real, "amplitude_im": self.amplitude.imag},
            "integration": {
                "t_end": self.integration.t_end,
                "dt": self.integration.dt,
                "steps_per_period": self.integration.steps_per_period,
                "sample_stride": self.integration.sample_stride,
                "system": self.integration.system,
            },
            "outputs": list(self.outputs),
        }


def _check_keys(data, schema, prefix=""):
    if not isinstance(data, dict):
        raise ConfigError(f"{prefix.rstrip('.') or '<root>'}: expected a mapping")
    for key, value in data.items():
        path = f"{prefix}{key}"
        if key not in schema:
            raise ConfigError(f"{path}: unknown key")
        if isinstance(schema[key], dict) and value is not None:
            _check_keys(value, schema[key], path + ".")


def _section(data, name):
    sec = data.get(name)
    return {} if sec is None else sec


def _number(value, key, *, omega_a=None, kind=None, default=None, integer=False):
    if value is None:
        if default is None:
            raise ConfigError(f"{key}: required")
        return default
    if isinstance(value, str):
        m = _UNIT_RE.match(value)
        if m is None:
            try:
                value = float(value)
            except ValueError:
                raise ConfigError(f"{key}: expected a number, got {value!r}") from None
        else:
            magnitude, unit = float(m.group(1)), m.group(2).lower()
            expected = "time" if unit == "ps" else "frequency"
            if kind != expected:
                raise ConfigError(f"{key}: unit {unit!r} not allowed here")
            if omega_a is None:
                raise ConfigError(f"{key}: unit {unit!r} needs a physical omega_a in 'medium'")
            value = magnitude * PS * omega_a if unit == "ps" else magnitude * THZ / omega_a
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if integer:
        if int(value) != value:
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite")
    return value


def _pair(section, key_a, key_b, key_both, prefix, default, **kw):
    both = section.get(key_both)
    a = section.get(key_a, both)
    b = section.get(key_b, both)
    return (_number(a, f"{prefix}.{key_a}", default=default, **kw),
            _number(b, f"{prefix}.{key_b}", default=default, **kw))


def config_from_dict(data: dict) -> ScenarioConfig:
    """Build a scenario from its nested-dict form, validating every key."""
    _check_keys(data, _SCHEMA)
    if not data.get("name"):
        raise ConfigError("name: required")

    med = _section(data, "medium")
    medium = Medium(
        omega_a_thz=None if med.get("omega_a_thz") is None else _number(med["omega_a_thz"], "medium.omega_a_thz"),
        isotope=None if med.get("isotope") is None else str(med["isotope"]),
        number_density_cm3=(None if med.get("number_density_cm3") is None
                            else _number(med["number_density_cm3"], "medium.number_density_cm3")),
        isotope_file=med.get("isotope_file"),
    )
    omega_a = medium.omega_a
    freq = {"omega_a": omega_a, "kind": "frequency"}

    det = _section(data, "detuning")
    delta1, delta2 = _pair(det, "delta1", "delta2", "delta", "detuning", None, **freq)

    drv = _section(data, "drive")
    nu_d = _number(drv.get("nu_d"), "drive.nu_d", default=0.0, **freq)
    kappa1, kappa2 = _pair(drv, "kappa1", "kappa2", "kappa", "drive", 0.0)
    fsd = _section(drv, "freq_shift")
    shift = FrequencyShift(
        offset=_number(fsd.get("offset"), "drive.freq_shift.offset", default=0.0, **freq),
        amplitude=_number(fsd.get("amplitude"), "drive.freq_shift.amplitude", default=0.0, **freq),
        frequency=_number(fsd.get("frequency"), "drive.freq_shift.frequency", default=0.0, **freq),
        phase=_number(fsd.get("phase"), "drive.freq_shift.phase", default=0.0),
    )

    ini = _section(data, "initial")
    amplitude = complex(_number(ini.get("amplitude_re"), "initial.amplitude_re", default=1.0),
                        _number(ini.get("amplitude_im"), "initial.amplitude_im", default=0.0))

    integ = _section(data, "integration")
    time = {"omega_a": omega_a, "kind": "time"}
    integration = Integration(
        t_end=_number(integ.get("t_end"), "integration.t_end", **time),
        dt=None if integ.get("dt") is None else _number(integ["dt"], "integration.dt", **time),
        steps_per_period=_number(integ.get("steps_per_period"), "integration.steps_per_period",
                                 default=50, integer=True),
        sample_stride=_number(integ.get("sample_stride"), "integration.sample_stride",
                              default=1, integer=True),
        system=str(integ.get("system") or "first"),
    )

    outputs = data.get("outputs") or ["csv"]
    if isinstance(outputs, str):
        outputs = [s.strip() for s in outputs.split(",") if s.strip()]
    for kind in outputs:
        if kind not in OUTPUT_KINDS:
            raise ConfigError(f"outputs: unknown output kind {kind!r}")

    return ScenarioConfig(
        name=str(data["name"]),
        delta1=delta1,
        delta2=delta2,
        integration=integration,
        drive=DriveParams(nu_d, kappa1, kappa2, shift),
        amplitude=amplitude,
        medium=medium,
        outputs=tuple(outputs),
    )


def parse_override(text: str) -> tuple[str, object]:
    """Split ``a.b.c=value``; the value is read as a YAML scalar or list."""
    if "=" not in text:
        raise ConfigError(f"override {text!r}: expected key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if not key:
        raise ConfigError(f"override {text!r}: empty key")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError:
        value = raw
    if isinstance(value, str):
        # YAML 1.1 reads "1e-3" as a string
        try:
            value = float(value)
        except ValueError:
            pass
    return key, value


def apply_overrides(data: dict, overrides) -> dict:
    """Return a copy of ``data`` with each ``(dotted_key, value)`` applied."""
    out = copy.deepcopy(data)
    for key, value in overrides:
        parts = key.split(".")
        schema = _SCHEMA
        node = out
        for i, part in enumerate(parts):
            if not isinstance(schema, dict) or part not in schema:
                raise ConfigError(f"{key}: unknown key")
            schema = schema[part]
            if i == len(parts) - 1:
                node[part] = value
                # the pair shorthands supersede explicit members
                if part == "kappa":
                    node.pop("kappa1", None), node.pop("kappa2", None)
                elif part == "delta":
                    node.pop("delta1", None), node.pop("delta2", None)
            else:
                if not isinstance(node.get(part), dict):
                    node[part] = {}
                node = node[part]
    return out


def load_config(path: str | Path, overrides=()) -> ScenarioConfig:
    """Read a YAML scenario, apply ``key=value`` overrides and validate."""
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML ({exc})") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    if overrides:
        data = apply_overrides(data, [parse_override(o) if isinstance(o, str) else o for o in overrides])
    return config_from_dict(data)


def dump_config(config: ScenarioConfig, path: str | Path | None = None) -> str:
    text = yaml.safe_dump(config.to_dict(), sort_keys=False)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
