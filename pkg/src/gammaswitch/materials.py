"""Isotope data and the collective nuclear frequency.

Stored values are SI. Everything downstream of this module works in
dimensionless time ``tau = Omega_a * t`` with frequencies in units of
``Omega_a``, so the only job here is producing ``Omega_a`` (and the
transition wavelength) from tabulated nuclear data.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

# CODATA 2018 (exact in the 2019 SI except where noted)
PLANCK = 6.62607015e-34  # J s, exact
HBAR = PLANCK / (2.0 * math.pi)
C_LIGHT = 299792458.0  # m / s
ELEMENTARY_CHARGE = 1.602176634e-19  # C
KEV = 1.0e3 * ELEMENTARY_CHARGE  # J

CM3_TO_M3 = 1.0e-6


@dataclass(frozen=True)
class IsotopeRecord:
    """Mossbauer transition of one isotope.

    Parameters
    ----------
    name : str
        Lookup key, e.g. ``"40K"``.
    transition_energy : float
        Transition energy in keV.
    gamma_decay_rate : float
        Spontaneous decay rate in s^-1.
    """

    name: str
    transition_energy: float
    gamma_decay_rate: float

    def __post_init__(self):
        if not self.transition_energy > 0:
            raise ValueError(f"{self.name}: transition energy must be positive")
        if not self.gamma_decay_rate > 0:
            raise ValueError(f"{self.name}: decay rate must be positive")

    @property
    def transition_frequency(self) -> float:
        """Angular transition frequency omega_ab in s^-1."""
        return self.transition_energy * KEV / HBAR

    @property
    def wavelength(self) -> float:
        return wavelength_from_energy(self.transition_energy)


@dataclass(frozen=True)
class MaterialParams:
    """A nuclear array: one isotope at a given number density (cm^-3)."""

    isotope: IsotopeRecord
    number_density: float
    wavelength: float = field(init=False)
    collective_frequency: float = field(init=False)

    def __post_init__(self):
        if not self.number_density > 0:
            raise ValueError("number density must be positive")
        lam = wavelength_from_energy(self.isotope.transition_energy)
        object.__setattr__(self, "wavelength", lam)
        object.__setattr__(
            self,
            "collective_frequency",
            collective_frequency(self.number_density, lam, self.isotope.gamma_decay_rate),
        )

    @property
    def gamma_decay_rate(self) -> float:
        return self.isotope.gamma_decay_rate

    @property
    def transition_frequency(self) -> float:
        return self.isotope.transition_frequency


def wavelength_from_energy(energy_kev: float) -> float:
    """Transition wavelength ``2 pi hbar c / E`` in metres for ``E`` in keV."""
    if not energy_kev > 0:
        raise ValueError(f"energy must be positive, got {energy_kev!r}")
    return 2.0 * math.pi * HBAR * C_LIGHT / (energy_kev * KEV)


def collective_frequency(number_density: float, wavelength: float, decay_rate: float) -> float:
    """Collective nuclear frequency ``Omega_a`` in s^-1.

    ``Omega_a = sqrt(3 c N lambda^2 Gamma / 8 pi)`` with ``N`` given in cm^-3,
    ``lambda`` in m and ``Gamma`` in s^-1.
    """
    for label, value in (
        ("number_density", number_density),
        ("wavelength", wavelength),
        ("decay_rate", decay_rate),
    ):
        if not value > 0:
            raise ValueError(f"{label} must be positive, got {value!r}")
    n_si = number_density / CM3_TO_M3
    return math.sqrt(3.0 * C_LIGHT * n_si * wavelength**2 * decay_rate / (8.0 * math.pi))


_BUILTIN = (
    IsotopeRecord("40K", 29.8, 2.4e8),
    IsotopeRecord("127I", 58.6, 5.1e8),
)


def builtin_isotopes() -> list[IsotopeRecord]:
    return list(_BUILTIN)


def load_isotope_file(path: str | Path) -> list[IsotopeRecord]:
    """Read ``name energy_keV gamma_s^-1`` records, one per line.

    Blank lines and ``#`` comments are ignored.
    """
    records = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'name energy_keV gamma_s^-1'")
        try:
            energy, rate = float(parts[1]), float(parts[2])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
        records.append(IsotopeRecord(parts[0], energy, rate))
    return records


def _canonical(name: str) -> str:
    s = name.replace("-", "").replace(" ", "").lower()
    m = re.fullmatch(r"([a-z]+)(\d+)", s)
    return m.group(2) + m.group(1) if m else s


def lookup_isotope(name: str, extra: list[IsotopeRecord] | None = None) -> IsotopeRecord:
    """Find an isotope by name; user records shadow the built-in table.

    Matching ignores case, hyphens and the order of mass number and symbol,
    so ``"40K"``, ``"K40"`` and ``"k-40"`` are the same isotope.

    Raises
    ------
    KeyError
        If no record with that name exists.
    """
    key = _canonical(name)
    for rec in list(extra or []) + list(_BUILTIN):
        if _canonical(rec.name) == key:
            return rec
    raise KeyError(f"unknown isotope {name!r}")
