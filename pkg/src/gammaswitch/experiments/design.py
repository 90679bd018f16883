"""Switch design numbers: transfer times and crystal lengths."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from ..analytic import combination_resonance_frequency, transfer_time_static, transfer_time_vibrating
from ..materials import C_LIGHT, MaterialParams

OPERATING_REGIME_THRESHOLD = 10.0


@dataclass(frozen=True)
class SwitchDesignReport:
    """Physical figures of merit of a gamma-ray switch (SI units).

    ``driven_transfer_time`` uses the small-kappa form ``sqrt 2 pi / kappa
    Omega_a``; ``driven_transfer_time_rwa`` the full ``J1`` form. The static
    time is exact (``pi / |omega_-|``) with the large-detuning form beside it.
    """

    omega_a: float
    delta: float
    kappa: float
    static_transfer_time: float
    static_transfer_time_approx: float
    driven_transfer_time: float
    driven_transfer_time_rwa: float
    pass_length: float
    deflection_length: float
    deflection_length_rwa: float
    resonance_drive_frequency: float
    operating_regime: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_text(self) -> str:
        ps, cm = 1e12, 1e2
        lines = [
            f"Omega_a                      {self.omega_a:.6g} s^-1",
            f"detuning                     {self.delta:g} Omega_a",
            f"modulation amplitude kappa   {self.kappa:g}",
            f"static transfer (exact)      {self.static_transfer_time * ps:.4g} ps"
            f"   [pi|Delta|/2Omega_a^2: {self.static_transfer_time_approx * ps:.4g} ps]",
            f"driven transfer, small kappa {self.driven_transfer_time * ps:.4g} ps"
            f"   [J1 form: {self.driven_transfer_time_rwa * ps:.4g} ps]",
            f"pass-through length c*t0     {self.pass_length * cm:.4g} cm",
            f"deflection length c*t        {self.deflection_length * cm:.4g} cm"
            f"   [J1 form: {self.deflection_length_rwa * cm:.4g} cm]",
            f"resonant drive frequency     {self.resonance_drive_frequency:.6g} s^-1",
            f"kappa*Delta >> Omega_a       {'yes' if self.operating_regime else 'no'}"
            f" (threshold {OPERATING_REGIME_THRESHOLD:g})",
        ]
        return "\n".join(lines)


def design_switch(omega_a: float | MaterialParams, delta: float, kappa: float) -> SwitchDesignReport:
    """Design numbers for detuning ``delta`` (units of ``Omega_a``) and amplitude ``kappa``.

    ``omega_a`` is the collective frequency in s^-1 or a material that
    provides it.
    """
    if isinstance(omega_a, MaterialParams):
        omega_a = omega_a.collective_frequency
    if not omega_a > 0:
        raise ValueError("omega_a must be positive")
    if delta == 0:
        raise ValueError("delta must be non-zero for a detuned switch")
    if not kappa > 0:
        raise ValueError("kappa must be positive: the driven transfer time is infinite otherwise")
    static = transfer_time_static(delta)
    driven = transfer_time_vibrating(kappa)
    t0, t0_approx = static.exact / omega_a, static.approximate / omega_a
    t_small, t_rwa = driven.approximate / omega_a, driven.exact / omega_a
    return SwitchDesignReport(
        omega_a=omega_a,
        delta=delta,
        kappa=kappa,
        static_transfer_time=t0,
        static_transfer_time_approx=t0_approx,
        driven_transfer_time=t_small,
        driven_transfer_time_rwa=t_rwa,
        pass_length=C_LIGHT * t0,
        deflection_length=C_LIGHT * t_small,
        deflection_length_rwa=C_LIGHT * t_rwa,
        resonance_drive_frequency=combination_resonance_frequency(delta) * omega_a,
        operating_regime=abs(kappa * delta) > OPERATING_REGIME_THRESHOLD,
    )
