"""Reference parameter sets in units g0 + g1 = 1 (conductivity in units 2 sigma_0 a)."""

from __future__ import annotations

from dataclasses import dataclass

from .model import ModelParams


@dataclass(frozen=True)
class FigurePreset:
    id: str
    params: ModelParams
    description: str


def _preset(pid: str, g0: float, tau_inv: float, beta: float, description: str) -> FigurePreset:
    return FigurePreset(pid, ModelParams(g0=g0, g1=1.0 - g0, tau_inv=tau_inv, beta=beta), description)


PRESETS: dict[str, FigurePreset] = {
    p.id: p
    for p in (
        _preset("fig2", 0.55, 0.05, 1e3, "small gap, low temperature: asymptotics accurate"),
        _preset("fig3", 0.7, 0.05, 1e3, "both resonances resolved, moderate gap"),
        _preset("fig4", 0.505, 0.4, 1e2, "eps3*sqrt(eps1) ~ 1: temperature effects not negligible"),
        _preset("fig5", 0.9, 0.05, 1e3, "eps1 > 1: gap too large for the asymptotics"),
    )
}


def get_preset(pid: str) -> FigurePreset:
    try:
        return PRESETS[pid]
    except KeyError:
        raise KeyError(f"unknown preset {pid!r}; choose from {', '.join(PRESETS)}") from None
