"""Frequency sweeps comparing the quadrature oracle with the asymptotic formula."""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal, Sequence, TextIO

import numpy as np

from .asymptotics import sigma_asymptotic
from .bounds import regime_diagnostics
from .errors import ParameterError
from .model import ZERO_TEMPERATURE, ModelParams, epsilon_params
from .oracle import ConductivitySample, sigma_interband_bz
from .presets import get_preset
from .quadrature import QuadratureSpec

CSV_HEADER = (
    "omega",
    "re_sigma_quad",
    "im_sigma_quad",
    "re_sigma_asym",
    "im_sigma_asym",
    "rel_deviation",
    "quad_flag",
)

BetaMode = Literal["finite", "zero_temperature"]


@dataclass(frozen=True)
class SweepConfig:
    params: ModelParams
    omega_min: float = 0.0
    omega_max: float = 3.0
    n_points: int = 1500
    beta_mode: BetaMode = "finite"
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    csv_path: str | None = None
    json_path: str | None = None
    preset: str | None = None

    def __post_init__(self) -> None:
        if not self.omega_min < self.omega_max:
            raise ParameterError(f"need omega_min < omega_max, got {self.omega_min} >= {self.omega_max}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ParameterError(f"n_points must be an integer >= 2, got {self.n_points}")
        if self.beta_mode not in ("finite", "zero_temperature"):
            raise ParameterError(f"beta_mode must be 'finite' or 'zero_temperature', got {self.beta_mode!r}")

    @property
    def omegas(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, int(self.n_points))

    @property
    def oracle_params(self) -> ModelParams:
        if self.beta_mode == "zero_temperature":
            return self.params.with_beta(ZERO_TEMPERATURE)
        return self.params


def _evaluate(args: tuple[ModelParams, float, QuadratureSpec]) -> ConductivitySample:
    params, omega, quad = args
    res = sigma_interband_bz(params, omega, quad)
    return ConductivitySample(
        omega=omega,
        sigma_quad=res.value,
        sigma_asym=sigma_asymptotic(params, omega),
        quad_error_estimate=res.error / abs(res.value) if res.value != 0 else res.error,
        quad_converged=res.converged,
    )


def run_sweep(config: SweepConfig, workers: int = 1) -> list[ConductivitySample]:
    """Oracle and asymptotic conductivity on the configured grid.

    Rows are independent; with ``workers > 1`` they are computed in separate
    processes and collected in frequency order, so the output is identical.
    """
    tasks = [(config.oracle_params, float(w), config.quad) for w in config.omegas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        samples = [_evaluate(t) for t in tasks]
    scale = max(abs(s.sigma_quad) for s in samples)
    for s in samples:
        s.rel_deviation = abs(s.sigma_asym - s.sigma_quad) / scale if scale > 0 else 0.0
    return samples


def max_deviation(samples: Sequence[ConductivitySample]) -> float:
    return max(s.rel_deviation for s in samples)


def local_maxima(x: np.ndarray, y: np.ndarray) -> list[float]:
    """Abscissae of strict interior local maxima (plateaus count once, at their left edge)."""
    out = []
    for i in range(1, len(y) - 1):
        if y[i] > y[i - 1] and y[i] >= y[i + 1]:
            out.append(float(x[i]))
    return out


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


def write_csv(samples: Sequence[ConductivitySample], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in samples:
        w.writerow([
            _fmt(s.omega),
            _fmt(s.sigma_quad.real),
            _fmt(s.sigma_quad.imag),
            _fmt(s.sigma_asym.real),
            _fmt(s.sigma_asym.imag),
            _fmt(s.rel_deviation),
            0 if s.quad_converged else 1,
        ])


def csv_text(samples: Sequence[ConductivitySample]) -> str:
    buf = io.StringIO()
    write_csv(samples, buf)
    return buf.getvalue()


def summarize(samples: Sequence[ConductivitySample], params: ModelParams, preset: str | None = None) -> dict:
    omegas = np.array([s.omega for s in samples])
    eps = epsilon_params(params, 0.0)
    peaks = [
        {"source": "quad", "omega": w}
        for w in local_maxima(omegas, np.array([s.sigma_quad.real for s in samples]))
    ] + [
        {"source": "asym", "omega": w}
        for w in local_maxima(omegas, np.array([s.sigma_asym.real for s in samples]))
    ]
    return {
        "preset": preset,
        "params": params.to_dict(),
        "eps1": eps.eps1,
        "eps3": "inf" if math.isinf(eps.eps3) else eps.eps3,
        "max_rel_deviation": max_deviation(samples),
        "peaks": peaks,
        "regime": regime_diagnostics(params).to_dict(),
        "n_points": len(samples),
        "quad_nonconverged": sum(not s.quad_converged for s in samples),
    }


def reproduce_figure(
    preset_id: str,
    n_points: int = 1500,
    quad: QuadratureSpec = QuadratureSpec(),
    workers: int = 1,
) -> tuple[list[ConductivitySample], dict]:
    """Sweep a named preset over omega in [0, 3] and summarize it."""
    preset = get_preset(preset_id)
    config = SweepConfig(params=preset.params, n_points=n_points, quad=quad, preset=preset_id)
    samples = run_sweep(config, workers=workers)
    return samples, summarize(samples, preset.params, preset_id)


# --- configuration files ----------------------------------------------------

_MODEL_KEYS = {"g0", "g1", "a", "tau_inv", "beta"}
_SWEEP_KEYS = {"omega_min", "omega_max", "n_points", "beta_mode"}
_QUAD_KEYS = {"rel_tol", "abs_tol", "max_subdivisions"}
_OUTPUT_KEYS = {"csv", "json"}


def _as_float(name: str, value) -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name}: expected a number, got {value!r}") from None


def config_from_mapping(data: dict, base_dir: Path | None = None) -> SweepConfig:
    """Build a ``SweepConfig`` from nested sections model/sweep/quadrature/output.

    ``model.preset`` names a reference parameter set whose values the other
    model keys override.
    """
    known = {"model", "sweep", "quadrature", "output"}
    extra = set(data) - known
    if extra:
        raise ParameterError(f"unknown config sections: {sorted(extra)}")
    model = dict(data.get("model", {}))
    sweep = dict(data.get("sweep", {}))
    quad = dict(data.get("quadrature", {}))
    output = dict(data.get("output", {}))
    for section, keys, allowed in (
        ("model", model, _MODEL_KEYS | {"preset"}),
        ("sweep", sweep, _SWEEP_KEYS),
        ("quadrature", quad, _QUAD_KEYS),
        ("output", output, _OUTPUT_KEYS),
    ):
        bad = set(keys) - allowed
        if bad:
            raise ParameterError(f"unknown keys in [{section}]: {sorted(bad)}")

    preset_id = model.pop("preset", None)
    if preset_id is not None:
        try:
            base = get_preset(str(preset_id)).params
        except KeyError as exc:
            raise ParameterError(str(exc)) from None
        fields = base.to_dict()
        fields["beta"] = base.beta
        fields.pop("mu")
    else:
        fields = {}
    fields.update({k: _as_float(k, v) for k, v in model.items()})
    missing = {"g0", "g1"} - set(fields)
    if missing:
        raise ParameterError(f"[model] is missing {sorted(missing)}")
    params = ModelParams(**{k: float(v) for k, v in fields.items()})

    kwargs: dict = {"params": params, "preset": preset_id}
    for k in ("omega_min", "omega_max"):
        if k in sweep:
            kwargs[k] = _as_float(k, sweep[k])
    if "n_points" in sweep:
        n = _as_float("n_points", sweep["n_points"])
        if n != int(n):
            raise ParameterError(f"n_points must be an integer, got {sweep['n_points']!r}")
        kwargs["n_points"] = int(n)
    if "beta_mode" in sweep:
        kwargs["beta_mode"] = str(sweep["beta_mode"]).strip()
    qkw = {}
    for k in ("rel_tol", "abs_tol"):
        if k in quad:
            qkw[k] = _as_float(k, quad[k])
    if "max_subdivisions" in quad:
        qkw["max_subdivisions"] = int(_as_float("max_subdivisions", quad["max_subdivisions"]))
    kwargs["quad"] = QuadratureSpec(**qkw)
    for key, attr in (("csv", "csv_path"), ("json", "json_path")):
        if key in output:
            path = Path(str(output[key]))
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            kwargs[attr] = str(path)
    return SweepConfig(**kwargs)


def load_config(path: str | Path) -> SweepConfig:
    """Read a sweep configuration from a JSON file or an INI-style key=value file."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParameterError(f"{path}: top level must be an object")
    else:
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            parser.read_string(text, source=str(path))
        except configparser.Error as exc:
            raise ParameterError(f"{path}: {exc}") from None
        data = {s: dict(parser[s]) for s in parser.sections()}
    return config_from_mapping(data, base_dir=path.parent)


def with_outputs(config: SweepConfig, csv_path: str | None, json_path: str | None) -> SweepConfig:
    return replace(
        config,
        csv_path=csv_path if csv_path is not None else config.csv_path,
        json_path=json_path if json_path is not None else config.json_path,
    )
