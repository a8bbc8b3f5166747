import csv
import io
import json
import math

import numpy as np
import pytest

from sshcond.errors import ParameterError
from sshcond.model import ModelParams
from sshcond.presets import PRESETS, get_preset
from sshcond.quadrature import QuadratureSpec
from sshcond.sweep import (
    CSV_HEADER,
    SweepConfig,
    config_from_mapping,
    csv_text,
    load_config,
    local_maxima,
    reproduce_figure,
    run_sweep,
    summarize,
)


def test_presets():
    assert set(PRESETS) == {"fig2", "fig3", "fig4", "fig5"}
    for pid, g0, t, b in (("fig2", 0.55, 0.05, 1e3), ("fig3", 0.7, 0.05, 1e3), ("fig4", 0.505, 0.4, 100.0), ("fig5", 0.9, 0.05, 1e3)):
        p = PRESETS[pid].params
        assert (p.g0, p.tau_inv, p.beta) == (g0, t, b)
        assert p.g0 + p.g1 == pytest.approx(1.0)
    with pytest.raises(KeyError):
        get_preset("fig1")


@pytest.mark.parametrize("kwargs", [dict(omega_min=1.0, omega_max=1.0), dict(n_points=1), dict(n_points=2.5), dict(beta_mode="hot")])
def test_config_validation(kwargs):
    with pytest.raises(ParameterError):
        SweepConfig(params=PRESETS["fig2"].params, **kwargs)


def test_row_count_and_header():
    samples = run_sweep(SweepConfig(params=PRESETS["fig2"].params, n_points=301))
    text = csv_text(samples)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 302
    assert text.splitlines()[0] == "omega,re_sigma_quad,im_sigma_quad,re_sigma_asym,im_sigma_asym,rel_deviation,quad_flag"


def test_two_points_are_endpoints():
    samples = run_sweep(SweepConfig(params=PRESETS["fig3"].params, omega_min=0.2, omega_max=2.2, n_points=2))
    assert [s.omega for s in samples] == [0.2, 2.2]


def test_gapless_sweep_is_zero():
    samples = run_sweep(SweepConfig(params=ModelParams(0.5, 0.5), n_points=5))
    assert all(s.sigma_quad == 0 and s.sigma_asym == 0 and s.rel_deviation == 0 for s in samples)


def test_number_format_round_trips():
    samples = run_sweep(SweepConfig(params=PRESETS["fig2"].params, n_points=7))
    rows = list(csv.reader(io.StringIO(csv_text(samples))))[1:]
    for row, s in zip(rows, samples):
        assert float(row[1]) == s.sigma_quad.real and float(row[4]) == s.sigma_asym.imag
        assert all("e" in x for x in row[:6])
        mantissa = row[1].split("e")[0].lstrip("-").replace(".", "")
        assert len(mantissa) == 17
        assert row[6] in ("0", "1")


def test_deterministic_and_parallel_identical():
    cfg = SweepConfig(params=PRESETS["fig3"].params, n_points=40)
    a = csv_text(run_sweep(cfg))
    b = csv_text(run_sweep(cfg))
    c = csv_text(run_sweep(cfg, workers=2))
    assert a == b == c


def test_zero_temperature_mode():
    cfg = SweepConfig(params=PRESETS["fig4"].params, n_points=31)
    finite = run_sweep(cfg)
    cold = run_sweep(SweepConfig(params=PRESETS["fig4"].params, n_points=31, beta_mode="zero_temperature"))
    # the asymptotics are a T = 0 formula, so they sit closer to the T = 0 oracle
    assert max(s.rel_deviation for s in cold) < max(s.rel_deviation for s in finite)


def test_nonconvergence_flag_propagates():
    cfg = SweepConfig(params=PRESETS["fig2"].params, n_points=5, quad=QuadratureSpec(rel_tol=1e-15, abs_tol=0, max_subdivisions=1))
    samples = run_sweep(cfg)
    assert any(not s.quad_converged for s in samples)
    assert summarize(samples, cfg.params)["quad_nonconverged"] > 0
    assert ",1\n" in csv_text(samples)


def test_local_maxima():
    x = np.linspace(0, 1, 11)
    assert local_maxima(x, -((x - 0.3) ** 2)) == [pytest.approx(0.3)]
    assert local_maxima(x, x) == []


def test_reproduce_fig3_summary():
    samples, summary = reproduce_figure("fig3", n_points=301)
    assert len(samples) == 301
    assert summary["preset"] == "fig3"
    assert summary["regime"]["regime_ok"] is True
    quad_peaks = [p["omega"] for p in summary["peaks"] if p["source"] == "quad"]
    assert any(abs(w - 0.8) <= 0.05 for w in quad_peaks)
    assert any(abs(w - 2.0) <= 0.05 for w in quad_peaks)
    json.dumps(summary)


def test_reproduce_fig5_flags_regime():
    _, summary = reproduce_figure("fig5", n_points=151)
    assert summary["regime"]["regime_ok"] is False
    assert summary["max_rel_deviation"] > 0.5


def test_fig2_peak_near_gap():
    # damping shifts the peak of Re sigma above 2(g0 - g1) = 0.2 by about 0.02
    samples, summary = reproduce_figure("fig2", n_points=1500)
    for source in ("quad", "asym"):
        peaks = [p["omega"] for p in summary["peaks"] if p["source"] == source]
        assert min(abs(w - 0.2) for w in peaks) <= 0.05


def test_load_ini(tmp_path):
    cfg_file = tmp_path / "run.ini"
    cfg_file.write_text(
        "[model]\ng0 = 0.6\ng1 = 0.4\ntau_inv = 0.1\nbeta = inf\n"
        "[sweep]\nomega_min = 0.1\nomega_max = 1.5\nn_points = 12\nbeta_mode = zero_temperature\n"
        "[quadrature]\nrel_tol = 1e-9\n"
        "[output]\ncsv = out/a.csv  # relative to the config file\n"
    )
    cfg = load_config(cfg_file)
    assert cfg.params == ModelParams(0.6, 0.4, tau_inv=0.1, beta=math.inf)
    assert (cfg.omega_min, cfg.omega_max, cfg.n_points, cfg.beta_mode) == (0.1, 1.5, 12, "zero_temperature")
    assert cfg.quad.rel_tol == 1e-9
    assert cfg.csv_path == str(tmp_path / "out" / "a.csv")


def test_load_json_with_preset(tmp_path):
    cfg_file = tmp_path / "run.json"
    cfg_file.write_text(json.dumps({"model": {"preset": "fig4", "tau_inv": 0.2}, "sweep": {"n_points": 3}}))
    cfg = load_config(cfg_file)
    assert cfg.params.g0 == 0.505 and cfg.params.tau_inv == 0.2 and cfg.params.beta == 100.0
    assert cfg.preset == "fig4"


@pytest.mark.parametrize(
    "data",
    [
        {"model": {"g0": 0.6}},
        {"model": {"g0": 0.6, "g1": 0.4, "colour": 1}},
        {"model": {"g0": 0.6, "g1": 0.4}, "extra": {}},
        {"model": {"g0": "abc", "g1": 0.4}},
        {"model": {"preset": "fig9"}},
        {"model": {"g0": 0.6, "g1": 0.4}, "sweep": {"n_points": 2.5}},
        {"model": {"g0": 0.4, "g1": 0.6}},
    ],
)
def test_bad_configs(data):
    with pytest.raises(ParameterError):
        config_from_mapping(data)


def test_bad_json_file(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    with pytest.raises(ParameterError):
        load_config(f)
