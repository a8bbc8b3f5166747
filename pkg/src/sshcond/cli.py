"""Command-line interface: ``sshcond sweep | figure | validate | mellin-check``.

Exit codes: 0 success, 1 usage or configuration error, 2 validation failure,
3 quadrature non-convergence with ``--strict``.
"""

from __future__ import annotations

import json
import math
import os
import sys
from pathlib import Path

import click

from . import mellin
from .errors import SSHError
from .presets import PRESETS
from .sweep import csv_text, load_config, reproduce_figure, run_sweep, summarize, with_outputs
from .validation import SCOPES, validate as run_validation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NONCONVERGED = 3


def _color() -> bool:
    return "NO_COLOR" not in os.environ


def _status(ok: bool) -> str:
    label = "PASS" if ok else "FAIL"
    return click.style(label, fg="green" if ok else "red") if _color() else label


def _dump_json(obj, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(_finite_json(obj), indent=2, allow_nan=False) + "\n")


def _finite_json(obj):
    """Replace non-finite floats with strings so the output stays strict JSON."""
    if isinstance(obj, dict):
        return {k: _finite_json(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite_json(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise click.BadParameter(f"expected 're' or 're,im', got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise click.BadParameter(f"expected numbers, got {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


class ComplexParam(click.ParamType):
    name = "re,im"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return _parse_complex(value)
        except click.BadParameter as exc:
            self.fail(exc.message, param, ctx)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Interband optical conductivity of the SSH chain: quadrature vs asymptotics."""


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False), help="INI or JSON sweep configuration.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="CSV output (default: config value, else stdout).")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="JSON summary output.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Processes used for the sweep rows.")
@click.option("--strict", is_flag=True, help="Exit 3 if any row failed to converge.")
def sweep(config_path: str, csv_path: str | None, json_path: str | None, workers: int, strict: bool) -> int:
    """Frequency sweep from a configuration file."""
    try:
        config = with_outputs(load_config(config_path), csv_path, json_path)
    except (SSHError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    samples = run_sweep(config, workers=workers)
    text = csv_text(samples)
    if config.csv_path:
        Path(config.csv_path).parent.mkdir(parents=True, exist_ok=True)
        Path(config.csv_path).write_text(text)
    else:
        click.echo(text, nl=False)
    summary = summarize(samples, config.params, config.preset)
    if config.json_path:
        _dump_json(summary, config.json_path)
    return _convergence_exit(summary, strict)


def _convergence_exit(summary: dict, strict: bool) -> int:
    bad = summary["quad_nonconverged"]
    if bad:
        click.echo(f"warning: {bad} rows did not reach the quadrature tolerance (quad_flag = 1)", err=True)
        if strict:
            return EXIT_NONCONVERGED
    return EXIT_OK


@cli.command()
@click.argument("preset", type=click.Choice(sorted(PRESETS)))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True, help="Directory for <preset>.csv and <preset>.json.")
@click.option("--n-points", type=click.IntRange(min=2), default=1500, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--strict", is_flag=True, help="Exit 3 if any row failed to converge.")
def figure(preset: str, out_dir: str, n_points: int, workers: int, strict: bool) -> int:
    """Reproduce a reference parameter set over omega in [0, 3]."""
    samples, summary = reproduce_figure(preset, n_points=n_points, workers=workers)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{preset}.csv").write_text(csv_text(samples))
    _dump_json(summary, out / f"{preset}.json")
    regime = summary["regime"]
    click.echo(f"{preset}: eps1 = {summary['eps1']:.6g}, eps3 = {summary['eps3']:.6g}")
    click.echo(f"  max sweep-normalized deviation = {summary['max_rel_deviation']:.4g}")
    for source in ("quad", "asym"):
        peaks = [f"{p['omega']:.4f}" for p in summary["peaks"] if p["source"] == source]
        click.echo(f"  Re sigma peaks ({source}): {', '.join(peaks) or 'none'}")
    click.echo(f"  regime: {_status(regime['regime_ok'])} ({regime['notes']})")
    click.echo(f"  wrote {out / (preset + '.csv')} and {out / (preset + '.json')}")
    return _convergence_exit(summary, strict)


@cli.command()
@click.option("--scope", type=click.Choice(SCOPES + ("all",)), default="all", show_default=True)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default="validation_report.json", show_default=True, help="JSON report, always written.")
def validate(scope: str, report_path: str) -> int:
    """Run the invariant suites; exit 2 if any check fails."""
    results = run_validation(scope)
    for r in results:
        line = f"{_status(r.passed)}  [{r.scope}] {r.name}: {r.value:.3g} (limit {r.threshold:g})"
        if r.detail:
            line += f"  {r.detail}"
        click.echo(line)
    n_fail = sum(not r.passed for r in results)
    _dump_json({"scope": scope, "passed": n_fail == 0, "checks": [r.to_dict() for r in results]}, report_path)
    click.echo(f"{len(results) - n_fail}/{len(results)} checks passed; report in {report_path}")
    return EXIT_OK if n_fail == 0 else EXIT_VALIDATION


@cli.command("mellin-check")
@click.option("--lambda", "lam", type=ComplexParam(), required=True)
@click.option("--nu", type=ComplexParam(), required=True)
@click.option("--theta", type=ComplexParam(), required=True)
@click.option("--numeric", is_flag=True, help="Also evaluate the 3D forward quadrature (slower).")
@click.option("--tol", type=float, default=1e-11, show_default=True, help="Limit on the assembly deviation.")
def mellin_check(lam: complex, nu: complex, theta: complex, numeric: bool, tol: float) -> int:
    """Closed-form Mellin transform of I at one point, checked against its assembly."""
    p = mellin.MellinPoint(lam, nu, theta)
    if not mellin.in_region_D(p):
        click.echo(f"error: {p} lies outside the convergence region", err=True)
        return EXIT_USAGE
    closed = mellin.mellin_I_closed(p)
    dev = mellin.mellin_assembly_check(p)
    click.echo(f"closed form: {closed.real:.16e} {closed.imag:+.16e}j")
    click.echo(f"assembly deviation: {dev:.3e}  {_status(dev <= tol)}")
    ok = dev <= tol
    if numeric:
        fwd = mellin.numeric_mellin_forward(mellin.SamplingPlan(), p)
        rel = abs(fwd.value - closed) / abs(closed)
        click.echo(f"forward quadrature: {fwd.value.real:.16e} {fwd.value.imag:+.16e}j (step-halving estimate {fwd.error_estimate:.1e})")
        click.echo(f"forward deviation: {rel:.3e}  {_status(rel <= 1e-3)}")
        ok = ok and rel <= 1e-3
    return EXIT_OK if ok else EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="sshcond", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except (SSHError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
