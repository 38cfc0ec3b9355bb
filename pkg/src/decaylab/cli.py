"""Command-line front door.

Exit codes: 0 the experiment ran and passed, 2 it ran but a quantitative
check failed, 1 usage or I/O error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .experiments import (
    ExperimentConfig,
    REGISTRY,
    UnknownExperimentError,
    catalog,
    run_experiment,
    validate_config_text,
)


@click.group()
def cli():
    """Decay-rate laboratory: reproducible experiments, CSV/JSON out."""


# each flag maps onto the first matching parameter of the chosen
# experiment; list-valued parameters accept a single flag value
_FLAG_TARGETS = {
    "n": ["n", "dims"],
    "alpha": ["alpha"],
    "beta": ["beta", "betas"],
    "q": ["q", "exponents"],
    "k": ["K"],
    "lam": ["Lambda"],
    "t": ["T", "times"],
    "eps": ["eps"],
    "grid": ["grid"],
    "dt": ["dt"],
    "box": ["box"],
}
_FLAG_NAMES = {
    "k": "--K", "lam": "--Lambda", "t": "--T",
}


def _parse_window(text):
    for sep in (":", ","):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return [float(lo), float(hi)]
    raise click.BadParameter("window must be LO:HI")


@cli.command()
@click.argument("experiment")
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config file; flags override it.")
@click.option("--n", type=int, default=None, help="spatial dimension")
@click.option("--alpha", type=float, default=None, help="profile scale")
@click.option("--beta", type=float, default=None, help="profile energy")
@click.option("--q", type=float, default=None, help="decay-indicator order")
@click.option("--K", "k", type=float, default=None, help="frequency ball radius")
@click.option("--Lambda", "lam", type=float, default=None, help="inequality cutoff")
@click.option("--T", "t", type=float, default=None, help="time horizon")
@click.option("--eps", type=float, default=None, help="retained-energy fraction")
@click.option("--grid", type=int, default=None, help="solver grid points per axis")
@click.option("--dt", type=float, default=None, help="solver time step")
@click.option("--box", type=float, default=None, help="solver box length")
@click.option("--window", type=str, default=None, help="measurement window LO:HI")
@click.option("--out", type=click.Path(), default=None, help="output directory")
@click.option("--seed", type=int, default=0, help="RNG seed")
@click.option("--json", "as_json", is_flag=True, help="print the report as JSON")
def run(experiment, config_path, window, out, seed, as_json, **flags):
    """Run one registered experiment and write trace.csv + report.json."""
    params = {}
    out_dir = None
    if config_path is not None:
        try:
            text = Path(config_path).read_text()
        except OSError as exc:
            raise click.ClickException(f"cannot read config: {exc}")
        cfg, issues = validate_config_text(text)
        if issues:
            raise click.ClickException("invalid config:\n  " + "\n  ".join(issues))
        if cfg["experiment"] != experiment:
            raise click.ClickException(
                f"config is for {cfg['experiment']!r}, not {experiment!r}"
            )
        params.update(cfg["params"])
        out_dir = cfg["out_dir"]
        seed = seed or cfg["seed"]

    if experiment not in REGISTRY:
        raise click.UsageError(
            f"unknown experiment {experiment!r}; `decay-lab list` shows the catalog"
        )
    defaults = REGISTRY[experiment].defaults
    for flag, targets in _FLAG_TARGETS.items():
        value = flags.get(flag)
        if value is None:
            continue
        name = next((t for t in targets if t in defaults), None)
        if name is None:
            raise click.UsageError(
                f"{_FLAG_NAMES.get(flag, '--' + flag)} does not apply to {experiment}"
            )
        params[name] = [value] if isinstance(defaults[name], list) else value
    if window is not None:
        if "window" not in defaults:
            raise click.UsageError(f"--window does not apply to {experiment}")
        params["window"] = _parse_window(window)

    out_dir = out or out_dir or f"decaylab-out/{experiment}"
    config = ExperimentConfig(experiment, params, Path(out_dir), seed)
    try:
        report = run_experiment(config)
    except UnknownExperimentError:
        raise click.UsageError(f"unknown experiment {experiment!r}")
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=1))
    else:
        status = "PASS" if report.get("passed") else "FAIL"
        click.echo(f"{experiment}: {status} (report: {Path(out_dir) / 'report.json'})")
    return 0 if report.get("passed") else 2


@cli.command(name="list")
@click.option("--json", "as_json", is_flag=True, help="machine-readable catalog")
def list_experiments(as_json):
    """Show the experiment catalog."""
    entries = catalog()
    if as_json:
        click.echo(json.dumps(entries, sort_keys=True, indent=1))
        return 0
    for e in entries:
        tag = f"[criterion {e['criterion']}] " if e["criterion"] else ""
        click.echo(f"{e['id']:<18} {tag}{e['claim']}")
    return 0


@cli.command(name="validate-config")
@click.argument("path", type=click.Path())
def validate_config(path):
    """Validate an experiment config file; print diagnostics."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise click.ClickException(f"cannot read config: {exc}")
    cfg, issues = validate_config_text(text)
    if issues:
        for issue in issues:
            click.echo(f"{path}: {issue}")
        return 2
    click.echo(f"{path}: ok ({cfg['experiment']})")
    return 0


def main(argv=None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
        return int(result) if result is not None else 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1


if __name__ == "__main__":
    sys.exit(main())
