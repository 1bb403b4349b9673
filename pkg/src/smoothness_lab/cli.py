"""Command-line harness: compute, sweep, verify, reproduce, export.

Every subcommand reads an optional TOML/JSON config file (values there act
as defaults; explicit flags win), writes CSV tables (one row per grid
point, header row, '.' decimal separator, UTF-8) plus a JSON summary with
verdicts, and exits nonzero only on genuine violations. Parallelism is
capped by the SMOOTHNESS_LAB_THREADS environment variable.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from .core import Domain, QuadratureConfig
from .corpus import builtin, corpus_names
from .discrete import equispaced_interval_nodes, semi_discrete_modulus, uniform_line_nodes
from .errors import SmoothnessLabError
from .operators import (
    bernstein_family,
    generalized_family,
    kernel_by_name,
    operator_error,
    shannon_family,
)
from .reproduce import reproduce_example
from .smoothness import tau_modulus
from .steklov import SteklovSpec, steklov_average
from .verify import CHECKS, exit_code, run_checkers


def _load_config(path):
    if path is None:
        return {}
    text = Path(path).read_bytes()
    if str(path).endswith((".toml", ".tml")):
        try:
            import tomllib as toml_mod  # py >= 3.11
        except ModuleNotFoundError:
            import tomli as toml_mod
        return toml_mod.loads(text.decode("utf-8"))
    return json.loads(text.decode("utf-8"))


def _merged(config, key, flag_value, default):
    if flag_value is not None:
        return flag_value
    return config.get(key, default)


def _parse_domain(spec: str) -> Domain:
    kind, _, rest = spec.partition(":")
    lo, hi = (float(v) for v in rest.split(","))
    if kind == "interval":
        return Domain.interval(lo, hi)
    if kind == "line":
        return Domain.line(lo, hi)
    raise click.BadParameter(f"domain must look like interval:a,b or line:lo,hi, got {spec!r}")


def _parse_params(raw) -> dict:
    if not raw:
        return {}
    return json.loads(raw)


def _resolve_function(name, params_raw, domain_raw):
    f = builtin(name, _parse_params(params_raw))
    if domain_raw:
        dom = _parse_domain(domain_raw)
    elif f.window_hint and f.window_hint[0] < 0:
        dom = Domain.line(*f.window_hint)
    else:
        dom = Domain.interval(*(f.window_hint or (0.0, 1.0)))
    return f, dom


def _write_csv(path: Path, rows):
    rows = list(rows)
    if not rows:
        return
    keys = []
    for row in rows:
        for k in row:
            if k not in keys:
                keys.append(k)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)


def _write_summary(path: Path, payload):
    path.write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")


@click.group()
def main():
    """Smoothness measures, sampling-type operators, and estimate checkers."""


@main.group()
def corpus():
    """Inspect the built-in function corpus."""


@corpus.command("list")
def corpus_list():
    """List builtin function ids usable with -f/--function."""
    for name in corpus_names():
        click.echo(name)


@main.command()
@click.option("-f", "--function", "function_name", default=None, help="builtin id, see `corpus list`")
@click.option("--params", default=None, help="JSON map of builtin parameters")
@click.option("--domain", "domain_raw", default=None, help="interval:a,b or line:lo,hi")
@click.option("--p", "p_norm", type=float, default=None)
@click.option("--r", "order_r", type=int, default=None, help="averaging fold count")
@click.option("--s", "order_s", type=int, default=None, help="modulus order (defaults to r)")
@click.option("--scales", default=None, help="comma list of W (line) or n (interval)")
@click.option("--skip-tau", is_flag=True, default=False, help="skip the averaged modulus column")
@click.option("--cells", type=int, default=None, help="quadrature cells")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", type=click.Path(), default=".", help="output directory")
def moduli(function_name, params, domain_raw, p_norm, order_r, order_s, scales, skip_tau, cells, config_path, out_dir):
    """Compute integral, averaged, and semi-discrete moduli over a scale grid."""
    cfg = _load_config(config_path)
    function_name = _merged(cfg, "function", function_name, "gaussian_bump")
    params = _merged(cfg, "params", params, None)
    domain_raw = _merged(cfg, "domain", domain_raw, None)
    p = float(_merged(cfg, "p", p_norm, 2.0))
    r = int(_merged(cfg, "r", order_r, 1))
    s = int(_merged(cfg, "s", order_s, r))
    scales_raw = _merged(cfg, "scales", scales, "8,16,32,64,128,256,512,1024")
    if isinstance(scales_raw, str):
        scale_list = [float(v) for v in scales_raw.split(",")]
    else:
        scale_list = [float(v) for v in scales_raw]
    skip_tau = bool(_merged(cfg, "skip_tau", skip_tau or None, False))
    q = QuadratureConfig(cells=int(_merged(cfg, "cells", cells, 4096)))

    f, dom = _resolve_function(function_name, params, domain_raw)
    rows = []
    for scale in scale_list:
        if dom.is_line:
            nodes = uniform_line_nodes(scale, dom)
            sd_scale = 1.0 / scale
        else:
            nodes = equispaced_interval_nodes(int(scale), dom.lo, dom.hi)
            sd_scale = 1.0 / scale
        sd = semi_discrete_modulus(f, dom, nodes, r, s, p, sd_scale, q)
        row = {
            "function": f.name,
            "domain": f"{dom.kind}:{dom.lo},{dom.hi}",
            "p": p,
            "r": r,
            "s": s,
            "scale": scale,
            "omega": sd.omega,
            "semi_discrete_total": sd.total,
            "semi_discrete_node_part": sd.discrete,
        }
        if not skip_tau:
            try:
                row["tau"] = tau_modulus(f, dom, s, sd_scale, p)
            except SmoothnessLabError as exc:
                row["tau"] = f"unavailable ({exc.__class__.__name__})"
        rows.append(row)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "moduli.csv", rows)
    _write_summary(out / "moduli_summary.json", {"rows": rows})
    click.echo(f"wrote {out / 'moduli.csv'}")


@main.command()
@click.option("-f", "--function", "function_name", required=True)
@click.option("--params", default=None)
@click.option("--domain", "domain_raw", default=None)
@click.option("--delta", type=float, required=True)
@click.option("--r", "order_r", type=int, default=1)
@click.option("--grid", type=int, default=257, help="number of sample points")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", type=click.Path(), default=".")
def steklov(function_name, params, domain_raw, delta, order_r, grid, config_path, out_dir):
    """Emit samples of a function next to its iterated average."""
    _load_config(config_path)
    f, dom = _resolve_function(function_name, params, domain_raw)
    spec = SteklovSpec(delta=delta, r=order_r)
    st = steklov_average(f, dom, spec)
    import numpy as np

    xs = np.linspace(dom.lo, dom.hi, grid)
    fv, sv = f.eval(xs), st.eval(xs)
    rows = [
        {"x": float(x), "f": float(a), "steklov": float(b), "delta": delta, "r": order_r}
        for x, a, b in zip(xs, fv, sv)
    ]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "steklov.csv", rows)
    click.echo(f"wrote {out / 'steklov.csv'}")


@main.command("operator-error")
@click.option("--operator", "op_name", required=True,
              type=click.Choice(["bernstein", "shannon", "bspline1", "bspline2", "bspline3", "bspline4", "bspline5"]))
@click.option("-f", "--function", "function_name", required=True)
@click.option("--params", default=None)
@click.option("--domain", "domain_raw", default=None)
@click.option("--p", "p_norm", type=float, default=2.0)
@click.option("--scales", default=None, help="default: dyadic 16..256 for bernstein, 8..1024 otherwise")
@click.option("--trunc-terms", type=int, default=4096, help="cardinal series truncation")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", type=click.Path(), default=".")
def operator_error_cmd(op_name, function_name, params, domain_raw, p_norm, scales, trunc_terms, config_path, out_dir):
    """Sweep an operator family and tabulate L^p errors."""
    cfg = _load_config(config_path)
    default_scales = "16,32,64,128,256" if op_name == "bernstein" else "8,16,32,64,128,256,512,1024"
    scales_raw = _merged(cfg, "scales", scales, default_scales)
    scale_list = [float(v) for v in (scales_raw.split(",") if isinstance(scales_raw, str) else scales_raw)]
    f, dom = _resolve_function(function_name, params, domain_raw)
    rows = []
    for scale in scale_list:
        if op_name == "bernstein":
            fam = bernstein_family(int(scale))
            use_dom = dom if not dom.is_line else Domain.interval(0.0, 1.0)
        elif op_name == "shannon":
            fam = shannon_family(scale, trunc_terms=trunc_terms)
            use_dom = dom
        else:
            fam = generalized_family(scale, kernel_by_name(op_name))
            use_dom = dom
        err = operator_error(f, fam, use_dom, p_norm)
        rows.append(
            {"function": f.name, "operator": fam.name, "scale": scale, "p": p_norm, "error": err}
        )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "operator_error.csv", rows)
    _write_summary(out / "operator_error_summary.json", {"rows": rows})
    click.echo(f"wrote {out / 'operator_error.csv'}")


@main.command()
@click.argument("checker")
@click.option("--out", "out_dir", type=click.Path(), default=".")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def verify(checker, out_dir, config_path):
    """Run a named estimate checker, or 'all'. Exit 1 on any violation.

    Known names: see `verify list` (passing 'list' prints them).
    """
    _load_config(config_path)
    if checker == "list":
        for name in sorted(CHECKS):
            click.echo(name)
        return
    reports = run_checkers([checker] if checker != "all" else "all")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    all_rows = []
    for rep in reports:
        for row in rep.rows:
            all_rows.append({"check": rep.name, **row})
    _write_csv(out / "verify_rows.csv", all_rows)
    summary = {
        "verdicts": [rep.to_summary() for rep in reports],
        "violated": [rep.name for rep in reports if rep.verdict == "violated"],
        "degenerate": [rep.name for rep in reports if rep.verdict == "degenerate"],
    }
    _write_summary(out / "verify_summary.json", summary)
    for rep in reports:
        mark = {"holds_with_constant": "ok", "degenerate": "degenerate", "violated": "VIOLATED"}[rep.verdict]
        cond = " [conditional]" if rep.conditional else ""
        click.echo(f"{rep.name}: {mark}{cond}")
    code = exit_code(reports)
    if code:
        click.echo("violations detected", err=True)
    sys.exit(code)


@main.command("reproduce-example")
@click.argument("example", type=click.IntRange(1, 3))
@click.option("--out", "out_dir", type=click.Path(), default=".")
def reproduce_cmd(example, out_dir):
    """Re-run a reference example and compare with its closed form."""
    rep = reproduce_example(example)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / f"example_{example}.csv", [dict(r) for r in rep.rows])
    _write_summary(out / f"example_{example}_summary.json", rep.to_summary())
    status = "ok" if rep.ok else f"MISMATCH: {rep.details}"
    click.echo(f"example {example}: {status} ({rep.elapsed_seconds:.1f}s)")
    sys.exit(0 if rep.ok else 1)


if __name__ == "__main__":
    main()
