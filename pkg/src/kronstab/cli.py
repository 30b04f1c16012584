"""Command line interface.

Every command prints a JSON envelope (schema_version, command, config,
version, payload, timing_seconds) or, with --format csv, just the payload
table.  A JSON file passed via --config supplies defaults for any option
not given explicitly on the command line.

Examples:

    kronstab norm --l 3 --epsilon 0.5 --numeric
    kronstab phases --l 3 --x 1.0 --phase-gap 0.3 --cutoff 8 --format csv
    kronstab sweep-norm --l-min 3 --l-max 12 --epsilon 0.3 --epsilon 0.5
    kronstab sweep-fd --l 3 --u-min -2 --u-max 2 --samples 101
    kronstab sum --levels 3,3 --epsilon 0.5 --samples 4000 --seed 7
    kronstab roots --l 3 --i-min -6 --i-max 6
    kronstab reduce --l 3 --z 2+0.1i
    kronstab oracle-compare --l 3 --x 1 --phase-gap 0.5 --bound 400

Exit codes: 0 on success, 2 on usage errors, 3 when a computed result
breaks an internal invariant (a numeric value exceeding its certified
bound beyond roundoff).
"""
from __future__ import annotations

import json
import math
import sys
import time

import click
from click.core import ParameterSource

from . import __version__
from .halfplane import HalfPlanePoint, NonTermination, fd_reduce
from .kronecker import real_roots, slope_limits
from .norms import (
    Epsilon,
    SumSpec,
    k_epsilon,
    norm_kronecker,
    norm_sup_numeric,
    sum_norm_numeric,
    sum_norm_upper_bound,
)
from .oracle import (
    cloud_from_chart,
    estimate_closure_measure,
    max_gap_estimate,
    nearest_angle,
)
from .stability import (
    ChartPoint,
    StabilityClass,
    _max_phase_gap,
    classify_point,
    closure_volume,
    limit_endpoints,
    phase_of,
    phase_set,
)

_SCHEMA_VERSION = 1


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.15g}"
    if v is None:
        return ""
    return str(v)


def _emit(command, config, columns, rows, scalars, fmt, out, started) -> None:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        envelope = {
            "schema_version": _SCHEMA_VERSION,
            "command": command,
            "version": __version__,
            "config": config,
            "payload": {"columns": list(columns), "rows": rows, **scalars},
            "timing_seconds": round(time.perf_counter() - started, 6),
        }
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _io_options(fn):
    fn = click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="JSON file supplying defaults for omitted options.",
    )(fn)
    fn = click.option(
        "--out", type=click.Path(dir_okay=False, writable=True), default=None
    )(fn)
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default="json",
        show_default=True,
    )(fn)
    return fn


def _merge_config(ctx: click.Context, params: dict) -> dict:
    """Fill in option values from the --config file, CLI flags winning."""
    path = params.pop("config", None)
    if not path:
        return params
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise click.UsageError("--config must hold a JSON object")
    for key, val in data.items():
        name = key.replace("-", "_")
        if name in params and ctx.get_parameter_source(name) is ParameterSource.DEFAULT:
            params[name] = val
    return params


def _check_epsilon(ctx, param, value):
    if value is not None and not 0.0 < value < 1.0:
        raise click.BadParameter("must lie strictly between 0 and 1")
    return value


def _check_epsilon_multi(ctx, param, value):
    for v in value:
        _check_epsilon(ctx, param, v)
    return value


def _check_phase_gap(ctx, param, value):
    if value is not None and not 0.0 < value < 2.0:
        raise click.BadParameter("must lie strictly between 0 and 2")
    return value


def _parse_levels(ctx, param, value):
    try:
        levels = tuple(int(tok) for tok in str(value).replace(" ", "").split(",") if tok)
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of integers")
    if not levels:
        raise click.BadParameter("need at least one level")
    return levels


def _chart_point(l: int, x: float, phase_gap: float) -> ChartPoint:
    """The chart point with anchor phase 1, scale x and phase gap in units
    of pi: z1 = i*pi, z2 = ln(x) + i*pi*(1 + phase_gap)."""
    if x <= 0.0:
        raise click.BadParameter("--x must be positive")
    return ChartPoint(
        l, 0, complex(0.0, math.pi), complex(math.log(x), math.pi * (1.0 + phase_gap))
    )


@click.group()
@click.version_option(__version__, prog_name="kronstab")
def main() -> None:
    """Stability-space invariants of Kronecker quiver categories."""


@main.command("norm")
@click.option("--l", type=int, required=True, help="Number of arrows, >= 1.")
@click.option("--epsilon", type=float, default=0.5, show_default=True, callback=_check_epsilon)
@click.option("--numeric", is_flag=True, default=False, help="Also run the numeric supremum.")
@_io_options
@click.pass_context
def cmd_norm(ctx, **params):
    """Closed-form norm of one Kronecker factor, optionally cross-checked."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    l, eps = params["l"], params["epsilon"]
    if l < 1:
        raise click.UsageError("--l must be >= 1")
    report = norm_kronecker(l, eps)
    cap = math.pi * (1.0 - eps)
    columns = ["l", "epsilon", "value", "cap", "cap_gap", "witness_x", "witness_y"]
    row = [
        l,
        eps,
        report.value,
        cap,
        cap - report.value,
        report.witness.x if report.witness else None,
        report.witness.y if report.witness else None,
    ]
    scalars = {"kind": report.kind.value}
    if params["numeric"]:
        num = norm_sup_numeric(l, eps) if l >= 2 else None
        value = num.value if num else 0.0
        scalars["numeric_value"] = value
        scalars["numeric_abs_err"] = abs(value - report.value)
        if value > report.value + 1e-9:
            click.echo("invariant breach: numeric supremum above closed form", err=True)
            sys.exit(3)
    _emit("norm", params, columns, [row], scalars, params["fmt"], params["out"], started)


@main.command("phases")
@click.option("--l", type=int, required=True)
@click.option("--x", type=float, default=1.0, show_default=True)
@click.option("--phase-gap", type=float, default=0.5, show_default=True, callback=_check_phase_gap)
@click.option("--cutoff", type=int, default=8, show_default=True)
@_io_options
@click.pass_context
def cmd_phases(ctx, **params):
    """Truncated phase set of the chart point with the given x and gap."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    p = _chart_point(params["l"], params["x"], params["phase_gap"])
    ps = phase_set(p, max(1, params["cutoff"]))
    columns = ["rank", "stored_angle", "absolute_angle"]
    rows = []
    for rank, theta in enumerate(ps.discrete):
        absolute = math.fmod(theta + ps.rotation, math.pi)
        if absolute <= 0.0:
            absolute += math.pi
        rows.append([rank, theta, absolute])
    kind = classify_point(p)
    scalars = {
        "class": kind.value,
        "rotation": ps.rotation,
        "truncation": ps.truncation,
        "volume": closure_volume(p),
    }
    if kind is StabilityClass.IN_Z:
        u, v = limit_endpoints(p)
        scalars.update(
            interval_lo=ps.limit_interval[0],
            interval_hi=ps.limit_interval[1],
            limit_u=u,
            limit_v=v,
        )
    _emit("phases", params, columns, rows, scalars, params["fmt"], params["out"], started)


@main.command("sweep-norm")
@click.option("--l-min", type=int, default=3, show_default=True)
@click.option("--l-max", type=int, default=12, show_default=True)
@click.option("--epsilon", type=float, multiple=True, default=(0.5,), show_default=True, callback=_check_epsilon_multi)
@_io_options
@click.pass_context
def cmd_sweep_norm(ctx, **params):
    """Closed-form norms over a range of l and a list of epsilons."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    l_min, l_max = params["l_min"], params["l_max"]
    if l_min < 0 or l_max < l_min:
        raise click.UsageError("need 0 <= l-min <= l-max")
    eps_list = tuple(params["epsilon"]) or (0.5,)
    columns = ["l", "epsilon", "value", "cap", "cap_gap"]
    rows = []
    for l in range(l_min, l_max + 1):
        for e in eps_list:
            v = k_epsilon(l, e)
            cap = math.pi * (1.0 - e)
            rows.append([l, e, v, cap, cap - v])
    _emit("sweep-norm", params, columns, rows, {}, params["fmt"], params["out"], started)


@main.command("sweep-fd")
@click.option("--l", type=int, required=True)
@click.option("--u-min", type=float, default=-2.0, show_default=True)
@click.option("--u-max", type=float, default=2.0, show_default=True)
@click.option("--samples", type=int, default=101, show_default=True)
@_io_options
@click.pass_context
def cmd_sweep_fd(ctx, **params):
    """Boundary curve of the fundamental domain in strip coordinates.

    v(u) = arccos(min(1, exp(delta - |u|))) with delta = log(l/2); the
    curve is flat at 0 for |u| <= delta.
    """
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    l, u_min, u_max, n = params["l"], params["u_min"], params["u_max"], params["samples"]
    if l < 2:
        raise click.UsageError("--l must be >= 2")
    if n < 2 or u_max <= u_min:
        raise click.UsageError("need samples >= 2 and u-max > u-min")
    delta = math.log(l / 2.0)
    columns = ["u", "v"]
    rows = []
    for i in range(n):
        u = u_min + (u_max - u_min) * i / (n - 1)
        rows.append([u, math.acos(min(1.0, math.exp(delta - abs(u))))])
    _emit("sweep-fd", params, columns, rows, {"delta": delta}, params["fmt"], params["out"], started)


@main.command("sum")
@click.option("--levels", default="3,3", show_default=True, callback=_parse_levels)
@click.option("--epsilon", type=float, default=0.5, show_default=True, callback=_check_epsilon)
@click.option("--samples", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=1729, show_default=True)
@_io_options
@click.pass_context
def cmd_sum(ctx, **params):
    """Upper bound and numeric lower value for an orthogonal sum."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    levels = params["levels"]
    if isinstance(levels, str):
        levels = _parse_levels(ctx, None, levels)
    spec = SumSpec(tuple(levels), Epsilon(params["epsilon"]))
    upper = sum_norm_upper_bound(spec)
    numeric = sum_norm_numeric(spec, samples=params["samples"], seed=params["seed"])
    max_single = max(k_epsilon(l, spec.epsilon) for l in levels)
    cap = math.pi * (1.0 - spec.epsilon.value)
    columns = [
        "levels", "epsilon", "numeric", "upper", "max_single", "cap", "samples", "seed",
    ]
    row = [
        "+".join(str(l) for l in levels),
        spec.epsilon.value,
        numeric.value,
        upper.value,
        max_single,
        cap,
        params["samples"],
        params["seed"],
    ]
    scalars = {
        "m_constant": (upper.detail or {}).get("m_constant"),
        "config": list((numeric.detail or {}).get("config", ())),
    }
    _emit("sum", params, columns, [row], scalars, params["fmt"], params["out"], started)
    if numeric.value > upper.value + 1e-9:
        click.echo("invariant breach: numeric value above certified bound", err=True)
        sys.exit(3)


@main.command("roots")
@click.option("--l", type=int, required=True)
@click.option("--i-min", type=int, default=-8, show_default=True)
@click.option("--i-max", type=int, default=8, show_default=True)
@_io_options
@click.pass_context
def cmd_roots(ctx, **params):
    """Real roots of the recursion families over an index range."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    l, i_min, i_max = params["l"], params["i_min"], params["i_max"]
    if l < 2:
        raise click.UsageError("--l must be >= 2")
    if i_min > i_max:
        raise click.UsageError("need i-min <= i-max")
    a_inv, a = slope_limits(l)
    columns = ["i", "n", "m", "slope", "family"]
    rows = []
    for i, dims in real_roots(l, i_min, i_max):
        # (1, 0) has no finite slope; keep JSON standard with a null
        slope = None if dims.m == 0 else dims.n / dims.m
        rows.append([i, dims.n, dims.m, slope, "forward" if i >= 1 else "backward"])
    scalars = {"slope_lo": a_inv, "slope_hi": a}
    _emit("roots", params, columns, rows, scalars, params["fmt"], params["out"], started)


@main.command("reduce")
@click.option("--l", type=int, required=True)
@click.option("--z", required=True, help="Point like 2+0.1i (positive imaginary part).")
@click.option("--max-iter", type=int, default=64, show_default=True)
@_io_options
@click.pass_context
def cmd_reduce(ctx, **params):
    """Move a point into the fundamental domain by a power of alpha_l."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    if params["l"] < 2:
        raise click.UsageError("--l must be >= 2")
    try:
        w = complex(str(params["z"]).replace("i", "j").replace(" ", ""))
    except ValueError:
        raise click.UsageError(f"could not parse --z value {params['z']!r}")
    if w.imag <= 0:
        raise click.UsageError("--z must have positive imaginary part")
    try:
        reduced, j = fd_reduce(params["l"], HalfPlanePoint(w.real, w.imag), params["max_iter"])
    except NonTermination:
        raise click.UsageError("no exponent within --max-iter worked; raise --max-iter")
    columns = ["re", "im", "reduced_re", "reduced_im", "exponent"]
    row = [w.real, w.imag, reduced.re, reduced.im, j]
    _emit("reduce", params, columns, [row], {}, params["fmt"], params["out"], started)


@main.command("oracle-compare")
@click.option("--l", type=int, required=True)
@click.option("--x", type=float, default=1.0, show_default=True)
@click.option("--phase-gap", type=float, default=0.5, show_default=True, callback=_check_phase_gap)
@click.option("--bound", type=int, default=400, show_default=True)
@click.option("--fatten", type=float, default=None)
@_io_options
@click.pass_context
def cmd_oracle_compare(ctx, **params):
    """Compare closed-form phase data with a brute-force root enumeration."""
    started = time.perf_counter()
    params = _merge_config(ctx, params)
    p = _chart_point(params["l"], params["x"], params["phase_gap"])
    if classify_point(p) is not StabilityClass.IN_Z:
        raise click.UsageError("oracle comparison needs a phase gap below 1")
    cloud = cloud_from_chart(p, params["bound"])
    estimate = estimate_closure_measure(cloud, params["fatten"])
    volume = closure_volume(p)
    ladder_err = 0.0
    for i in range(-5, 6):
        angle, _ = phase_of(p, i)
        t = math.fmod(angle, math.pi)
        if t <= 0.0:
            t += math.pi
        d = abs(nearest_angle(cloud, t) - t)
        ladder_err = max(ladder_err, min(d, math.pi - d))
    columns = [
        "l", "x", "phase_gap", "bound", "volume", "estimate", "abs_err",
        "max_gap_exact", "max_gap_cloud", "ladder_max_err", "skipped",
    ]
    row = [
        params["l"],
        params["x"],
        params["phase_gap"],
        params["bound"],
        volume,
        estimate,
        abs(estimate - volume),
        _max_phase_gap(p),
        max_gap_estimate(cloud),
        ladder_err,
        cloud.skipped,
    ]
    _emit(
        "oracle-compare", params, columns, [row], {}, params["fmt"], params["out"], started
    )


if __name__ == "__main__":
    main()
