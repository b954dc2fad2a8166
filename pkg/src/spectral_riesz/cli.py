"""Command-line front end.

Usage:
    spectral-riesz spectrum --domain '{"type":"box","lengths":[1,1]}' --bc neumann --cutoff 25
    spectral-riesz riesz1d --R 2.5 --R 7
    spectral-riesz bounds --bound twoterm --domain '{"type":"box","lengths":[1,1]}' --z 100
    spectral-riesz verify --suite riesz1d
    spectral-riesz sweep --bound twoterm --domain '{"type":"box","lengths":[1,1]}' --z-from 10 --z-to 1000 --steps 100
    spectral-riesz ineq --form refined1 --samples 10000

Exit codes: 0 pass, 1 inequality violation, 2 usage error, 3 resource or
convergence failure.
"""

from __future__ import annotations

import functools
import json
import math
import os
import sys
from contextlib import contextmanager

import click
import numpy as np

from . import __version__, bounds, geometry, inequalities, riesz1d, suites
from .errors import (
    ConvergenceError,
    DiscretizationError,
    GeometryError,
    IncompleteSpectrumError,
    InequalityViolation,
    PreconditionError,
    ResourceError,
)
from .report import CheckResult, records_to_columns, write_csv, write_json
from .spectra_exact import BoundaryCondition, counting, enumerate_box, enumerate_box_count, riesz_mean, spectrum_of
from .spectra_numeric import discretize, lowest_eigenvalues, richardson_refine

__all__ = ["cli", "main"]

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

THREADS_ENV = "SPECTRAL_RIESZ_THREADS"

PRESET_DOMAINS = {
    "unit-square": geometry.Box((1.0, 1.0)),
    "unit-cube": geometry.Box((1.0, 1.0, 1.0)),
    "sqrt2-rectangle": geometry.Box((1.0, math.sqrt(2))),
}

LOWER_ON_NEUMANN = {"laptev", "twoterm", "twoterm-positive-part", "product-twoterm", "weak-twoterm", "hull-isoperimetric"}
UPPER_ON_DIRICHLET = {"berezin", "dirichlet-2d-explicit"}


class UsageFailure(Exception):
    pass


def _fail(msg: str, code: int) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _guard(fn):
    """Map library exceptions to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ResourceError, ConvergenceError, IncompleteSpectrumError) as exc:
            _fail(str(exc), EXIT_RESOURCE)
        except InequalityViolation as exc:
            _fail(str(exc), EXIT_VIOLATION)
        except (UsageFailure, GeometryError, PreconditionError, DiscretizationError, ValueError, TypeError) as exc:
            _fail(str(exc), EXIT_USAGE)

    return wrapper


def _threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageFailure(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def output_options(fn):
    fn = click.option("--threads", type=int, default=None, help=f"Worker threads (env {THREADS_ENV}).")(fn)
    fn = click.option("--seed", type=click.IntRange(min=0), default=suites.DEFAULT_SEED, show_default=True)(fn)
    fn = click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None, help="Write to file instead of stdout.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)(fn)
    return fn


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _meta(seed: int, threads: int) -> dict:
    return {"version": __version__, "seed": seed, "threads": threads, "command": " ".join(sys.argv[1:])}


def _emit(columns: dict, fmt: str, output, seed: int, threads: int, rows: list | None = None) -> None:
    with _sink(output) as fh:
        if fmt == "csv":
            write_csv(fh, columns)
        else:
            if rows is None:
                names = list(columns)
                rows = [dict(zip(names, vals)) for vals in zip(*columns.values())]
            write_json(fh, rows, _meta(seed, threads))


def _parse_domain(text: str):
    if text in PRESET_DOMAINS:
        return PRESET_DOMAINS[text]
    return geometry.parse_domain(text)


def _load_config(ctx, param, value):
    """key=value lines; 'key' sets a default for every subcommand, 'cmd.key' for one."""
    if not value:
        return value
    defaults: dict = {}
    with open(value) as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.BadParameter(f"line {n}: expected key=value", ctx=ctx, param=param)
            key, val = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if "." in key:
                cmd, opt = key.split(".", 1)
                defaults.setdefault(cmd, {})[opt] = val
            else:
                for cmd in ("spectrum", "riesz1d", "bounds", "verify", "sweep", "ineq"):
                    defaults.setdefault(cmd, {}).setdefault(key, val)
    ctx.default_map = {**(ctx.default_map or {}), **defaults}
    return value


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="spectral-riesz")
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="File of key=value defaults (cmd.key targets one subcommand).",
)
def cli():
    """Laplacian spectra and eigenvalue-mean inequalities at desk scale."""


# --- spectrum -------------------------------------------------------------------


@cli.command()
@click.option("--domain", "domain_text", required=True, help="Domain JSON or preset name.")
@click.option("--bc", type=click.Choice(["neumann", "dirichlet"]), default="neumann", show_default=True)
@click.option("--cutoff", type=float, default=None, help="Eigenvalues strictly below this value.")
@click.option("--count", type=click.IntRange(min=1), default=None, help="Number of lowest eigenvalues (numeric domains).")
@click.option("--h", "step", type=float, default=None, help="Mesh step for finite differences.")
@click.option("--refine/--no-refine", default=True, show_default=True, help="Richardson-extrapolate from h and h/2.")
@output_options
@_guard
def spectrum(domain_text, bc, cutoff, count, step, refine, fmt, output, seed, threads):
    """Sorted eigenvalues of a domain (exact for boxes, finite differences otherwise)."""
    threads = _threads(threads)
    domain = _parse_domain(domain_text)
    if geometry.box_lengths(domain) is not None or isinstance(domain, geometry.Product):
        if cutoff is None:
            if count is None:
                raise UsageFailure("give --cutoff or --count")
            lengths = geometry.box_lengths(domain)
            if lengths is None:
                raise UsageFailure("--count needs a box; use --cutoff for products")
            spec = enumerate_box_count(lengths, bc, count)
            ev = spec.eigenvalues[:count]
        else:
            ev = spectrum_of(domain, bc, cutoff).eigenvalues
        _emit({"eigenvalue": ev}, fmt, output, seed, threads)
        return
    if count is None:
        raise UsageFailure("finite-difference domains need --count")
    if step is None:
        step = geometry.inradius(domain) / 16
    if refine:
        spec = richardson_refine(domain, step, count, bc, threads=threads)
    else:
        spec = lowest_eigenvalues(discretize(domain, step, bc), count, seed=seed)
    ev = spec.eigenvalues
    err = spec.error_estimate if spec.error_estimate is not None else [None] * len(ev)
    if cutoff is not None:
        keep = ev < cutoff
        ev, err = ev[keep], np.asarray(err, dtype=object)[keep]
    _emit({"eigenvalue": ev, "error_estimate": err}, fmt, output, seed, threads)


# --- riesz1d ----------------------------------------------------------------------


@cli.command("riesz1d")
@click.option("--R", "radii", type=float, multiple=True, help="Radius (repeatable).")
@click.option("--r-from", type=float, default=None)
@click.option("--r-to", type=float, default=None)
@click.option("--steps", type=click.IntRange(min=2), default=100, show_default=True)
@click.option("--power", type=click.Choice(["one", "beta", "half"]), default="one", show_default=True)
@click.option("--beta", type=float, default=None)
@click.option("--dirichlet", is_flag=True, help="Drop the k = 0 term.")
@output_options
@_guard
def riesz1d_cmd(radii, r_from, r_to, steps, power, beta, dirichlet, fmt, output, seed, threads):
    """Lattice sums sum_k (R^2 - k^2)_+^p with their envelopes."""
    threads = _threads(threads)
    if radii:
        R = np.array(radii, dtype=float)
    elif r_from is not None and r_to is not None:
        if not 0 < r_from < r_to:
            raise UsageFailure("need 0 < --r-from < --r-to")
        R = np.linspace(r_from, r_to, steps)
    else:
        raise UsageFailure("give --R or --r-from/--r-to")
    if dirichlet:
        b = riesz1d.riesz1_dirichlet(R, power, beta)
    elif power == "one":
        b = riesz1d.riesz1_bounds(R)
    elif power == "beta":
        if beta is None:
            raise UsageFailure("--power beta needs --beta")
        b = riesz1d.riesz1_beta_bounds(R, beta)
    else:
        b = riesz1d.Riesz1DBounds(None, riesz1d.riesz1_sqrt_upper(R), riesz1d.riesz1_direct(R, 0.5), R, 0.5)
    n = R.size
    lower = np.full(n, np.nan) if b.lower is None else np.broadcast_to(b.lower, n)
    upper = np.broadcast_to(b.upper, n)
    exact = np.broadcast_to(b.exact, n)
    tol = 1e-12 * np.maximum(1.0, np.abs(exact))
    holds = (np.isnan(lower) | (lower <= exact + tol)) & (exact <= upper + tol)
    _emit({"R": R, "lower": lower, "exact": exact, "upper": upper, "holds": holds}, fmt, output, seed, threads)
    if not holds.all():
        sys.exit(EXIT_VIOLATION)


# --- bounds / sweep ---------------------------------------------------------------------


def _geometry_params(domain_text, d, volume, width, axis, hull_perimeter, boundary):
    """Resolve d, volume, width, hull perimeter and boundary measure from a domain and overrides."""
    params = {"d": d, "volume": volume, "width": width, "hull_perimeter": hull_perimeter, "boundary": boundary}
    domain = None
    if domain_text:
        domain = _parse_domain(domain_text)
        dd = geometry.dimension(domain)
        params["d"] = d if d is not None else dd
        params["volume"] = volume if volume is not None else geometry.volume(domain)
        if width is None:
            if axis is not None:
                params["width"] = geometry.width(domain, geometry.UnitVector.axis(dd, axis))
            else:
                params["width"] = min(geometry.width(domain, geometry.UnitVector.axis(dd, a)) for a in range(dd))
        if hull_perimeter is None and isinstance(domain, geometry.Polygon2D):
            params["hull_perimeter"] = geometry.hull_perimeter_2d(domain)
        elif hull_perimeter is None and geometry.box_lengths(domain) is not None and dd == 2:
            a, b = geometry.box_lengths(domain)
            params["hull_perimeter"] = 2 * (a + b)
        if boundary is None:
            params["boundary"] = geometry.boundary_measure(domain)
    return domain, params


def _need(params, *keys):
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageFailure(f"missing geometry: {', '.join('--' + k.replace('_', '-') for k in missing)}")


def evaluate_bound(name, z, params, gamma, bc, box, l1, l2):
    """Dispatch a bound name to its evaluator; returns a BoundEvaluation (or a pair for rectangles)."""
    p = params
    if name == "berezin":
        _need(p, "d", "volume")
        return bounds.berezin_upper(z, p["d"], p["volume"])
    if name == "laptev":
        _need(p, "d", "volume")
        return bounds.laptev_lower(z, p["d"], p["volume"])
    if name in ("twoterm", "twoterm-positive-part"):
        _need(p, "d", "volume", "width")
        return bounds.twoterm_lower(z, p["d"], p["volume"], p["width"], "plain" if name == "twoterm" else "positive_part")
    if name == "product-twoterm":
        _need(p, "d", "volume", "width")
        return bounds.product_twoterm_lower(z, p["d"], p["volume"], p["width"])
    if name == "higher-riesz":
        _need(p, "d", "volume", "width")
        return bounds.higher_riesz_lower(z, gamma, p["d"], p["volume"], p["width"])
    if name == "polya-product":
        _need(p, "d", "volume", "width")
        return bounds.polya_counting_lower(z, p["d"], p["volume"], p["width"])
    if name == "weak-twoterm":
        _need(p, "d", "volume", "width")
        return bounds.weak_twoterm_lower(z, p["d"], p["volume"], p["width"])
    if name == "hull-isoperimetric":
        _need(p, "volume", "hull_perimeter")
        return bounds.hull_isoperimetric_lower_2d(z, p["volume"], p["hull_perimeter"])
    if name in ("rectangle-lower", "rectangle-upper"):
        if l1 is None or l2 is None:
            raise UsageFailure("rectangle bounds need --l1 and --l2")
        lo, up = bounds.rectangle_envelopes(l1, l2, z, bc)
        return lo if name == "rectangle-lower" else up
    if name == "dirichlet-2d-explicit":
        _need(p, "volume")
        if not box:
            raise UsageFailure("dirichlet-2d-explicit needs --box L1 L2")
        return bounds.dirichlet_2d_explicit_upper(z, p["volume"], box)
    raise UsageFailure(f"unknown bound {name!r}; choose from {', '.join(bounds.BOUND_NAMES)}")


def _oracle(name, domain, z, gamma, bc, l1, l2):
    """Exact comparison value for box domains, or None."""
    if name in ("rectangle-lower", "rectangle-upper"):
        spec = enumerate_box((l1, l2), bc, float(np.max(z)))
        return riesz_mean(spec, z, 1.0) - bounds.rectangle_leading(l1, l2, z, bc)
    if domain is None:
        return None
    lengths = geometry.box_lengths(domain)
    if lengths is None:
        return None
    zmax = float(np.max(z)) * (1 + 1e-9)
    if name in LOWER_ON_NEUMANN or name == "higher-riesz":
        spec = enumerate_box(lengths, "neumann", zmax)
        return riesz_mean(spec, z, gamma if name == "higher-riesz" else 1.0)
    if name == "polya-product":
        return np.asarray(counting(enumerate_box(lengths, "neumann", zmax), z), dtype=float)
    if name in UPPER_ON_DIRICHLET:
        return riesz_mean(enumerate_box(lengths, "dirichlet", zmax), z, 1.0)
    return None


def bound_options(fn):
    decorators = [
        click.option("--bound", "name", required=True, help="One of: " + ", ".join(bounds.BOUND_NAMES)),
        click.option("--domain", "domain_text", default=None, help="Domain JSON or preset name."),
        click.option("--d", type=click.IntRange(min=1), default=None, help="Dimension override."),
        click.option("--volume", type=float, default=None),
        click.option("--width", type=float, default=None, help="Width override (default: smallest axis width)."),
        click.option("--axis", type=int, default=None, help="Axis whose width is used."),
        click.option("--hull-perimeter", type=float, default=None),
        click.option("--boundary", type=float, default=None, help="Boundary measure override."),
        click.option("--gamma", type=float, default=1.0, show_default=True),
        click.option("--bc", type=click.Choice(["neumann", "dirichlet"]), default="neumann", show_default=True),
        click.option("--box", type=float, nargs=2, default=None, help="Enclosing box sides."),
        click.option("--l1", type=float, default=None),
        click.option("--l2", type=float, default=None),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def _bound_table(name, z, domain, params, gamma, bc, box, l1, l2):
    ev = evaluate_bound(name, z, params, gamma, bc, box, l1, l2)
    cols = {"z": z, "bound_total": np.broadcast_to(ev.total, z.shape)}
    for label, val in ev.terms:
        cols[f"term_{label}"] = np.broadcast_to(val, z.shape)
    oracle = _oracle(name, domain, z, gamma, bc, l1, l2)
    if oracle is not None:
        oracle = np.asarray(oracle, dtype=float)
        cols["oracle"] = oracle
        margin = np.asarray(ev.total) - oracle if ev.side == "upper" else oracle - np.asarray(ev.total)
        cols["margin"] = margin
    return ev, cols


@cli.command("bounds")
@bound_options
@click.option("--z", "zs", type=float, multiple=True, required=True, help="Spectral parameter (repeatable).")
@output_options
@_guard
def bounds_cmd(name, domain_text, d, volume, width, axis, hull_perimeter, boundary, gamma, bc, box, l1, l2, zs, fmt, output, seed, threads):
    """Evaluate one named bound with its per-term breakdown."""
    threads = _threads(threads)
    domain, params = _geometry_params(domain_text, d, volume, width, axis, hull_perimeter, boundary)
    z = np.array(zs, dtype=float)
    ev, cols = _bound_table(name, z, domain, params, gamma, bc, box, l1, l2)
    rows = None
    if fmt == "json":
        rows = []
        for i, zi in enumerate(z):
            single = evaluate_bound(name, float(zi), params, gamma, bc, box, l1, l2).to_dict()
            single["z"] = float(zi)
            if "oracle" in cols:
                single["oracle"] = float(cols["oracle"][i])
                single["margin"] = float(cols["margin"][i])
            rows.append(single)
    _emit(cols, fmt, output, seed, threads, rows)
    if ev.validity:
        click.echo(f"note: {ev.validity}", err=True)
    if "margin" in cols and np.any(cols["margin"] < -1e-9 * np.maximum(1, np.abs(cols["oracle"]))):
        sys.exit(EXIT_VIOLATION)


@cli.command()
@bound_options
@click.option("--z-from", type=float, required=True)
@click.option("--z-to", type=float, required=True)
@click.option("--steps", type=int, default=100, show_default=True)
@click.option("--log", "log_grid", is_flag=True, help="Geometric instead of linear spacing.")
@output_options
@_guard
def sweep(name, domain_text, d, volume, width, axis, hull_perimeter, boundary, gamma, bc, box, l1, l2, z_from, z_to, steps, log_grid, fmt, output, seed, threads):
    """Tabulate a bound (and the exact value on boxes) over a z grid."""
    threads = _threads(threads)
    if not z_from < z_to or steps < 2 or z_from < 0 or (log_grid and z_from <= 0):
        raise UsageFailure("need 0 <= --z-from < --z-to and --steps >= 2 (z-from > 0 for --log)")
    if name not in bounds.BOUND_NAMES:
        raise UsageFailure(f"unknown bound {name!r}; choose from {', '.join(bounds.BOUND_NAMES)}")
    domain, params = _geometry_params(domain_text, d, volume, width, axis, hull_perimeter, boundary)
    z = np.geomspace(z_from, z_to, steps) if log_grid else np.linspace(z_from, z_to, steps)
    _, cols = _bound_table(name, z, domain, params, gamma, bc, box, l1, l2)
    _emit(cols, fmt, output, seed, threads)


# --- verify -----------------------------------------------------------------------------


def _custom_checks(suite, domain_text, kmax, l1, l2, z, bc, seed, threads):
    """Parameterised single-geometry runs; None means use the full suite."""
    if suite == "kroeger" and (domain_text or kmax):
        domain = _parse_domain(domain_text or "unit-square")
        lengths = geometry.box_lengths(domain)
        if lengths is None:
            raise UsageFailure("the kroeger suite needs a box domain")
        return suites.suite_kroeger(seed, threads, kmax=kmax or 10_000, boxes=(lengths,))
    if suite == "rectangle" and (l1 is not None or l2 is not None or z is not None):
        if l1 is None or l2 is None or z is None:
            raise UsageFailure("give all of --l1, --l2, --z")
        rb = bounds.rectangle_riesz_bounds(l1, l2, z, bc)
        c = rb.center
        inputs = {"l1": [l1], "l2": [l2], "z": [z], "bc": [BoundaryCondition.parse(bc).value]}
        tol = 1e-9 * max(1.0, abs(c))
        return [
            CheckResult("rectangle-lower", inputs, [rb.lower.total], [c], [c - rb.lower.total], tol),
            CheckResult("rectangle-upper", inputs, [rb.upper.total], [c], [rb.upper.total - c], tol),
        ]
    return None


@cli.command()
@click.option("--suite", type=click.Choice(list(suites.SUITES) + ["all"]), required=True)
@click.option("--domain", "domain_text", default=None, help="kroeger: box JSON or preset (unit-square, unit-cube, sqrt2-rectangle).")
@click.option("--kmax", type=click.IntRange(min=1), default=None)
@click.option("--l1", type=float, default=None)
@click.option("--l2", type=float, default=None)
@click.option("--z", type=float, default=None)
@click.option("--bc", type=click.Choice(["neumann", "dirichlet"]), default="neumann", show_default=True)
@click.option("--all-rows", is_flag=True, help="One row per grid point instead of worst point plus failures.")
@output_options
@_guard
def verify(suite, domain_text, kmax, l1, l2, z, bc, all_rows, fmt, output, seed, threads):
    """Run an acceptance suite; exit 1 if any inequality fails."""
    threads = _threads(threads)
    results = _custom_checks(suite, domain_text, kmax, l1, l2, z, bc, seed, threads)
    if results is None:
        results = suites.run_suite(suite, seed=seed, threads=threads)
    records = []
    for res in results:
        if all_rows:
            records += list(res.records())
            continue
        worst = int(np.argmin(res.margin)) if res.count else None
        rows = list(res.records(only_failures=True))
        if worst is not None and res.passed[worst]:
            rows = [list(res.records())[worst]]
        records += rows
    cols = records_to_columns(records)
    _emit(cols, fmt, output, seed, threads, [r.to_dict() for r in records])
    n_pass = sum(r.ok for r in results)
    n_fail = len(results) - n_pass
    n_skip = sum(r.skipped for r in results)
    for r in results:
        if not r.ok:
            click.echo(r.summary(), err=True)
    click.echo(f"checks: {n_pass} passed, {n_fail} failed, {n_skip} skipped", err=True)
    if n_fail:
        sys.exit(EXIT_VIOLATION)


# --- ineq -------------------------------------------------------------------------------


@cli.command()
@click.option("--form", type=click.Choice(list(inequalities.YOUNG_FORMS) + ["all"]), default="all", show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--s-min", type=float, default=2.0, show_default=True)
@click.option("--s-max", type=float, default=5.0, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--seed", type=click.IntRange(min=0), default=suites.DEFAULT_SEED, show_default=True)
@_guard
def ineq(form, samples, s_min, s_max, output, seed):
    """Random property test of the refined Young inequalities (JSON report)."""
    if not 2.0 <= s_min <= s_max:
        raise UsageFailure("need 2 <= --s-min <= --s-max")
    rng = np.random.default_rng(seed)
    s = rng.uniform(s_min, s_max, samples)
    r = s / (s - 1)
    a = 10 ** rng.uniform(-3, 6 / s)
    b = 10 ** rng.uniform(-3, 6 / r)
    forms = inequalities.YOUNG_FORMS if form == "all" else (form,)
    reports = []
    bad = False
    for f in forms:
        lhs, bound, holds = inequalities.young_arrays(a, b, r, s, f)
        margin = bound - lhs if f.startswith("refined") else lhs - bound
        idx = np.flatnonzero(~holds)
        bad |= idx.size > 0
        reports.append(
            {
                "form": f,
                "samples": samples,
                "seed": seed,
                "violations": [
                    {"a": float(a[i]), "b": float(b[i]), "s": float(s[i]), "lhs": float(lhs[i]), "bound": float(bound[i]), "margin": float(margin[i])}
                    for i in idx[:100]
                ],
                "worst_margin": float(np.min(margin)),
            }
        )
    payload = reports[0] if len(reports) == 1 else {"reports": reports, "seed": seed, "version": __version__}
    with _sink(output) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    if bad:
        sys.exit(EXIT_VIOLATION)


def main(argv=None):
    cli.main(args=argv, prog_name="spectral-riesz")


if __name__ == "__main__":
    main()
