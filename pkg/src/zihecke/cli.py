"""Command-line front end: surveys, single evaluations, verification suites,
and plot-data emission.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource or
numeric failure. All file artifacts are written atomically (temp + rename)
and embed the tool version plus a config hash of the semantic parameters.
A ``--config`` file with ``key = value`` lines supplies defaults; explicit
command-line flags win. Only ``--jobs`` may be overridden by environment
(``ZIHECKE_JOBS``).
"""

from __future__ import annotations

import hashlib
import json
import math
import re
import sys
import time

import click
import numpy as np

from . import __version__
from .gaussint import GaussInt
from .survey import (
    BoxSpec,
    SurveyConfig,
    SurveyConfigMismatch,
    _atomic_write,
    enumerate_family,
    run_survey,
    scan_real_zeros,
    selberg_box_count,
)

_GAUSS_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+)\s*(?:(?P<im1>[+-]\s*\d*)\s*[ij])?"
    r"|(?P<im2>[+-]?\s*\d*)\s*[ij])\s*$"
)


def parse_gauss(text: str) -> GaussInt:
    """Parse 'a+bi' style input: 3, -3, i, -i, 2i, 3+2i, -1-2i, 3-i."""
    m = _GAUSS_RE.match(text.replace(" ", ""))
    if not m:
        raise click.UsageError(f"cannot parse Gaussian integer {text!r}")
    if m.group("im2") is not None:
        imtxt = m.group("im2")
        im = int(imtxt + "1") if imtxt in ("", "+", "-") else int(imtxt)
        return GaussInt(0, im)
    re_part = int(m.group("re"))
    imtxt = m.group("im1")
    if imtxt is None:
        return GaussInt(re_part, 0)
    im = int(imtxt + "1") if imtxt in ("+", "-") else int(imtxt)
    return GaussInt(re_part, im)


def parse_complex_pair(text: str) -> complex:
    """Parse 're,im' into a complex number."""
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _config_hash(params: dict) -> str:
    blob = json.dumps(params, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _emit(out_path: str | None, text: str) -> None:
    if out_path in (None, "-"):
        click.echo(text, nl=False)
    else:
        _atomic_write(out_path, text)


def _table_artifact(header_cols: str, rows: list[str], params: dict) -> str:
    lines = [f"# zihecke {__version__}",
             f"# config_hash={_config_hash(params)}",
             header_cols]
    lines.extend(rows)
    return "\n".join(lines) + "\n"


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    out: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(f"bad config line (need key = value): {raw!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _opt(ctx, name: str, value, key: str | None = None):
    """Flag value, unless it was defaulted and the config file has the key."""
    try:
        src = ctx.get_parameter_source(name)
    except Exception:
        src = None
    from click.core import ParameterSource

    cfg = ctx.obj or {}
    key = key or name
    if src == ParameterSource.COMMANDLINE or key not in cfg:
        return value
    raw = cfg[key]
    if isinstance(value, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(value, int):
        return int(raw)
    if isinstance(value, float):
        return float(raw)
    return raw


def _fail_numeric(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(3)


@click.group()
@click.version_option(version=__version__, prog_name="zihecke")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Defaults file with 'key = value' lines.")
@click.pass_context
def main(ctx, config_path):
    """Quadratic Hecke characters over Z[i]: L-functions, moments, zero surveys."""
    ctx.obj = _load_config_file(config_path)


# ----------------------------------------------------------------- survey --


@main.command()
@click.option("--max-norm", type=int, default=None, help="Upper bound on N(d).")
@click.option("--mode", type=click.Choice(["primary", "all_associates"]),
              default="primary", show_default=True)
@click.option("--jobs", type=int, default=1, envvar="ZIHECKE_JOBS",
              show_default=True, help="Worker processes.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="CSV output path.")
@click.option("--checkpoint", "checkpoint_path", type=click.Path(dir_okay=False),
              default=None, help="Checkpoint JSON for interrupt/resume.")
@click.option("--grid-points", type=int, default=512, show_default=True)
@click.option("--include-units", is_flag=True, default=False)
@click.option("--quiet", is_flag=True, default=False, help="Suppress progress.")
@click.pass_context
def survey(ctx, max_norm, mode, jobs, out_path, checkpoint_path, grid_points,
           include_units, quiet):
    """Scan the family for real zeros of xi on (0,1] up to --max-norm."""
    max_norm = _opt(ctx, "max_norm", max_norm)
    if max_norm is None:
        raise click.UsageError("--max-norm is required (flag or config file)")
    max_norm = int(max_norm)
    mode = _opt(ctx, "mode", mode)
    jobs = _opt(ctx, "jobs", jobs)
    grid_points = _opt(ctx, "grid_points", grid_points)
    cfg = SurveyConfig(max_norm=max_norm, mode=mode, grid_points=grid_points,
                       include_units=include_units)

    def progress(done, total):
        if not quiet:
            click.echo(f"scanned {done}/{total}", err=True)

    try:
        records, summary = run_survey(cfg, n_jobs=jobs, csv_path=out_path,
                                      checkpoint_path=checkpoint_path,
                                      progress=progress)
    except SurveyConfigMismatch as exc:
        _fail_numeric(exc)
    except (RuntimeError, ArithmeticError, OSError) as exc:
        _fail_numeric(exc)
    click.echo(f"config_hash={cfg.config_hash()}")
    click.echo(f"total={summary['total']}")
    click.echo(f"nonvanishing={summary['nonvanishing_count']}")
    click.echo(f"proportion={summary['proportion']:.12g}")
    click.echo(f"density_ratio={summary['density_ratio']:.12g}")
    click.echo(f"suspect={summary['suspect_count']}")
    click.echo(f"failed={summary['failed_count']}")


@main.command()
@click.option("--d", "d_text", required=True, help="Odd square-free d as a+bi.")
@click.option("--grid-points", type=int, default=512, show_default=True)
@click.pass_context
def zeros(ctx, d_text, grid_points):
    """Scan one d for real zeros of xi(sigma) on (0,1]."""
    d = parse_gauss(d_text)
    grid_points = _opt(ctx, "grid_points", grid_points)
    try:
        rec = scan_real_zeros(d, grid_points=grid_points)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        _fail_numeric(exc)
    click.echo(f"d={rec.d}")
    click.echo(f"norm={rec.norm}")
    click.echo(f"num_real_zeros={rec.num_real_zeros}")
    click.echo(f"min_abs_xi={rec.min_abs_xi:.12g}")
    click.echo(f"status={rec.status}")
    for sigma, width in rec.zero_locations:
        click.echo(f"zero sigma={sigma:.12g} width={width:.3g}")


@main.command()
@click.option("--max-norm", type=int, default=None)
@click.option("--mode", type=click.Choice(["primary", "all_associates"]),
              default="all_associates", show_default=True)
@click.pass_context
def density(ctx, max_norm, mode):
    """Enumeration-only family count vs the analytic density."""
    max_norm = _opt(ctx, "max_norm", max_norm)
    if max_norm is None:
        raise click.UsageError("--max-norm is required (flag or config file)")
    max_norm = int(max_norm)
    mode = _opt(ctx, "mode", mode)
    cfg = SurveyConfig(max_norm=max_norm, mode=mode)
    try:
        _, summary = run_survey(cfg, dry_run=True)
    except (RuntimeError, ArithmeticError, MemoryError) as exc:
        _fail_numeric(exc)
    click.echo(f"total={summary['total']}")
    click.echo(f"count_over_x={summary['total'] / max_norm:.12g}")
    click.echo(f"target_density={summary['target_density']:.12g}")
    click.echo(f"density_ratio={summary['density_ratio']:.12g}")


# ------------------------------------------------------------ evaluations --


@main.command(name="lfun")
@click.option("--d", "d_text", required=True, help="Odd square-free d as a+bi.")
@click.option("--sigma", type=float, default=None, help="Single real point.")
@click.option("--grid", "grid_k", type=int, default=None,
              help="Evenly spaced points on [0,1].")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def lfun(d_text, sigma, grid_k, out_path):
    """Print (sigma, L, xi) rows as CSV on the real axis."""
    from .lfunctions import LFunction

    d = parse_gauss(d_text)
    if (sigma is None) == (grid_k is None):
        raise click.UsageError("need exactly one of --sigma or --grid")
    try:
        lf = LFunction(d)
        sigmas = [sigma] if sigma is not None else list(np.linspace(0.0, 1.0, grid_k))
        rows = []
        for sg in sigmas:
            xi = lf.xi_value(sg).real
            lv = lf.l_value(sg).real if sg > 0 else float("nan")
            rows.append(f"{sg:.12g},{lv:.12g},{xi:.12g}")
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        _fail_numeric(exc)
    params = {"command": "lfun", "d": str(d), "sigma": sigma, "grid": grid_k}
    _emit(out_path, _table_artifact("sigma,L,xi", rows, params))


@main.command(name="gauss-sum")
@click.option("--r", "r_text", required=True, help="Numerator r as a+bi.")
@click.option("--n", "n_text", required=True, help="Odd modulus n as a+bi.")
def gauss_sum_cmd(r_text, n_text):
    """Compare the closed-form and direct evaluations of g(r, n)."""
    from .characters import gauss_sum, gauss_sum_direct

    r = parse_gauss(r_text)
    n = parse_gauss(n_text)
    try:
        closed = gauss_sum(r, n)
        direct = gauss_sum_direct(r, n)
    except (ValueError, RuntimeError, ArithmeticError, MemoryError) as exc:
        _fail_numeric(exc)
    diff = abs(closed - direct)
    click.echo(f"closed={closed.real:.12g}{closed.imag:+.12g}i")
    click.echo(f"direct={direct.real:.12g}{direct.imag:+.12g}i")
    click.echo(f"abs_diff={diff:.3g}")


@main.command()
@click.option("--b", type=float, default=0.64, show_default=True)
@click.option("--r", "big_r", type=float, default=6.8, show_default=True,
              help="Rectangle half-width parameter R.")
@click.option("--kappa", type=float, default=1e-10, show_default=True)
@click.option("--s", "big_s", type=float, default=None,
              help="Override the derived kernel period S.")
@click.option("--json", "as_json", is_flag=True, default=False)
@click.pass_context
def constant(ctx, b, big_r, kappa, big_s, as_json):
    """Compute the zero-count bound constant C with an error estimate."""
    from .mollifier import headline_constant

    b = _opt(ctx, "b", b)
    big_r = _opt(ctx, "big_r", big_r, key="r")
    kappa = _opt(ctx, "kappa", kappa)
    try:
        res = headline_constant(b=b, R=big_r, S=big_s, kappa=kappa)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        _fail_numeric(exc)
    if as_json:
        params = {"command": "constant", "b": b, "R": big_r, "kappa": kappa,
                  "S": big_s}
        payload = {
            "version": __version__,
            "config_hash": _config_hash(params),
            "C": res.C,
            "err_estimate": res.err_estimate,
            "J1": res.J1,
            "J2": res.J2,
            "denominator": res.denominator,
            "u_max_used": res.u_max_used,
            "truncation_insufficient": res.truncation_insufficient,
        }
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(f"C={res.C:.12g} err={res.err_estimate:.3g}")
    if res.truncation_insufficient:
        click.echo("warning: u_max truncation may dominate the error", err=True)
        sys.exit(3)


@main.command()
@click.option("--x", "x_scale", type=float, default=None, help="Family scale X.")
@click.option("--delta1", "delta1_text", default="0.002,0.001", show_default=True,
              help="Shift delta1 as re,im with Re >= 0.")
@click.option("--jobs", type=int, default=1, envvar="ZIHECKE_JOBS", show_default=True)
@click.pass_context
def moments(ctx, x_scale, delta1_text, jobs):
    """Empirical mollified second moment vs the analytic prediction."""
    from .mollifier import MomentConfig, mollified_ratio, predicted_moment_ratio

    x_scale = _opt(ctx, "x_scale", x_scale, key="x")
    if x_scale is None:
        raise click.UsageError("--x is required (flag or config file)")
    x_scale = float(x_scale)
    delta1_text = _opt(ctx, "delta1_text", delta1_text, key="delta1")
    jobs = _opt(ctx, "jobs", jobs)
    delta1 = parse_complex_pair(delta1_text)
    if delta1.real < 0:
        raise click.UsageError("need Re(delta1) >= 0")
    try:
        cfg = MomentConfig(X=x_scale)
        empirical = mollified_ratio(delta1, cfg, n_jobs=jobs)
        predicted = predicted_moment_ratio(delta1, cfg)
    except (ValueError, RuntimeError, ArithmeticError, MemoryError) as exc:
        _fail_numeric(exc)
    empirical = complex(empirical).real  # structurally real; roundoff imag
    gap = abs(empirical - predicted) / max(1.0, abs(predicted))
    click.echo(f"X={x_scale:.12g} delta1={delta1.real:.6g}{delta1.imag:+.6g}i "
               f"M={cfg.m_length:.6g}")
    click.echo(f"empirical={empirical:.12g}")
    click.echo(f"predicted={predicted:.12g}")
    click.echo(f"excess_empirical={empirical - 1.0:.12g}")
    click.echo(f"excess_predicted={predicted - 1.0:.12g}")
    click.echo(f"relative_gap={gap:.6g}")


# --------------------------------------------------------------- plot-data --


@main.command(name="plot-data")
@click.option("--kind", type=click.Choice(["xi_profile", "proportion_curve",
                                           "kernel_profile"]), required=True)
@click.option("--d", "d_text", default="-3", show_default=True,
              help="xi_profile: which d to profile.")
@click.option("--points", type=int, default=513, show_default=True)
@click.option("--x-min", type=float, default=1e-6, show_default=True,
              help="kernel_profile: smallest x.")
@click.option("--x-max", type=float, default=100.0, show_default=True,
              help="kernel_profile: largest x.")
@click.option("--max-norm", type=int, default=2000, show_default=True,
              help="proportion_curve: survey bound.")
@click.option("--mode", type=click.Choice(["primary", "all_associates"]),
              default="primary", show_default=True)
@click.option("--jobs", type=int, default=1, envvar="ZIHECKE_JOBS", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def plot_data(kind, d_text, points, x_min, x_max, max_norm, mode, jobs, out_path):
    """Emit plain numeric tables for external plotting."""
    try:
        if kind == "xi_profile":
            from .lfunctions import LFunction

            d = parse_gauss(d_text)
            lf = LFunction(d)
            sigmas = np.linspace(0.0, 1.0, points)
            xis = lf.xi_real_grid(sigmas)
            rows = [f"{sg:.12g},{xi:.12g}" for sg, xi in zip(sigmas, xis)]
            params = {"command": "plot-data", "kind": kind, "d": str(d),
                      "points": points}
            _emit(out_path, _table_artifact("sigma,xi", rows, params))
        elif kind == "kernel_profile":
            from .specfun import w_kernel

            xs = np.geomspace(x_min, x_max, points)
            ws = w_kernel(xs)
            rows = [f"{x:.12g},{w:.12g}" for x, w in zip(xs, np.real(ws))]
            params = {"command": "plot-data", "kind": kind, "x_min": x_min,
                      "x_max": x_max, "points": points}
            _emit(out_path, _table_artifact("x,w00", rows, params))
        else:
            cfg = SurveyConfig(max_norm=max_norm, mode=mode)
            records, _ = run_survey(cfg, n_jobs=jobs)
            rows = []
            seen = 0
            good = 0
            for rec in records:
                seen += 1
                if rec.num_real_zeros == 0 and rec.status == "clean":
                    good += 1
                rows.append(f"{rec.norm},{good / seen:.12g}")
            params = {"command": "plot-data", "kind": kind, "max_norm": max_norm,
                      "mode": mode, "config_hash": cfg.config_hash()}
            _emit(out_path, _table_artifact("norm,cumulative_fraction", rows, params))
    except (ValueError, RuntimeError, ArithmeticError, MemoryError) as exc:
        _fail_numeric(exc)


# ------------------------------------------------------------------ verify --


def _suite_gauss_sum(rng, jobs):
    from .characters import gauss_sum, gauss_sum_direct
    from .gaussint import is_gaussian_prime
    from .primary_table import table_for

    tab = table_for(1500)
    worst = 0.0
    checked = 0
    k_tab = table_for(64)
    for idx in range(tab.count_upto(1500)):
        w = GaussInt(int(tab.re[idx]), int(tab.im[idx]))
        if not is_gaussian_prime(w):
            continue
        nw = w.norm()
        l = 1
        while nw**l <= 1500:
            n = w**l
            ks = [GaussInt(1, 0), GaussInt(0, 1), w, GaussInt(-1, 2)]
            pick = rng.integers(0, k_tab.count_upto(60), size=4)
            ks += [GaussInt(int(k_tab.re[j]), int(k_tab.im[j])) for j in pick]
            for kk in ks:
                a = gauss_sum(kk, n)
                b = gauss_sum_direct(kk, n)
                scale = max(1.0, abs(b))
                worst = max(worst, abs(a - b) / scale)
                checked += 1
            l += 1
    return worst <= 1e-8, {"max_rel_diff": worst, "pairs_checked": checked}


def _suite_functional_equation(rng, jobs):
    from .lfunctions import LFunction
    from .survey import enumerate_family

    fam = list(enumerate_family(1500, "primary"))
    pick = rng.choice(len(fam), size=8, replace=False)
    sigmas = np.linspace(0.0, 1.0, 9)
    worst = 0.0
    for j in pick:
        lf = LFunction(fam[int(j)])
        xis = lf.xi_real_grid(sigmas)
        rev = lf.xi_real_grid(1.0 - sigmas)
        resid = np.max(np.abs(xis - rev) / np.maximum(1.0, np.abs(xis)))
        worst = max(worst, float(resid))
    return worst <= 1e-8, {"max_fe_residual": worst, "d_count": len(pick)}


def _suite_moment_identity(rng, jobs):
    from .lfunctions import moment_identity_pair
    from .survey import enumerate_family

    fam = list(enumerate_family(300, "primary"))
    pick = rng.choice(len(fam), size=5, replace=False)
    worst = 0.0
    for j in pick:
        d = fam[int(j)]
        d1 = complex(*(rng.uniform(-0.007, 0.007, size=2)))
        d2 = complex(*(rng.uniform(-0.007, 0.007, size=2)))
        lhs, rhs = moment_identity_pair(d, d1, d2)
        scale = max(1.0, abs(lhs))
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst <= 1e-6, {"max_identity_residual": worst, "triples": len(pick)}


def _suite_poisson(rng, jobs):
    from .characters import poisson_pair

    worst = 0.0
    for n in (GaussInt(1, 0), GaussInt(-3, 0), GaussInt(-1, 2)):
        lhs, rhs = poisson_pair(n, 50.0)
        worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-6, {"max_poisson_residual": worst}


def _suite_zeta(rng, jobs):
    import mpmath as mp

    from .specfun import dedekind_zeta, zeta_k2

    catalan = float(mp.catalan)
    r1 = abs(zeta_k2() - (math.pi**2 / 6.0) * catalan)
    worst_fe = 0.0
    for _ in range(3):
        s = complex(rng.uniform(0.2, 0.8), rng.uniform(-2.0, 2.0))
        with mp.workdps(30):
            lhs = mp.pi ** (-s) * mp.gamma(s) * dedekind_zeta(s)
            rhs = mp.pi ** (-(1 - s)) * mp.gamma(1 - s) * dedekind_zeta(1 - s)
            worst_fe = max(worst_fe, float(abs(lhs - rhs)))
    s1 = 1.0 + 1e-4
    r3 = abs((s1 - 1.0) * complex(dedekind_zeta(s1)).real - math.pi / 4.0)
    ok = r1 <= 1e-9 and worst_fe <= 1e-8 and r3 <= 1e-3
    return ok, {"zeta_k2_err": r1, "fe_residual": worst_fe, "residue_err": r3}


def _suite_kernel(rng, jobs):
    from .specfun import KernelConfig, w00_closed_form, w_kernel

    xs = np.array([0.5, 1.0, 5.0])
    via_contour = np.real(w_kernel(xs, 0.0, 0.0, KernelConfig()))
    via_closed = np.array([w00_closed_form(float(x)) for x in xs])
    ident = float(np.max(np.abs(via_contour - via_closed)))
    decay = abs(float(np.real(w_kernel(100.0))))
    small = float(np.real(w_kernel(1e-6)))
    ok = ident <= 1e-8 and decay <= 1e-3
    return ok, {"closed_vs_contour": ident, "w00_at_100": decay,
                "w00_at_1e-6": small, "offset_from_2pi": small - 2 * math.pi}


def _suite_mollifier(rng, jobs):
    from .mollifier import MollifierSpec, headline_constant, v_formula

    spec = MollifierSpec(m_length=math.e, b=0.64)
    rho = 0.5 - 5e-10
    us = np.linspace(-6.8, 8.0, 25)
    vs = np.linspace(0.0, 4.0, 9)
    uu, vv = np.meshgrid(us, vs)
    vals = v_formula(uu, vv, rho, spec)
    min_v = float(np.min(vals))
    v00 = float(v_formula(0.0, 0.0, rho, spec))
    v00_exact = 1.0 + 1.0 / (4.0 * rho**3 * 0.64**3)
    res = headline_constant()
    ok = (min_v >= 1.0 - 1e-12 and abs(v00 - v00_exact) <= 1e-10
          and res.C <= 0.79 and res.err_estimate <= 1e-4
          and abs(res.C - 0.675395785546) <= 1e-9)
    return ok, {"min_v": min_v, "v00_err": abs(v00 - v00_exact), "C": res.C,
                "C_err_estimate": res.err_estimate}


def _suite_box_count(rng, jobs):
    z0 = complex(0.4, 0.02)
    box = BoxSpec(W0=0.3, W1=1.1, H=0.1, W=0.9)
    total, _ = selberg_box_count(lambda z: z - z0, box, quad_tol=1e-10)
    expected = (4 * box.H * math.cos(math.pi * z0.imag / (2 * box.H))
                * math.sinh(math.pi * (z0.real - box.W0) / (2 * box.H)))
    r1 = abs(total - expected)
    total2, _ = selberg_box_count(np.exp, box, quad_tol=1e-10)
    ok = r1 <= 1e-6 and abs(total2) <= 1e-8
    return ok, {"single_zero_err": r1, "zero_free_sum": total2}


def _suite_survey(rng, jobs):
    cfg = SurveyConfig(max_norm=300, mode="primary")
    records, summary = run_survey(cfg, n_jobs=jobs)
    ok = (summary["proportion"] > 0.2 and summary["failed_count"] == 0)
    return ok, {"total": summary["total"],
                "proportion": summary["proportion"],
                "suspect": summary["suspect_count"],
                "failed": summary["failed_count"]}


_SUITES = {
    "gauss_sum": _suite_gauss_sum,
    "functional_equation": _suite_functional_equation,
    "moment_identity": _suite_moment_identity,
    "poisson": _suite_poisson,
    "zeta": _suite_zeta,
    "kernel": _suite_kernel,
    "mollifier": _suite_mollifier,
    "box_count": _suite_box_count,
    "survey": _suite_survey,
}


@main.command()
@click.option("--suite", default="all", show_default=True,
              help="Suite name or 'all': " + ", ".join(sorted(_SUITES)))
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--jobs", type=int, default=1, envvar="ZIHECKE_JOBS", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="JSON report path (default stdout).")
def verify(suite, seed, jobs, out_path):
    """Run property suites; exit 0 only if every selected suite passes."""
    if suite == "all":
        names = sorted(_SUITES)
    elif suite in _SUITES:
        names = [suite]
    else:
        raise click.UsageError(f"unknown suite {suite!r}; "
                               f"choose from all, {', '.join(sorted(_SUITES))}")
    report = {"version": __version__, "seed": seed,
              "config_hash": _config_hash({"command": "verify", "suite": suite,
                                           "seed": seed}),
              "suites": []}
    all_passed = True
    for name in names:
        rng = np.random.default_rng(seed)
        t0 = time.time()
        try:
            passed, residuals = _SUITES[name](rng, jobs)
        except Exception as exc:  # noqa: BLE001 - suites must not kill the run
            passed, residuals = False, {"exception": repr(exc)}
        report["suites"].append({"name": name, "passed": bool(passed),
                                 "residuals": residuals,
                                 "runtime_s": round(time.time() - t0, 3)})
        all_passed = all_passed and passed
    report["all_passed"] = bool(all_passed)
    text = json.dumps(report, sort_keys=True, indent=2, default=float) + "\n"
    _emit(out_path, text)
    sys.exit(0 if all_passed else 1)


if __name__ == "__main__":
    main()
