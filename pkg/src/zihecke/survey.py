"""Real-zero survey of the quadratic family and the argument-principle box count.

Per d, xi(sigma) is scanned on a uniform grid over [0, 1] (xi, not L: the
sign is the same on (0, 1] and xi is entire, so sigma = 0 needs no pole
handling), sign changes are bisected to a requested width, and small
|xi| local minima without a sign change are re-examined on a denser local
grid before being flagged suspect.

The box counter implements the rectangle identity

    4H sum_{zeros in B} cos(pi gamma / 2H) sinh(pi (beta - W0) / 2H)
      = int_{-H}^{H} cos(pi t/2H) log|f(W0+it)| dt
      + int_{W0}^{W1} sinh(pi (a-W0)/2H) log|f(a+iH) f(a-iH)| da
      - Re int_{-H}^{H} cos(pi (W1-W0+it)/(2iH)) log f(W1+it) dt,

valid when f is zero-free on Re z >= W for some W < W1. The last integral
needs a continuous branch of log f along Re z = W1; arg f is continued in
small steps with |delta arg| < pi/2 per step, halving on violation.

Survey persistence: CSV rows `d_re,d_im,norm,num_real_zeros,min_abs_xi,
status` after `#`-comment header lines, floats formatted %.12g so reruns
are byte-identical; checkpoint JSON {schema, config_hash, last_norm,
counts} written atomically, resume requires a matching config_hash.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .gaussint import GaussInt
from .primary_table import table_for

__all__ = [
    "SurveyRecord",
    "BoxSpec",
    "SurveyConfig",
    "SurveyConfigMismatch",
    "scan_real_zeros",
    "zeta_k_xi_grid",
    "selberg_box_count",
    "enumerate_family",
    "run_survey",
    "write_csv",
    "read_checkpoint",
]

_CSV_SCHEMA = "d_re,d_im,norm,num_real_zeros,min_abs_xi,status"
_CHECKPOINT_SCHEMA = 1


@dataclass(frozen=True)
class SurveyRecord:
    """Outcome of one real-zero scan."""

    d: GaussInt
    norm: int
    num_real_zeros: int
    min_abs_xi: float
    suspect_flag: bool
    zero_locations: tuple
    status: str  # clean | suspect | failed


@dataclass(frozen=True)
class BoxSpec:
    """Rectangle W0 +- iH .. W1 +- iH with a zero-free abscissa W inside."""

    W0: float
    W1: float
    H: float
    W: float

    def __post_init__(self):
        if self.H <= 0:
            raise ValueError("H must be positive")
        if not (self.W0 < self.W <= self.W1):
            raise ValueError("need W0 < W <= W1")


@dataclass(frozen=True)
class SurveyConfig:
    """Scan and persistence knobs; hashed into checkpoints and CSV headers."""

    max_norm: int
    mode: str = "primary"  # primary | all_associates
    grid_points: int = 512
    refine_tol: float = 1e-10
    suspect_rel: float = 1e-6
    include_units: bool = False
    checkpoint_every: int = 200

    def __post_init__(self):
        if self.mode not in ("primary", "all_associates"):
            raise ValueError("mode must be primary or all_associates")
        if self.grid_points < 64:
            raise ValueError("grid_points must be at least 64")

    def config_hash(self) -> str:
        payload = json.dumps(
            {
                "schema": _CHECKPOINT_SCHEMA,
                "max_norm": self.max_norm,
                "mode": self.mode,
                "grid_points": self.grid_points,
                "refine_tol": self.refine_tol,
                "suspect_rel": self.suspect_rel,
                "include_units": self.include_units,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


class SurveyConfigMismatch(RuntimeError):
    """Checkpoint or CSV belongs to a different configuration."""


# -- per-d scan --------------------------------------------------------------------


def _bisect_zero(xi_at, lo: float, hi: float, f_lo: float, f_hi: float,
                 tol: float) -> tuple:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = xi_at(mid)
        if f_mid == 0.0:
            return (mid, 0.0)
        if (f_lo < 0) != (f_mid < 0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return (0.5 * (lo + hi), hi - lo)


def zeta_k_xi_grid(sigmas: np.ndarray) -> np.ndarray:
    """Entire completed form s(s-1) pi^{-s} Gamma(s) zeta_K(s) on real s,
    positive on (0, 1]; backend for the unit d = +-1, +-i records."""
    import mpmath as mp

    from .specfun import dedekind_zeta

    out = np.empty(len(sigmas))
    with mp.workdps(25):
        for i, s in enumerate(sigmas):
            s = float(s)
            if s in (0.0, 1.0):
                # limit s(s-1) Gamma(s) zeta_K(s) -> 1 * residue = pi/4 at
                # s = 1; the s = 0 value equals it by the functional equation
                out[i] = float(mp.pi / 4 / mp.pi)
            else:
                val = mp.mpf(s) * (mp.mpf(s) - 1) * mp.power(mp.pi, -s) \
                    * mp.gamma(s) * dedekind_zeta(s)
                out[i] = float(mp.re(val))
    return out


def scan_real_zeros(d: GaussInt, grid_points: int = 512, refine_tol: float = 1e-10,
                    suspect_rel: float = 1e-6) -> SurveyRecord:
    """Detect real zeros of L(sigma, chi_d) on (0, 1] via the xi sign pattern.

    Unit d scans the Dedekind-zeta completed form instead (no real zeros,
    negative-definite zeta_K on (0,1) times the s(s-1) factor).
    """
    try:
        if d.norm() == 1:
            sig = np.linspace(0.0, 1.0, grid_points + 1)
            xi = zeta_k_xi_grid(sig)
            xi_at = lambda s: float(zeta_k_xi_grid(np.array([s]))[0])
        else:
            from .lfunctions import LFunction

            lf = LFunction(d)
            sig = np.linspace(0.0, 1.0, grid_points + 1)
            xi = lf.xi_real_grid(sig)
            xi_at = lambda s: float(lf.xi_real_grid(np.array([s]))[0])
    except Exception:
        return SurveyRecord(d=d, norm=d.norm(), num_real_zeros=0,
                            min_abs_xi=math.nan, suspect_flag=False,
                            zero_locations=(), status="failed")

    scale = float(np.max(np.abs(xi)))
    zeros = []
    signs = np.sign(xi)
    for i in range(grid_points):
        if signs[i] == 0.0:
            # grid point exactly on a zero; count once, skip the cell
            if sig[i] > 0.0:
                zeros.append((float(sig[i]), 0.0))
            continue
        if signs[i + 1] != 0.0 and signs[i] != signs[i + 1]:
            loc = _bisect_zero(xi_at, float(sig[i]), float(sig[i + 1]),
                               float(xi[i]), float(xi[i + 1]), refine_tol)
            if loc[0] > 0.0:
                zeros.append(loc)

    # tangential suspects: small |xi| local minima with no adjacent sign change
    min_abs = float(np.min(np.abs(xi)))
    suspect = False
    thresh = suspect_rel * scale
    interior = np.arange(1, grid_points)
    is_min = (np.abs(xi[interior]) <= np.abs(xi[interior - 1])) & \
             (np.abs(xi[interior]) <= np.abs(xi[interior + 1]))
    for i in interior[is_min]:
        if abs(xi[i]) >= thresh:
            continue
        if signs[i - 1] != signs[i + 1]:
            continue  # already counted as a sign change
        lo, hi = float(sig[i - 1]), float(sig[i + 1])
        dense = np.linspace(lo, hi, 65)
        vals = np.array([xi_at(s) for s in dense])
        min_abs = min(min_abs, float(np.min(np.abs(vals))))
        dsig = np.sign(vals)
        found = False
        for j in range(64):
            if dsig[j] != 0 and dsig[j + 1] != 0 and dsig[j] != dsig[j + 1]:
                loc = _bisect_zero(xi_at, float(dense[j]), float(dense[j + 1]),
                                   float(vals[j]), float(vals[j + 1]), refine_tol)
                if loc[0] > 0.0:
                    zeros.append(loc)
                found = True
        if not found and float(np.min(np.abs(vals))) < thresh:
            suspect = True

    zeros.sort()
    status = "suspect" if suspect else "clean"
    return SurveyRecord(d=d, norm=d.norm(), num_real_zeros=len(zeros),
                        min_abs_xi=min_abs, suspect_flag=suspect,
                        zero_locations=tuple(zeros), status=status)


# -- box counter --------------------------------------------------------------------


def _continuous_args(fvals: np.ndarray, f, zs: np.ndarray, depth: int = 0) -> np.ndarray:
    """Cumulative arg f along an ordered path; refines steps with
    |delta arg| >= pi/2 by inserting midpoints (up to 40 halvings)."""
    args = np.empty(len(fvals))
    args[0] = np.angle(fvals[0])
    for k in range(1, len(fvals)):
        step = float(np.angle(fvals[k] / fvals[k - 1]))
        if abs(step) >= 0.5 * math.pi:
            a, b = zs[k - 1], zs[k]
            fa, fb = fvals[k - 1], fvals[k]
            acc = 0.0
            stack = [(a, b, fa, fb, 0)]
            while stack:
                za, zb, va, vb, dep = stack.pop()
                st = float(np.angle(vb / va))
                if abs(st) < 0.5 * math.pi:
                    acc += st
                elif dep >= 40:
                    raise RuntimeError("branch tracking failed: arg step "
                                       "did not shrink after 40 halvings")
                else:
                    zm = 0.5 * (za + zb)
                    vm = f(zm)
                    # keep path order: process (za,zm) then (zm,zb)
                    stack.append((zm, zb, vm, vb, dep + 1))
                    stack.append((za, zm, va, vm, dep + 1))
            step = acc
        args[k] = args[k - 1] + step
    return args


def selberg_box_count(f, box: BoxSpec, quad_tol: float = 1e-8):
    """Weighted zero count of f in the box from the three boundary integrals.

    Returns (weighted_zero_sum, (I_A, I_B, I_C)) with the identity
    weighted_zero_sum = I_A + I_B - I_C; the caller must supply f
    zero-free on Re z >= box.W.
    """
    from scipy.integrate import quad

    W0, W1, H = box.W0, box.W1, box.H
    half = 0.5 * math.pi / H

    ia, _ = quad(lambda t: math.cos(half * t) * math.log(abs(f(W0 + 1j * t))),
                 -H, H, epsabs=0.1 * quad_tol, epsrel=1e-12, limit=300)
    ib, _ = quad(lambda a: math.sinh(half * (a - W0)) *
                 (math.log(abs(f(a + 1j * H))) + math.log(abs(f(a - 1j * H)))),
                 W0, W1, epsabs=0.1 * quad_tol, epsrel=1e-12, limit=300)

    # W1 side: Re of cos(pi (W1-W0+it)/(2iH)) log f, continuous branch
    coshD = math.cosh(half * (W1 - W0))
    sinhD = math.sinh(half * (W1 - W0))

    def ic_with(n_panels: int) -> float:
        from .specfun import gauss_legendre_panels

        ts, ws = gauss_legendre_panels(-H, H, 2.0 * H / n_panels, 10)
        zs = W1 + 1j * ts
        fvals = np.array([f(z) for z in zs])
        if np.any(fvals == 0):
            raise RuntimeError("f vanishes on the W1 edge")
        logabs = np.log(np.abs(fvals))
        args = _continuous_args(fvals, f, zs)
        integ = np.cos(half * ts) * coshD * logabs - np.sin(half * ts) * sinhD * args
        return float(np.dot(ws, integ))

    n = 16
    ic = ic_with(n)
    while True:
        ic2 = ic_with(2 * n)
        if abs(ic2 - ic) <= max(quad_tol, 1e-14 * abs(ic2)) or n >= 512:
            ic = ic2
            break
        ic, n = ic2, 2 * n

    return ia + ib - ic, (ia, ib, ic)


# -- family enumeration and survey ------------------------------------------------------


def enumerate_family(max_norm: int, mode: str = "primary",
                     include_units: bool = False):
    """Odd squarefree d in fixed order: by (norm, re, im), then unit rotation
    1, i, -1, -i in all_associates mode. Units (norm 1) are skipped unless
    include_units."""
    if mode not in ("primary", "all_associates"):
        raise ValueError("mode must be primary or all_associates")
    tab = table_for(max_norm)
    k = tab.count_upto(max_norm)
    sq = tab.is_squarefree()
    rot = ((1, 0), (0, 1), (-1, 0), (0, -1)) if mode == "all_associates" else ((1, 0),)
    for j in range(k):
        if not sq[j]:
            continue
        if tab.norm[j] == 1 and not include_units:
            continue
        re, im = int(tab.re[j]), int(tab.im[j])
        for ur, ui in rot:
            yield GaussInt(ur * re - ui * im, ur * im + ui * re)


def _scan_worker(d_re: int, d_im: int, grid_points: int, refine_tol: float,
                 suspect_rel: float) -> SurveyRecord:
    return scan_real_zeros(GaussInt(d_re, d_im), grid_points=grid_points,
                           refine_tol=refine_tol, suspect_rel=suspect_rel)


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _record_row(r: SurveyRecord) -> str:
    return "%d,%d,%d,%d,%.12g,%s" % (r.d.re, r.d.im, r.norm, r.num_real_zeros,
                                     r.min_abs_xi, r.status)


def write_csv(path: str, records, cfg: SurveyConfig) -> None:
    from . import __version__
    lines = [f"# zihecke {__version__} survey schema v{_CHECKPOINT_SCHEMA}",
             f"# config_hash={cfg.config_hash()}",
             _CSV_SCHEMA]
    lines.extend(_record_row(r) for r in records)
    _atomic_write(path, "\n".join(lines) + "\n")


def read_checkpoint(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _write_checkpoint(path: str, cfg: SurveyConfig, last_norm: int,
                      counts: dict) -> None:
    from . import __version__
    payload = {"schema": _CHECKPOINT_SCHEMA, "config_hash": cfg.config_hash(),
               "version": __version__, "last_norm": last_norm, "counts": counts}
    _atomic_write(path, json.dumps(payload, sort_keys=True) + "\n")


def run_survey(cfg: SurveyConfig, n_jobs: int = 1, csv_path: str | None = None,
               checkpoint_path: str | None = None, dry_run: bool = False,
               progress=None):
    """Scan the family up to cfg.max_norm; returns (records, summary).

    dry_run enumerates without evaluating any L-function (density checks).
    With a checkpoint_path pointing at a compatible previous run, scanning
    resumes after the recorded norm and earlier records are reloaded from
    csv_path.
    """
    from .specfun import zeta_k2

    ds = list(enumerate_family(cfg.max_norm, cfg.mode, cfg.include_units))

    density = (2.0 * math.pi / 3.0 if cfg.mode == "all_associates" else math.pi / 6.0)
    density /= zeta_k2()

    if dry_run:
        total = len(ds)
        summary = {
            "total": total,
            "nonvanishing_count": None,
            "proportion": None,
            "target_density": density,
            "density_ratio": (total / cfg.max_norm) / density,
            "suspect_count": 0,
            "failed_count": 0,
        }
        return [], summary

    start_norm = 0
    prior_records: list[SurveyRecord] = []
    counts = {"total": 0, "nonvanishing": 0, "suspect": 0, "failed": 0}
    if checkpoint_path and os.path.exists(checkpoint_path):
        ck = read_checkpoint(checkpoint_path)
        if ck.get("config_hash") != cfg.config_hash() or ck.get("schema") != _CHECKPOINT_SCHEMA:
            raise SurveyConfigMismatch("checkpoint was written by a different survey config")
        start_norm = int(ck["last_norm"])
        counts = dict(ck["counts"])
        if csv_path and os.path.exists(csv_path):
            prior_records = _read_csv_records(csv_path, cfg, start_norm)

    todo = [d for d in ds if d.norm() > start_norm]

    records: list[SurveyRecord] = list(prior_records)
    new_records: list[SurveyRecord] = []
    batches = [todo[i:i + cfg.checkpoint_every]
               for i in range(0, len(todo), cfg.checkpoint_every)]
    pool = None
    if n_jobs != 1:
        from joblib import Parallel, delayed

        pool = Parallel(n_jobs=n_jobs, batch_size=4)
    for bi, batch in enumerate(batches):
        if pool is None:
            out = [scan_real_zeros(d, grid_points=cfg.grid_points,
                                   refine_tol=cfg.refine_tol,
                                   suspect_rel=cfg.suspect_rel) for d in batch]
        else:
            from joblib import delayed

            out = pool(delayed(_scan_worker)(d.re, d.im, cfg.grid_points,
                                             cfg.refine_tol, cfg.suspect_rel)
                       for d in batch)  # submission order preserved
        new_records.extend(out)
        done = sum(len(b) for b in batches[: bi + 1])
        next_norm = todo[done].norm() if done < len(todo) else None
        _flush(cfg, records, new_records, counts_init=counts,
               csv_path=csv_path, checkpoint_path=checkpoint_path,
               next_norm=next_norm)
        if progress:
            progress(len(records) + len(new_records), len(ds))

    records = records + new_records
    counts = _tally(counts, new_records)
    total = counts["total"]
    nonvan = counts["nonvanishing"]
    summary = {
        "total": total,
        "nonvanishing_count": nonvan,
        "proportion": (nonvan / total) if total else math.nan,
        "target_density": density,
        "density_ratio": (total / cfg.max_norm) / density,
        "suspect_count": counts["suspect"],
        "failed_count": counts["failed"],
    }
    return records, summary


def _tally(counts: dict, new_records) -> dict:
    c = dict(counts)
    for r in new_records:
        c["total"] += 1
        if r.status == "failed":
            c["failed"] += 1
            continue
        if r.suspect_flag:
            c["suspect"] += 1
        if r.num_real_zeros == 0 and r.status == "clean":
            c["nonvanishing"] += 1
    return c


def _flush(cfg: SurveyConfig, prior, new_records, counts_init, csv_path,
           checkpoint_path, next_norm=None) -> None:
    if csv_path:
        write_csv(csv_path, list(prior) + list(new_records), cfg)
    if checkpoint_path and new_records:
        # checkpoint only up to a fully processed norm class: if the next
        # pending d shares the last norm, back off by one so resume never
        # splits a class (its partial rows simply get recomputed)
        last_full = new_records[-1].norm
        if next_norm is not None and next_norm == last_full:
            last_full -= 1
        complete = [r for r in new_records if r.norm <= last_full]
        counts = _tally(counts_init, complete)
        _write_checkpoint(checkpoint_path, cfg, last_full, counts)


def _read_csv_records(path: str, cfg: SurveyConfig, upto_norm: int):
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line == _CSV_SCHEMA:
                if line.startswith("# config_hash=") and \
                        line.split("=", 1)[1] != cfg.config_hash():
                    raise SurveyConfigMismatch("CSV written by a different config")
                continue
            re_s, im_s, norm_s, nz_s, mx_s, status = line.split(",")
            if int(norm_s) > upto_norm:
                continue
            records.append(SurveyRecord(
                d=GaussInt(int(re_s), int(im_s)), norm=int(norm_s),
                num_real_zeros=int(nz_s), min_abs_xi=float(mx_s),
                suspect_flag=status == "suspect", zero_locations=(),
                status=status))
    return records
