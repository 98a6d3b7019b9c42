"""Box-counting identity, real-zero scans, family enumeration, persistence."""

import math
from pathlib import Path

import numpy as np
import pytest

from zihecke.gaussint import GaussInt
from zihecke.survey import (
    BoxSpec,
    SurveyConfig,
    SurveyConfigMismatch,
    enumerate_family,
    read_checkpoint,
    run_survey,
    scan_real_zeros,
    selberg_box_count,
    zeta_k_xi_grid,
)

_BOX = BoxSpec(W0=0.3, W1=1.1, H=0.1, W=0.9)
_HALF = math.pi / (2.0 * _BOX.H)


def _weight(z: complex) -> float:
    # contribution of one zero beta + i gamma inside the box
    return 4.0 * _BOX.H * math.cos(_HALF * z.imag) * \
        math.sinh(_HALF * (z.real - _BOX.W0))


def test_box_spec_validation():
    with pytest.raises(ValueError):
        BoxSpec(W0=0.3, W1=1.1, H=-0.1, W=0.9)
    with pytest.raises(ValueError):
        BoxSpec(W0=0.9, W1=1.1, H=0.1, W=0.5)
    with pytest.raises(ValueError):
        BoxSpec(W0=0.3, W1=1.1, H=0.1, W=1.2)
    # zero-free abscissa may sit on the right edge
    BoxSpec(W0=0.3, W1=1.1, H=0.1, W=1.1)


def test_box_count_single_zero_matches_weight():
    z0 = 0.4 + 0.02j
    s, (ia, ib, ic) = selberg_box_count(lambda z: z - z0, _BOX, quad_tol=1e-10)
    assert s == ia + ib - ic
    assert abs(s - _weight(z0)) <= 1e-9


def test_box_count_counts_only_zeros_inside():
    z_in = [0.45 + 0.03j, 0.62 - 0.055j]
    z_out = [0.1 + 0.05j, 0.5 + 0.25j]  # left of W0 / beyond the height

    def f(z):
        p = 1.0
        for z0 in z_in + z_out:
            p = p * (z - z0)
        return p

    s, _ = selberg_box_count(f, _BOX, quad_tol=1e-10)
    assert abs(s - sum(_weight(z) for z in z_in)) <= 1e-8


def test_box_count_zero_free_function_gives_zero():
    s, _ = selberg_box_count(lambda z: np.exp(z), _BOX, quad_tol=1e-10)
    assert abs(s) <= 1e-8


def test_box_count_ignores_zero_free_factor():
    # exp(10 z) winds fast along the right edge; the continuous-argument
    # refinement must absorb it without changing the zero sum
    z0 = 0.45 + 0.03j
    s, _ = selberg_box_count(lambda z: np.exp(10.0 * z) * (z - z0), _BOX,
                             quad_tol=1e-10)
    assert abs(s - _weight(z0)) <= 1e-8


def test_box_count_constant_multiple_invariant():
    z0 = 0.45 + 0.03j
    s1, _ = selberg_box_count(lambda z: z - z0, _BOX, quad_tol=1e-10)
    s2, _ = selberg_box_count(lambda z: 3.7 * (z - z0), _BOX, quad_tol=1e-10)
    assert abs(s1 - s2) <= 1e-8


def test_box_count_mollified_l_is_nonnegative():
    # weighted count of zeros of L(s, chi_d) M(s, chi_d) in the survey box;
    # the kernel is positive inside, so the sum must not be materially negative
    from zihecke.lfunctions import LFunction
    from zihecke.mollifier import MomentConfig, mollifier_value

    cfg = MomentConfig(X=1e6)
    lx = math.log(cfg.X)
    box = BoxSpec(W0=0.5 - cfg.R / lx, W1=cfg.sigma0, H=cfg.s_value / lx,
                  W=cfg.sigma0)
    d = GaussInt(-3, 0)
    lf = LFunction(d)
    spec = cfg.mollifier_spec()

    def f(z):
        return lf.l_value(z) * mollifier_value(spec, d, z)

    s, _ = selberg_box_count(f, box, quad_tol=1e-8)
    print(f"\nweighted zero sum for L*M, d=-3: {s:.3e}")
    assert s >= -1e-6


def test_scan_known_family_members_clean():
    # frozen regression values: min |xi| on the scan grid, no real zeros
    expected = {
        (1, 0): 0.24376655750012224,
        (19, 6): 0.12758049948135794,
        (-1, 2): 1.9065968386487602,
        (-3, 0): 1.946832742617341,
    }
    for (re, im), want in expected.items():
        r = scan_real_zeros(GaussInt(re, im))
        assert r.status == "clean"
        assert r.num_real_zeros == 0
        assert r.zero_locations == ()
        assert not r.suspect_flag
        assert r.min_abs_xi == want


def test_scan_stable_under_grid_refinement():
    # the grid minimum sits at sigma = 1/2, present in both grids, so the
    # recorded minimum is bit-identical at 4x resolution
    for re, im in ((1, 0), (-3, 0)):
        r1 = scan_real_zeros(GaussInt(re, im), grid_points=512)
        r4 = scan_real_zeros(GaussInt(re, im), grid_points=2048)
        assert r1.num_real_zeros == r4.num_real_zeros == 0
        assert r1.min_abs_xi == r4.min_abs_xi


def test_zeta_k_completed_grid():
    sig = np.linspace(0.0, 1.0, 65)
    xi = zeta_k_xi_grid(sig)
    assert np.all(xi > 0.0)
    # s(s-1) pi^-s Gamma(s) zeta_K(s) -> residue pi/4 over pi at both ends
    assert abs(xi[0] - 0.25) <= 1e-12
    assert abs(xi[-1] - 0.25) <= 1e-12
    mid = zeta_k_xi_grid(np.array([0.5]))[0]
    assert mid == 0.24376655750012224


def test_enumerate_family_counts_and_order():
    prim = list(enumerate_family(200, "primary"))
    alla = list(enumerate_family(200, "all_associates"))
    assert len(prim) == 69
    assert len(alla) == 4 * len(prim)
    assert len(list(enumerate_family(200, "primary", include_units=True))) == 70
    assert len(list(enumerate_family(200, "all_associates",
                                     include_units=True))) == 280
    assert prim[0] == GaussInt(-1, -2) and prim[0].norm() == 5
    norms = [d.norm() for d in prim]
    assert norms == sorted(norms)
    # every entry is odd and squarefree with norm in range
    from zihecke.gaussint import factor
    for d in prim[:20]:
        assert d.norm() % 2 == 1 and d.norm() <= 200
        _, m, fac = factor(d)
        assert m == 0 and all(e == 1 for _, e in fac)
    with pytest.raises(ValueError):
        list(enumerate_family(100, "bogus"))


def test_enumerate_family_is_lazy():
    g = enumerate_family(100)
    assert hasattr(g, "__next__") and not hasattr(g, "__len__")
    assert next(g).norm() == 5


def test_survey_config_validation_and_hash():
    with pytest.raises(ValueError):
        SurveyConfig(max_norm=100, mode="bogus")
    with pytest.raises(ValueError):
        SurveyConfig(max_norm=100, grid_points=32)
    a = SurveyConfig(max_norm=100)
    b = SurveyConfig(max_norm=100, checkpoint_every=7)
    c = SurveyConfig(max_norm=100, grid_points=128)
    # persistence cadence does not change identity; scan resolution does
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()


def test_run_survey_dry_run_density():
    from zihecke.specfun import zeta_k2

    for mode, raw in (("primary", math.pi / 6.0),
                      ("all_associates", 2.0 * math.pi / 3.0)):
        recs, summary = run_survey(SurveyConfig(max_norm=30000, mode=mode),
                                   dry_run=True)
        assert recs == []
        assert summary["nonvanishing_count"] is None
        assert abs(summary["target_density"] - raw / zeta_k2()) <= 1e-12
        assert abs(summary["density_ratio"] - 1.0) <= 0.02


def test_run_survey_csv_format(tmp_path):
    from zihecke import __version__

    cfg = SurveyConfig(max_norm=60, mode="primary")
    csv_path = tmp_path / "family.csv"
    records, summary = run_survey(cfg, csv_path=str(csv_path))
    lines = csv_path.read_text().splitlines()
    assert lines[0] == f"# zihecke {__version__} survey schema v1"
    assert lines[1] == f"# config_hash={cfg.config_hash()}"
    assert lines[2] == "d_re,d_im,norm,num_real_zeros,min_abs_xi,status"
    rows = [ln.split(",") for ln in lines[3:]]
    assert len(rows) == len(records) == summary["total"]
    norms = [int(r[2]) for r in rows]
    assert norms == sorted(norms)
    assert all(r[5] in ("clean", "suspect", "failed") for r in rows)
    assert summary["proportion"] == 1.0


def test_run_survey_includes_units_via_zeta_backend():
    recs, _ = run_survey(SurveyConfig(max_norm=10, include_units=True))
    assert recs[0].d == GaussInt(1, 0)
    assert recs[0].min_abs_xi == 0.24376655750012224
    assert recs[0].status == "clean"


class _StopAfter(RuntimeError):
    pass


def test_run_survey_persistence_resume_and_mismatch(tmp_path, monkeypatch):
    cfg = SurveyConfig(max_norm=200, mode="primary", checkpoint_every=15)

    csv_a, ck_a = tmp_path / "a.csv", tmp_path / "a.json"
    rec_a, sum_a = run_survey(cfg, n_jobs=1, csv_path=str(csv_a),
                              checkpoint_path=str(ck_a))
    assert sum_a["total"] == 69

    # a 2-process run writes byte-identical output
    csv_b, ck_b = tmp_path / "b.csv", tmp_path / "b.json"
    rec_b, sum_b = run_survey(cfg, n_jobs=2, csv_path=str(csv_b),
                              checkpoint_path=str(ck_b))
    assert csv_a.read_bytes() == csv_b.read_bytes()
    assert sum_a == sum_b
    assert [r.d for r in rec_a] == [r.d for r in rec_b]

    # interrupt after the second batch, then resume to the identical result
    csv_c, ck_c = tmp_path / "c.csv", tmp_path / "c.json"
    seen = []

    def bomb(done, total):
        seen.append(done)
        if len(seen) == 2:
            raise _StopAfter

    with pytest.raises(_StopAfter):
        run_survey(cfg, n_jobs=1, csv_path=str(csv_c),
                   checkpoint_path=str(ck_c), progress=bomb)
    ck = read_checkpoint(str(ck_c))
    assert 0 < ck["last_norm"] < 200
    assert ck["config_hash"] == cfg.config_hash()
    rec_c, sum_c = run_survey(cfg, n_jobs=1, csv_path=str(csv_c),
                              checkpoint_path=str(ck_c))
    assert csv_c.read_bytes() == csv_a.read_bytes()
    assert sum_c == sum_a

    # a different scan resolution must refuse the old checkpoint
    other = SurveyConfig(max_norm=200, mode="primary", grid_points=128)
    with pytest.raises(SurveyConfigMismatch):
        run_survey(other, csv_path=str(csv_a), checkpoint_path=str(ck_a))

    # rerunning a completed survey reloads records without rescanning
    def explode(*a, **k):
        raise AssertionError("scan was re-run on a completed survey")

    monkeypatch.setattr("zihecke.survey.scan_real_zeros", explode)
    rec_d, sum_d = run_survey(cfg, n_jobs=1, csv_path=str(csv_a),
                              checkpoint_path=str(ck_a))
    assert sum_d == sum_a
    assert [r.d for r in rec_d] == [r.d for r in rec_a]
