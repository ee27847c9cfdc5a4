import json
import math

import numpy as np
import pytest

from scrambling.evolution import IsingParams
from scrambling.harness import (ConfigError, ScanConfig, full_report, comparison_report,
                                run_identity_suite, run_scan, scan_balancing_points)
from scrambling.harness.fit import fit_frequency
from scrambling.harness.io import format_csv
from scrambling.harness.report import QUANTIFIERS, format_text, closed_form_curves
from scrambling.states import BellLabel

BELLS = [b.value for b in BellLabel]


# -- scan --------------------------------------------------------------------


def test_two_step_scan_starts_commuting():
    samples = run_scan(ScanConfig(steps=2, t_max=3.0))
    assert [s.t for s in samples] == [0.0, 3.0]
    assert samples[0].c_direct == pytest.approx(0, abs=1e-15)


def test_scan_without_hamiltonian_is_flat():
    samples = run_scan(ScanConfig(params=IsingParams(0, 0), steps=50, w="y1", v="x1"))
    first = samples[0]
    for s in samples:
        assert s.z == first.z and s.c_direct == first.c_direct and s.f == first.f


def test_scan_periodic_by_autocorrelation():
    b = 0.5
    # dt divides the expected period pi/2 into exactly 100 steps
    steps = 801
    cfg = ScanConfig(params=IsingParams(0.5, b), t_max=(steps - 1) * math.pi / 200, steps=steps)
    y = np.array([s.c_direct for s in run_scan(cfg)])
    # autocorrelation oracle: smallest lag at which the sampled curve repeats
    lag = next(k for k in range(1, steps // 2) if np.max(np.abs(y[k:] - y[:-k])) < 1e-9)
    assert lag == 100
    fit = fit_frequency(cfg.times(), y)
    assert fit.is_periodic and fit.period == pytest.approx(lag * math.pi / 200, rel=1e-6)


def test_scan_config_validation():
    with pytest.raises(ConfigError):
        ScanConfig(t_min=1, t_max=1)
    with pytest.raises(ConfigError):
        ScanConfig(steps=1)
    with pytest.raises(ConfigError):
        run_scan(ScanConfig(state="bogus"))
    with pytest.raises(ConfigError):
        run_scan(ScanConfig(w="q1"))
    with pytest.raises(ConfigError):
        run_scan(ScanConfig(method="rk4"))
    with pytest.raises(ConfigError):
        ScanConfig.from_dict({"colour": "red"})


def test_config_json_round_trip(tmp_path):
    cfg = ScanConfig(state="psi+", w="y1", v="z2", params=IsingParams(0.1, 0.9, 2, 1), steps=11)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert ScanConfig.from_json(path) == cfg
    flat = ScanConfig.from_dict({"j_z": 0.1, "b": 0.9, "coupling_multiplier": 2, "steps": 11,
                                 "state": "psi+", "w": "y1", "v": "z2"})
    assert flat == cfg


def test_scan_determinism():
    cfg = ScanConfig(state="psi-", w="x1", v="y1", params=IsingParams(0.37, 1.3), steps=300)
    assert format_csv(run_scan(cfg)) == format_csv(run_scan(cfg))


def test_scan_bch_method_close_to_exact():
    base = dict(params=IsingParams(0.2, 0.3), t_max=0.5, steps=11)
    exact = run_scan(ScanConfig(**base))
    bch = run_scan(ScanConfig(method="bch:25", **base))
    assert max(abs(a.z - b.z) for a, b in zip(exact, bch)) < 1e-12


# -- balancing points ---------------------------------------------------------


def test_balancing_points_repeat_every_other_gap():
    cfg = ScanConfig(params=IsingParams(0.0, 0.5), t_max=20, steps=2001)
    pts = scan_balancing_points(cfg)
    gaps = np.diff(pts)
    # angle 4 b t = 2 t, so the curves repeat every pi in t
    period = math.pi
    # same-direction crossings are exactly one period apart
    assert np.max(np.abs(gaps[:-1] + gaps[1:] - period)) <= 1e-8
    assert np.max(np.abs(gaps[2:] - gaps[:-2])) <= 1e-8
    theta0 = math.acos(2 / 3)
    # roots of 2(1 - cos 2t) = |cos 2t| sit at 2t = +-theta0 mod 2 pi
    assert abs(pts[0] - theta0 / 2) <= 1e-9
    expected = np.where(np.arange(gaps.size) % 2 == 0, period - theta0, theta0)
    assert np.max(np.abs(gaps - expected)) <= 1e-8



# -- identity suite -----------------------------------------------------------


def test_identity_suite_passes_and_is_deterministic():
    a = run_identity_suite(seed=1, sample_count=200)
    assert a.passed, a.lines()
    b = run_identity_suite(seed=1, sample_count=200)
    assert a.max_deviation == b.max_deviation


def test_identity_suite_detects_fault():
    r = run_identity_suite(seed=1, sample_count=50, z_fault=1e-3)
    assert not r.passed and r.failures


def test_identity_suite_rejects_zero_samples():
    with pytest.raises(ValueError):
        run_identity_suite(sample_count=0)


# -- comparison report -------------------------------------------------------


T = np.linspace(0, 5, 201)


@pytest.mark.parametrize("label", BELLS)
def test_report_fidelity_matches_at_zero_coupling(label):
    rep = comparison_report(label, ("x", "x"), 0.0, 0.7, T)
    base = next(c for c in rep["conventions"] if (c["coupling_multiplier"], c["field_multiplier"]) == (1, 1))
    # brute-force oracle on the same grid
    assert np.max(np.abs(np.cos(4 * 0.7 * T) ** 2 - closed_form_curves(T, 0.0, 0.7, "oscillating")["fidelity"])) == 0
    assert base["max_abs_deviation"]["fidelity"] <= 1e-10


def test_report_zz_constants():
    rep = comparison_report("phi-", ("z", "z"), 0.3, 0.5, T)
    assert rep["family"] == "constant"
    for c in rep["conventions"]:
        for q in ("otoc_direct", "fidelity", "bures", "concurrence_trace"):
            assert c["max_abs_deviation"][q] <= 1e-10


def test_report_xz_records_divergence():
    rep = comparison_report("phi+", ("x", "z"), 0.3, 0.5, T)
    fs = rep["conventions"][0]["first_sample"]
    assert fs["otoc_direct"] == pytest.approx(4, abs=1e-12)
    assert fs["otoc_fidelity_branch"] == pytest.approx(0, abs=1e-12)
    assert fs["closed_form_otoc"] == 0


def test_full_report_shape_and_text():
    rep = full_report(0.3, 0.5, np.linspace(0, 2, 70), states=["psi+"], pairs=[("x", "y"), ("y", "z")])
    assert len(rep["cases"]) == 2
    assert set(rep["worst_max_abs_deviation"]) == set(QUANTIFIERS)
    json.dumps(rep)
    text = format_text(rep)
    assert text.count("\n") == 2 + 2 * 4 - 1


def test_report_rejects_unknown_pair():
    with pytest.raises(ValueError):
        comparison_report("phi+", ("x", "i"), 0.3, 0.5, T)


# -- periodicity of the oscillating family ------------------------------------


@pytest.mark.parametrize("pair", [("x", "x"), ("x", "y"), ("y", "y")])
def test_oscillating_family_curves_periodic(pair):
    # commensurate coupling and field so that Re Z = cos(4 j_z t) cos(4 b t) repeats
    times = np.linspace(0, 20, 1001)
    for label in BELLS:
        cfg = ScanConfig(state=label, w=pair[0] + "1", v=pair[1] + "1", params=IsingParams(0.25, 0.5),
                         t_max=20, steps=1001)
        samples = run_scan(cfg)
        curves = {
            "otoc_direct": [s.c_direct for s in samples],
            "fidelity": [s.f for s in samples],
            "bures": [s.bures_d for s in samples],
            "concurrence_trace": [s.concurrence_trace for s in samples],
            "signed_trace_cos": [s.signed_trace_cos for s in samples],
        }
        for name, y in curves.items():
            assert fit_frequency(times, y).is_periodic, (label, pair, name)
