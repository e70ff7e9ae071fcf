import time

import numpy as np
import pytest

from irsec.channel import build_channels
from irsec.cli import (CSV_HEADER, ExperimentConfig, ResultRow, dbm_to_watt,
                       load_config, main, run_experiment, write_csv)
from irsec.errors import ParseError, ValidationError
from irsec.geometry import ScenarioTemplate, compute_angles, random_scenario
from irsec.link import compute_all_metrics
from irsec.strategy import SchedulePolicy, enumerate_permutations, select_best_rate

TOY = ScenarioTemplate(num_ue=2, num_irs=2, m_bs=8, m_ue=2, m_mn=2, irs_side=8)


def toy_config(**kw):
    defaults = dict(template=TOY, seeds=(1, 2), tau_grid=(1, 2, 3),
                    set_sizes=(1, 2), methods=("best_rate", "uniform_irs", "random"),
                    delta=None, r_min=0.0, output_path="out.csv")
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def write(tmp_path, text):
    p = tmp_path / "exp.cfg"
    p.write_text(text)
    return str(p)


def test_empty_config_gives_reference_defaults(tmp_path):
    cfg = load_config(write(tmp_path, ""))
    t = cfg.template
    assert (t.num_ue, t.num_irs, t.m_bs, t.m_ue, t.m_mn) == (4, 4, 32, 4, 4)
    assert t.irs_side == 64
    assert t.wavelength == pytest.approx(3e-3)
    assert t.bandwidth == pytest.approx(1e9)
    assert t.tx_power == pytest.approx(1.0)  # 30 dBm
    assert t.noise_psd == pytest.approx(dbm_to_watt(-174.0))
    assert t.noise_psd * t.bandwidth == pytest.approx(3.981071705534985e-12)
    assert cfg.set_sizes == (5, 10, 20)
    assert cfg.tau_grid == tuple(range(1, 31))
    assert cfg.r_min == 0.0
    assert cfg.resolved_delta() == 4
    assert cfg.methods == ("best_rate", "uniform_irs", "random")


def test_missing_config_path_is_default_experiment():
    assert load_config(None) == load_config(None)


def test_config_overrides_and_units(tmp_path):
    cfg = load_config(write(tmp_path, """
[scenario]
num_ue = 2
num_irs = 3
irs_side = 16
wavelength_mm = 1.5
bandwidth_ghz = 0.5
tx_power_dbm = 20
noise_psd_dbm_hz = -170
victim = 2

[sweep]
seeds = 3,5,9
tau = 1..4
sizes = 2,4
methods = best_rate,random
delta = 2
r_min = 1e6

[output]
path = sweep.csv
"""))
    t = cfg.template
    assert (t.num_ue, t.num_irs, t.irs_side) == (2, 3, 16)
    assert t.wavelength == pytest.approx(1.5e-3)
    assert t.bandwidth == pytest.approx(5e8)
    assert t.tx_power == pytest.approx(0.1)
    assert t.victim_index == 1  # 1-based on disk
    assert cfg.seeds == (3, 5, 9)
    assert cfg.tau_grid == (1, 2, 3, 4)
    assert cfg.set_sizes == (2, 4)
    assert cfg.methods == ("best_rate", "random")
    assert cfg.delta == 2 and cfg.resolved_delta() == 2
    assert cfg.r_min == 1e6
    assert cfg.output_path == "sweep.csv"


def test_config_validation_errors(tmp_path):
    with pytest.raises(ValidationError):
        load_config(write(tmp_path, "[scenario]\nbandwidth_ghz = -1\n"))
    with pytest.raises(ValidationError):
        load_config(write(tmp_path, "[scenario]\nnosuchkey = 3\n"))
    with pytest.raises(ValidationError):
        load_config(write(tmp_path, "[sweep]\nsizes = 99\n"))  # > |P| = 24
    with pytest.raises(ValidationError):
        load_config(write(tmp_path, "[sweep]\nmethods = alphabetical\n"))
    with pytest.raises(ParseError):
        load_config(write(tmp_path, "[sweep]\ntau = soon\n"))
    with pytest.raises(ParseError):
        load_config(write(tmp_path, "no section header\n"))
    with pytest.raises(ParseError):
        load_config(str(tmp_path / "missing.cfg"))


def test_write_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv([], str(path))
    assert path.read_text() == CSV_HEADER + "\n"


def test_write_csv_round_trip(tmp_path):
    row = ResultRow(seed=3, method="random", set_size=10, tau=7, ue=2,
                    avg_rate=6.123456789e9, sr_static=1.5e9, sr_dynamic=2.25e9,
                    sr_combined=1.5e9, max_usage=0.3, feasible=True)
    path = tmp_path / "one.csv"
    write_csv([row], str(path))
    header, line = path.read_text().strip().split("\n")
    assert header == CSV_HEADER
    fields = line.split(",")
    assert fields[:5] == ["3", "random", "10", "7", "2"]
    assert float(fields[5]) == pytest.approx(row.avg_rate, rel=1e-8)
    assert fields[10] == "true"


def test_run_experiment_deterministic_bytes(tmp_path):
    cfg = toy_config()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_experiment(cfg), str(a))
    write_csv(run_experiment(cfg), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_run_experiment_rows_cover_grid():
    cfg = toy_config()
    rows = run_experiment(cfg)
    # (2 seeds) x (3 methods) x (2 sizes) x (3 taus) x (2 ues)
    assert len(rows) == 2 * 3 * 2 * 3 * 2
    assert all(r.feasible for r in rows)  # r_min = 0
    keys = [(r.seed, r.method, r.set_size, r.tau, r.ue) for r in rows]
    assert keys == sorted(keys)
    assert all(np.isfinite([r.avg_rate, r.sr_static, r.sr_dynamic,
                            r.sr_combined, r.max_usage]).all() for r in rows)


def test_run_experiment_cross_checks_best_rate_size_one():
    cfg = toy_config(methods=("best_rate",), set_sizes=(1,), seeds=(4,))
    rows = run_experiment(cfg)
    s = random_scenario(4, TOY)
    ang = compute_angles(s)
    ch = build_channels(s, ang)
    pm = compute_all_metrics(s, ch, ang, enumerate_permutations(2, 2))
    top = select_best_rate(pm, 1).members[0]
    i = pm.index_of(top)
    for r in rows:
        assert r.avg_rate == pytest.approx(
            r.tau / (r.tau + 1) * pm.rate[i, r.ue - 1], rel=1e-12)


def test_run_experiment_smoke_under_one_second():
    start = time.perf_counter()
    run_experiment(toy_config(seeds=(7,)))
    assert time.perf_counter() - start < 1.0


def test_main_exit_codes(tmp_path):
    out = tmp_path / "res.csv"
    cfg = tmp_path / "toy.cfg"
    cfg.write_text("""
[scenario]
num_ue = 2
num_irs = 2
m_bs = 8
m_ue = 2
m_mn = 2
irs_side = 8

[sweep]
seeds = 1..2
tau = 1..3
sizes = 1,2
""")
    assert main(["--config", str(cfg), "--output", str(out)]) == 0
    assert out.read_text().startswith(CSV_HEADER)
    # flags override config
    assert main(["--config", str(cfg), "--output", str(out), "--seeds", "5",
                 "--tau", "2,4", "--sizes", "2", "--methods", "random"]) == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 1 + 1 * 1 * 1 * 2 * 2

    bad = tmp_path / "bad.cfg"
    bad.write_text("[scenario]\nbandwidth_ghz = -2\n")
    assert main(["--config", str(bad)]) == 1

    infeasible = tmp_path / "inf.cfg"
    infeasible.write_text(cfg.read_text() + "r_min = 1e30\n")
    assert main(["--config", str(infeasible), "--output", str(out)]) == 2
