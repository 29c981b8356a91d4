import csv
import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disksever import Instance, gen_snake
from disksever.harness import (ExperimentConfig, FamilySpec, calibrate_constants, derive_seed,
                               loglog_slope, read_instance, run_experiment1,
                               run_snake_experiment, summarize, write_instance)
from disksever.harness.experiments import ROW_FIELDS, ResultRow, read_rows, write_rows
from disksever.harness.io import FormatError, dumps_instance, loads_instance
from disksever.harness.svg import scatter_svg

finite = st.floats(-1e12, 1e12, allow_nan=False, allow_infinity=False)
positive = st.floats(1e-9, 1e9, allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite, positive), max_size=20))
def test_instance_text_round_trip_is_exact(disks):
    centers = np.array([d[:2] for d in disks], float).reshape(-1, 2)
    inst = Instance(centers, [d[2] for d in disks], {"family": "custom", "note": "x"})
    back = loads_instance(dumps_instance(inst))
    assert np.array_equal(back.centers, inst.centers)
    assert np.array_equal(back.radii, inst.radii)
    assert back.provenance == inst.provenance


def test_instance_file_round_trip(tmp_path):
    inst = gen_snake(5)
    path = tmp_path / "snake.csv"
    write_instance(path, inst)
    text = path.read_bytes()
    assert b"\r" not in text and text.startswith(b"# family: snake\n")
    back = read_instance(path)
    assert back.provenance == {"family": "snake", "q": 5}
    assert np.array_equal(back.centers, inst.centers)


@pytest.mark.parametrize("text", [
    "",
    "x,y,r\n1,2,3\n",
    "id,x,y,r\n0,1,2\n",
    "id,x,y,r\n0,1,2,abc\n",
    "id,x,y,r\n1,0,0,1\n",
    "id,x,y,r\n0,0,0,-1\n",
    "# params: {bad json\nid,x,y,r\n",
    "id,x,y,r\n0,0,0,1,9\n",
])
def test_malformed_instances(text):
    with pytest.raises(FormatError):
        loads_instance(text)


def test_derive_seed_is_stable():
    assert derive_seed(0, 1, 2, 3, 4) == derive_seed(0, 1, 2, 3, 4)
    seeds = {derive_seed(0, r, i, k, p) for r in (0, 1) for i in range(3)
             for k in (1, 2) for p in range(3)}
    assert len(seeds) == 36


def test_config_validation_and_ranges(tmp_path):
    cfg = ExperimentConfig.from_dict({"n_values": {"start": 100, "stop": 300, "step": 100}})
    assert cfg.n_values == [100, 200, 300]
    for bad in ({"reduce": "max"}, {"algorithms": ["nope"]}, {"k_values": [0]},
                {"repetitions": 0}, {"experiment": "x"}, {"unknown": 1}):
        with pytest.raises(ValueError):
            ExperimentConfig.from_dict(bad)
    path = tmp_path / "c.yaml"
    path.write_text("experiment: snake\nq_values: [3, 5]\nk_values: [1, 2]\n")
    assert ExperimentConfig.load(path).q_values == [3, 5]
    path.write_text("[1, 2]\n")
    with pytest.raises(ValueError):
        ExperimentConfig.load(path)


def small_exp1(tmp_path, name="exp.csv"):
    return ExperimentConfig(n_values=[80, 160], L=8.0, algorithms=["random", "axis", "centerpoint"],
                            k_values=[1, 4], repetitions=2, seed=11,
                            output=str(tmp_path / name))


def test_experiment1_rows_and_determinism(tmp_path):
    cfg = small_exp1(tmp_path)
    rows = run_experiment1(cfg)
    # random + centerpoint: 2 k x 2 reps; axis: one row, per instance
    assert len(rows) == 2 * (4 + 4 + 1)
    first = (tmp_path / "exp.csv").read_bytes()
    run_experiment1(small_exp1(tmp_path, "again.csv"))
    assert (tmp_path / "again.csv").read_bytes() == first
    with open(tmp_path / "exp.csv", newline="") as fh:
        header = next(csv.reader(fh))
    assert header == ROW_FIELDS
    back = read_rows(tmp_path / "exp.csv")
    assert [r.size for r in back] == [r.size for r in rows]
    ET.fromstring((tmp_path / "exp.svg").read_text())


def test_threads_do_not_change_output(tmp_path, monkeypatch):
    run_experiment1(small_exp1(tmp_path, "one.csv"))
    monkeypatch.setenv("DISKSEVER_THREADS", "3")
    run_experiment1(small_exp1(tmp_path, "three.csv"))
    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "three.csv").read_bytes()


def test_timings_column(tmp_path):
    cfg = small_exp1(tmp_path)
    cfg.timings = True
    cfg.algorithms = ["axis"]
    rows = run_experiment1(cfg)
    assert all(r.wall_ms >= 0 for r in rows)


def test_snake_min_of_k_monotone(tmp_path):
    cfg = ExperimentConfig(experiment="snake", q_values=[5, 9, 13], k_values=[1, 3, 9],
                           repetitions=4, reduce="min", nested_seeds=True,
                           algorithms=["random", "optimal"])
    rows = run_snake_experiment(cfg)
    summary = summarize(rows)
    assert [m for m, _, _ in summary[("optimal", 0)]] == [16, 48, 96]
    assert all(v == 1 for _, v, _ in summary[("optimal", 0)])
    for i in range(3):
        means = [summary[("random", k)][i][1] for k in (1, 3, 9)]
        assert means == sorted(means, reverse=True)


def test_summarize_and_slope():
    rows = [ResultRow(0, 10, 100, "random", 1, 0, 10.0, 1, 1),
            ResultRow(0, 10, 100, "random", 1, 1, 14.0, 1, 1),
            ResultRow(1, 40, 400, "random", 1, 0, 24.0, 1, 1)]
    s = summarize(rows)
    assert s[("random", 1)] == [(100, 12.0, 4.0), (400, 24.0, 0.0)]
    assert math.isclose(loglog_slope([(1, 3), (100, 30)]), 0.5)
    with pytest.raises(ValueError):
        loglog_slope([(1, 1)])


def test_write_rows_uses_na(tmp_path):
    path = tmp_path / "r.csv"
    write_rows(path, [ResultRow(0, 1, 0, "axis", 0, 0, 0.0, 0, 0)])
    assert path.read_text().splitlines()[1].endswith(",NA")


def test_svg_is_wellformed():
    svg = scatter_svg({"a <b>": [(10, 1), (1000, 30)], "empty": []}, title="t&t")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    ET.fromstring(scatter_svg({}, log=False))
    ET.fromstring(scatter_svg({"flat": [(5, 5), (5, 5)]}))


def test_calibration_record(tmp_path):
    fams = [FamilySpec("general", "random", [40, 80], L=8.0, instances_per_n=2, trials=11),
            FamilySpec("disjoint", "disjoint", [30], L=0.0, bound="disjoint", trials=11)]
    path = tmp_path / "cal.json"
    rec = calibrate_constants(fams, seed=4, path=path)
    again = calibrate_constants(fams, seed=4)
    assert rec["fingerprint"] == again["fingerprint"]
    assert rec["constants"] == again["constants"]
    stored = json.loads(path.read_text())
    assert set(stored["constants"]) == {"general", "disjoint"}
    samples = stored["families"]["general"]["samples"]
    ratio = max(med / math.sqrt((m + n) * math.log(n)) for n, m, med in samples)
    assert math.isclose(ratio, rec["constants"]["general"])
