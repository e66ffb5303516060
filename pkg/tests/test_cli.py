import csv
from pathlib import Path

import numpy as np
import pytest

from mopyramid.cli import (
    ExperimentConfig,
    emit_plot_data,
    main,
    resolve_reference,
    run_experiment,
    write_summary,
)
from mopyramid.metrics import Front, read_front
from mopyramid.problems import (
    MobcppParams,
    generate_mobcpp_instance,
    make_problem,
    write_mobcpp_instance,
)


def small_config(tmp_path, method="mo-p3-random", **kw):
    defaults = dict(
        method=method,
        problem="zeromax-onemax",
        size=10,
        budget=500,
        repeats=2,
        seed=0,
        out_dir=str(tmp_path),
    )
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        small_config(tmp_path, method="simulated-annealing")
    with pytest.raises(ValueError):
        small_config(tmp_path, repeats=0)
    with pytest.raises(ValueError):
        small_config(tmp_path, budget=0)


def test_run_experiment_writes_front_files(tmp_path):
    config = small_config(tmp_path)
    records = run_experiment(config)
    assert len(records) == 2
    assert [r.seed for r in records] == [0, 1]
    for record in records:
        path = Path(record.front_path)
        assert path.exists()
        assert read_front(path) == record.front
    # a tiny budget still yields at least one archive point
    tiny = small_config(tmp_path, budget=5, repeats=1, seed=9)
    assert len(run_experiment(tiny)) == 1


def test_run_experiment_deterministic_and_seed_isolated(tmp_path):
    a_dir, b_dir, c_dir = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    for method in ("mo-p3-random", "mo-p3-smart", "nsga2", "moead"):
        ra = run_experiment(small_config(a_dir, method=method, budget=300))
        rb = run_experiment(small_config(b_dir, method=method, budget=300))
        for x, y in zip(ra, rb):
            assert Path(x.front_path).read_bytes() == Path(y.front_path).read_bytes()
            assert x.ffe_final == y.ffe_final
        # parallel workers change nothing but wall time
        rc = run_experiment(small_config(c_dir, method=method, budget=300, workers=2))
        for x, z in zip(ra, rc):
            assert Path(x.front_path).read_bytes() == Path(z.front_path).read_bytes()
            assert x.ffe_final == z.ffe_final


def test_reference_resolution(tmp_path):
    analytic = resolve_reference(make_problem("lotz", size=8))
    assert len(analytic) == 9
    enumerated = resolve_reference(make_problem("maxcut", size=8))
    assert len(enumerated) >= 1
    records = run_experiment(small_config(tmp_path, problem="zeromax-onemax", size=10))
    merged = resolve_reference(_NoFront(40), records)
    assert len(merged) >= 1
    with pytest.raises(ValueError):
        resolve_reference(_NoFront(40), [])


class _NoFront:
    name = "opaque-40"
    num_objectives = 2

    def __init__(self, length):
        self.length = length


def test_summary_and_plot_outputs(tmp_path):
    records = []
    for method in ("mo-p3-random", "mo-p3-smart"):
        for size in (10, 15):
            config = small_config(tmp_path / "runs", method=method, size=size, budget=400)
            recs = run_experiment(config, reference=Front(make_problem(
                "zeromax-onemax", size=size).optimal_front()))
            records.extend(recs)
    summary = tmp_path / "summary.csv"
    write_summary(records, summary)
    rows = read_rows(summary)
    assert rows[0] == ["method", "problem", "l", "repeats", "median_igd", "iqr_igd",
                       "median_ffe_final", "median_wall_ms"]
    assert len(rows) == 1 + 4  # 2 methods x 2 sizes
    files = emit_plot_data(records, tmp_path / "plots")
    names = {f.name for f in files}
    assert "series_mo-p3-random.csv" in names
    assert "ffe_ratio_mo-p3-random_vs_mo-p3-smart.csv" in names
    ratio_rows = read_rows(tmp_path / "plots" / "ffe_ratio_mo-p3-random_vs_mo-p3-smart.csv")
    assert ratio_rows[0] == ["problem", "l", "ffe_ratio"]
    assert len(ratio_rows) == 3  # two sizes, monotone x
    assert int(ratio_rows[1][1]) < int(ratio_rows[2][1])


def test_summary_medians_match_recomputation_from_files(tmp_path):
    config = small_config(tmp_path, repeats=3, budget=400)
    reference = Front(make_problem("zeromax-onemax", size=10).optimal_front())
    records = run_experiment(config, reference=reference)
    summary = tmp_path / "summary.csv"
    write_summary(records, summary)
    rows = read_rows(summary)
    from mopyramid.metrics import igd

    igds = []
    for record in records:
        front = read_front(record.front_path)
        igds.append(igd(front, reference))
    assert float(rows[1][4]) == pytest.approx(float(np.median(igds)))


def test_main_end_to_end(tmp_path, capsys):
    out = tmp_path / "exp"
    rc = main([
        "--method", "mo-p3-random,nsga2",
        "--problem", "zeromax-onemax",
        "--size", "10",
        "--budget", "400",
        "--repeats", "2",
        "--seed", "3",
        "--out", str(out),
    ])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "summary" in captured
    assert (out / "summary.csv").exists()
    rows = read_rows(out / "summary.csv")
    assert len(rows) == 3
    fronts = sorted((out / "zeromax-onemax-10").glob("front_*.txt"))
    assert len(fronts) == 4


def test_main_with_mobcpp_instance(tmp_path):
    inst = generate_mobcpp_instance(
        MobcppParams(halls=1, resources=2, commodities=6, recipes=12), seed=3
    )
    path = tmp_path / "plant.txt"
    write_mobcpp_instance(inst, path)
    out = tmp_path / "exp"
    rc = main([
        "--method", "mo-p3-random",
        "--problem", "mobcpp",
        "--instance", str(path),
        "--budget", "2000",
        "--repeats", "1",
        "--out", str(out),
    ])
    assert rc == 0
    summary = read_rows(out / "summary.csv")
    assert len(summary) == 2
    # pseudo-optimal reference makes the single method's own best runs IGD-comparable
    assert summary[1][0] == "mo-p3-random"
