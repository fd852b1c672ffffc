"""Tests für Experiment-Runner, Versuchs-Worker und Validierung"""

import csv
import json

import pytest

from core.exceptions import ConfigError, TrialCancelledException
from core.graph import generate
from core.workers import TrialJob, TrialWorker
from experiments.runner import (
    ExperimentConfig, aggregate_trials, build_instance, cmd_cost, cmd_detect, cmd_extract, cmd_graph_gen, cmd_oracle,
)
from utils.validators import validate_cost_params, validate_experiment_config, validate_graph_file, validate_seed


def _tree_config(**kwargs):
    data = {"variant": "even", "k": 2, "n": 12, "generator": "tree", "trials": 3, "K_override": 4, "seed": 5}
    data.update(kwargs)
    return ExperimentConfig.from_dict(data)


def test_detect_on_tree_never_rejects():
    report = cmd_detect(_tree_config())
    assert report.aggregates["trials"] == 3
    assert report.aggregates["rejections"] == 0
    assert report.aggregates["wilson_low"] == 0.0
    assert all(r["certificate"] == "" for r in report.records)


def test_detect_is_reproducible_across_worker_counts():
    single = cmd_detect(_tree_config(plant=4, trials=4))
    parallel = cmd_detect(_tree_config(plant=4, trials=4, max_workers=3))
    assert single.records == parallel.records
    assert parallel.extra["worker"]["successful_trials"] == 4


def test_aggregates_recompute_from_records():
    report = cmd_detect(_tree_config(plant=4, trials=5, K_override=20))
    assert aggregate_trials(report.records) == report.aggregates
    assert [r["trial"] for r in report.records] == list(range(5))


def test_detect_writes_json_and_csv(tmp_path):
    json_path = tmp_path / "out" / "detect.json"
    cmd_detect(_tree_config(output=str(json_path)))
    data = json.loads(json_path.read_text(encoding="utf-8"))
    assert data["command"] == "detect"
    assert data["params"]["overrides"]["K"] is True
    assert len(data["records"]) == 3

    csv_path = tmp_path / "detect.csv"
    cmd_detect(_tree_config(output=str(csv_path), format="csv"))
    with open(csv_path, encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert [row["verdict"] for row in rows] == ["accept"] * 3


def test_detect_from_graph_file(edge_list_file):
    path = edge_list_file(generate("heawood", 14))
    report = cmd_detect(_tree_config(graph_file=path, n=1))
    assert report.config["n"] == 14
    assert report.extra["graph"]["source"] == path
    assert report.aggregates["rejections"] == 0


def test_invalid_detect_config_raises():
    with pytest.raises(ConfigError):
        cmd_detect(_tree_config(k=1))
    with pytest.raises(ConfigError):
        cmd_detect(_tree_config(epsilon=1.5))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"variant": "even", "colour": 3})


def test_config_merge_prefers_set_values():
    base = _tree_config()
    merged = base.merged({"k": 3, "trials": None})
    assert merged.k == 3 and merged.trials == 3


def test_build_instance_plants_cycle():
    g, info = build_instance(_tree_config(plant=5, heavy_hub=True))
    assert len(info["planted_cycle"]) == 5
    assert info["hub"] == info["planted_cycle"][0]
    assert info["m"] == g.num_edges


def test_graph_gen_and_oracle(tmp_path):
    path = str(tmp_path / "c6.txt")
    g = cmd_graph_gen("cycle", 6, output=path)
    assert g.num_edges == 6
    assert cmd_oracle("girth", g).extra["girth"] == 6
    assert cmd_oracle("girth", generate("path", 5)).extra["acyclic"] is True
    assert cmd_oracle("find", g, length=6).extra["cycle"] == [0, 1, 2, 3, 4, 5]
    assert cmd_oracle("validate", g, length=6, cycle=[0, 1, 2, 3, 4, 5]).extra["valid"] is True
    with pytest.raises(ConfigError):
        cmd_oracle("find", g)
    with pytest.raises(ConfigError):
        cmd_oracle("validate", g)


def test_extract_k45_report(tmp_path):
    path = tmp_path / "extract.json"
    report = cmd_extract("k45", output=str(path))
    assert report.extra["witness"]["cycle"] == [0, 4, 9, 5]
    assert report.records == [{"v": 9, "level": 1, "W0_size": 5, "bound": 4, "holds": False}]
    assert json.loads(path.read_text(encoding="utf-8"))["nonempty_core"] == [9]


def test_extract_random_rejects_bad_size():
    with pytest.raises(ConfigError):
        cmd_extract("random", n=4, k=2)


def test_cost_report_csv(tmp_path):
    path = tmp_path / "cost.csv"
    report = cmd_cost(2, (10, 14), output=str(path))
    with open(path, encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert [int(row["n"]) for row in rows] == [2 ** e for e in range(10, 15)]
    assert report.extra["expected_exponent"] == 0.25
    assert report.extra["crossover_threshold"] is not None
    assert report.extra["measured"] is None


def test_cost_with_measured_values():
    report = cmd_cost(2, (10, 12), measured_T=400.0, measured_tau=50.0, measured_n=2048, fmt="json")
    assert report.extra["measured"]["n"] == 2048
    assert report.extra["measured"]["tau_source"] == "measured"


def test_cost_rejects_unknown_constant():
    with pytest.raises(ConfigError):
        cmd_cost(2, (10, 12), constants={"c_magic": 1.0})


def test_worker_statuses():
    worker = TrialWorker()

    def cancelled(seed):
        raise TrialCancelledException("stop")

    def broken(seed):
        raise ValueError("kaputt")

    jobs = [TrialJob(0, 1, lambda seed: seed * 2), TrialJob(1, 2, cancelled), TrialJob(2, 3, broken)]
    results = worker.run_all(jobs)
    assert [r.status for r in results] == ["done", "cancelled", "error"]
    assert results[0].value == 2
    assert isinstance(results[2].error, ValueError)
    assert worker.get_statistics() == {
        "processed_trials": 3, "successful_trials": 1, "cancelled_trials": 1, "error_trials": 1,
    }


def test_worker_cancel_skips_remaining_jobs():
    progress = []
    worker = TrialWorker(progress_callback=lambda done, total: progress.append((done, total)))

    def stop(seed):
        worker.cancel()
        return seed

    results = worker.run_all([TrialJob(0, 0, stop), TrialJob(1, 1, lambda s: s), TrialJob(2, 2, lambda s: s)])
    assert [r.status for r in results] == ["done", "cancelled", "cancelled"]
    assert progress[-1] == (3, 3)


def test_validators():
    assert validate_seed(3) == (True, "")
    assert not validate_seed(-1)[0]
    assert not validate_seed(True)[0]
    assert not validate_graph_file("")[0]
    assert validate_cost_params({"c_amp": 2.0}) == (True, "")
    assert not validate_cost_params({"c_amp": 0.0})[0]
    ok, _ = validate_experiment_config(_tree_config().to_dict())
    assert ok
    bad = _tree_config().to_dict()
    bad["format"] = "xml"
    assert not validate_experiment_config(bad)[0]
    odd = _tree_config(variant="odd", k=1).to_dict()
    assert validate_experiment_config(odd)[0]
