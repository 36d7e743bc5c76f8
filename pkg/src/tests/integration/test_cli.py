"""End-to-end tests of the command-line tool, run in-process."""

import json

import numpy as np
import pandas as pd
import pytest

from centric_kit.cli import build_parser
from centric_kit.cli.experiment import build_experiment
from centric_kit.config import FULL_SCALE_N
from centric_kit.core.io import read_dataset_csv, write_json
from centric_kit.core.types import GenKind, GenSpec
from centric_kit.main import main
from centric_kit.services.experiment import default_experiment_config

pytestmark = pytest.mark.integration


def generate_blobs(path, k=2, n_per=20, seed=2):
    code = main(["generate", "--kind", "gaussian-blobs", "--k", str(k), "--n-per", str(n_per),
                 "--dim", "2", "--spread", "1", "--separation", "10", "--seed", str(seed), "-o", str(path)])
    assert code == 0
    return path


class TestGenerate:
    def test_two_squares(self, tmp_path):
        out = tmp_path / "data.csv"
        assert main(["generate", "--kind", "two-squares-3d", "--n", "1000", "--edge", "1", "--seed", "7", "-o", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["x1", "x2", "x3", "label"]
        assert len(frame) == 1000
        assert set(frame["label"]) == {0, 1}
        sidecar = json.loads((tmp_path / "data.csv.provenance.json").read_text())
        assert sidecar["origin"]["generator"]["seed"] == 7

    def test_blobs_to_stdout(self, capsys):
        assert main(["generate", "--kind", "gaussian-blobs", "--k", "3", "--n-per", "4", "--dim", "2", "--seed", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x1,x2,label"
        assert len(lines) == 13

    def test_same_flags_same_file(self, tmp_path):
        a = generate_blobs(tmp_path / "a.csv")
        b = generate_blobs(tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_spec(self, tmp_path):
        assert main(["generate", "--kind", "two-squares-3d", "--n", "1", "-o", str(tmp_path / "x.csv")]) == 1

    def test_mirrored_squares(self, tmp_path):
        out = tmp_path / "mirrored.csv"
        assert main(["generate", "--kind", "two-squares-3d", "--n", "100", "--mirrored", "-o", str(out)]) == 0
        sidecar = json.loads((tmp_path / "mirrored.csv.provenance.json").read_text())
        assert sidecar["origin"]["generator"]["mirrored"] is True
        assert main(["generate", "--kind", "two-squares-3d", "--n", "101", "--mirrored"]) == 1

    def test_unknown_kind(self):
        assert main(["generate", "--kind", "spirals"]) == 1


class TestTransform:
    def test_gamma_plus_plus_with_unit_lambda_is_identity(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        out = tmp_path / "moved.csv"
        assert main(["transform", str(data), "--kind", "gamma_plus_plus", "--cluster", "0",
                     "--subset", "0", "1", "2", "--lambda", "1", "-o", str(out)]) == 0
        before, _ = read_dataset_csv(data)
        after, labels = read_dataset_csv(out)
        assert np.array_equal(before.points, after.points)
        assert labels is not None

    def test_pipeline_from_config(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        specs = [{"kind": "centric_set", "subset": [2 * i, 2 * i + 1], "lambda": 0.5} for i in range(5)]
        write_json(specs, tmp_path / "pipeline.json")
        out = tmp_path / "moved.csv"
        assert main(["transform", str(data), "--config", str(tmp_path / "pipeline.json"), "-o", str(out)]) == 0

        provenance = json.loads((tmp_path / "moved.csv.provenance.json").read_text())
        assert len(provenance["transforms"]) == 5
        assert "generator" in provenance["origin"]

    def test_gamma_star_moves_cluster_toward_centroid(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        out = tmp_path / "moved.csv"
        assert main(["transform", str(data), "--kind", "gamma_star", "--cluster", "1", "--lambda", "0.5", "-o", str(out)]) == 0
        before, labels = read_dataset_csv(data)
        after, _ = read_dataset_csv(out)
        members = labels.members(1)
        spread_before = np.linalg.norm(before.points[members] - before.points[members].mean(axis=0), axis=1)
        spread_after = np.linalg.norm(after.points[members] - after.points[members].mean(axis=0), axis=1)
        assert np.allclose(spread_after, 0.5 * spread_before)

    def test_subset_outside_cluster(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        code = main(["transform", str(data), "--kind", "gamma_plus_plus", "--cluster", "0",
                     "--subset", "0", "39", "--lambda", "0.5", "-o", str(tmp_path / "x.csv")])
        assert code == 1

    def test_missing_parameters(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        assert main(["transform", str(data), "--kind", "gamma_plus_plus", "--cluster", "0", "--lambda", "0.5"]) == 1


class TestCluster:
    def test_recovers_generating_labels(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        out = tmp_path / "result.json"
        assert main(["cluster", str(data), "--k", "2", "--reference", str(data), "-o", str(out)]) == 0
        result = json.loads(out.read_text())
        assert result["clustering_error"] == 0
        assert result["method"] == "lloyd"
        assert (tmp_path / "result.labels.csv").exists()

    def test_oracle_beats_or_matches_lloyd(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv", n_per=6)
        assert main(["cluster", str(data), "--k", "2", "--ideal", "-o", str(tmp_path / "ideal.json")]) == 0
        assert main(["cluster", str(data), "--k", "2", "-o", str(tmp_path / "lloyd.json")]) == 0
        ideal = json.loads((tmp_path / "ideal.json").read_text())
        lloyd = json.loads((tmp_path / "lloyd.json").read_text())
        assert ideal["cost"] <= lloyd["cost"] + 1e-12

    def test_single_cluster(self, tmp_path, capsys):
        data = generate_blobs(tmp_path / "data.csv")
        assert main(["cluster", str(data), "--k", "1"]) == 0
        assert set(json.loads(capsys.readouterr().out)["labels"]) == {0}

    def test_oracle_budget_exceeded(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        assert main(["cluster", str(data), "--k", "3", "--ideal"]) == 1

    def test_k_above_n(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv", n_per=2)
        assert main(["cluster", str(data), "--k", "9"]) == 1


class TestVerify:
    def test_random_suite(self, tmp_path):
        out = tmp_path / "suite.json"
        code = main(["verify", "--random-suite", "--instances", "6", "--n", "8", "--k", "2",
                     "--lambda", "0.5", "--seed", "3", "-o", str(out)])
        summary = json.loads(out.read_text())
        assert code == 0
        assert summary["violated"] == 0
        assert summary["suite"]["instances"] == 6

    def test_single_dataset(self, tmp_path, capsys):
        data = generate_blobs(tmp_path / "data.csv", n_per=6, seed=11)
        assert main(["verify", str(data), "--k", "2", "--subset", "0", "1", "2", "--lambda", "0.5", "--check", "both"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["violated"] == 0
        assert len(summary["verdicts"]) == 2

    def test_violations_exit_with_two(self, tmp_path, mocker):
        from centric_kit.core.types import SuiteSummary

        mocker.patch("centric_kit.cli.verify.run_random_suite", return_value=SuiteSummary(violated=1))
        assert main(["verify", "--random-suite", "--instances", "1", "-o", str(tmp_path / "s.json")]) == 2

    def test_dataset_and_suite_are_exclusive(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv", n_per=4)
        assert main(["verify", str(data), "--random-suite"]) == 1

    def test_budget_exceeded(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv")
        assert main(["verify", str(data), "--k", "3", "--subset", "0", "--lambda", "0.5"]) == 1


class TestExperiment:
    @pytest.fixture
    def experiment_config(self, tmp_path):
        cfg = default_experiment_config(repetitions=2, seed=9)
        cfg = cfg.model_copy(update={
            "generator": cfg.generator.model_copy(update={"n": 60}),
            "lloyd": cfg.lloyd.model_copy(update={"restarts": 2}),
        })
        path = tmp_path / "experiment.json"
        write_json(cfg.model_dump(mode="json", by_alias=True), path)
        return path

    def test_report_is_byte_identical_across_thread_counts(self, tmp_path, experiment_config, mocker):
        worker_count = mocker.patch("centric_kit.config.config.AppConfig.worker_count", return_value=1)
        assert main(["experiment", "--config", str(experiment_config), "-o", str(tmp_path / "one.json")]) == 0
        worker_count.return_value = 4
        assert main(["experiment", "--config", str(experiment_config), "-o", str(tmp_path / "four.json")]) == 0

        assert (tmp_path / "one.json").read_bytes() == (tmp_path / "four.json").read_bytes()
        report = json.loads((tmp_path / "one.json").read_text())
        assert set(report["arms"]) == {"gamma", "gamma_plus_plus"}
        assert "wall_time_seconds" not in report
        assert "wall_time_seconds" in json.loads((tmp_path / "one.timing.json").read_text())
        assert len(pd.read_csv(tmp_path / "one.records.csv")) == 4

    def test_repetitions_override(self, tmp_path, experiment_config):
        out = tmp_path / "report.json"
        assert main(["experiment", "--config", str(experiment_config), "--repetitions", "1", "-o", str(out)]) == 0
        assert len(json.loads(out.read_text())["records"]) == 2

    def test_zero_repetitions_is_rejected(self, tmp_path, experiment_config):
        assert main(["experiment", "--repetitions", "0", "-o", str(tmp_path / "a.json")]) == 1
        assert main(["experiment", "--config", str(experiment_config), "--repetitions", "0",
                     "-o", str(tmp_path / "b.json")]) == 1
        assert not (tmp_path / "a.json").exists()

    def test_full_scale_applies_to_config_files(self, experiment_config):
        args = build_parser().parse_args(["experiment", "--config", str(experiment_config), "--full-scale"])
        cfg = build_experiment(args)
        assert cfg.generator.n == FULL_SCALE_N
        assert cfg.generator.mirrored
        assert cfg.repetitions == 2

    def test_full_scale_needs_two_squares(self, tmp_path):
        cfg = default_experiment_config(repetitions=1)
        cfg = cfg.model_copy(update={"generator": GenSpec(kind=GenKind.GAUSSIAN_BLOBS, k=2, n_per=10)})
        path = tmp_path / "blobs.json"
        write_json(cfg.model_dump(mode="json", by_alias=True), path)
        assert main(["experiment", "--config", str(path), "--full-scale"]) == 1


class TestPlot:
    def test_writes_svg(self, tmp_path):
        out = tmp_path / "plot.svg"
        assert main(["generate", "--kind", "two-squares-3d", "--n", "80", "-o", str(tmp_path / "sq.csv")]) == 0
        assert main(["plot", str(tmp_path / "sq.csv"), "--title", "squares", "-o", str(out)]) == 0
        assert out.read_bytes().lstrip().startswith(b"<?xml")

    def test_needs_out(self, tmp_path):
        data = generate_blobs(tmp_path / "data.csv", n_per=3)
        assert main(["plot", str(data)]) == 1


def test_missing_subcommand():
    assert main([]) == 1
