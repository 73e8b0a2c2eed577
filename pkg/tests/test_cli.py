"""Command-line interface: exit codes, artifacts, determinism."""

import json
import os

import numpy as np
import pytest

from speechcut.audio import AudioClip, load_wav, save_wav
from speechcut.cli import main

from fixtures import fixture_audio_for, transcript_document


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    doc = transcript_document("routine")
    with open("t.json", "w") as fh:
        json.dump(doc, fh)
    clip = AudioClip(samples=fixture_audio_for(doc), sample_rate=16000)
    save_wav(clip, "a.wav")
    return tmp_path


def run(*argv):
    return main(list(argv))


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, workdir):
        assert run("shorten", "--transcript", "t.json", "--nope") == 1

    def test_invalid_target_is_usage_error(self, workdir, capsys):
        code = run("shorten", "--transcript", "t.json", "--target", "33")
        assert code == 1
        assert "0,15,25,50,75" in capsys.readouterr().err.replace("', '", ",").replace("'", "")

    def test_missing_file_is_usage_error(self, workdir):
        assert run("shorten", "--transcript", "missing.json", "--target", "25") == 1

    def test_malformed_transcript_is_runtime_error(self, workdir, capsys):
        with open("bad.json", "w") as fh:
            fh.write("{nope")
        code = run("ingest", "--transcript", "bad.json")
        assert code == 2
        assert "ingest" in capsys.readouterr().err

    def test_success_is_zero(self, workdir):
        assert run("ingest", "--transcript", "t.json", "--out", "norm.json") == 0
        assert os.path.exists("norm.json")


class TestShorten:
    def test_writes_result_document(self, workdir):
        code = run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7", "--out", "result.json",
        )
        assert code == 0
        doc = json.load(open("result.json"))
        assert doc["merged_script"]["ops"]
        assert doc["stats"]["compression"] > 0

    def test_golden_stability_across_runs(self, workdir):
        args = [
            "shorten", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7",
        ]
        assert run(*args, "--out", "r1.json") == 0
        assert run(*args, "--out", "r2.json") == 0
        assert open("r1.json").read() == open("r2.json").read()

    def test_override_flag(self, workdir):
        code = run(
            "shorten", "--transcript", "t.json", "--target", "50",
            "--override", "1=15", "--gateway", "mock", "--out", "r.json",
        )
        assert code == 0
        doc = json.load(open("r.json"))
        assert doc["targets"] == [0.5, 0.15, 0.5]

    def test_bad_override_usage_error(self, workdir):
        assert (
            run(
                "shorten", "--transcript", "t.json", "--target", "50",
                "--override", "1=33", "--gateway", "mock",
            )
            == 1
        )

    def test_inputs_not_mutated(self, workdir):
        before = open("t.json").read()
        run("shorten", "--transcript", "t.json", "--target", "25", "--gateway", "mock", "--out", "r.json")
        assert open("t.json").read() == before


class TestScoreClassifyOutline:
    def test_score_report(self, workdir):
        code = run(
            "score", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7", "--out", "scores.json",
        )
        assert code == 0
        doc = json.load(open("scores.json"))
        seg = doc["segments"][0]
        assert len(seg["candidates"]) == 25
        first = seg["candidates"][0]
        assert {"e_comp", "e_edits", "e_len", "e_cov", "total", "num_ops"} <= set(first)

    def test_classify_counts(self, workdir):
        code = run(
            "classify", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7", "--out", "classified.json",
        )
        assert code == 0
        doc = json.load(open("classified.json"))
        assert sum(doc["type_counts"].values()) == len(doc["script"]["ops"])
        assert all(op["edit_type"] for op in doc["script"]["ops"])

    def test_outline_document(self, workdir):
        code = run(
            "outline", "--transcript", "t.json", "--gateway", "mock",
            "--purpose", "general audience", "--out", "outline.json",
        )
        assert code == 0
        doc = json.load(open("outline.json"))
        assert doc["groups"]
        assert all("retention" in b for g in doc["groups"] for b in g["bits"])


class TestPlanAndRender:
    def test_plan_then_render(self, workdir):
        assert (
            run(
                "plan", "--transcript", "t.json", "--target", "25",
                "--gateway", "mock", "--seed", "7", "--out", "plan.json",
            )
            == 0
        )
        assert (
            run("render", "--plan", "plan.json", "--audio", "a.wav", "--out", "out.wav")
            == 0
        )
        rendered = load_wav("out.wav")
        source = load_wav("a.wav")
        assert 0 < rendered.duration < source.duration

    def test_empty_plan_render_identity(self, workdir):
        plan_doc = {
            "actions": [{"kind": "keep_span", "range": [0.0, load_wav("a.wav").duration]}],
            "source_duration": load_wav("a.wav").duration,
            "predicted_output_duration": load_wav("a.wav").duration,
        }
        with open("empty_plan.json", "w") as fh:
            json.dump(plan_doc, fh)
        assert run("render", "--plan", "empty_plan.json", "--audio", "a.wav", "--out", "same.wav") == 0
        assert np.array_equal(load_wav("same.wav").samples, load_wav("a.wav").samples)


class TestEval:
    def test_eval_consistent_with_shorten_stats(self, workdir):
        run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7", "--out", "result.json",
        )
        code = run(
            "eval", "--transcript", "t.json", "--result", "result.json",
            "--out", "metrics.json",
        )
        assert code == 0
        result = json.load(open("result.json"))
        report = json.load(open("metrics.json"))
        achieved = report["files"][0]["metrics"]["compression_achieved"]
        assert achieved == pytest.approx(result["stats"]["compression"], abs=1e-9)

    def test_unpaired_arguments_usage_error(self, workdir):
        run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--out", "result.json",
        )
        assert (
            run("eval", "--transcript", "t.json", "--transcript", "t.json", "--result", "result.json")
            == 1
        )


class TestConfigFile:
    def test_config_supplies_gateway_settings_flags_win(self, workdir):
        with open("cfg.json", "w") as fh:
            json.dump({"gateway": "mock", "seed": 3, "max_parallel_requests": 2}, fh)
        # config seed 3
        assert run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--config", "cfg.json", "--out", "cfg_run.json",
        ) == 0
        # flag overrides config seed
        assert run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--config", "cfg.json", "--seed", "7", "--out", "flag_run.json",
        ) == 0
        assert run(
            "shorten", "--transcript", "t.json", "--target", "25",
            "--gateway", "mock", "--seed", "7", "--out", "plain_run.json",
        ) == 0
        assert open("flag_run.json").read() == open("plain_run.json").read()
        assert open("cfg_run.json").read() != open("flag_run.json").read()
