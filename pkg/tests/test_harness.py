import json
from dataclasses import replace

import numpy as np
import pytest

from kinemark.corpus import load_manifest
from kinemark.errors import AbortedRepetition, ConfigError, UnsupportedFormat
from kinemark.features import feature_names
from kinemark.harness import (
    SETTINGS,
    ExperimentConfig,
    config_from_options,
    load_report,
    mean_importances,
    parse_text,
    read_config_file,
    report_render,
    route_rows,
    run_experiment,
    run_repetition,
    synth_corpus,
)
from kinemark.models.metrics import METRIC_NAMES

SMALL_ROSTER = ("DecisionTree", "GradientBoosting", "KNearestNeighbors", "LogisticRegression")


@pytest.fixture(scope="module")
def small_config(synth_manifest):
    return ExperimentConfig(corpus=str(synth_manifest), settings=("s1",), repetitions=3,
                            k_features=10, models=SMALL_ROSTER)


@pytest.fixture(scope="module")
def small_report(small_config, synth_data):
    return run_experiment(small_config, synth_data)


# --- config -----------------------------------------------------------------------

def test_settings_are_cumulative_prefixes():
    assert SETTINGS["s1"] == ("movement",)
    assert SETTINGS["s4"] == ("movement", "velocity", "acceleration", "jerk")
    for a, b in zip("123", "234"):
        assert SETTINGS["s" + b][:-1] == SETTINGS["s" + a]


def test_feature_space_grows_with_setting():
    sets = [set(feature_names(SETTINGS[f"s{i}"])) for i in range(1, 5)]
    for small, big in zip(sets, sets[1:]):
        assert len(small) < len(big) and small < big


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(models=())
    with pytest.raises(ConfigError):
        ExperimentConfig(repetitions=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(settings=("s5",))
    with pytest.raises(ConfigError):
        ExperimentConfig(models=("RandomForest", "Perceptron"))
    with pytest.raises(ConfigError):
        ExperimentConfig(model_params={"RandomForest": {"n_trees": 0}})
    with pytest.raises(ConfigError):
        ExperimentConfig(test_fraction=0)
    assert ExperimentConfig(settings="all").settings == ("s1", "s2", "s3", "s4")


def test_config_hash_is_stable():
    a = ExperimentConfig(corpus="c.csv", repetitions=5)
    assert a.hash() == ExperimentConfig(corpus="c.csv", repetitions=5).hash()
    assert a.hash() != replace(a, repetitions=6).hash()
    assert ExperimentConfig.from_dict(json.loads(json.dumps(a.to_dict()))) == a


def test_config_files(tmp_path):
    (tmp_path / "a.conf").write_text("# comment\ncorpus = m.csv\nreps=7\nsetting=s2,s3\n"
                                     "models=DecisionTree\nwindow-s=0.5\n")
    opts = read_config_file(tmp_path / "a.conf")
    cfg = config_from_options(opts)
    assert (cfg.repetitions, cfg.settings, cfg.models, cfg.window_len_s) == \
        (7, ("s2", "s3"), ("DecisionTree",), 0.5)
    (tmp_path / "b.json").write_text(json.dumps({"corpus": "m.csv", "reps": 2, "seed": 4,
                                                 "model_params": {"RandomForest": {"n_trees": 5}}}))
    cfg = config_from_options(read_config_file(tmp_path / "b.json"))
    assert cfg.base_seed == 4 and cfg.model_params["RandomForest"] == {"n_trees": 5}
    (tmp_path / "c.conf").write_text("colour=blue\n")
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "c.conf")


# --- synthetic corpus ---------------------------------------------------------------

def test_synth_counts(tmp_path):
    m = synth_corpus(tmp_path, 20, 0.5, seed=1)
    entries = load_manifest(m)
    assert len(entries) == 20
    assert sum(e.outcome.value == "Sick" for e in entries) == 10


def test_synth_is_byte_identical(tmp_path):
    a = synth_corpus(tmp_path / "a", 6, 0.5, seed=3).parent
    b = synth_corpus(tmp_path / "b", 6, 0.5, seed=3).parent
    c = synth_corpus(tmp_path / "c", 6, 0.5, seed=4).parent
    files = sorted(p.relative_to(a) for p in a.rglob("*.csv"))
    assert len(files) == 7
    assert all((a / f).read_bytes() == (b / f).read_bytes() for f in files)
    assert any((a / f).read_bytes() != (c / f).read_bytes() for f in files)


def test_synth_rejects_tiny_corpus(tmp_path):
    with pytest.raises(ValueError):
        synth_corpus(tmp_path, 3)


def test_synth_effect_is_confined_to_sick_tail(synth_manifest):
    from kinemark.corpus import load_corpus

    for rec in load_corpus(synth_manifest):
        assert rec.n_samples == 3600
        assert np.isfinite(rec.channels).all()


# --- repetitions ---------------------------------------------------------------------

def test_repetition_is_deterministic(small_config, synth_data):
    a = run_repetition(small_config, 1, synth_data)
    b = run_repetition(small_config, 1, synth_data)
    assert a.split == b.split
    sa, sb = a.settings["s1"], b.settings["s1"]
    assert sa.mask == sb.mask
    assert sa.metrics == sb.metrics
    assert sa.importances == sb.importances


def test_split_plans_vary_with_rep_index(small_config, synth_data):
    plans = [route_rows(small_config, r, synth_data)[0] for r in range(51)]
    differing = sum(plans[i].test_participants != plans[i + 1].test_participants
                    for i in range(50))
    assert differing >= 45


def test_one_model_roster(small_config, synth_data):
    cfg = replace(small_config, models=("DecisionTree",), repetitions=1)
    rep = run_experiment(cfg, synth_data)
    assert list(rep.settings["s1"].models) == ["DecisionTree"]


def test_single_repetition_has_zero_sd(small_config, synth_data):
    rep = run_experiment(replace(small_config, repetitions=1, models=("DecisionTree",)),
                         synth_data)
    assert all(v == 0 for v in rep.settings["s1"].models["DecisionTree"].sd.values())


def test_report_aggregates(small_report):
    s = small_report.settings["s1"]
    assert small_report.seeds == [0, 1, 2]
    for kind, m in s.models.items():
        for metric in METRIC_NAMES:
            vals = m.per_rep[metric]
            assert len(vals) == 3
            assert m.mean[metric] == np.mean(vals)
            assert m.sd[metric] == np.std(vals)
        for imp in m.importances:
            if imp is not None:
                assert abs(sum(imp.values()) - 1) <= 1e-9
    assert s.best_model == max(s.models, key=lambda k: s.models[k].mean["accuracy"])
    assert s.models["KNearestNeighbors"].importances == [None] * 3
    ranking = s.importance_ranking
    assert [v for _, v in ranking] == sorted((v for _, v in ranking), reverse=True)
    assert abs(sum(v for _, v in ranking) - 1) <= 1e-9
    assert all(len(mask) == 10 for mask in s.masks)


def test_leakage_free_splits_in_report(small_report):
    for sp in small_report.splits:
        assert not set(sp["train"]) & set(sp["test"])


def test_mean_importances_counts_missing_as_zero():
    ranked = mean_importances([{"a": 0.6, "b": 0.4}, {"a": 0.5, "c": 0.5}, None])
    assert ranked == [("a", 0.55), ("c", 0.25), ("b", 0.2)]


def test_aborted_repetition_carries_index(small_config, synth_data):
    broken = replace(synth_data, outcomes={k: ("Sick" if i == 0 else "Well")
                                           for i, k in enumerate(synth_data.outcomes)})
    with pytest.raises(AbortedRepetition) as err:
        run_repetition(small_config, 4, broken)
    assert err.value.rep_index == 4
    with pytest.raises(AbortedRepetition):
        run_experiment(small_config, broken)


def test_parallel_matches_serial(small_config, synth_data, small_report):
    par = run_experiment(small_config, synth_data, n_jobs=2)
    assert report_render(par, "json") == report_render(small_report, "json")


# --- rendering ------------------------------------------------------------------------

def test_json_text_round_trip(small_report):
    blob = report_render(small_report, "json")
    back = load_report(blob)
    assert report_render(back, "json") == blob
    parsed = parse_text(report_render(back, "text").decode())
    s = small_report.settings["s1"]
    assert set(parsed["s1"]) == set(s.models)
    for kind, metrics in parsed["s1"].items():
        for metric, (mean, sd) in metrics.items():
            assert abs(mean - s.models[kind].mean[metric]) <= 0.0005 + 1e-12
            assert abs(sd - s.models[kind].sd[metric]) <= 0.0005 + 1e-12


def test_rendering_is_deterministic(small_report):
    assert report_render(small_report, "text") == report_render(small_report, "text")
    text = report_render(small_report, "text").decode()
    assert small_report.config_hash in text
    assert "published" in text


def test_json_contains_manifest_and_reference(small_report):
    doc = json.loads(report_render(small_report, "json"))
    assert doc["config_hash"] == small_report.config_hash
    assert doc["seeds"] == [0, 1, 2]
    gb = doc["reference"]["results"]["s1"]["GradientBoosting"]
    assert gb["accuracy"] == [63.4, 9.3]


def test_unsupported_format(small_report):
    with pytest.raises(UnsupportedFormat):
        report_render(small_report, "xml")


def test_masks_differ_across_settings(synth_manifest, synth_data):
    cfg = ExperimentConfig(corpus=str(synth_manifest), settings="all", repetitions=1,
                           models=("DecisionTree",))
    rep = run_repetition(cfg, 0, synth_data)
    masks = {s: r.mask.names for s, r in rep.settings.items()}
    assert len(masks) == 4
    assert len(set(masks.values())) > 1
    for s, names in masks.items():
        assert set(names) <= set(feature_names(SETTINGS[s]))
