import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kinemark.harness import ExperimentConfig, prepare, synth_corpus  # noqa: E402

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    number, title = crit
    entry = _CRITERIA.setdefault(number, {"title": title, "outcome": "passed"})
    if report.failed:
        entry["outcome"] = "failed"
    elif report.skipped and report.when in ("setup", "call"):
        if entry["outcome"] == "passed":
            entry["outcome"] = "skipped"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep._criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    labels = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    for number in sorted(_CRITERIA):
        c = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {labels[c['outcome']]}  {c['title']}")


@pytest.fixture(scope="session")
def synth_manifest(tmp_path_factory):
    return synth_corpus(tmp_path_factory.mktemp("synth"), 20, 0.5, seed=0)


@pytest.fixture(scope="session")
def synth_data(synth_manifest):
    cfg = ExperimentConfig(corpus=str(synth_manifest), settings=("s1", "s2", "s3", "s4"))
    return prepare(cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
