import random

import pytest

from subwordkit.corpus import Corpus, Sentence


def random_corpus(rng: random.Random, alphabet="abcdefghijkl", max_types=200, max_len=8, lines=30):
    types = sorted({
        "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
        for _ in range(rng.randint(1, max_types))
    })
    sentences = [Sentence(tuple(rng.choice(types) for _ in range(rng.randint(1, 12)))) for _ in range(lines)]
    return Corpus(tuple(sentences))


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def toy():
    return Corpus.from_lines(["aaab aaab ab"])


# acceptance criterion bookkeeping for the terminal summary
_criteria: dict = {}
_labels: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[report.nodeid] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))
            _labels[item.nodeid] = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (num, text) in sorted(_labels.items(), key=lambda kv: kv[1][0]):
        outcome = _criteria.get(nodeid)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{num:02d} {status}  {text}")
