"""Shared fixtures: bundled data paths, engine builders, acceptance report."""

from __future__ import annotations

from pathlib import Path

import pytest

from vulntrack.engine import TrackingEngine


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance check at the end of the run."""
    verdicts: dict[str, str] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if outcome == "passed" and getattr(report, "when", "") != "call":
                continue
            name = nodeid.split("::")[-1]
            if verdicts.get(name) != "FAIL":
                verdicts[name] = "PASS" if outcome == "passed" else "FAIL"
    if verdicts:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(verdicts):
            terminalreporter.write_line(f"{verdicts[name]}  {name}")

REPO_ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def sample_lines(data_dir: Path) -> list[str]:
    return (data_dir / "sample_corpus.jsonl").read_text(
        encoding="utf-8").splitlines()


@pytest.fixture()
def make_engine(tmp_path: Path):
    """Factory for throwaway engines, one store dir per call."""
    counter = {"n": 0}

    def build(**kwargs) -> TrackingEngine:
        counter["n"] += 1
        return TrackingEngine(tmp_path / f"store{counter['n']}",
                              create=True, **kwargs)

    return build


def build_sample_engine(store_dir: Path, data_dir: Path,
                        lines: list[str]) -> TrackingEngine:
    """Full offline workflow on the bundled sample: dictionaries,
    corrections, import, index."""
    engine = TrackingEngine(store_dir, create=True)
    engine.load_dictionary(
        (data_dir / "english_words.txt").read_text(
            encoding="utf-8").splitlines(), "english")
    engine.load_dictionary(
        (data_dir / "domain_terms.txt").read_text(
            encoding="utf-8").splitlines(), "domain")
    engine.load_corrections(
        (data_dir / "corrections.tsv").read_text(
            encoding="utf-8").splitlines())
    engine.import_documents(lines)
    engine.index_pending()
    return engine


@pytest.fixture(scope="session")
def sample_engine(tmp_path_factory: pytest.TempPathFactory, data_dir: Path,
                  sample_lines: list[str]) -> TrackingEngine:
    """Session-wide read-mostly engine over the bundled corpus.

    Tests must not mutate documents or the index; topic names created
    here are prefixed to avoid collisions.
    """
    store = tmp_path_factory.mktemp("sample") / "store"
    engine = build_sample_engine(store, data_dir, sample_lines)
    engine.save()
    return engine
