"""CLI surface: workflow wiring, output formats, error reporting."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from vulntrack import cli, serialize
from vulntrack.engine import TrackingEngine
from vulntrack.errors import StoreError, StoreLockedError
from vulntrack.trends import SpikeConfig

CORPUS_ROWS = [
    {"id": "CVE-1", "date": "2004-02-08",
     "description": "Buffer overflow in the alpha parser."},
    {"id": "CVE-2", "date": "2005-06-20",
     "description": "SQL injection in the beta module."},
    {"id": "CVE-3", "date": "2005-11-02",
     "description": "Buffer overflow in the gamma handler."},
    {"id": "CVE-4", "date": "2007-01-15",
     "description": "Use-after-free in the alpha parser."},
]


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture()
def workdir(tmp_path: Path) -> Path:
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text(
        "".join(json.dumps(r) + "\n" for r in CORPUS_ROWS), encoding="utf-8")
    (tmp_path / "english.txt").write_text(
        "buffer\noverflow\ninjection\nparser\nmodule\nhandler\nfree\n",
        encoding="utf-8")
    (tmp_path / "domain.txt").write_text("sql\nalpha\n", encoding="utf-8")
    (tmp_path / "fixes.tsv").write_text("overlfow\toverflow\n",
                                        encoding="utf-8")
    return tmp_path


def invoke(runner: CliRunner, store: Path, *args: str,
           expect: int = 0) -> str:
    result = runner.invoke(cli.main, ["--store", str(store), *args])
    if result.exit_code != expect:  # surface the real error in the report
        raise AssertionError(
            f"exit {result.exit_code}: {result.output!r} {result.exception!r}")
    return result.output


@pytest.fixture()
def built_store(runner: CliRunner, workdir: Path) -> Path:
    store = workdir / "store"
    invoke(runner, store, "import", "--corpus", str(workdir / "corpus.jsonl"))
    invoke(runner, store, "dict-load",
           "--english", str(workdir / "english.txt"),
           "--domain", str(workdir / "domain.txt"),
           "--corrections", str(workdir / "fixes.tsv"))
    invoke(runner, store, "index")
    invoke(runner, store, "load-vectors")
    invoke(runner, store, "topic", "create", "bof", "buffer", "overflow")
    return store


class TestWorkflow:
    def test_import_reports_count(self, runner, workdir):
        out = invoke(runner, workdir / "s", "import",
                     "--corpus", str(workdir / "corpus.jsonl"))
        assert json.loads(out) == {"imported": 4}

    def test_dict_load_reports_sections(self, runner, workdir):
        out = invoke(runner, workdir / "s", "dict-load",
                     "--english", str(workdir / "english.txt"),
                     "--domain", str(workdir / "domain.txt"),
                     "--corrections", str(workdir / "fixes.tsv"))
        assert json.loads(out) == {"domain": 2, "english": 7,
                                   "corrections": 1}

    def test_index_then_noop(self, runner, built_store):
        assert json.loads(invoke(runner, built_store, "index")) \
            == {"indexed": 0}

    def test_load_vectors_randomizes_whole_dictionary(self, runner,
                                                      built_store):
        out = json.loads(invoke(runner, built_store, "load-vectors"))
        engine = TrackingEngine(built_store)
        assert out == {"loaded": 0, "randomized": len(engine.dictionary)}

    def test_load_vectors_from_file(self, runner, built_store, workdir):
        from vulntrack.embeddings import VECTOR_DIM
        vec_file = workdir / "vectors.txt"
        vec_file.write_text("buffer " + " ".join(["0.5"] * VECTOR_DIM) + "\n",
                            encoding="utf-8")
        out = json.loads(invoke(runner, built_store, "load-vectors",
                                "--file", str(vec_file)))
        assert out["loaded"] == 1

    def test_finetune_prints_per_epoch_loss(self, runner, built_store):
        out = invoke(runner, built_store, "finetune", "--epochs", "3")
        lines = [json.loads(line) for line in out.splitlines()]
        assert [item["epoch"] for item in lines] == [1, 2, 3]
        assert all(item["loss"] > 0 for item in lines)

    def test_topic_create_show_and_extend(self, runner, built_store):
        created = json.loads(invoke(runner, built_store, "topic", "create",
                                    "inj", "SQL", "Injection"))
        assert created == {"keywords": ["sql", "inject"], "name": "inj"}
        shown = json.loads(invoke(runner, built_store, "topic", "show",
                                  "inj"))
        assert shown == created
        grown = json.loads(invoke(runner, built_store, "topic",
                                  "add-keywords", "inj", "module"))
        assert grown["keywords"] == ["sql", "inject", "modul"]


class TestOutputsMatchLibrary:
    def test_query_lines_are_canonical_json(self, runner, built_store):
        out = invoke(runner, built_store, "query", "--topic", "bof",
                     "--order", "relevance")
        engine = TrackingEngine(built_store)
        expected = [serialize.to_json(serialize.result_payload(r))
                    for r in engine.retrieve("bof", "relevance", 50)]
        assert out.splitlines() == expected
        assert len(expected) == 2

    def test_query_order_and_limit_flags(self, runner, built_store):
        out = invoke(runner, built_store, "query", "--topic", "bof",
                     "--order", "date", "--limit", "1")
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["doc_id"] for r in rows] == ["CVE-3"]

    def test_expand_matches_library_bytes(self, runner, built_store):
        out = invoke(runner, built_store, "expand", "--topic", "bof",
                     "--theta", "0.5", "--limit", "10")
        engine = TrackingEngine(built_store)
        expected = serialize.to_json(serialize.candidates_payload(
            engine.expand("bof", 0.5, 10)))
        assert out.strip() == expected

    def test_trend_csv_is_exact(self, runner, built_store):
        out = invoke(runner, built_store, "trend", "--topic", "bof",
                     "--granularity", "year")
        assert out == "period,count\n2004,1\n2005,1\n2006,0\n2007,0\n"

    def test_trend_json_and_range_flags(self, runner, built_store):
        out = invoke(runner, built_store, "trend", "--topic", "bof",
                     "--granularity", "year", "--format", "json",
                     "--from", "2005-01-01", "--to", "2006-12-31")
        assert json.loads(out) == {
            "topic": "bof", "granularity": "year",
            "buckets": [{"period": "2005", "count": 1},
                        {"period": "2006", "count": 0}],
        }

    def test_spikes_flags_match_library(self, runner, built_store):
        out = invoke(runner, built_store, "spikes", "--topic", "bof",
                     "--granularity", "year", "--window", "2",
                     "--threshold", "1.5")
        engine = TrackingEngine(built_store)
        config = SpikeConfig(window=2, threshold=1.5)
        expected = serialize.to_json(serialize.spikes_payload(
            engine.spikes("bof", "year", config=config)))
        assert out.strip() == expected

    def test_stats_shape(self, runner, built_store):
        out = json.loads(invoke(runner, built_store, "stats", "--top", "2"))
        assert out["total_documents"] == 4
        assert out["date_min"] == "2004-02-08"
        assert out["date_max"] == "2007-01-15"
        assert len(out["top_keywords"]) == 2


class TestConvertCveCsv:
    CSV = (
        "id,published,summary\n"
        "CVE-2004-0001,2004-05-01,Overflow in thing.\n"
        "short row\n"
        "CVE-2004-0002,May 2004,Bad date row.\n"
        ",2004-05-02,No id.\n"
        'CVE-2004-0003,2004-06-01,"Quoted, with comma."\n'
    )

    def test_conversion_to_file(self, runner, tmp_path):
        src = tmp_path / "export.csv"
        src.write_text(self.CSV, encoding="utf-8")
        dst = tmp_path / "out.jsonl"
        result = runner.invoke(cli.main, [
            "convert-cve-csv", "--in", str(src), "--out", str(dst),
            "--skip-rows", "1"])
        assert result.exit_code == 0
        assert json.loads(result.output) == {"converted": 2, "skipped": 3}
        rows = [json.loads(line) for line in
                dst.read_text(encoding="utf-8").splitlines()]
        assert rows == [
            {"id": "CVE-2004-0001", "date": "2004-05-01",
             "description": "Overflow in thing."},
            {"id": "CVE-2004-0003", "date": "2004-06-01",
             "description": "Quoted, with comma."},
        ]

    def test_conversion_to_stdout_reports_on_stderr(self, runner, tmp_path):
        src = tmp_path / "export.csv"
        src.write_text(self.CSV, encoding="utf-8")
        result = runner.invoke(cli.main, [
            "convert-cve-csv", "--in", str(src), "--skip-rows", "1"])
        assert result.exit_code == 0
        data_lines = result.stdout.splitlines()
        assert len(data_lines) == 2
        assert json.loads(data_lines[0])["id"] == "CVE-2004-0001"
        assert json.loads(result.stderr.splitlines()[-1]) \
            == {"converted": 2, "skipped": 3}

    def test_custom_column_layout(self, runner, tmp_path):
        src = tmp_path / "export.csv"
        src.write_text("2004-05-01,Text here,CVE-2004-0009\n",
                       encoding="utf-8")
        result = runner.invoke(cli.main, [
            "convert-cve-csv", "--in", str(src),
            "--id-col", "2", "--date-col", "0", "--desc-col", "1"])
        assert result.exit_code == 0
        assert json.loads(result.stdout.splitlines()[0]) == {
            "id": "CVE-2004-0009", "date": "2004-05-01",
            "description": "Text here"}

    def test_converted_file_imports_cleanly(self, runner, tmp_path):
        src = tmp_path / "export.csv"
        src.write_text(self.CSV, encoding="utf-8")
        dst = tmp_path / "out.jsonl"
        runner.invoke(cli.main, ["convert-cve-csv", "--in", str(src),
                                 "--out", str(dst), "--skip-rows", "1"])
        out = invoke(runner, tmp_path / "store", "import",
                     "--corpus", str(dst))
        assert json.loads(out) == {"imported": 2}


class TestErrorsAndConfig:
    def test_query_on_missing_store_fails(self, runner, tmp_path):
        result = runner.invoke(cli.main, [
            "--store", str(tmp_path / "nope"), "query", "--topic", "x"])
        assert result.exit_code != 0
        assert isinstance(result.exception, StoreError)

    def test_topic_create_does_not_create_store(self, runner, tmp_path):
        missing = tmp_path / "typo"
        result = runner.invoke(cli.main, [
            "--store", str(missing), "topic", "create", "t", "alpha"])
        assert isinstance(result.exception, StoreError)
        assert not missing.exists()

    def test_missing_store_flag_is_usage_error(self, runner):
        result = runner.invoke(cli.main, ["stats"],
                               env={"VULNTRACK_STORE": None})
        assert result.exit_code == 2
        assert "VULNTRACK_STORE" in result.stderr

    def test_dict_load_requires_some_input(self, runner, built_store):
        result = runner.invoke(cli.main, ["--store", str(built_store),
                                          "dict-load"])
        assert result.exit_code == 2

    def test_bad_date_flag_is_usage_error(self, runner, built_store):
        result = runner.invoke(cli.main, [
            "--store", str(built_store), "trend", "--topic", "bof",
            "--from", "last tuesday"])
        assert result.exit_code == 2
        assert "ISO date" in result.stderr

    def test_store_from_environment(self, runner, built_store):
        result = runner.invoke(cli.main, ["stats"],
                               env={"VULNTRACK_STORE": str(built_store)})
        assert result.exit_code == 0
        assert json.loads(result.output)["total_documents"] == 4

    def test_flag_overrides_environment(self, runner, built_store, tmp_path):
        result = runner.invoke(
            cli.main, ["--store", str(built_store), "stats"],
            env={"VULNTRACK_STORE": str(tmp_path / "bogus")})
        assert result.exit_code == 0

    def test_finetune_refuses_locked_store(self, runner, built_store):
        engine = TrackingEngine(built_store)
        engine.acquire_lock()
        try:
            result = runner.invoke(cli.main, [
                "--store", str(built_store), "finetune", "--epochs", "1"])
            assert isinstance(result.exception, StoreLockedError)
        finally:
            engine.release_lock()

    def test_run_wrapper_reports_domain_errors(self, monkeypatch, capsys,
                                               tmp_path):
        monkeypatch.setattr("sys.argv", [
            "vulntrack", "--store", str(tmp_path / "nope"), "stats"])
        with pytest.raises(SystemExit) as excinfo:
            cli.run()
        assert excinfo.value.code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_run_wrapper_keeps_usage_exit_codes(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.argv", ["vulntrack", "no-such-command"])
        with pytest.raises(SystemExit) as excinfo:
            cli.run()
        assert excinfo.value.code == 2
