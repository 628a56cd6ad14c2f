import json

import pytest

from mtlint.cli import main

from fixtures import write_reference_fixture, write_synthetic_corpus

ALL_DETECTORS = (
    "physical-units,currencies,large-numbers,web-terms,numerical-values,"
    "coverage,hallucination-oscillatory,hallucination-natural"
)


def test_detect_writes_report_and_prints_stats(tmp_path, capsys):
    corpus, align = write_reference_fixture(tmp_path)
    report = str(tmp_path / "report.jsonl")
    code = main(
        [
            "detect",
            "-i",
            corpus,
            "-o",
            report,
            "--set",
            f"detectors={ALL_DETECTORS}",
            "--set",
            f"alignment=file:{align}",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "total errors" in out and "5" in out
    records = [json.loads(l) for l in open(report, encoding="utf-8")]
    assert len(records) == 5


def test_filter_command(tmp_path, capsys):
    path = str(tmp_path / "synth.tsv")
    bad_at = write_synthetic_corpus(path, 120, 6)
    code = main(
        [
            "filter",
            "-i",
            path,
            "--clean",
            str(tmp_path / "clean.tsv"),
            "--removed",
            str(tmp_path / "removed.tsv"),
        ]
    )
    assert code == 0
    assert f"removed {len(bad_at)}" in capsys.readouterr().out


def test_stdfilter_command(tmp_path, capsys):
    path = tmp_path / "c.tsv"
    path.write_text("a b\tx y\n" + "s " * 200 + "\t" + "t " * 200 + "\n", encoding="utf-8")
    code = main(
        [
            "stdfilter",
            "-i",
            str(path),
            "--kept",
            str(tmp_path / "k.tsv"),
            "--dropped",
            str(tmp_path / "d.tsv"),
        ]
    )
    assert code == 0
    assert "length=1" in capsys.readouterr().out


def test_stats_command(tmp_path, capsys):
    corpus, align = write_reference_fixture(tmp_path)
    report = str(tmp_path / "report.jsonl")
    main(
        [
            "detect", "-i", corpus, "-o", report,
            "--set", f"detectors={ALL_DETECTORS}",
            "--set", f"alignment=file:{align}",
        ]
    )
    capsys.readouterr()
    code = main(["stats", "-r", report, "--total-pairs", "5"])
    assert code == 0
    assert "100.0000%" in capsys.readouterr().out


def test_check_command_outputs_detections(capsys):
    code = main(["check", "-s", "stay 6 feet apart", "-t", "bleiben 6 Meter entfernt"])
    assert code == 0
    record = json.loads(capsys.readouterr().out.splitlines()[0])
    assert record["detector"] == "physical-units"


def test_metamorphic_command(tmp_path, capsys):
    mono = tmp_path / "mono.txt"
    mono.write_text("ran 5 meters today\n", encoding="utf-8")
    code = main(
        ["metamorphic", "-i", str(mono), "-o", str(tmp_path / "out.txt")]
    )
    assert code == 0
    assert "instances out" in capsys.readouterr().out


def test_metacorpus_command(tmp_path, capsys):
    corpus = tmp_path / "c.tsv"
    corpus.write_text(
        "The plesiosaur teeth it self is about 43 mm long.\t"
        "Der Plesiosaurier Zahn selber misst etwa 43 mm.\n",
        encoding="utf-8",
    )
    code = main(["metacorpus", "-i", str(corpus), "-o", str(tmp_path / "meta.tsv")])
    assert code == 0
    assert "1 templates" in capsys.readouterr().out


def test_tables_command(capsys):
    code = main(["tables"])
    assert code == 0
    out = capsys.readouterr().out
    assert "currencies" in out


def test_missing_input_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["detect", "-i", str(tmp_path / "nope.tsv")])
    assert exit_info.value.code == 2


def test_bad_config_exits_1(tmp_path, capsys):
    corpus, _ = write_reference_fixture(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(["detect", "-i", corpus, "--set", "detectors=bogus"])
    assert exit_info.value.code == 1


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["detect"])  # missing --input
    assert exit_info.value.code == 1


def test_malformed_set_exits_1(tmp_path, capsys):
    corpus, _ = write_reference_fixture(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(["detect", "-i", corpus, "--set", "novalue"])
    assert exit_info.value.code == 1


def test_unreachable_server_exits_2(tmp_path, capsys):
    corpus, _ = write_reference_fixture(tmp_path)
    with pytest.raises(SystemExit) as exit_info:
        main(
            [
                "detect",
                "--server",
                "http://127.0.0.1:1",
                "-i",
                corpus,
            ]
        )
    assert exit_info.value.code == 2
