"""Test the command line interface."""
from __future__ import annotations

import csv

import pytest

from rebalance_lab.cli import build_parser, main

from .const import RANDOM_TREE_3, SPLIT_SHAPES

pytestmark = pytest.mark.usefixtures("restore_logging")


def _read(path):
    with open(path, encoding="utf-8", newline="") as stream:
        return list(csv.reader(stream))


def test_distribution_to_file(tmp_path):
    out = tmp_path / "split.csv"
    assert main(["distribution", "--keys", "1,3,2", "--p", "1/2", "--out", str(out)]) == 0
    rows = _read(out)
    assert rows[0] == ["shape", "probability_numerator", "probability_denominator"]
    assert rows[1:] == [[shape, "1", "4"] for shape in SPLIT_SHAPES]
    assert (tmp_path / "split.plot.py").exists()
    assert b"\r\n" not in out.read_bytes()


def test_distribution_to_stdout(capsys):
    assert main(["distribution", "--sequence", "increasing", "--n", "3", "--p", "0.5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "shape,probability"
    assert len(lines) == 5


def test_distribution_needs_input():
    assert main(["distribution", "--sequence", "pairs"]) == 2


def test_distribution_random_order(capsys):
    assert main(["distribution", "--scheme", "none", "--random-order", "--n", "3"]) == 0
    header, *rows = capsys.readouterr().out.splitlines()
    assert header == "shape,probability_numerator,probability_denominator"
    assert rows == [f"{shape},{p.numerator},{p.denominator}" for shape, p in RANDOM_TREE_3.items()]


def test_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    argv = ["sweep", "--scheme", "zig,none", "--sequence", "increasing", "--n", "16"]
    argv += ["--p", "0,1", "--trials", "2", "--out", str(out)]
    assert main(argv) == 0
    header, *rows = _read(out)
    assert header[:4] == ["scheme", "sequence", "n", "p"]
    assert len(rows) == 4
    assert [row[0] for row in rows] == ["zig", "zig", "none", "none"]
    avg = header.index("avg_depth_mean")
    assert float(rows[0][avg]) == 7.5
    assert "sweep.plot.py" in {path.name for path in tmp_path.iterdir()}


def test_config_file(tmp_path):
    config = tmp_path / "config.yaml"
    out = tmp_path / "profile.csv"
    config.write_text(
        "logger:\n"
        "  default: warning\n"
        "profile:\n"
        "  scheme: none\n"
        "  sequence: increasing\n"
        "  n: 4\n"
        "  trees: 3\n"
        f"  out: {out}\n",
        encoding="utf-8",
    )
    assert main(["--config", str(config), "profile"]) == 0
    assert _read(out) == [["depth", "count"], ["0", "3"], ["1", "3"], ["2", "3"], ["3", "3"]]


def test_process(tmp_path):
    out = tmp_path / "process.csv"
    trajectory = tmp_path / "walk.csv"
    argv = ["process", "--p-plus", "1", "--n", "64", "--counters", "2", "--out", str(out)]
    assert main(argv + ["--trajectory", str(trajectory)]) == 0
    header, row = _read(out)
    assert header[0] == "p_plus"
    assert header[-1] == "exponent"
    assert "final_values" not in header
    assert float(row[header.index("exponent")]) == 1
    assert len(_read(trajectory)) == 65


def test_pairs_study(tmp_path):
    out = tmp_path / "pairs.csv"
    changes = tmp_path / "changes.csv"
    argv = ["pairs-study", "--n", "8,16", "--p", "0", "--trials", "2", "--out", str(out)]
    assert main(argv + ["--height-changes", str(changes)]) == 0
    assert len(_read(out)) == 3
    header, row = _read(changes)
    assert row[header.index("right_height")] == "1"


def test_accept(capsys):
    assert main(["accept", "--criteria", "1,4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[PASS]  1.")
    assert lines[1].startswith("[PASS]  4.")
    assert lines[-1] == "all criteria passed"


def test_accept_scale_flags(capsys):
    argv = ["accept", "--criteria", "2,6", "--height-events", "2000", "--size-shift", "5"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[PASS]  2.")
    assert lines[1].startswith("[PASS]  6.")


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--p", "2"],
        ["sweep", "--sequence", "pairs", "--n", "7"],
        ["profile", "--scheme", "splay"],
        ["--config", "/nonexistent/config.yaml", "sweep"],
        ["distribution", "--keys", "1,1", "--scheme", "none"],
        ["distribution", "--random-order", "--n", "3"],
        ["distribution", "--scheme", "none", "--random-order", "--keys", "1,2"],
        ["accept", "--criteria", "2", "--size-shift", "9"],
    ],
)
def test_errors_exit_2(argv, caplog):
    assert main(argv) == 2
    assert caplog.records[-1].levelname == "ERROR"


def test_unknown_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["rotate"])


def test_unwritable_output_exit_2(tmp_path, caplog):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    argv = ["distribution", "--keys", "1,2", "--out", str(blocker / "dist.csv")]
    assert main(argv) == 2
    assert caplog.records[-1].levelname == "ERROR"
