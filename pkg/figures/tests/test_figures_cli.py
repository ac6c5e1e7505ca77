"""Command line surface of the figure tool."""

import csv

import pytest

pytest.importorskip("lisfigures")

from lisfigures.cli import entry_point, main


def sweep_csv(path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kappa_L", "index", "lambda_scaled"])
        for i, level in enumerate([1.0, 0.7, 0.2, 1e-4], start=1):
            writer.writerow([6.28, i, level])
    return str(path)


def test_happy_path_returns_zero(tmp_path):
    out = tmp_path / "map.png"
    rc = main(["eigen-map", "--in", sweep_csv(tmp_path / "s.csv"), "--out", str(out)])
    assert rc == 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_missing_input_file_is_exit_two(tmp_path, capsys):
    rc = main(["eigen-map", "--in", str(tmp_path / "nope.csv"),
               "--out", str(tmp_path / "x.png")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_schema_mismatch_is_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("foo,bar\n1,2\n")
    rc = main(["error-whiskers", "--in", str(bad), "--out", str(tmp_path / "x.png")])
    assert rc == 2
    assert "bad.csv" in capsys.readouterr().err


def test_unknown_kind_is_an_argparse_error(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["histogram", "--in", "a.csv", "--out", "x.png"])
    assert info.value.code == 2


@pytest.mark.parametrize("missing", [["eigen-map", "--in", "a.csv"],
                                     ["eigen-map", "--out", "x.png"]])
def test_required_flags_enforced(missing):
    with pytest.raises(SystemExit):
        main(missing)


def test_entry_point_exits_with_main_status(tmp_path):
    out = tmp_path / "map.png"
    with pytest.raises(SystemExit) as info:
        entry_point(["eigen-map", "--in", sweep_csv(tmp_path / "s.csv"),
                     "--out", str(out)])
    assert info.value.code == 0
    assert out.exists()
