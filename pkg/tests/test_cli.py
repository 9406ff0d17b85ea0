from __future__ import annotations

from pathlib import Path

import pytest

from nofil.cli import main
from nofil.io import sts_to_text

DATA = Path(__file__).parent / "data"


@pytest.fixture
def sts9_file(tmp_path, sts9):
    path = tmp_path / "sts9.txt"
    path.write_text(sts_to_text(sts9))
    return path


def _rows(text):
    return {tuple(line.split()) for line in text.splitlines() if line.strip() and not line.startswith("#")}


def test_table_records_match_golden(capsys):
    assert main(["--format", "records", "table", "--family", "empty", "--from", "2", "--to", "45"]) == 0
    got = {r[:5] + r[6:13] for r in _rows(capsys.readouterr().out)}
    assert got == _rows((DATA / "table_empty.txt").read_text())


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "star3.txt"
    assert main(["construct", "--star", "3", "--emit", str(out)]) == 0
    assert "verified=True" in capsys.readouterr().out
    assert main(["verify", str(out)]) == 0
    assert "ok" in capsys.readouterr().out


def test_play_script(sts9_file, capsys):
    assert main(["play", "--sts", str(sts9_file), "--script", "1,2,6"]) == 0
    last = capsys.readouterr().out.splitlines()[-1]
    assert last.startswith("3 | 1,2,6 | 4,5,9 | 3,7,8")
    assert last.endswith("59, 49, 45")


def test_play_illegal_move(sts9_file, capsys):
    assert main(["play", "--sts", str(sts9_file), "--script", "1,2,3"]) == 1
    assert "block 123" in capsys.readouterr().out


def test_solve(sts9_file, capsys):
    assert main(["solve", "--sts", str(sts9_file)]) == 0
    assert "SecondPlayerWins" in capsys.readouterr().out


def test_bounds_complete(capsys):
    assert main(["bounds", "--graph", "complete:4", "--v", "13"]) == 0
    assert "(6, 6, 4, 2, 0, 8, 0)" in capsys.readouterr().out


def test_skolem(capsys):
    assert main(["skolem", "--kind", "skolem", "--t", "4"]) == 0
    assert capsys.readouterr().out.strip()


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_missing_file_is_usage_error(tmp_path):
    assert main(["verify", str(tmp_path / "nope.txt")]) == 2


def test_search_not_found_exits_one(capsys):
    assert main(["search", "--graph", "empty:2", "--vmax", "13"]) == 1
    cap = capsys.readouterr()
    assert "inconclusive" in cap.out
    assert "blocked" in cap.err


def test_search_found(capsys):
    assert main(["search", "--graph", "cycle:4", "--vmax", "7"]) == 0


def test_seed_reproducible(capsys):
    main(["--seed", "5", "play", "--sts", "hillclimb:13", "--script", "0"])
    first = capsys.readouterr().out
    main(["--seed", "5", "play", "--sts", "hillclimb:13", "--script", "0"])
    assert capsys.readouterr().out == first


def test_seed_from_environment(monkeypatch, capsys):
    main(["--seed", "8", "play", "--sts", "hillclimb:13", "--script", "0"])
    want = capsys.readouterr().out
    monkeypatch.setenv("NOFIL_SEED", "8")
    main(["play", "--sts", "hillclimb:13", "--script", "0"])
    assert capsys.readouterr().out == want
