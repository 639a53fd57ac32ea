import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitrades import cli
from bitrades.fileformat import (
    BitradeParseError,
    format_word,
    parse_bitrade,
    parse_word,
    read_bitrade,
    serialize_bitrade,
)
from bitrades.hamming import Params, SignedPair


def run(args, capsys):
    code = cli.main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- format


def test_parse_example():
    params, pair = parse_bitrade("n 2\nq 3\n+ 00\n- 11\n")
    assert params == Params(2, 3)
    assert pair.plus == {(0, 0)} and pair.minus == {(1, 1)}


def test_parse_comments_blank_lines_and_crlf():
    params, pair = parse_bitrade("# header\r\nn 2\r\n\r\nq 3\r\n+ 00\r\n# mid\r\n- 11\r\n")
    assert pair == SignedPair(params, {(0, 0)}, {(1, 1)})


@pytest.mark.parametrize(
    "text,lineno,fragment",
    [
        ("n 2\nq 3\n+ 03\n", 3, "out of range"),
        ("n 2\nq 3\n+ 000\n", 3, "length"),
        ("n 2\nq 3\n+ 00\n+ 00\n", 4, "duplicate"),
        ("n 2\nq 3\n+ 00\n\n- 00\n", 5, "both signs"),
        ("n 2\nq 2\n", 2, "unsupported alphabet"),
        ("+ 00\n", 1, "before"),
        ("n 2\nq 3\n* 00\n", 3, "unrecognised"),
        ("n 2\nq 3\n+ 0a\n", 3, "bad word"),
        ("n 2\nq 3\n+ 0١\n", 3, "bad word"),
        ("n two\n", 1, "bad integer"),
        ("n 2\nq 3\nn 2\n", 3, "unexpected header"),
    ],
)
def test_parse_errors_report_line(text, lineno, fragment):
    with pytest.raises(BitradeParseError) as e:
        parse_bitrade(text)
    assert e.value.lineno == lineno
    assert fragment in str(e.value)
    assert f"line {lineno}" in str(e.value)


def test_missing_header():
    with pytest.raises(BitradeParseError):
        parse_bitrade("# nothing\n")


def test_large_alphabet_words():
    p = Params(3, 11)
    assert format_word((10, 0, 3), 11) == "10,0,3"
    assert parse_word("10,0,3", p) == (10, 0, 3)
    with pytest.raises(ValueError):
        parse_word("11,0,3", p)
    pair = SignedPair(p, {(10, 0, 3)}, {(0, 0, 0)})
    assert parse_bitrade(serialize_bitrade(p, pair)) == (p, pair)


def test_serialize_examples(h64_bitrade):
    p = Params(2, 3)
    assert serialize_bitrade(p, SignedPair(p)) == "n 2\nq 3\n"
    assert serialize_bitrade(p, SignedPair(p, {(0, 0)}, {(1, 1)})) == "n 2\nq 3\n+ 00\n- 11\n"
    text = serialize_bitrade(h64_bitrade.params, h64_bitrade)
    lines = text.splitlines()
    assert len(lines) == 130
    plus = [l for l in lines if l.startswith("+")]
    assert plus == sorted(plus) and lines.index(plus[-1]) + 1 == lines.index(next(l for l in lines if l[0] == "-"))


def test_golden_round_trip(golden_path, h64_bitrade):
    raw = golden_path.read_bytes()
    params, pair = read_bitrade(golden_path)
    assert pair == h64_bitrade
    assert serialize_bitrade(params, pair).encode() == raw
    assert b"\r" not in raw


def test_canonicalisation():
    text = "n 2\nq 3\n- 22\n+ 10\n# c\n+ 01\n- 11\n"
    params, pair = parse_bitrade(text)
    canon = serialize_bitrade(params, pair)
    assert canon == "n 2\nq 3\n+ 01\n+ 10\n- 11\n- 22\n"
    assert serialize_bitrade(*parse_bitrade(canon)) == canon


@given(st.integers(1, 4), st.integers(3, 12), st.data())
def test_round_trip_random(n, q, data):
    p = Params(n, q)
    word = st.tuples(*[st.integers(0, q - 1)] * n)
    words = data.draw(st.lists(word, unique=True, max_size=12))
    cut = data.draw(st.integers(0, len(words)))
    pair = SignedPair(p, set(words[:cut]), set(words[cut:]))
    assert parse_bitrade(serialize_bitrade(p, pair)) == (p, pair)


# ---------------------------------------------------------------- commands


def test_check_golden_all(golden_path, capsys, tmp_path):
    report = tmp_path / "r.txt"
    code, out, _ = run(["check", golden_path, "--report", report], capsys)
    assert code == 0
    for name in ("matrix", "projection", "weight", "spectral", "cylinder"):
        assert f"{name}: pass" in out
    assert "agreement: true" in out
    assert report.read_text() == out
    block = json.loads(out.split("--- verdicts json ---\n")[1])
    assert [v["status"] for v in block["verdicts"]] == ["pass"] * 5


def test_check_spectral_after_deleting_word(golden_path, capsys, tmp_path):
    lines = golden_path.read_text().splitlines(keepends=True)
    k = next(i for i, l in enumerate(lines) if l.startswith("+"))
    broken = tmp_path / "broken.bitrade"
    broken.write_text("".join(lines[:k] + lines[k + 1 :]))
    code, out, _ = run(["check", broken, "--definition", "spectral"], capsys)
    assert code == 1
    assert "spectral: fail at" in out
    code, _, _ = run(["check", broken], capsys)
    assert code == 1


def test_check_degenerate_parse_and_usage(tmp_path, capsys):
    empty = tmp_path / "empty.bitrade"
    empty.write_text("n 4\nq 3\n")
    assert run(["check", empty], capsys)[0] == 4
    assert run(["check", empty, "--definition", "perfect"], capsys)[0] == 0
    bad = tmp_path / "bad.bitrade"
    bad.write_text("n 2\nq 3\n+ 03\n")
    code, _, err = run(["check", bad], capsys)
    assert code == 3 and "line 3" in err
    assert run(["check", tmp_path / "missing.bitrade"], capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["check"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate"])
    assert e.value.code == 2


def test_check_n1_is_usage_error(tmp_path, capsys):
    f = tmp_path / "k3.bitrade"
    f.write_text("n 1\nq 3\n+ 0\n- 1\n")
    assert run(["check", f], capsys)[0] == 2


def test_construct_bitrade_matches_golden(golden_path, tmp_path, capsys):
    out = tmp_path / "b.bitrade"
    assert run(["construct", "bitrade", "--q", 4, "--shift", "1@1", "-o", out], capsys)[0] == 0
    assert out.read_bytes() == golden_path.read_bytes()
    code, text, _ = run(["construct", "bitrade", "--q", 4, "--shift", "1@1"], capsys)
    assert code == 0 and text.encode() == golden_path.read_bytes()


def test_construct_code_and_errors(tmp_path, capsys):
    out = tmp_path / "c.bitrade"
    assert run(["construct", "extended-code", "--q", 4, "-o", out], capsys)[0] == 0
    params, pair = read_bitrade(out)
    assert params == Params(6, 4) and len(pair.plus) == 64 and not pair.minus
    assert run(["construct", "bitrade", "--q", 4], capsys)[0] == 2
    assert run(["construct", "bitrade", "--q", 4, "--shift", "1"], capsys)[0] == 2
    assert run(["construct", "extended-code", "--q", 5], capsys)[0] == 2


def test_project(golden_path, tmp_path, capsys):
    out = tmp_path / "p.bitrade"
    assert run(["project", golden_path, "--coord", 2, "-o", out], capsys)[0] == 0
    params, pair = read_bitrade(out)
    assert params == Params(5, 4) and len(pair.plus) == len(pair.minus) == 64
    assert run(["check", out, "--definition", "perfect"], capsys)[0] == 0
    assert run(["project", golden_path, "--coord", 7], capsys)[0] == 2


def test_search_exit_codes(tmp_path, capsys, golden_path):
    outdir = tmp_path / "found"
    code, out, _ = run(["search", "--n", 2, "--q", 3, "-o", outdir], capsys)
    assert code == 0 and "found: 8" in out and "complete: true" in out
    assert sorted(p.name for p in outdir.iterdir())[0] == "bitrade_0000.bitrade"
    assert len(list(outdir.iterdir())) == 8
    code, out, _ = run(["search", "--n", 2, "--q", 3, "--mode", "brute", "--all-seeds"], capsys)
    assert code == 0 and "found: 72" in out
    code, out, _ = run(["search", "--n", 4, "--q", 3], capsys)
    assert code == 1 and "infeasible" in out
    code, out, _ = run(["search", "--n", 4, "--q", 3, "--ignore-theorem"], capsys)
    assert code == 1 and "complete: true" in out
    code, out, _ = run(["search", "--n", 6, "--q", 4, "--hint", golden_path, "--max-support", 128], capsys)
    assert code == 0 and "found: 3" in out


def test_search_incomplete_exit_code(capsys):
    code, out, _ = run(["search", "--n", 6, "--q", 4, "--budget-sec", 0], capsys)
    assert code == 5
    assert "complete: false" in out and "status: incomplete" in out


def test_params(capsys):
    code, out, _ = run(["params", "--n", 6, "--q", 4], capsys)
    assert code == 0 and out.splitlines()[0] == "feasible: true, l=4"
    code, out, _ = run(["params", "--n", 5, "--q", 3], capsys)
    assert code == 1 and "n is odd" in out
    code, out, _ = run(["params", "--n", 4, "--q", 3], capsys)
    assert code == 1 and "l=none" in out
    assert run(["params", "--n", 4, "--q", 2], capsys)[0] == 2


def test_module_entry_point(golden_path):
    res = subprocess.run(
        [sys.executable, "-m", "bitrades", "check", str(golden_path), "--definition", "cylinder"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "cylinder: pass" in res.stdout
