import io
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from burstlattice.cli import CodeSpecFile, format_ball, parse_ball, run, table_report
from burstlattice.errorball import BallSpec
from burstlattice.errors import ParseError
from burstlattice.groups import SplittingSequence, cyclic, direct_sum
from burstlattice.search import GOOD_Q_220_REFERENCE, TABLE2_REFERENCE, TABLE3, TABLE4, TABLE5

GOLDEN = Path(__file__).parent / "golden"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_examples():
    code, out, _ = cli("verify", "--ball", "n=3 b=2 kplus=1 kminus=0 cyclic=true", "--group", "Z7", "--seq", "1,2,4")
    assert code == 0 and out.startswith("OK")
    code, out, _ = cli("verify", "--ball", "n=3 b=2 kplus=1 kminus=0 cyclic=true", "--group", "Z7", "--seq", "1,1,1")
    assert code == 1 and "collision: 0,1,0 and 1,0,0" in out
    code, out, _ = cli("verify", "--ball", "E°(3,2,1,0)", "--group", "Z8", "--seq", "1,2,4")
    assert code == 1 and "not perfect" in out


def test_construct_exit_codes(tmp_path):
    assert cli("construct", "--kind", "c210", "--n", "5")[0] == 2
    code, out, _ = cli("construct", "--kind", "c210", "--n", "4")
    assert code == 0 and out.splitlines()[2] == "1,3,2,6"
    assert cli("construct", "--kind", "nc210", "--n", "1")[0] == 2
    code, out, _ = cli("construct", "--kind", "salpha", "--q", "19", "--kplus", "1", "--kminus", "1")
    assert code == 3 and out.startswith("none")
    path = tmp_path / "c.txt"
    code, out, _ = cli("construct", "--kind", "salpha", "--q", "13", "--verify", "--out", str(path))
    assert code == 0 and path.read_text() == out
    assert cli("verify", "--code", str(path))[0] == 0


def test_ball_listing():
    code, out, _ = cli("ball", "--n", "3", "--b", "2", "--cyclic", "--list")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "E°(3,2,1,0) size=7 e=2" and len(lines) == 8
    assert cli("ball", "--ball", "E(200,2,1,1)")[1].startswith("E(200,2,1,1) size=1197")
    assert cli("ball", "--n", "3", "--b", "0")[0] == 2


def test_search_exit_codes(tmp_path):
    code, out, _ = cli("search", "--ball", "E°(5,2,2,0)", "--group-order", "31")
    assert code == 3 and out.startswith("none: Z31")
    code, out, _ = cli("search", "--ball", "E(3,2,2,0)", "--group-order", "15", "--all-groups")
    assert code == 0 and out.splitlines()[1] == "Z3xZ5"
    code, out, _ = cli("search", "--ball", "E(3,2,2,0)", "--group", "Z15")
    cs = CodeSpecFile.parse(out)
    assert code == 0 and cs.sequence.values() == [1, 5, 4]
    code, _, err = cli("search", "--ball", "E°(5,2,2,0)", "--group", "Z31", "--node-budget", "100")
    assert code == 4 and "budget" in err
    ck = tmp_path / "ck.json"
    assert cli("search", "--ball", "E°(4,2,1,1)", "--group", "Z25", "--checkpoint", str(ck))[0] == 0
    assert ck.exists()
    assert cli("search", "--ball", "E°(4,2,1,1)", "--group", "Z25", "--jobs", "2")[0] == 0


def test_parse_and_usage_errors():
    assert cli("verify", "--ball", "E°(3,2,1,0)", "--group", "Q7", "--seq", "1")[0] == 5
    assert cli("verify", "--ball", "bogus", "--group", "Z7", "--seq", "1,2,4")[0] == 5
    assert cli("verify", "--ball", "E°(3,2,1,0)", "--group", "Z7", "--seq", "1,x,4")[0] == 5
    code, _, err = cli("frobnicate")
    assert code == 64 and "usage" in err
    assert cli()[0] == 64
    assert cli("verify")[0] == 64
    assert cli("simulate", "--code", "x", "--trials", "3")[0] == 64


def test_decode_and_simulate(tmp_path):
    path = tmp_path / "z7.txt"
    path.write_text("ball n=3 b=2 kplus=1 kminus=0 cyclic=true\nZ7\n1,2,4\n")
    code, out, _ = cli("decode", "--code", str(path), "--y", "1,3,1")
    assert code == 0 and out.splitlines() == ["codeword 1,3,0", "error 0,0,1"]
    code, out, _ = cli("simulate", "--code", str(path), "--trials", "200", "--seed", "5")
    assert code == 0 and "fails 0" in out
    assert out == cli("simulate", "--code", str(path), "--trials", "200", "--seed", "5")[1]
    assert cli("decode", "--code", str(tmp_path / "missing.txt"), "--y", "1")[0] == 5


def test_ball_format_round_trip():
    for spec in [BallSpec(3, 2, 1, 0, True), BallSpec(10, 3, 2, 1, False)]:
        assert parse_ball(format_ball(spec)) == spec
    assert parse_ball("E°(4,2,1,1)") == parse_ball("Ec(4,2,1,1)") == BallSpec(4, 2, 1, 1, True)
    with pytest.raises(ParseError):
        parse_ball("n=3 b=2")


@given(st.integers(2, 6), st.booleans(), st.sampled_from([(1, 0), (1, 1), (2, 0)]),
       st.sampled_from([cyclic(7), cyclic(31), direct_sum(3, 3), direct_sum(2, 2, 5)]), st.data())
def test_code_spec_file_round_trip(n, cyc, k, G, data):
    vals = data.draw(st.lists(st.integers(0, G.order - 1), min_size=n, max_size=n))
    s = SplittingSequence(G, tuple(vals))
    text = CodeSpecFile(BallSpec(n, 2, k[0], k[1], cyc), s).format()
    assert CodeSpecFile.parse(text).format() == text
    assert CodeSpecFile.parse("# comment\n" + text).format() == text


@pytest.mark.parametrize("which", ["2", "3", "4", "5", "goodq220"])
def test_table_reports_match_golden(which):
    code, out, _ = cli("tables", "--which", which, "--qmax", "1000")
    assert code == 0
    assert out == (GOLDEN / f"table_{which}.txt").read_text()


def test_golden_files_hold_reference_values():
    t2 = (GOLDEN / "table_2.txt").read_text().splitlines()
    for thm, (good_count, bad) in TABLE2_REFERENCE.items():
        assert f"{thm} q_max=1000 good_count={good_count} bad_count={len(bad)}" in t2
        assert f"{thm} bad={','.join(map(str, bad))}" in t2
    assert (GOLDEN / "table_goodq220.txt").read_text().splitlines()[1] == \
        "goodq220 good=" + ",".join(map(str, GOOD_Q_220_REFERENCE))
    seqs = {"3": [r[3] for r in TABLE3], "4": list(TABLE4.values()), "5": list(TABLE5.values())}
    for which, rows in seqs.items():
        lines = (GOLDEN / f"table_{which}.txt").read_text().splitlines()
        assert len(lines) == len(rows)
        for line, seq in zip(lines, rows):
            assert f" seq={','.join(map(str, seq))} verified=yes" in line


def test_table_report_with_search():
    text = table_report("3", confirm_search=True)
    assert text.count("search=") == 4 and "search=none" not in text


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "burstlattice.cli", "verify", "--ball", "E°(3,2,1,0)",
                           "--group", "Z7", "--seq", "1,2,4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "OK" in proc.stdout
