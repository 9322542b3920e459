import json
import subprocess
import sys


from paperfold.cli import main, read_word, write_word
from paperfold.curves import Curve, folding_curve


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_seq(capsys):
    assert run(capsys, "gen-seq", "--dirs", "-++") == (0, "-+++--+\n", "")


def test_gen_seq_file_roundtrip(capsys, tmp_path):
    f = tmp_path / "w.txt"
    assert run(capsys, "gen-seq", "--dirs", "+-+-", "--out", str(f))[0] == 0
    text = f.read_text()
    assert text.startswith("# index origin 1\n")
    w = read_word(text)
    assert len(w) == 15
    code, out, _ = run(capsys, "check-seq", "--file", str(f))
    assert code == 0
    assert "n-folding: yes (n=4)" in out


def test_check_seq(capsys):
    code, out, _ = run(capsys, "check-seq", "+++")
    assert code == 0 and "finite folding: yes" in out
    code, out, _ = run(capsys, "check-seq", "++++", "--strict")
    assert code == 1 and "finite folding: no" in out
    code, out, _ = run(capsys, "check-seq", "--word", "-+-")
    assert code == 0 and "length 3" in out
    assert run(capsys, "check-seq", "+x+")[0] == 2


def test_word_file_helpers():
    assert read_word(write_word((1, -1, -1))) == (1, -1, -1)


def test_complexity(capsys):
    assert run(capsys, "complexity", "--spec", "positive", "--t", "6") == \
        (0, "23\n", "")
    code, out, _ = run(capsys, "complexity", "--spec", "alternating",
                       "--t", "8", "--all")
    assert out.split("\n")[6] == "7 28"
    assert run(capsys, "complexity", "--spec", "nope", "--t", "3")[0] == 2


def test_curve_derive_antiderive(capsys, tmp_path):
    c = tmp_path / "c.json"
    d = tmp_path / "d.json"
    a = tmp_path / "a.json"
    assert run(capsys, "curve", "--dirs", "+-+", "--out", str(c))[0] == 0
    rec = json.loads(c.read_text())
    assert Curve.from_record(rec) == folding_curve((1, -1, 1))
    assert run(capsys, "derive", str(c), str(d))[0] == 0
    der = Curve.from_record(json.loads(d.read_text()))
    assert der.level == 1 and der.turns == (-1, 1, 1)
    assert run(capsys, "antiderive", str(d), str(a), "--which", "1")[0] == 0
    back = Curve.from_record(json.loads(a.read_text()))
    # first turn +1: the antiderivative on the right
    assert back == folding_curve((1, -1, 1))
    code, _, err = run(capsys, "derive", str(c), "--times", "5")
    assert code == 1 and "not derivable" in err


def test_curve_svg(capsys, tmp_path):
    svg = tmp_path / "c.svg"
    assert run(capsys, "curve", "--turns", "+-", "--svg", str(svg))[0] == 0
    assert svg.read_text().count("<path") == 3
    assert run(capsys, "curve", "--turns", "+-", "--dir", "Q")[0] == 2
    assert run(capsys, "curve")[0] == 2


def test_cover_and_render(capsys, tmp_path):
    f = tmp_path / "cov.json"
    s = tmp_path / "cov.svg"
    code, _, err = run(capsys, "cover", "--construction", "positive",
                       "--half-width", "8", "--out", str(f), "--validate")
    assert code == 0 and "valid: True, curves: 2" in err
    assert json.loads(f.read_text())["window"] == [-8, -8, 8, 8]
    assert run(capsys, "render", str(f), str(s), "--tiles")[0] == 0
    assert s.read_text().startswith("<?xml")
    assert run(capsys, "cover", "--construction", "positive",
               "--half-width", "6")[0] == 2


def test_bad_input_file(capsys, tmp_path):
    f = tmp_path / "junk.json"
    f.write_text("{not json")
    assert run(capsys, "render", str(f))[0] == 2
    f.write_text("{}")
    assert run(capsys, "derive", str(f))[0] == 2


def test_verify_verbs(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and len(out.strip().split("\n")) == 26
    out_file = tmp_path / "rep.jsonl"
    code, out, _ = run(capsys, "verify", "--check", "nonperiodic",
                       "--check", "parallel-copies", "--out", str(out_file))
    assert code == 0
    lines = [json.loads(x) for x in out.strip().split("\n")]
    assert [x["check"] for x in lines] == ["nonperiodic", "parallel-copies"]
    assert all(x["outcome"] == "pass" for x in lines)
    assert len(out_file.read_text().strip().split("\n")) == 2
    assert run(capsys, "verify", "--check", "bogus")[0] == 2


def test_console_entry():
    r = subprocess.run([sys.executable, "-m", "paperfold.cli", "gen-seq",
                        "--dirs", "++"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "++-\n"
