import subprocess
import sys

from parhull.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_and_spherehull(tmp_path, capsys):
    inst = tmp_path / "s.txt"
    cert = tmp_path / "c.txt"
    code, _, _ = run(["gen", "--family", "lb2", "--dim", "3", "--sizes", "4,2", "--out", str(inst),
                      "--certificate", str(cert)], capsys)
    assert code == 0 and inst.read_text().startswith("3 14\n")
    assert '"pass": false' not in cert.read_text()
    code, out, err = run(["spherehull", str(inst), "--oracle-directions", "100"], capsys)
    assert code == 0
    assert out.startswith("circularity,count\n")
    assert '"false_positives": 0' in err


def test_hull_and_check(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    run(["gen", "--family", "cyclic", "--dim", "4", "--sizes", "8", "--out", str(pts)], capsys)
    code, out, _ = run(["hull", str(pts)], capsys)
    assert code == 0 and "f 8 28 40 20" in out
    code, out, _ = run(["check", str(pts)], capsys)
    assert code == 0 and "FAIL" not in out and "h 1 4 10 4 1 ok" in out


def test_check_layered(tmp_path, capsys):
    f = tmp_path / "l.txt"
    f.write_text("2 2\n0 4\n0 0\n1 0\n1 1\n0 1\n1 4\n0 0\n1 0\n1 1\n0 1\n")
    code, out, _ = run(["check", "--layered", str(f)], capsys)
    assert code == 0 and "apex identity ok" in out


def test_minksum(tmp_path, capsys):
    f = tmp_path / "m.txt"
    run(["gen", "--family", "minkowski-random", "--dim", "3", "--sizes", "5,4", "--out", str(f)], capsys)
    code, out, _ = run(["minksum", str(f), "--lam", "1/3", "--check"], capsys)
    assert code == 0 and "oracle agrees" in out


def test_bounds(capsys):
    code, out, _ = run(["bounds", "--dim", "3", "--sizes", "4,5"], capsys)
    assert code == 0 and out.splitlines()[0] == "master 40"


def test_sweep_no_timing(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        code, _, _ = run(["sweep", "--family", "cyclic", "--dim", "4", "--sizes", "6 7 8", "--no-timing",
                          "--out", str(target)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "family,d,n_vector,total_faces,counts_json,bound,seconds"


def test_errors_exit_nonzero(tmp_path, capsys):
    code, _, err = run(["hull", str(tmp_path / "missing.txt")], capsys)
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n0 0\n")
    code, _, err = run(["hull", str(bad)], capsys)
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "parhull", "bounds", "--dim", "3", "--sizes", "2,2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("master 8")
