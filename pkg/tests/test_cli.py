import subprocess
import sys

import pytest

from ramsey_forge.cli import RunConfig, main, run
from ramsey_forge.formats import parse_report


def call(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_ramsey_prints_the_path_value(capsys):
    status, out, _ = call(capsys, "ramsey", "--colors", "2", "--target", "path:4")
    assert status == 0 and out == "5\n"


def test_ramsey_witness_and_absence(capsys):
    status, out, _ = call(capsys, "ramsey", "--target", "path:4", "--witness", "4")
    assert status == 0 and out.startswith("4 2")
    status, out, _ = call(capsys, "ramsey", "--target", "path:4", "--witness", "5")
    assert status == 1 and out == "absent\n"


def test_ramsey_guard_is_a_usage_error(capsys):
    status, _, err = call(capsys, "ramsey", "--target", "path:5", "--witness", "9")
    assert status == 2 and "intractable" in err


def test_extremal_verdict(capsys):
    status, out, _ = call(capsys, "extremal", "--three-color", "--t1", "2", "--t2", "3", "--verify", "path:5")
    assert status == 0 and out == "verdict free\n"
    status, out, _ = call(capsys, "extremal", "--t1", "2", "--t2", "2", "--verify", "path:3")
    assert status == 1 and out == "verdict copy-found\n"


def test_embed_pipeline_writes_a_certificate(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    status, out, _ = call(capsys, "embed-pipeline", "--synthetic", "l=2,m=400,d=0.333", "--h", "grid:20x50",
                          "--gamma", "1", "--seed", "0", "--out", str(out_file))
    assert status == 0 and out.startswith("embedding certificate: 1000 vertices")
    first = out_file.read_text()
    report = parse_report(first)
    assert report["report"]["success"] and len(report["report"]["embedding"]) == 1000
    call(capsys, "embed-pipeline", "--synthetic", "l=2,m=400,d=0.333", "--h", "grid:20x50",
         "--gamma", "1", "--seed", "0", "--out", str(out_file))
    assert out_file.read_text() == first


def test_gen_bandwidth_balance(capsys, tmp_path):
    status, out, _ = call(capsys, "gen", "--target", "path:3")
    assert status == 0 and out == "3\n0 1\n1 2\n"
    status, out, _ = call(capsys, "gen", "--target", "grid:2x3", "--format", "dot")
    assert out.startswith("graph H {")
    status, out, _ = call(capsys, "bandwidth", "--target", "grid:2x3", "--exact")
    assert status == 0 and out == "bandwidth 2 (exact)\n"
    status, out, _ = call(capsys, "balance", "--target", "grid:8x16", "--lhat", "4")
    assert status == 0 and "bounds ok" in out


def test_regularity_and_reduced(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("\n".join(" ".join("1" if i == j else "0" for j in range(8)) for i in range(8)))
    status, out, _ = call(capsys, "regularity", "--matrix", str(m), "--eps", "0.2", "--method", "exact")
    assert status == 1 and out.startswith("irregular")
    status, out, _ = call(capsys, "regularity", "--random", "200,0.5", "--eps", "0.2", "--super", "0.333")
    assert status == 0 and out.startswith("super-regular")
    status, out, _ = call(capsys, "reduced", "--k", "20", "--seed", "1")
    assert status == 0 and out.startswith("matching of")


def test_bad_input_exits_two(capsys, tmp_path):
    assert call(capsys, "gen", "--target", "blob:3")[0] == 2
    assert call(capsys, "reduced", "--coloring", str(tmp_path / "nope"))[0] == 2
    assert call(capsys, "bandwidth", "--target", "path:40", "--exact")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["ramsey", "--colors", "5"])
    assert info.value.code == 2


def test_run_accepts_a_config(tmp_path):
    import io
    buf = io.StringIO()
    assert run(RunConfig("ramsey", {"colors": 2, "target": "path:3", "targets": None, "n_max": 12,
                                    "witness": None}), stdout=buf) == 0
    assert buf.getvalue() == "3\n"


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "ramsey_forge", "ramsey", "--target", "path:5"],
                          capture_output=True, text=True, timeout=120)
    assert done.returncode == 0 and done.stdout == "6\n"
