import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qrelations.cli import main
from qrelations.states import PHI_PLUS, projector, write_matrix

S3 = repr(1 / math.sqrt(3))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_profile_horodecki(capsys):
    code, out, _ = run(capsys, "profile", "--family", "horodecki", "--eps", "0.5")
    assert code == 0
    got = json.loads(out)
    assert set(got) == {"concurrence", "d2", "m", "n", "purity"}
    assert got["concurrence"] == pytest.approx(0.5, abs=1e-12)
    assert got["d2"] == pytest.approx(0.25, abs=1e-12)
    assert got["purity"] == pytest.approx(0.5, abs=1e-12)
    assert got["n"] == 0.0


def test_profile_matrix_files(capsys, tmp_path):
    bell = tmp_path / "bell.txt"
    write_matrix(bell, projector(PHI_PLUS))
    code, out, _ = run(capsys, "profile", "--matrix", str(bell))
    assert code == 0
    assert json.loads(out)["n"] == pytest.approx(2 * math.sqrt(2) - 2, abs=1e-12)

    bad = tmp_path / "notpsd.txt"
    bad.write_text("1 0 0 0\n0 -0.5 0 0\n0 0 0.5 0\n0 0 0 0\n")
    code, _, err = run(capsys, "profile", "--matrix", str(bad))
    assert code == 3
    assert "invalid state" in err

    garbled = tmp_path / "garbled.txt"
    garbled.write_text("1 0\nzero 1\n")
    assert run(capsys, "profile", "--matrix", str(garbled))[0] == 2
    assert run(capsys, "profile", "--matrix", str(tmp_path / "missing.txt"))[0] == 2


def test_profile_state_json_and_pairs(capsys):
    spec = json.dumps({"family": "w", "alpha": 1 / math.sqrt(3), "beta": 1 / math.sqrt(3), "gamma": 1 / math.sqrt(3)})
    code, out, _ = run(capsys, "profile", "--state", spec)
    assert code == 0
    got = json.loads(out)
    assert set(got) == {"12", "13", "23"}
    assert got["23"]["concurrence"] == pytest.approx(2 / 3, abs=1e-12)
    code, out, _ = run(capsys, "profile", "--state", spec, "--pair", "13")
    assert json.loads(out)["d2"] == pytest.approx(1 / 9, abs=1e-12)
    assert run(capsys, "profile", "--state", "{not json")[0] == 2
    assert run(capsys, "profile", "--state", '{"family": "w", "alpha": 0.6, "beta": 0.8, "gamma": 0.1}')[0] == 2
    assert run(capsys, "profile")[0] == 2


def test_channel(capsys):
    code, out, _ = run(capsys, "channel", "--alpha", S3, "--beta", S3, "--gamma", S3, "--p", "0.25")
    assert code == 0
    pairs = json.loads(out)["pairs"]
    assert pairs["13"]["before"]["concurrence"] == pytest.approx(2 / 3, abs=1e-12)
    assert pairs["13"]["after"]["concurrence"] == pytest.approx(1 / 6, abs=1e-12)
    for pair in pairs.values():
        assert pair["after"]["d2"] == pytest.approx(pair["before"]["d2"], abs=1e-12)

    code, out, _ = run(capsys, "channel", "--alpha", "0.6", "--beta", "0.8", "--gamma", "0", "--p", "0.5")
    assert all(p["after"]["concurrence"] == pytest.approx(0.0, abs=1e-15) for p in json.loads(out)["pairs"].values())

    code, out, _ = run(capsys, "channel", "--alpha", "0.6", "--beta", "0.8", "--gamma", "0", "--p", "0")
    for p in json.loads(out)["pairs"].values():
        assert p["after"] == pytest.approx(p["before"], abs=1e-15)

    assert run(capsys, "channel", "--alpha", "0.6", "--beta", "0.8", "--gamma", "0.1", "--p", "0.1")[0] == 2
    assert run(capsys, "channel", "--alpha", "0.6", "--beta", "0.8", "--gamma", "0", "--p", "1.1")[0] == 2


def test_xxz_csv(capsys):
    code, out, _ = run(capsys, "xxz", "--delta", "1", "--steps", "5")
    assert code == 0
    assert out.splitlines()[0] == "step,J,delta,q,E0,C13,D2_13,P13,N13,C12,D2_12,P12,N12"
    rows = read_csv(out)
    assert [float(r["delta"]) for r in rows] == [1.0] * 6
    for r in rows:
        for tag in ("13", "12"):
            defect = float(r[f"D2_{tag}"]) + float(r[f"C{tag}"]) ** 2 - float(r[f"P{tag}"])
            assert abs(defect) <= 1e-10
    code, out, _ = run(capsys, "xxz", "--delta", "0", "--steps", "3")
    assert [float(r["J"]) for r in read_csv(out)] == pytest.approx([1, 0.5, 0.25, 0.125], abs=1e-15)
    assert run(capsys, "xxz", "--delta", "-1", "--steps", "3")[0] == 2


def test_regions_and_curves(capsys):
    code, out, _ = run(capsys, "regions", "--nc", "10", "--nd", "10")
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 110
    assert {r["region"] for r in rows} <= {"BNBS_ONLY", "BLBS_ONLY", "OUTSIDE"}
    code, out, _ = run(capsys, "curves", "--points", "11", "--y", "0.5")
    assert code == 0
    assert len(read_csv(out)) == 11


def test_scan_errors(capsys):
    assert run(capsys, "scan", "--family", "W", "--samples", "0", "--seed", "1")[0] == 2
    assert run(capsys, "scan", "--family", "W", "--samples", "5")[0] == 2
    assert run(capsys, "scan", "--family", "GHZ", "--samples", "5", "--seed", "1")[0] == 2
    assert run(capsys, "scan", "--family", "W", "--samples", "5", "--seed", str(2 ** 64))[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_scan_json_format(capsys):
    code, out, _ = run(capsys, "scan", "--family", "horodecki", "--samples", "3", "--seed", "1", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 3 and rows[0]["family"] == "HORODECKI"


def test_scan_byte_identical_across_processes(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        subprocess.run(
            [sys.executable, "-m", "qrelations", "scan", "--family", "W", "--seed", "42", "--samples", "300",
             "--out", str(path)],
            check=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].startswith(b"family,pair,p1,p2,p3,noise,C,D2,N,P,region\n")
    assert b"\r" not in outs[0]


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--samples", "2000", "--seed", "42")
    assert code == 0
    summary = json.loads(out.strip().splitlines()[-1])
    assert summary["failed"] == 0
    # the noiseless bracket does not hold for every W pair: exit 1 with a counterexample
    code, out, _ = run(capsys, "verify", "boundaries", "--samples", "2000", "--seed", "42")
    assert code == 1
    line = next(l for l in out.splitlines() if l.startswith("first counterexample"))
    ce = json.loads(line.split(": ", 1)[1])
    assert {"alpha", "beta", "gamma", "pair"} <= set(ce)
