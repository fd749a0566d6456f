import json
import subprocess


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def test_missing_demands(cli):
    r = run(cli, "solve")
    assert r.returncode == 1
    assert "--demands" in r.stderr


def test_bad_destination(cli):
    r = run(cli, "generate", "--dest", 99)
    assert r.returncode == 1
    assert r.stderr.startswith("error:")


def test_solve_exit_codes(cli, data_dir):
    ok = run(cli, "solve", "--topology", "builtin:toy", "--demands", data_dir / "toy.dem", "--mode", "bypass")
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["metrics"]["wavelength_count"] == 2
    tight = run(cli, "solve", "--topology", "builtin:toy", "--demands", data_dir / "toy.dem",
                "--mode", "bypass", "--max-wavelengths", 1)
    assert tight.returncode == 2


def test_validate_tampered(cli, data_dir, tmp_path):
    dem = data_dir / "reference_dest1.dem"
    out = tmp_path / "occin.json"
    assert run(cli, "solve", "--demands", dem, "--deterministic", "--out", out).returncode == 0
    assert run(cli, "validate", "--demands", dem, "--solution", out).returncode == 0

    doc = json.loads(out.read_text())
    for rec in doc["demands"]:
        for seg in rec["segments"]:
            seg["lambda"] = 1
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    r = run(cli, "validate", "--demands", dem, "--solution", bad)
    assert r.returncode == 2
    rules = {v["rule"] for v in json.loads(r.stdout)["violations"]}
    assert "R2" in rules


def test_generate_then_solve(cli, tmp_path):
    dem = tmp_path / "d4.dem"
    assert run(cli, "generate", "--dest", 4, "--seed", 3, "--out", dem).returncode == 0
    r = run(cli, "solve", "--demands", dem, "--output", "csv")
    assert r.returncode == 0
    assert r.stdout.splitlines()[0].startswith("kind,index")
