"""End-to-end checks of the CLI: payload values, formats, manifests,
schema conformance, determinism, and exit codes."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1] if len(sys.argv) > 1 else os.environ["FFDYN_CLI"]
SCHEMA_PATH = sys.argv[2] if len(sys.argv) > 2 else os.environ["FFDYN_SCHEMA"]
SCHEMA = json.loads(pathlib.Path(SCHEMA_PATH).read_text())


def run(*args, env=None, expect=0):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    assert proc.returncode == expect, (
        f"{args}: expected exit {expect}, got {proc.returncode}\n"
        f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
    )
    return proc


def run_json(*args, **kw):
    payload = json.loads(run(*args, **kw).stdout)
    jsonschema.validate(payload, SCHEMA)
    return payload


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol


def test_field_points_csv():
    out = run("field-points", "--p", "5", "--n", "1", "--schedule", "linear",
              "--M", "4").stdout
    assert "\r" not in out
    assert out.splitlines() == ["x0", "2/5", "4/5", "3/5", "1/5"]


def test_field_points_json():
    j = run_json("field-points", "--p", "5", "--M", "4", "--schedule", "linear",
                 "--format", "json")
    assert j["kind"] == "field-points"
    assert [row[0] for row in j["points"]] == [2, 4, 3, 1]


def test_counterexample():
    j = run_json("counterexample-2b", "--p", "13")
    assert j["count_J"] == 3
    assert approx(j["observed_freq"], 0.25)
    assert j["implication_holds"] is True


def test_avg_order():
    j = run_json("avg-order", "--g", "2", "--L", "10")
    assert j["T"] == 1.6


def test_arith_json_and_csv():
    assert run_json("q-average", "--L", "2")["Q"] == 1.25
    assert approx(run_json("avg-divisor", "--K", "6")["D"], 77.0 / 36.0)
    assert approx(run_json("sum-lambda", "--L", "3")["lambda_avg"], 4.0 / 3.0, 1e-10)
    assert run_json("prim-root-count", "--g", "3", "--x", "10")["count"] == 3

    csv = run("avg-order", "--g", "2", "--L", "10,100", "--format", "csv").stdout
    lines = csv.splitlines()
    assert lines[0] == ("L,T_g,T_g_norm,sumLambda,ratio,Qavg,Qavg_norm,"
                        "D,D_norm_sqrt,D_norm_arnold")
    assert len(lines) == 3
    assert lines[1].startswith("10,1.6,")
    assert lines[2].split(",")[0] == "100"


def test_orbit():
    j = run_json("orbit", "--mode", "pow", "--L", "7", "--x", "3", "--e", "2")
    assert (j["tail"], j["cycle"]) == (1, 2)
    assert j["predicted_cycle"] == 2
    assert j["predicted_tail"] is None

    j = run_json("orbit", "--mode", "mul", "--L", "9", "--x", "1", "--g", "2")
    assert (j["tail"], j["cycle"]) == (0, 6)
    assert (j["predicted_tail"], j["predicted_cycle"]) == (0, 6)


def test_expsum_and_ks():
    j = run_json("expsum", "--p", "17", "--schedule", "linear", "--M", "16")
    assert approx(j["abs"], 1.0)

    j = run_json("ks-bound", "--p", "5", "--schedule", "linear", "--M", "4",
                 "--L", "2")
    assert approx(j["rhs"], 11.0 / 12.0, 1e-10)
    assert approx(j["discrepancy"], 0.2, 1e-10)
    assert j["holds"] is True


def test_discrepancy():
    j = run_json("discrepancy", "--p", "5", "--schedule", "linear", "--M", "4")
    assert j["method"] == "exact"
    assert approx(j["value"], 0.2, 1e-10)


def test_shell_volume():
    region = '{"kind":"box","lo":[0,0],"hi":[1,1]}'
    j = run_json("shell-volume", "--region", region, "--resolution", "0.1")
    assert j["vol_plus"] == 0.0
    assert j["vol_minus"] == 0.0


def test_avg_prim_deviation():
    j = run_json("avg-prim-deviation", "--p", "5", "--poly", "0,1", "--M", "2",
                 "--region", '{"kind":"box","lo":[0],"hi":[0.5]}')
    assert approx(j["value"], 0.5)


def test_manifest_and_determinism():
    with tempfile.TemporaryDirectory() as tmp:
        out_a = pathlib.Path(tmp) / "a.json"
        out_b = pathlib.Path(tmp) / "b.json"
        args = ["discrepancy", "--p", "101", "--schedule", "linear", "--M", "100",
                "--mode", "mc", "--samples", "5000", "--seed", "9"]
        run(*args, "--out", str(out_a))
        run(*args, "--out", str(out_b))
        payload_a = out_a.read_bytes()
        assert payload_a == out_b.read_bytes(), "payloads must be byte-identical"

        manifest = json.loads((pathlib.Path(tmp) / "a.json.manifest.json").read_text())
        jsonschema.validate(manifest, SCHEMA)
        assert manifest["command"] == "discrepancy"
        assert manifest["params"]["p"] == "101"
        assert manifest["params"]["seed"] == "9"
        checksum = f"fnv1a64:{fnv1a64(payload_a):016x}"
        assert manifest["payload_checksum"] == checksum

        payload = json.loads(payload_a)
        jsonschema.validate(payload, SCHEMA)
        assert payload["method"] == "monte-carlo"


def test_exit_codes():
    proc = run("field-points", "--p", "6", "--schedule", "linear", "--M", "4",
               expect=2)
    assert "prime" in proc.stderr

    proc = run("counterexample-2b", "--p", "7", expect=2)
    assert "primitive" in proc.stderr

    proc = run("avg-order", "--g", "2", "--L", "10", "--bogus-flag", expect=2)
    assert "usage error" in proc.stderr

    proc = run("expsum", "--p", "1009", "--schedule", "linear", "--M", "50",
               env={"FFDYN_MAX_ENUM": "100"}, expect=2)
    assert "cap" in proc.stderr

    proc = run("discrepancy", "--p", "5", "--schedule", "linear", "--M", "4",
               "--format", "csv", expect=2)
    assert "json" in proc.stderr

    run("--version")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"{t.__name__} ok")
    print(f"cli ok ({len(tests)} tests)")


if __name__ == "__main__":
    main()
