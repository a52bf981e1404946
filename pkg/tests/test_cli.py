import json
import subprocess
import sys


def run(*args, expect=0):
    r = subprocess.run(
        [sys.executable, "-m", "schubertq.cli", *args], capture_output=True, text=True
    )
    assert r.returncode == expect, (args, r.returncode, r.stderr)
    return r.stdout


def test_product_text():
    assert run("product", "E6/P1", "s'4", "s'4").strip() == "s8 + s'8 + s''8"
    assert run("product", "E6/P1", "s8", "s16", "--quantum").strip() == "q^2*s0"
    assert run("product", "E6/P1", "H", "H").strip() == "s2"
    assert run("product", "E6/P1", "H", "s''12", "--quantum").strip() == "s13 + q*s1"


def test_product_json():
    out = json.loads(run("product", "E6/P1", "s'4", "s8", "--format", "json"))
    assert out["terms"] == [{"coeff": 1, "q": 0, "w": "s'12"}]
    assert out["schema_version"] == 1


def test_misc_commands():
    assert run("degree", "E6/P1", "top").strip() == "78"
    assert run("degree", "A3/P2", "top").strip() == "2"
    assert run("min-q", "E6/P1", "pt", "pt").strip() == "2"
    assert run("dual", "E6/P1", "s'4").strip() == "s'12"
    assert run("dual", "E6/P1", "pt", "--q-degree", "1").strip() == "s''11"
    assert run("delta", "E7/P7", "s0").strip() == "3"


def test_exit_codes():
    run("product", "E6/P1", "bogus", "s8", expect=2)
    run("product", "E9/P1", "H", "H", expect=2)
    run("export", "E6/P1", "quiver-Fd", expect=2)  # missing --d
    run("product", "A4/P2", "s'2", "s'2", expect=1)  # honest partial table
    run("dual", "E6/P1", "s'4", "--q-degree", "1", expect=1)  # outside T_1


def test_verify_commands():
    out = run("verify", "A1/P1", "all")
    assert out.strip().splitlines()[-1] == "ok: A1/P1"
    payload = json.loads(run("verify", "B2/P1", "quantum", "--format", "json"))
    assert payload["passed"] is True
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_exports_deterministic(tmp_path):
    a = run("export", "E6/P1", "hasse", "--format", "dot")
    b = run("export", "E6/P1", "hasse", "--format", "dot")
    assert a == b and a.isascii()
    qj = json.loads(run("export", "E6/P1", "quiver", "--format", "json"))
    assert len(qj["vertices"]) == 16
    hj = json.loads(run("export", "E7/P7", "hasse", "--format", "json"))
    assert len(hj["nodes"]) == 56
    assert all("orbit_weight" in n for n in hj["nodes"])
    chain = json.loads(run("export", "A2/P1", "hasse", "--format", "json"))
    assert len(chain["nodes"]) == 3 and len(chain["edges"]) == 2
    out = tmp_path / "x.dot"
    run("export", "E6/P1", "quiver-F", "--out", str(out))
    assert out.read_text().startswith("digraph quiver")


def test_table_export():
    payload = json.loads(run("table", "A2/P1"))
    assert payload["basis"] == ["s0", "s1", "s2"]
    withprov = json.loads(run("table", "A3/P2", "--quantum", "--provenance"))
    assert all("provenance" in p for p in withprov["products"])


def test_short_root_redirect_message():
    r = subprocess.run(
        [sys.executable, "-m", "schubertq.cli", "product", "C3/P1", "H", "H", "--quantum"],
        capture_output=True, text=True,
    )
    assert r.returncode == 2 and "A5/P1" in r.stderr
    assert run("product", "C3/P1", "H", "H").strip() == "s2"
