import json
import subprocess
import sys

import pytest

from painleve_nodal import rootlat
from painleve_nodal.cli import parse_assignments, parse_path, run
from painleve_nodal.tables import TABLE2


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_assignments():
    assert parse_assignments("k0=1,kinf=2,3") == {"k0": 1, "kinf": 2 + 3j}
    assert parse_assignments("alpha=-0.5") == {"alpha": -0.5}


def test_parse_path():
    assert parse_path("0,1,1+1j") == [0, 1, 1 + 1j]


def test_table2_json(capsys):
    code, out, _ = call(capsys, "lattice", "table2", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    got = {int(r["key"]): {rootlat.RootSystemType.parse(s) for s in r["types"]} for r in rows}
    want = {k: {rootlat.RootSystemType.parse(s) for s in v} for k, v in TABLE2.items()}
    assert got == want


def test_riccati_list_json(capsys):
    code, out, _ = call(capsys, "riccati", "list", "--type", "E6", "--format", "json")
    assert code == 0
    assert [l["name"] for l in json.loads(out)["loci"]] == ["C0", "Cinf", "Ck0=kinf"]


def test_integrate_on_locus(tmp_path, capsys):
    dest = tmp_path / "traj.csv"
    code, out, _ = call(capsys, "painleve", "integrate", "--type", "E6", "--params", "k0=0,kinf=1",
                        "--init", "chart=0,x=0,y=1", "--path", "0,1", "--out", str(dest))
    assert code == 0
    assert json.loads(out)["status"] == "Completed"
    rows = dest.read_text().splitlines()
    assert rows[0] == "t_re,t_im,chart,x_re,x_im,y_re,y_im"
    assert all(abs(float(r.split(",")[3])) < 1e-6 for r in rows[1:])


def test_integrate_to_stdout_is_deterministic(capsys):
    argv = ["painleve", "integrate", "--type", "E7", "--params", "alpha=0.3",
            "--init", "chart=0,x=0.1,y=0.2", "--path", "0,3,3+2j"]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first[0] == 0 and first == second


def test_usage_errors_exit_2(capsys):
    assert call(capsys, "painleve", "integrate", "--type", "E6", "--params", "k0=0,kinf=1",
                "--init", "chart=0,x=0,y=1", "--path", "0,1", "--rho", "-1")[0] == 2
    assert call(capsys, "lattice", "table2", "--bogus")[0] == 2
    code, _, err = call(capsys, "painleve", "integrate", "--type", "E6", "--params", "k0=0",
                        "--init", "chart=0,x=0,y=1", "--path", "0,1")
    assert code == 2 and "kinf" in err
    code, _, err = call(capsys, "riccati", "solve", "--type", "E6", "--locus", "C0",
                        "--x0", "1", "--path", "0,1")
    assert code == 2 and "kinf" in err


def test_domain_errors_exit_1(capsys):
    code, _, err = call(capsys, "lattice", "embed", "--type", "Q9")
    assert code == 1 and "LatticeError" in err
    assert call(capsys, "riccati", "nonexistence", "--type", "E7")[0] == 2


def test_embed_certificate(capsys):
    code, out, _ = call(capsys, "lattice", "embed", "--type", "E7+A1", "--format", "json")
    assert code == 0
    cert = json.loads(out)
    assert cert["type"] == "E7+A1" and len(cert["vectors"]) == 8


def test_modulidim(capsys):
    assert call(capsys, "lattice", "modulidim", "--r", "5", "--s", "4")[1].strip() == "1"
    assert call(capsys, "lattice", "modulidim", "--r", "9", "--s", "0")[1].strip() == "1"


def test_opcheck(tmp_path, capsys):
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps({"r": 9, "s": 0, "curves": []}))
    code, _, err = call(capsys, "lattice", "opcheck", "--file", str(f))
    assert code == 1 and "MalformedConfig" in err


def test_config_command(capsys):
    code, out, _ = call(capsys, "riccati", "config", "--type", "D4",
                        "--params", "k0=0,k1=0,kt=0,kinf=1")
    assert code == 0
    assert "configuration: D4" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "painleve_nodal", "lattice", "modulidim",
                          "--r", "5", "--s", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "1"


def test_module_entry_point_usage():
    res = subprocess.run([sys.executable, "-m", "painleve_nodal", "nonsense"],
                         capture_output=True, text=True)
    assert res.returncode == 2 and "usage" in res.stderr
