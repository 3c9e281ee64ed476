import json
import shutil
import subprocess
from io import StringIO
from pathlib import Path

import numpy as np
import pytest

from rbsystems import catalog, io
from rbsystems.algebra import regular_rep
from rbsystems.cli import run
from rbsystems.exactla import array, zeros
from rbsystems.mc import cohomology_dims
from rbsystems.rbs import RbsPair

FIX = Path(__file__).parent / "fixtures"


def cli(*argv):
    out, err = StringIO(), StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), err.getvalue()


def f(name):
    return FIX / name


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(io.dumps(obj))
    return p


def test_check_rbs_exit_codes():
    code, rep, _ = cli("check-rbs", f("sq3_algebra.json"), f("sq3_regular.json"), f("sq3_pair_zero.json"))
    assert code == 0 and rep["holds"] is True and rep["command"] == "check-rbs"
    code, rep, err = cli("check-rbs", f("sq3_algebra.json"), f("sq3_regular.json"), f("sq3_pair_bad.json"))
    assert code == 1 and rep["holds"] is False
    w = rep["data"]["witness"]
    assert (w["u"], w["v"], w["identity"]) == (0, 0, 1) and w["residual"] == ["0", "0", "1"]
    assert err


@pytest.mark.parametrize("pair", ["sq3_pair_zero.json", "sq3_pair_diag.json", "sq3_pair_bad.json"])
def test_mc_check_agrees_with_check_rbs(pair):
    a = cli("check-rbs", f("sq3_algebra.json"), f("sq3_regular.json"), f(pair))
    b = cli("mc-check", f("sq3_algebra.json"), f("sq3_regular.json"), f(pair))
    assert a[0] == b[0] and a[1]["holds"] == b[1]["holds"]


def test_structure_checks(tmp_path):
    assert cli("check-leibniz", f("sq3_algebra.json"))[0] == 0
    bad = write(tmp_path, "bad.json", {"dim": 2, "bracket": [{"i": 0, "j": 0, "k": 1, "c": "1"},
                                                             {"i": 1, "j": 0, "k": 0, "c": "1"}]})
    code, rep, _ = cli("check-leibniz", bad)
    assert code == 1 and rep["data"]["witness"] is not None
    code, rep, _ = cli("check-rep", f("sq3_algebra.json"), f("sq3_regular.json"))
    assert code == 0 and rep["data"]["semidirect_compatible"] is True
    assert cli("check-quadratic", f("q4_algebra.json"), f("q4_form.json"))[0] == 0
    assert cli("check-dialgebra", f("dual_numbers.json"))[0] == 0


def test_operator_commands(tmp_path):
    alg, ident = f("sq3_algebra.json"), f("sq3_identity.json")
    code, rep, _ = cli("weighted", alg, ident, "--weight", "-1")
    assert code == 0 and len(rep["data"]["systems"]) >= 1
    assert cli("weighted", alg, ident, "--weight", "1")[0] == 1
    assert cli("check-nijenhuis", alg, "--endomap", ident)[0] == 0
    code, rep, _ = cli("check-nijenhuis", alg, "--rep", f("sq3_regular.json"), "--pair", f("sq3_pair_diag.json"))
    assert code == 0
    assert cli("check-nijenhuis", alg)[0] == 2
    assert cli("diff-rb", alg, ident, ident, "--weight", "-1")[0] == 0
    assert cli("twisted", alg, ident, ident)[0] == 1
    code, rep, _ = cli("witt", "--q", "2", "--window", "6")
    assert code == 0
    assert cli("witt", "--q", "2", "--window", "6", "--override", "1=2")[0] == 1
    proj = write(tmp_path, "proj.json", io.endomap_to_json(array([[1, 0], [0, 0]])))
    code, rep, _ = cli("dialgebra-rb", f("dual_numbers.json"), proj)
    assert code == 1 and rep["data"]["leibniz_rb_holds"] is True
    shift = write(tmp_path, "shift.json", io.endomap_to_json(array([[0, 0], [1, 0]])))
    assert cli("dialgebra-rb", f("dual_numbers.json"), shift)[0] == 0
    assert cli("dialgebra-rb", f("dual_numbers.json"), ident)[0] == 2


def test_transport_command(tmp_path):
    doc = json.loads(f("quadratic4_search.json").read_text())
    pair = write(tmp_path, "pair.json", doc["pairs"][0])
    code, rep, _ = cli("transport", f("q4_algebra.json"), f("q4_form.json"), pair)
    assert code == 0
    assert rep["data"]["input_passes"] == rep["data"]["output_passes"]


def test_complex_commands():
    args = (f("sq3_algebra.json"), f("sq3_regular.json"), f("sq3_pair_diag.json"))
    code, rep, _ = cli("cohomology", *args, "--degree", "2")
    A = catalog.square_zero3()
    D = array(np.diag([0, 0, 1]).tolist())
    expected = cohomology_dims(RbsPair(D, D.copy()), 2, A, regular_rep(A))
    assert code == 0 and rep["data"] == expected
    code, rep, _ = cli("cohomology", *args, "--degree", "1", "--with-degree0")
    assert code == 0 and rep["data"]["dim_B"] == 1
    assert cli("cohomology", *args, "--degree", "0")[0] == 2
    code, rep, _ = cli("differential", *args, "--degree", "1")
    assert code == 0 and np.shape(rep["data"]["matrix"]) == (54, 18)
    code, rep, _ = cli("differential", *args, "--cochain", f("sq3_pair_diag.json"))
    assert code == 0
    code, rep, _ = cli("derived-bracket", f("sq3_algebra.json"), f("sq3_regular.json"),
                       f("sq3_pair_diag.json"), f("sq3_pair_diag.json"))
    assert code == 0 and rep["data"]["bracket"]["arity"] == 2
    bad = (f("sq3_algebra.json"), f("sq3_regular.json"), f("sq3_pair_bad.json"))
    code, rep, err = cli("cohomology", *bad, "--degree", "1")
    assert code == 2 and rep["error"]["kind"] == "precondition" and err


def test_deformation_commands(tmp_path):
    amb = (f("ab1_algebra.json"), f("ab1_rep.json"))
    assert cli("order-check", *amb, f("ab1_deformation.json"))[0] == 0
    code, rep, _ = cli("infinitesimal", *amb, f("ab1_deformation.json"))
    assert code == 0 and rep["data"]["is_cocycle"] is True
    code, rep, _ = cli("obstruction", *amb, f("ab1_deformation.json"))
    assert code == 0 and rep["data"]["is_2cocycle"] is True
    code, rep, _ = cli("extend", *amb, f("ab1_deformation.json"), "--target", "4")
    assert code == 0 and rep["data"]["reached"] == 4 and rep["data"]["final"]["order"] == 4
    code, rep, _ = cli("equivalence", *amb, f("ab1_base.json"), f("ab1_base.json"), f("ab1_base.json"))
    assert code == 0 and rep["data"]["equivalent_at_degree1"] is True
    broken = write(tmp_path, "broken.json", {"order": 1, "coeffs": [[[["0"]], [["1"]]], [[["1"]], [["0"]]]]})
    code, rep, _ = cli("order-check", *amb, broken)
    assert code == 1 and rep["data"]["failing_order"] == 1
    assert cli("infinitesimal", *amb, broken)[0] == 2


def test_search_command(tmp_path):
    mask = write(tmp_path, "mask.json", {"R": np.ones((3, 3), bool).tolist(),
                                         "S": np.eye(3, dtype=bool).tolist()})
    argv = ("search", f("sq3_algebra.json"), f("sq3_regular.json"), "--field", "2", "--mask", mask)
    one = StringIO()
    assert run([str(a) for a in argv], out=one, err=StringIO()) == 0
    two = StringIO()
    assert run([str(a) for a in argv] + ["--workers", "2"], out=two, err=StringIO()) == 0
    assert one.getvalue() == two.getvalue()
    rep = json.loads(one.getvalue())
    assert rep["data"]["count"] == len(rep["data"]["pairs"]) > 0
    code, rep, _ = cli("search", f("sq3_algebra.json"), f("sq3_regular.json"), "--field", "3", "--budget", "10")
    assert code == 2 and "budget" in rep["error"]["message"]
    bad_mask = write(tmp_path, "badmask.json", {"R": [[1]], "S": [[1]]})
    assert cli("search", f("sq3_algebra.json"), f("sq3_regular.json"), "--field", "2", "--mask", bad_mask)[0] == 2


def test_input_errors(tmp_path):
    code, rep, err = cli("check-leibniz", tmp_path / "nope.json")
    assert code == 2 and rep["error"]["kind"] == "input" and "cannot read" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert cli("check-leibniz", broken)[0] == 2
    oob = write(tmp_path, "oob.json", {"dim": 2, "bracket": [{"i": 0, "j": 0, "k": 5, "c": "1"}]})
    code, rep, _ = cli("check-leibniz", oob)
    assert code == 2 and "out of range" in rep["error"]["message"]
    small = write(tmp_path, "small.json", io.pair_to_json(RbsPair(zeros((2, 2)), zeros((2, 2)))))
    assert cli("check-rbs", f("sq3_algebra.json"), f("sq3_regular.json"), small)[0] == 2
    assert cli("no-such-command")[0] == 2
    assert cli()[0] == 2
    assert cli("check-rbs", f("sq3_algebra.json"))[0] == 2


def test_reports_are_deterministic():
    argv = ("cohomology", f("sq3_algebra.json"), f("sq3_regular.json"), f("sq3_pair_diag.json"),
            "--degree", "1")
    a, b = StringIO(), StringIO()
    run([str(x) for x in argv], out=a, err=StringIO())
    run([str(x) for x in argv], out=b, err=StringIO())
    assert a.getvalue() == b.getvalue() and a.getvalue().endswith("\n")


@pytest.mark.skipif(shutil.which("rbsystems") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["rbsystems", "check-rbs", str(f("sq3_algebra.json")), str(f("sq3_regular.json")),
                        str(f("sq3_pair_bad.json"))], capture_output=True, text=True)
    assert p.returncode == 1
    assert json.loads(p.stdout)["holds"] is False
