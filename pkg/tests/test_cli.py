import io
import json
from fractions import Fraction as F

import pytest

from affine_homog.cli import run

SPHERE = ["--surface", "W^2 = X*Y + Z^2 + 1", "--basepoint", "1,0,0,0"]


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_sphere_two_jet(capsys):
    code, out, _ = invoke(capsys, "expand", *SPHERE,
                          "--order", "2", "--format", "json")
    assert code == 0
    jet = json.loads(out)
    terms = {tuple(t["m"]): t["c"] for t in jet["terms"]}
    assert terms == {(1, 1, 0): "1/2", (0, 0, 2): "1/2"}


def test_verify_catalog_entry(capsys):
    code, out, _ = invoke(capsys, "verify", "--entry", "N7",
                          "--alpha", "12/5", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert rep["details"]["isotropy_dim"] == 1


def test_verify_normal_form_with_parameter(capsys):
    code, out, _ = invoke(capsys, "verify", "--entry", "I0.1",
                          "--b", "6", "--order", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_symmetry_round_trip_through_stdin(capsys, monkeypatch):
    surface = ["--surface", "W = X*Y + Z^2 + X^3",
               "--basepoint", "0,0,0,0", "--order", "5"]
    code, expanded, _ = invoke(capsys, "expand", *surface, "--format", "json")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(expanded))
    code, via_jet, _ = invoke(capsys, "symmetry", "--jet", "-",
                              "--format", "json")
    assert code == 0
    code, one_shot, _ = invoke(capsys, "symmetry", *surface,
                               "--format", "json")
    assert code == 0
    assert via_jet == one_shot


def test_output_is_deterministic(capsys):
    runs = [invoke(capsys, "discover", "--case", "I1", "--format", "json")
            for _ in range(2)]
    assert runs[0] == runs[1]
    comps = json.loads(runs[0][1])["components"]
    assert [c["normal_form"] for c in comps] == ["I1.1", "I1.2"]


def test_normalize_real_signature_mismatch_exits_one(capsys):
    code, out, _ = invoke(capsys, "normalize",
                          "--surface", "W = X^2 + Y^2 + Z^2",
                          "--basepoint", "0,0,0,0",
                          "--real", "hyperbolic", "--format", "json")
    assert code == 1
    assert json.loads(out)["signature"] == "elliptic"


def test_symmetry_failure_exits_one(capsys):
    code, _, _ = invoke(capsys, "symmetry",
                        "--surface", "W = X*Y + Z^2 + X^4*Y^2",
                        "--basepoint", "0,0,0,0", "--order", "6")
    assert code == 1


def test_usage_errors_exit_two(capsys):
    for argv in (["expand"],                           # missing --surface
                 ["expand", *SPHERE, "--order", "1"],  # order too small
                 ["verify", "--entry", "N99"],
                 ["expand", *SPHERE[:2], "--basepoint", "1,0,0"],
                 ["expand", *SPHERE, "--alpha", "x"],
                 ["discover", "--case", "bogus"]):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 2
        capsys.readouterr()


def test_math_errors_exit_one(capsys):
    # excluded alpha value for N7 is a mathematical rejection, not usage
    code, _, err = invoke(capsys, "verify", "--entry", "N7", "--alpha", "2")
    assert code == 1 and "error" in err


def test_order_warning_on_stderr(capsys):
    code, _, err = invoke(capsys, "expand", *SPHERE, "--order", "11")
    assert code == 0
    assert "warning" in err and "11" in err


def test_catalog_listing_and_verify_all(capsys):
    code, out, _ = invoke(capsys, "catalog", "--format", "json")
    assert code == 0
    listing = json.loads(out)
    assert len(listing) == 20 and listing["N1"]["expected_isotropy"] == 4
    code, out, _ = invoke(capsys, "catalog", "--verify-all",
                          "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert len(rep["entries"]) == 20
    assert all(e["passed"] for e in rep["entries"] + rep["bookkeeping"])


def test_real_subcommand(capsys):
    code, out, _ = invoke(capsys, "real", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_text_format_renders_without_json_noise(capsys):
    code, out, _ = invoke(capsys, "verify", "--entry", "N1",
                          "--format", "text")
    assert code == 0
    assert "passed: yes" in out and "{" not in out
