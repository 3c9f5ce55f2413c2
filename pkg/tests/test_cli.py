import json
import subprocess
import sys

import pytest

from houghton import cli
from houghton.perm import FinPerm
from houghton.elem import t
from houghton.certs import cert_from_json, cert_to_json, verify
from houghton.construct import gcd_test


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compose_example(capsys):
    code, out, _ = run(capsys, "op", "--compose", "t", "(1 2)")
    assert code == 0
    assert out.strip() == "(0 1) t^1"


def test_certify_pair_example(capsys):
    code, out, _ = run(capsys, "certify", "--group", "G1", "--pair", "(-2 0 3)", "t")
    assert code == 0
    assert "accept" in out and "gcd(2, 3) = 1" in out


def test_defeat_example(capsys):
    code, out, _ = run(capsys, "defeat", "--group", "G2", "--elem", "t^2")
    assert code == 0
    assert "(1 3 5)" in out and "invariant_set" in out


def test_certify_reject_exit_1(capsys):
    code, out, _ = run(capsys, "certify", "--group", "G1", "--pair", "(-2 0 4)", "t")
    assert code == 1
    assert "reject" in out and "block_system" in out


def test_certify_json_matches_library(capsys):
    code, out, _ = run(
        capsys, "certify", "--group", "G1", "--pair", "(-2 0 3)", "t", "--json"
    )
    assert code == 0
    want = cert_to_json(gcd_test(FinPerm.cycle(-2, 0, 3), t(1)).certificate)
    assert out.strip() == want.strip()


def test_certify_g2_three_cycle(capsys):
    code, out, _ = run(capsys, "certify", "--group", "G2", "--pair", "(1 2 3)", "t^2")
    assert code == 0
    assert "accept" in out


def test_certify_check_file(tmp_path, capsys):
    cert = gcd_test(FinPerm.cycle(-1, 0, 1), t(1)).certificate
    path = tmp_path / "cert.json"
    path.write_text(cert_to_json(cert))
    code, out, _ = run(capsys, "certify", "--check", str(path))
    assert code == 0 and "accept" in out
    data = json.loads(cert_to_json(cert))
    data["target"] = "G2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "certify", "--check", str(bad))
    assert code == 1 and "reject" in out


def test_unicode_minus_rejected(capsys):
    code, _, err = run(capsys, "certify", "--group", "G1", "--pair", "(−2 0 3)", "t")
    assert code == 2
    assert "unicode" in err.lower() or "U+2212" in err


def test_parse_and_orbits(capsys):
    code, out, _ = run(capsys, "parse", "(1 2 3) t^2")
    assert code == 0 and out.strip() == "(1 2 3) t^2"
    code, out, _ = run(capsys, "parse", "zzz")
    assert code == 2
    code, out, _ = run(capsys, "orbits", "t^2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["shift"] == 2 and len(data["infinite"]) == 2


def test_member_exit_codes(capsys):
    assert run(capsys, "member", "--group", "G2", "t^2")[0] == 0
    assert run(capsys, "member", "--group", "G2", "t")[0] == 1
    assert run(capsys, "member", "--group", "Gk:3", "t^6")[0] == 0
    assert run(capsys, "member", "--group", "nope", "t")[0] == 2
    assert run(capsys, "member", "t")[0] == 2  # missing --group


def test_op_inverse_and_power(capsys):
    code, out, _ = run(capsys, "op", "--inverse", "(1 2 3) t^2")
    assert code == 0
    code, out, _ = run(capsys, "op", "--power", "t^2", "-3")
    assert code == 0 and out.strip() == "t^-6"
    assert run(capsys, "op")[0] == 2


def test_partner_single_finitary(capsys):
    code, out, _ = run(capsys, "partner", "--group", "G1", "(1 2 3)", "--json")
    assert code == 0
    data = json.loads(out)
    cert = cert_from_json(json.dumps(data["certificates"][0]))
    assert verify(cert).ok


def test_partner_nonfinitary(capsys):
    code, out, _ = run(capsys, "partner", "--group", "Gk:2", "t^2", "(0 1 2) t^-2")
    assert code == 0
    assert out.count("positive certificate") == 2


def test_pair_partner(capsys):
    code, out, _ = run(capsys, "pair-partner", "--group", "G1", "(1 2 3)", "(0 4 8)")
    assert code == 0
    assert "conjugator" in out
    assert run(capsys, "pair-partner", "--group", "H2", "t", "t")[0] == 2


def test_refute_and_spread_zero(capsys):
    code, out, _ = run(capsys, "refute-dominating", "--group", "G1", "t", "(0 1 2)")
    assert code == 0
    assert out.count("negative certificate") == 2
    code, out, _ = run(capsys, "spread-zero", "--group", "Gk:3", "--elem", "t^3")
    assert code == 0 and "negative certificate" in out
    assert run(capsys, "spread-zero", "--group", "G1", "--elem", "t")[0] == 2


def test_suite_command_wiring(monkeypatch, capsys):
    def fake(scale):
        yield "1 demo", True, "fine", 0.0, 1.0
        yield "2 demo", False, "broken", 0.0, 1.0

    monkeypatch.setattr(cli, "run_all", fake)
    code, out, _ = run(capsys, "suite", "--scale", "0.1")
    assert code == 1
    assert "PASS" in out and "FAIL" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "houghton.cli", "op", "--compose", "t", "(1 2)"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(0 1) t^1"
