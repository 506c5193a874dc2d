"""Command-line interface: exact JSON payloads, exit codes, determinism."""

import json
import subprocess
import sys

from mathieulab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_member_example(capsys):
    payload = run_json(capsys, "member", "--op", "mono:c=1,alpha=1,lambda=1,d=0",
                       "--poly", "t-2")
    assert payload == {"member": True, "witness": "-t"}


def test_mathieu_example(capsys):
    payload = run_json(capsys, "mathieu", "--space",
                       '{"modulus":[["t",1],["t - 1",1]],"vbar_basis":[[1,1]]}')
    assert payload == {"status": "NOT_MATHIEU", "witness_a": "1", "witness_b": "t"}


def test_lzero_example(capsys):
    payload = run_json(capsys, "lzero", "--op", "mono:c=1,alpha=0,lambda=1,d=1",
                       "--poly", "t^4")
    assert payload == {"value": "3"}


def test_reduce_and_escape(capsys):
    payload = run_json(capsys, "reduce", "--op", "mono:c=1,alpha=0,lambda=1,d=1",
                       "--poly", "t^3")
    assert payload == {"normal_form": "2*t", "witness": "-t^2", "admissible": True}
    payload = run_json(capsys, "escape", "--op", "mono:c=1,alpha=1,lambda=1,d=0",
                       "--poly", "t-2")
    assert payload == {"escape_exponent": 2}


def test_certify_and_verify_roundtrip(capsys):
    cert = run_json(capsys, "certify", "--poly", "t+t^2", "--d", "1", "--alpha", "0")
    assert cert["m"] == 1 and cert["prime"] == 3
    payload = run_json(capsys, "verify-cert", "--cert", json.dumps(cert))
    assert payload == {"valid": True}
    tampered = dict(cert)
    tampered["prime"] = 4
    code, out, err = run_cli(capsys, "verify-cert", "--cert", json.dumps(tampered))
    assert code == 0 and json.loads(out) == {"valid": False}


def test_moments_vb_orthopoly(capsys):
    payload = run_json(capsys, "moments", "--weight", "hermite", "--upto", "4")
    assert payload == {"moments": ["1", "0", "1/2", "0", "3/4"]}
    payload = run_json(capsys, "vb-member", "--weight", "jacobi:alpha=0,beta=0",
                       "--poly", "3*t^2-1")
    assert payload == {"member": True}
    payload = run_json(capsys, "orthopoly", "--weight", "jacobi:alpha=0,beta=0", "--n", "2")
    assert payload == {"degree": 2, "poly": "t^2 - 1/3"}


def test_equiv_largest_ideal_probe(capsys):
    payload = run_json(capsys, "equiv", "--weight", "hermite",
                       "--op", "mono:c=1,alpha=0,lambda=2,d=1", "--deg-bound", "8")
    assert payload["equivalent"] is True and payload["violations"] == []
    payload = run_json(capsys, "largest-ideal", "--space",
                       '{"modulus":[["t",1],["t - 1",1]],"vbar_basis":[[1,-1]]}')
    assert payload == {"generator": "t^2 - t"}
    payload = run_json(capsys, "radical-probe", "--op", "mono:c=1,alpha=-1,lambda=1,d=1",
                       "--poly", "t^2", "--window", "1:15")
    assert payload == {"holds": True, "window": [1, 15]}


def test_ufd_subcommands(capsys):
    payload = run_json(capsys, "ufd-member", "--ctx", "ufd:a=x^2", "--poly", "x^2*t - 1")
    assert payload == {"member": True, "witness": "-t"}
    payload = run_json(capsys, "ufd-radical", "--ctx", "ufd:a=x^2", "--p", "x*t")
    assert payload == {"in_radical": True}
    payload = run_json(capsys, "absorb-bound", "--ctx", "ufd:a=x^2", "--p", "x*t", "--g", "t")
    assert payload == {"bound": 4}
    payload = run_json(capsys, "gcd-lift", "--a", "x^2", "--elements", "x,x^3")
    assert payload == {"u": "x", "d_tilde": ["1", "x^2"]}
    payload = run_json(capsys, "surjective", "--ctx", "trunc:k=2,c=1,a=x", "--deg-bound", "5")
    assert payload["status"] == "ONE_IN_IMAGE"
    assert payload["one_witness"] == "1/2*x*t^2 + t"
    assert payload["monomials_checked"] == 6 and payload["unresolved"] == []


def test_exit_codes(capsys):
    # malformed polynomial: exit 2 with a message
    code, out, err = run_cli(capsys, "member", "--op", "mono:c=1,alpha=1,lambda=1,d=0",
                             "--poly", "t ++ 2")
    assert code == 2 and "PARSE_ERROR" in err
    # unknown subcommand: exit 2
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 2
    # negative verdict without --check: exit 0; with --check: exit 1
    code, out, _ = run_cli(capsys, "member", "--op", "mono:c=1,alpha=1,lambda=1,d=0",
                           "--poly", "1")
    assert code == 0 and json.loads(out) == {"member": False, "witness": None}
    code, _, _ = run_cli(capsys, "--check", "member", "--op", "mono:c=1,alpha=1,lambda=1,d=0",
                         "--poly", "1")
    assert code == 1


def test_seed_determinism(capsys):
    argv = ["mathieu", "--space", '{"modulus":[["t",1],["t - 1",1]],"vbar_basis":[[1,1]]}']
    outputs = set()
    for seed in ("0", "1", "12345"):
        code, out, _ = run_cli(capsys, "--seed", seed, *argv)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_unverified_factor_diagnostics(capsys):
    payload = run_json(capsys, "largest-ideal", "--space",
                       '{"modulus":[["t^4 + t + 7",1]],"vbar_basis":[]}')
    assert payload["generator"] == "t^4 + t + 7"
    assert any("trusted" in line for line in payload["diagnostics"])
    # the pinned example space has no flagged factors and no diagnostics key
    clean = run_json(capsys, "mathieu", "--space",
                     '{"modulus":[["t",1],["t - 1",1]],"vbar_basis":[[1,1]]}')
    assert "diagnostics" not in clean


def test_pretty_format(capsys):
    code, out, _ = run_cli(capsys, "--pretty", "lzero", "--op",
                           "mono:c=1,alpha=0,lambda=1,d=1", "--poly", "t^4")
    assert code == 0 and "value: 3" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mathieulab", "lzero", "--op",
         "mono:c=1,alpha=0,lambda=1,d=1", "--poly", "t^4"],
        capture_output=True, text=True,
        env={"PYTHONPATH": "src", "PATH": "/usr/bin:/bin:/usr/local/bin"},
        cwd=".",
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"value": "3"}
