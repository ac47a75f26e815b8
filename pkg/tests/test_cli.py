import subprocess
import sys

import pytest

from primebounds.analytic import table
from primebounds.cli import GRAMMAR, run
from primebounds.verify import strip_wall_time


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = cli(capsys)
    assert code == 64
    assert "primebounds sieve" in err


def test_unknown_bound_is_rejected_before_work(capsys):
    code, out, err = cli(capsys, "verify", "--ineq", "nope", "--from", "10", "--to", "100")
    assert code == 64 and out == ""


@pytest.mark.parametrize("flag", ["1.5e6", "abc", "-3", "1e"])
def test_integer_flags_reject_non_integers(capsys, flag):
    code, _, _ = cli(capsys, "sieve", "--to", flag)
    assert code == 64


def test_sieve_accepts_exponent_integers(capsys):
    code, out, _ = cli(capsys, "sieve", "--to", "1e6")
    assert code == 0
    assert "78498" in out


def test_sieve_primes_listing(capsys):
    code, out, _ = cli(capsys, "sieve", "--from", "10", "--to", "30", "--primes")
    assert code == 0
    assert out.split() == ["11", "13", "17", "19", "23", "29"]


def test_list_bounds_lists_every_family(capsys):
    code, out, _ = cli(capsys, "list-bounds")
    assert code == 0
    for _, example, _ in table():
        assert example in out


def test_eval_prints_an_enclosure(capsys):
    code, out, _ = cli(capsys, "eval", "li", "--x", "2")
    assert code == 0
    assert "1.04516" in out


def test_verify_pass_exit_zero(capsys):
    code, out, err = cli(capsys, "verify", "--ineq", "eq1.7-rhs", "--from", "17", "--to", "1e5")
    assert code == 0
    assert "# status\tPASS" in out
    assert "progress\t" in err


def test_verify_fail_exit_one_quiet(capsys):
    code, out, err = cli(capsys, "verify", "--ineq", "eq1.7-rhs", "--from", "3", "--to", "100", "-q")
    assert code == 1
    assert out.startswith("# kind\tLowerBoundPi")
    assert "progress" not in err


def test_monotonicity_failure_is_usage_error(capsys):
    code, _, _ = cli(capsys, "verify", "--ineq", "env:eta=1,k=3", "--kind", "upper",
                     "--from", "3", "--to", "30")
    assert code == 64


def test_unresolved_exit_code_two(capsys, monkeypatch):
    # no registered bound is undecidable on a cheap range, so force the error path
    from primebounds import cli as mod
    from primebounds.errors import UnresolvedError

    def boom(args):
        raise UnresolvedError("undecidable at working precision")
    monkeypatch.setattr(mod, "_cmd_eval", boom)
    code, _, err = cli(capsys, "eval", "li", "--x", "10")
    assert code == 2 and "undecidable" in err


def test_checkpoint_in_missing_directory_is_io_error(capsys, tmp_path):
    code, _, _ = cli(capsys, "ramanujan", "--from", "1e4", "--to", "1e5",
                     "--checkpoint", str(tmp_path / "no" / "such" / "dir" / "ck"))
    assert code == 74


def test_checkpoint_rerun_is_idempotent(capsys, tmp_path):
    ck = tmp_path / "ram.ckpt"
    args = ["ramanujan", "--from", "1e4", "--to", "1e5", "-q", "--checkpoint", str(ck)]
    c1, o1, _ = cli(capsys, *args)
    c2, o2, _ = cli(capsys, *args)
    assert c1 == c2 == 1
    assert strip_wall_time(o1) == strip_wall_time(o2)


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "r.tsv"
    code, out, _ = cli(capsys, "rnxi", "--n", "2", "--from", "1e5", "--to", "2e5", "-q",
                       "--output", str(dest))
    assert out == ""
    assert dest.read_text().startswith("# kind\tRnXi(2)")
    assert code in (0, 1)


def test_certify_writes_certificate(capsys, tmp_path):
    dest = tmp_path / "f.cert"
    code, out, _ = cli(capsys, "certify", "--poly", "f", "--threshold", "9032", "--cert", str(dest))
    assert code == 0
    text = dest.read_text()
    assert "verdict: true" in text


def test_certify_negative_verdict_exit_one(capsys, tmp_path):
    code, _, _ = cli(capsys, "certify", "--poly", "f", "--threshold", "9031",
                     "--cert", str(tmp_path / "x.cert"))
    assert code == 1


def test_certify_monotone(capsys):
    code, out, _ = cli(capsys, "certify", "--monotone", "thm1.1-rhs", "--from", "1e6", "--to", "1e8")
    assert code == 0 and "INCREASING" in out.upper()


def test_thresholds(capsys):
    code, out, _ = cli(capsys, "threshold", "A0", "--n", "2")
    assert code == 0 and out.strip()
    code, out, _ = cli(capsys, "threshold", "A1", "--n", "6", "--a", "14.4086")
    assert code == 0 and "9031" in out


def test_compare(capsys):
    code, out, _ = cli(capsys, "compare", "eq1.7-rhs", "li", "--x", "1e6")
    assert code == 0


def test_theta_command(capsys):
    code, out, _ = cli(capsys, "theta", "--bound", "eq2.5-env", "--from", "3", "--to", "149")
    assert code == 0


def test_grammar_mentions_every_subcommand():
    for cmd in ("sieve", "verify", "ramanujan", "rnxi", "theta", "certify", "threshold", "eval",
                "compare", "list-bounds"):
        assert f"primebounds {cmd}" in GRAMMAR


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "primebounds", "eval", "ram", "--x", "1.62e12"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "85.8" in proc.stdout
