import pytest

from ordforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_cmp_and_norm(capsys):
    assert run(capsys, "cmp", "phi(0,phi(1,0))", "phi(1,0)")[:2] == (0, "EQ")
    assert run(capsys, "cmp", "w", "w^2")[1] == "LT"
    assert run(capsys, "gamma", "0")[1] == "1"
    assert run(capsys, "parse", "1")[1] == "phi(0,0)"
    assert run(capsys, "norm", "w + 1")[1] == "w + 1"


def test_arith(capsys):
    assert run(capsys, "add", "1", "w")[1] == "w"
    assert run(capsys, "mul", "w + 1", "w")[1] == "w^2"
    assert run(capsys, "fs", "w", "0", "2")[1].splitlines() == ["1", "3"]


def test_codes_flag(capsys):
    code, out, _ = run(capsys, "--codes", "parse", "1")
    assert (code, out) == (0, "1")
    assert run(capsys, "decode", "1")[1] == "phi(0,0)"


def test_kappa_system(capsys, monkeypatch):
    monkeypatch.setenv("ORDFORGE_SYSTEM", "kk")
    code, out, _ = run(capsys, "canon", "k^(w+1)", "--sample", "3")
    assert code == 0 and "ExpSuccessor" in out
    assert run(capsys, "cmp", "k", "k^2")[1] == "LT"


def test_theory(capsys):
    code, out, _ = run(capsys, "theory", "z1i", "--axioms", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3 and lines[0].split("\t")[1] == "P1"
    n = lines[1].split("\t")[2]
    assert run(capsys, "theory", "z1i", "--is-axiom", n)[1] == "true"
    assert run(capsys, "theory", "z1i", "--is-axiom", "1")[1] == "false"


def test_reflection_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-reflection", "--formula", "(= v1 v1)")
    assert code == 0
    f = tmp_path / "p.txt"
    f.write_text(out + "\n")
    code, out, _ = run(capsys, "prove-check", str(f))
    assert code == 0 and out.startswith("ok")
    code, _, err = run(capsys, "prove-check", str(f), "--theory", "z1i")
    assert code == 1 and err


def test_descent(capsys):
    code, out, _ = run(capsys, "descent", "--trials", "5", "--seed", "1")
    assert code == 0 and len(out.splitlines()) == 5


@pytest.mark.parametrize("argv,want", [
    (["cmp", "phi((", "1"], 1),
    (["fs", "1", "0"], 1),
    (["prove-check", "/nonexistent/proof.txt"], 2),
    (["theory", "peano"], 1),
])
def test_exit_codes(capsys, argv, want):
    assert run(capsys, *argv)[0] == want


def test_bad_command_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
