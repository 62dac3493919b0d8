import os

import pytest

from toricnash.cli import EXIT_MATH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hilbert_builtin_b(capsys):
    code, out, _ = run(capsys, "hilbert", "builtin:B")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert len(lines) == 9
    assert lines[-1] == "1 1 0 1 -1"
    assert lines[0] == "1 0 0 0 0"


def test_hilbert_identity_cone(capsys):
    code, out, _ = run(capsys, "hilbert", "builtin:smooth3")
    assert code == EXIT_OK
    assert out.strip().splitlines() == ["1 0 0", "0 1 0", "0 0 1"]


def test_hilbert_a2(capsys):
    code, out, _ = run(capsys, "hilbert", "builtin:a2")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 3


def test_hilbert_from_file(tmp_path, capsys):
    p = tmp_path / "c.cone"
    p.write_text("dim 2\n1 0\n1 2\n")
    code, out, _ = run(capsys, "hilbert", str(p))
    assert code == EXIT_OK
    assert out.strip().splitlines() == ["1 0", "1 2", "1 1"]


def test_hilbert_nonpointed_exits_math(tmp_path, capsys):
    p = tmp_path / "c.cone"
    p.write_text("dim 2\n1 0\n-1 0\n0 1\n")
    code, _, err = run(capsys, "hilbert", str(p))
    assert code == EXIT_MATH
    assert "pointed" in err


def test_parse_error_exits_usage(tmp_path, capsys):
    p = tmp_path / "c.cone"
    p.write_text("dim 2\n1 zebra\n")
    code, _, err = run(capsys, "hilbert", str(p))
    assert code == EXIT_USAGE
    assert "line 2" in err


def test_unknown_builtin(capsys):
    code, _, err = run(capsys, "hilbert", "builtin:nope")
    assert code == EXIT_USAGE
    assert "unknown builtin" in err


def test_blowup_contains_loop_chart(capsys):
    code, out, _ = run(capsys, "blowup", "builtin:B", "--char", "3")
    assert code == EXIT_OK
    assert "chart {1,2,4,5,6} det 2 pointed yes" in out
    assert out.count("chart {") == 83


def test_blowup_smooth_trivial(capsys):
    code, out, _ = run(capsys, "blowup", "builtin:smooth3", "--char", "0")
    assert code == EXIT_OK
    assert out.count("chart {") == 1
    assert "pointed yes" in out


def test_blowup_reeves_chart_count(capsys):
    code, out, _ = run(capsys, "blowup", "builtin:reeves", "--char", "0")
    assert code == EXIT_OK
    assert out.count("chart {") == 35


def test_blowup_bad_characteristic(capsys):
    code, _, err = run(capsys, "blowup", "builtin:smooth3", "--char", "6")
    assert code == EXIT_USAGE
    assert "characteristic" in err.lower()


def test_char_defaults_to_cone_file_value(capsys):
    # builtin:B carries char 3; the loop chart appears without --char
    code, out, _ = run(capsys, "blowup", "builtin:B")
    assert code == EXIT_OK
    assert "chart {1,2,4,5,6} det 2 pointed yes" in out


def test_search_loop_found(capsys):
    code, out, _ = run(
        capsys, "search", "builtin:B", "--max-depth", "1", "--cycles", "1"
    )
    assert code == EXIT_OK
    assert "cycle length 1: found" in out
    assert "nodes 14" in out


def test_search_smooth_none(capsys):
    code, out, _ = run(capsys, "search", "builtin:smooth3", "--cycles", "1,2")
    assert code == EXIT_OK
    assert "cycle length 1: none" in out
    assert "cycle length 2: none" in out
    assert "nodes 1" in out


def test_search_two_cycle_in_dim4(capsys):
    code, out, _ = run(
        capsys, "search", "builtin:dim4char3", "--max-depth", "2", "--cycles", "1,2"
    )
    assert code == EXIT_OK
    assert "cycle length 1: none" in out
    assert "cycle length 2: found" in out


def test_search_node_limit_exit(capsys):
    code, out, _ = run(
        capsys, "search", "builtin:B", "--max-depth", "3", "--max-nodes", "5"
    )
    assert code == EXIT_RESOURCE
    assert "termination node-limit" in out


def test_search_save_and_load(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    code, out1, _ = run(
        capsys, "search", "builtin:B", "--max-depth", "1", "--save", path
    )
    assert code == EXIT_OK
    assert os.path.exists(path)
    code, out2, _ = run(capsys, "search", "--load", path, "--max-depth", "1")
    assert code == EXIT_OK
    assert "cycle length 1: found" in out2


def test_search_requires_cone_or_load(capsys):
    code, _, err = run(capsys, "search")
    assert code == EXIT_USAGE
    assert "cone argument" in err


def test_search_bad_cycle_list(capsys):
    code, _, err = run(capsys, "search", "builtin:smooth3", "--cycles", "0")
    assert code == EXIT_USAGE


def test_search_halt_on_cycle(capsys):
    code, out, _ = run(
        capsys, "search", "builtin:B", "--cycles", "1", "--halt-on-cycle"
    )
    assert code == EXIT_OK
    assert "termination cycle-found" in out
    assert "cycle length 1: found" in out


def test_iso_commands(capsys):
    code, out, _ = run(capsys, "iso", "builtin:a2", "builtin:a2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "equivalent"
    code, out, _ = run(capsys, "iso", "builtin:a2", "builtin:smooth3")
    assert code == EXIT_OK
    assert out.strip() == "not equivalent"


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == EXIT_OK
    assert "overall: PASS (11 of 11 checks passed)" in out


def test_verify_paper_machine_format(capsys):
    code, out, _ = run(capsys, "verify-paper", "--machine")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[-1] == "overall pass"
    assert all(l.split()[2] == "pass" for l in lines[:-1] if l.startswith("check "))
    assert sum(1 for l in lines if l.startswith("check ")) == 11


def test_verify_paper_wrong_char_fails(capsys):
    code, out, _ = run(capsys, "verify-paper", "--char", "5")
    assert code == EXIT_MATH
    assert "FAIL" in out


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv("TORICNASH_THREADS", "3")
    args = build_parser().parse_args(["search", "builtin:smooth3"])
    assert args.threads == 3
    monkeypatch.delenv("TORICNASH_THREADS")
    args = build_parser().parse_args(["search", "builtin:smooth3"])
    assert args.threads == 1


def test_deterministic_stdout(capsys):
    _, out1, _ = run(capsys, "blowup", "builtin:B", "--char", "3")
    _, out2, _ = run(capsys, "blowup", "builtin:B", "--char", "3")
    assert out1 == out2
    _, s1, _ = run(capsys, "search", "builtin:B", "--max-depth", "1")
    _, s2, _ = run(capsys, "search", "builtin:B", "--max-depth", "1")
    assert s1 == s2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE
