import json

import pytest

from pirank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out + out.err


def test_rank_torsion(capsys):
    code, out = run(capsys, "rank", "aaa")
    assert code == 0
    assert out.splitlines()[0] == "pi=1, verdict=torsion, w-subgroup <a>"


def test_rank_commutator(capsys):
    code, out = run(capsys, "rank", "abAB")
    assert code == 0
    assert "pi=2, verdict=nonpositive-only, unique peripheral subgroup <a, b>" in out


def test_rank_primitive(capsys):
    code, out = run(capsys, "rank", "a")
    assert code == 0 and out.startswith("pi=inf")


def test_rank_json(capsys):
    code, out = run(capsys, "rank", "aabb", "--json")
    report = json.loads(out)
    assert code == 0 and report["exit"] == 0 and report["pi"] == 2


def test_rank_defaults_to_letters_used(capsys):
    code, out = run(capsys, "rank", "uuvUUV", "--json")
    report = json.loads(out)
    assert code == 0 and report["rank"] == 2 and report["pi"] == 2
    assert report["renamed"] == {"u": "a", "v": "b"}


def test_letters_renamed(capsys):
    code, out = run(capsys, "rank", "uuv", "--rank", "2", "--json")
    assert code == 0
    assert json.loads(out)["renamed"] == {"u": "a", "v": "b"}


@pytest.mark.parametrize("argv, expected", [
    (["rank", "xyz", "--rank", "2"], 2),
    (["rank", "a1"], 2),
    (["verify", "no-such-file.inst"], 2),
    (["rank", "aabbccdd", "--budget", "1"], 3),
    (["stack", "aaaa"], 4),
    (["stack", "abab"], 4),
])
def test_exit_codes(capsys, argv, expected):
    code, _ = run(capsys, *argv)
    assert code == expected


def test_stack_two_letter_word(capsys):
    code, out = run(capsys, "stack", "uuvuvvUUVUVV", "--rank", "2")
    assert code == 0 and "verified" in out


def test_verify_borromean(capsys):
    code, out = run(capsys, "verify", "borromean.inst")
    assert code == 0
    assert "weakly dependent: -1 <= -1 OK" in out
    assert "  [x] " in out


def test_pushout_and_classify(capsys):
    code, out = run(capsys, "pushout", "torus_cover.map")
    assert code == 0 and out.startswith("0 <= 0 OK")
    for cx in ("torus.cx", "torus_cover.cx"):
        code, out = run(capsys, "classify", "abAB", cx)
        assert code == 0 and out.startswith("factors-through-Q1")


@pytest.mark.parametrize("kind", ["updown", "dependence", "pushout"])
def test_fuzz(capsys, kind):
    code, out = run(capsys, "fuzz", kind, "--trials", "30", "--seed", "3", "--json")
    report = json.loads(out)
    assert code == 0 and report["exit"] == 0


def test_fuzz_updown_line(capsys):
    code, out = run(capsys, "fuzz", "updown", "--trials", "50")
    assert code == 0 and "50/50 instances: >=2 good vertices" in out
