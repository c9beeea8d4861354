import json

import pytest

from eigenvanish.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def test_setup_report_shape(capsys):
    code, report, err = run(capsys, "setup", "--p", "7", "--q", "2")
    assert code == 0
    assert report["schema"] == SCHEMA
    assert report["command"] == "setup"
    assert report["timing"] is None
    assert isinstance(report["checks"], list)
    assert all(c["ok"] for c in report["checks"])
    assert report["result"]["n"] == 3
    assert "n=3" in err  # human summary on stderr by default


def test_json_flag_silences_summary(capsys):
    code, report, err = run(capsys, "setup", "--p", "7", "--q", "2", "--json")
    assert code == 0 and err == ""
    code, report, err = run(capsys, "setup", "--p", "7", "--q", "2", "--quiet")
    assert code == 0 and err == ""


def test_bad_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["setup", "--p", "7"])  # missing --q
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_invalid_input_exits_1(capsys):
    code, report, err = run(capsys, "setup", "--p", "7", "--q", "29")  # 29 ≡ 1 mod 7
    assert code == 1
    assert report["error"]


def test_periods_golden(capsys):
    code, report, err = run(capsys, "periods", "--p", "7", "--q", "2")
    assert code == 0
    res = report["result"]
    assert res["v"] == 1
    assert [int(x) for x in res["d"]] == [1, 0]
    assert [int(x) for x in res["a"]] == [6, 6]


def test_indices_exit_codes(capsys):
    code, report, err = run(capsys, "indices", "--p", "7", "--q", "2", "--r", "4")
    assert code == 0
    assert report["result"]["i_mod_p"] == 1
    assert report["result"]["verdict"] == "Trivial"
    code, report, err = run(capsys, "indices", "--p", "7", "--q", "2", "--r", "2")
    assert code == 2  # index vanished: valid run, inconclusive outcome
    assert report["result"]["verdict"] == "Unknown"


def test_identity_checks_pass(capsys):
    code, report, err = run(capsys, "identity", "--p", "11", "--q", "3")
    assert code == 0
    assert all(c["ok"] for c in report["checks"])


def test_certify_roundtrip_through_verify(capsys, tmp_path):
    code, report, err = run(capsys, "certify", "--p", "7")
    assert code == 0
    assert report["result"]["certificate"]["verdict"] == "Trivial"
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(report))
    code, report2, err = run(capsys, "verify", str(path))
    assert code == 0
    # and a tampered copy must be rejected
    report["result"]["certificate"]["witnesses"][0]["b"] = "49"
    path.write_text(json.dumps(report))
    code, report3, err = run(capsys, "verify", str(path))
    assert code == 2
    assert any(not c["ok"] for c in report3["checks"])


def test_certify_inconclusive_small_bound(capsys):
    code, report, err = run(capsys, "certify", "--p", "13")
    assert code == 1  # 13 ≡ 1 mod 4 is rejected outright


def test_vandiver_exit_code(capsys):
    code, report, err = run(capsys, "vandiver", "--p", "7")
    assert code == 2  # r=2 stays Unknown
    scans = report["result"]["scans"]
    assert {s["r"]: s["verdict"] for s in scans} == {2: "Unknown", 4: "Trivial"}


def test_classnum_golden(capsys):
    code, report, err = run(capsys, "classnum", "--p", "23")
    assert code == 0
    assert report["result"]["h"] == 3
    assert report["result"]["reduced_forms"] == 3


def test_cornacchia_cli(capsys):
    code, report, err = run(capsys, "cornacchia", "7", "11")
    assert code == 0
    assert report["result"]["solution"] == {"x": "2", "y": "1"}
    code, report, err = run(capsys, "cornacchia", "7", "5")
    assert code == 0  # "no solution" is a definite answer
    assert report["result"]["solution"] is None
    code, report, err = run(capsys, "cornacchia", "7", "8")
    assert code == 1  # composite N needs --all
    code, report, err = run(capsys, "cornacchia", "23", str(4 * 59**3), "--all")
    assert code == 0
    assert [[int(s["x"]), int(s["y"])] for s in report["result"]["solutions"]] == [
        [396, 170],
        [708, 118],
    ]


def test_stickelberger_cli(capsys):
    code, report, err = run(capsys, "stickelberger", "--p", "7", "--q", "11")
    assert code == 0
    assert int(report["result"]["signed_C"]) == -4
    assert all(c["ok"] for c in report["checks"])


def test_density_cli(capsys):
    code, report, err = run(capsys, "density", "--p", "7", "--bound", "1000")
    assert code == 0
    assert report["result"]["base"]["represented"] == 81
    assert report["result"]["base"]["primes"] == 168
    code, report, err = run(capsys, "density", "--p", "7", "--bound", "50")
    assert code == 2


def test_explore_cli(capsys):
    code, report, err = run(capsys, "explore", "e4", "--p", "13")
    assert code == 0
    assert report["result"]["witness"]["i_mod_p"] == 4


def test_byte_identical_reruns(capsys):
    outs = []
    for _ in range(2):
        main(["certify", "--p", "11", "--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_big_integers_serialized_as_strings(capsys):
    code, report, err = run(capsys, "periods", "--p", "19", "--q", "5")
    assert code == 0
    for x in report["result"]["a"]:
        assert isinstance(x, str)
        int(x)
