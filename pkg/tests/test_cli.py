import json

import pytest

from circhopf import corpus
from circhopf.cli import main
from circhopf.coalgebra import matrix_coalgebra
from circhopf.hopf import group_algebra
from circhopf.hopf.groups import GROUPS
from circhopf.serialize import coalgebra_to_json, dump_structure


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compact_group_z2(capsys):
    code, out, _ = run(capsys, "compact", "examples/group_Z2.json", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["verdict"] == "compact"
    assert rep["result"]["min_gram_eigenvalue"] == 1.0
    assert rep["input_digest"] and rep["tool"] == "circhopf"


def test_antipode_fun_s3(capsys):
    code, out, _ = run(capsys, "antipode", "examples/fun_S3.json", "--json")
    res = json.loads(out)["result"]
    assert code == 0
    assert res["involutivity"]["all_true"] and res["involutivity"]["consistent"]
    assert res["modularity"]["all_true"]
    assert res["splus_is_identity"] and res["unitary_equals_antipode"]


def test_sumu_all_degree_four(capsys):
    code, out, _ = run(capsys, "sumu", "--sign", "+", "--degree", "4", "--identity", "all", "--json")
    rep = json.loads(out)
    assert code == 0
    assert set(rep["result"]["identities"].values()) == {"pass"}


def test_check_names_each_check_once(capsys):
    code, out, _ = run(capsys, "check", "fun_D4", "--json")
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert code == 0 and len(names) == len(set(names))


def test_decompose_components(capsys):
    code, out, _ = run(capsys, "decompose", "fun_S3", "--json")
    comps = json.loads(out)["result"]["components"]
    assert code == 0
    assert sorted(c["dim"] for c in comps) == [1, 1, 4]
    assert all(c["circ_stable"] for c in comps)


def test_sweedler_not_compact_exit_one(capsys):
    code, out, _ = run(capsys, "compact", "sweedler_H4", "--json")
    rep = json.loads(out)
    assert code == 1
    assert "no normal integral" in rep["result"]["reason"]


def test_axiom_failure_exit_one(tmp_path, capsys):
    obj = coalgebra_to_json(group_algebra(GROUPS["Z3"]()))
    obj["mult"].append([0, 1, 1, "1"])
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "check", str(path), "--json")
    rep = json.loads(out)
    assert code == 1
    failing = [c["name"] for c in rep["checks"] if c["verdict"] == "fail"]
    assert failing
    code, _, err = run(capsys, "antipode", str(path))
    assert code == 1 and "axiom failure" in err


def test_input_errors_exit_two(tmp_path, capsys):
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "check", str(bad))[0] == 2
    coal = tmp_path / "coal.json"
    dump_structure(matrix_coalgebra(2), coal)
    assert run(capsys, "compact", str(coal))[0] == 2
    assert run(capsys, "sumu", "--identity", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


@pytest.mark.parametrize("argv", [
    ("antipode", "group_S3", "--json"),
    ("decompose", "fun_Q8", "--json"),
    ("sumu", "--sign", "-", "--degree", "3", "--json"),
])
def test_json_is_byte_identical(capsys, argv):
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first) == json.loads(json.dumps(json.loads(first)))


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "compact", "group_Z2", "--json")
    assert "wall_time_seconds" not in json.loads(out)
    _, out, _ = run(capsys, "compact", "group_Z2", "--json", "--timing")
    assert "wall_time_seconds" in json.loads(out)


def test_float_backend_flag(capsys):
    code, out, _ = run(capsys, "compact", "fun_S3", "--backend", "float", "--json")
    assert code == 0
    assert json.loads(out)["result"]["min_gram_eigenvalue"] == pytest.approx(1 / 6)


def test_text_report(capsys):
    code, out, _ = run(capsys, "compact", "group_Z2")
    assert code == 0 and out.startswith("compact group_Z2: PASS")


def test_every_corpus_entry_checks(capsys):
    for name in corpus.names():
        assert run(capsys, "check", name)[0] == 0, name
