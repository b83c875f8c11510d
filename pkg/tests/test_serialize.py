import json

import pytest

from circhopf import corpus
from circhopf import linalg as la
from circhopf.checks import AxiomError
from circhopf.coalgebra import matrix_coalgebra
from circhopf.comodule import Comodule
from circhopf.hopf import HopfAlgebra, function_algebra
from circhopf.hopf.groups import GROUPS
from circhopf.serialize import (
    InputError,
    coalgebra_from_json,
    coalgebra_to_json,
    comodule_from_json,
    comodule_to_json,
    dump_structure,
    load_structure,
)


def _same(A, B):
    return la.allclose(A, B) and la.is_exact(A) == la.is_exact(B)


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_file_matches_builder(name):
    built = corpus.build(name)
    loaded = corpus.load(name)
    assert _same(loaded.delta, built.delta) and _same(loaded.eps, built.eps)
    assert isinstance(loaded, HopfAlgebra) == isinstance(built, HopfAlgebra)
    if isinstance(built, HopfAlgebra):
        assert _same(loaded.mult, built.mult) and _same(loaded.antipode, built.antipode)


def test_corpus_names():
    names = corpus.names()
    assert len(names) == 17
    assert {"group_Z2", "fun_S3", "sweedler_H4", "matrix_4"} <= set(names)


def test_round_trip_through_file(tmp_path):
    H = function_algebra(GROUPS["D4"]())
    path = tmp_path / "d4.json"
    dump_structure(H, path)
    back = load_structure(path)
    assert coalgebra_to_json(back) == coalgebra_to_json(H)


def test_float_backend_conversion():
    obj = coalgebra_to_json(matrix_coalgebra(2))
    C = coalgebra_from_json(obj, backend="float")
    assert not C.exact
    assert coalgebra_from_json(coalgebra_to_json(C)).exact is False
    with pytest.raises(InputError):
        coalgebra_from_json(coalgebra_to_json(C), backend="exact")


def test_missing_field():
    obj = coalgebra_to_json(matrix_coalgebra(2))
    del obj["eps"]
    with pytest.raises(InputError, match="eps"):
        coalgebra_from_json(obj)


def test_index_out_of_range():
    obj = coalgebra_to_json(matrix_coalgebra(2))
    obj["delta"].append([0, 0, 9, "1"])
    with pytest.raises(InputError, match="out of range"):
        coalgebra_from_json(obj)


def test_invalid_structure_raises_axiom_error():
    obj = coalgebra_to_json(matrix_coalgebra(2))
    obj["eps"][0] = {"re": "2", "im": "0"}
    with pytest.raises(AxiomError):
        coalgebra_from_json(obj)
    assert coalgebra_from_json(obj, validate=False).n == 4


def test_unreadable_and_malformed(tmp_path):
    with pytest.raises(InputError):
        load_structure(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError, match="invalid JSON"):
        load_structure(bad)


def test_comodule_round_trip():
    C = matrix_coalgebra(3)
    V = Comodule.defining(C, 3)
    obj = json.loads(json.dumps(comodule_to_json(V)))
    W = comodule_from_json(obj, C)
    assert la.allclose(W.coeffs, V.coeffs)


def test_regenerate_is_deterministic(tmp_path):
    paths = corpus.regenerate(tmp_path)
    for p in paths:
        assert p.read_bytes() == corpus.path(p.stem).read_bytes()
