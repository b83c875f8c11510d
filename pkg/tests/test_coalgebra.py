import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circhopf import linalg as la
from circhopf.arith import GaussQ
from circhopf.checks import AxiomError
from circhopf.coalgebra import (
    Coalgebra,
    NotCosemisimple,
    decompose_simple,
    matrix_coalgebra,
    structure_basis,
)
from circhopf.hopf.algebra import function_algebra, group_algebra, sweedler
from circhopf.hopf.groups import GROUPS


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matrix_coalgebra_axioms(n):
    C = matrix_coalgebra(n)
    assert C.n == n * n
    assert all(c.ok and c.residual == 0 for c in C.checks())


def test_apply_delta_on_matrix_unit():
    C = matrix_coalgebra(2)
    X = C.apply_delta(C.unit_vector(1))  # t12
    # Delta t12 = t11 (x) t12 + t12 (x) t22
    assert X[0, 1] == GaussQ(1) and X[1, 3] == GaussQ(1)
    assert sum(1 for v in X.flat if v) == 2


def test_broken_coassociativity_reports_witness():
    C = matrix_coalgebra(2)
    d = C.delta.copy()
    d[0, 0, 0] = GaussQ(2)
    with pytest.raises(AxiomError) as info:
        Coalgebra(d, C.eps, C.basis, C.circ)
    assert info.value.check.name in ("coassociativity", "counit-left", "counit-right")
    bad = [c for c in Coalgebra(d, C.eps, validate=False).coalgebra_checks() if not c.ok]
    assert bad and bad[0].witness is not None


def test_circ_must_be_anticomultiplicative():
    C = matrix_coalgebra(2)
    broken = C.with_circ(la.ConjLinOp(la.eye(4)), validate=False)
    names = {c.name for c in broken.circ_checks() if not c.ok}
    assert "circ-anticomultiplicative" in names


@pytest.mark.parametrize("name", list(GROUPS))
def test_group_algebra_splits_into_grouplikes(name):
    H = group_algebra(GROUPS[name]())
    comps = decompose_simple(H)
    assert [c.dim for c in comps] == [1] * H.n
    assert all(c.circ_stable for c in comps)


def test_function_algebra_s3_components():
    H = function_algebra(GROUPS["S3"]())
    comps = decompose_simple(H)
    assert sorted(c.dim for c in comps) == [1, 1, 4]
    assert sum(c.dim for c in comps) == H.n
    for comp in comps:
        sub = H.restrict(comp.basis)
        assert all(c.ok for c in sub.coalgebra_checks())


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_decomposition_independent_of_seed(seed):
    H = function_algebra(GROUPS["D4"]())
    dims = sorted(c.dim for c in decompose_simple(H, seed=seed))
    assert dims == [1, 1, 1, 1, 4]


def test_sweedler_is_not_cosemisimple():
    with pytest.raises(NotCosemisimple):
        decompose_simple(sweedler())


def test_direct_sum_of_matrix_coalgebras():
    A, B = matrix_coalgebra(1), matrix_coalgebra(2)
    n = A.n + B.n
    d = la.zeros((n, n, n))
    d[:1, :1, :1] = A.delta
    d[1:, 1:, 1:] = B.delta
    eps = np.concatenate([A.eps, B.eps])
    M = la.zeros((n, n))
    M[:1, :1] = A.circ.matrix
    M[1:, 1:] = B.circ.matrix
    C = Coalgebra(d, eps, circ=M)
    assert sorted(c.size for c in decompose_simple(C)) == [1, 2]


@pytest.mark.parametrize("n", [2, 3])
def test_structure_basis_matrix_coefficients(n):
    C = matrix_coalgebra(n)
    sb = structure_basis(C)
    Cf = C.to_float()
    G = la.as_float(sb.gram)
    assert la.is_positive_definite(G)
    V = sb.all_vectors()
    assert la.max_abs(V.conj().T @ G @ V - np.eye(V.shape[1])) < 1e-9
    for grid in sb.grids:
        k = grid.shape[0]
        for i in range(k):
            for j in range(k):
                lhs = Cf.apply_delta(grid[i, j])
                rhs = sum(np.outer(grid[i, a], grid[a, j]) for a in range(k))
                assert la.max_abs(lhs - rhs) < 1e-9
                assert la.max_abs(Cf.apply_circ(grid[i, j]) - grid[j, i]) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_counit_of_coproduct_is_identity(coords):
    C = matrix_coalgebra(2)
    x = np.array([GaussQ(c) for c in coords], dtype=object)
    X = C.apply_delta(x)
    left = C.eps @ X
    right = X @ C.eps
    assert la.allclose(left, x) and la.allclose(right, x)
