import numpy as np
import pytest

from circhopf import linalg as la
from circhopf.arith import GaussQ

from helpers import random_exact, random_g_positive, random_hpd


def _exact(rows):
    A = la.zeros((len(rows), len(rows[0])))
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            A[i, j] = GaussQ(x)
    return A


def test_exact_inverse_and_solve(rng):
    for _ in range(10):
        A = random_exact(4, rng)
        if la.rank(A) < 4:
            continue
        assert la.allclose(A @ la.inv(A), la.eye(4))
        b = A[:, 0] + A[:, 2]
        x = la.solve(A, b)
        assert la.allclose(A @ x, b)


def test_exact_nullspace_and_rank():
    A = _exact([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert la.rank(A) == 2
    N = la.nullspace(A)
    assert N.shape == (3, 1)
    assert la.is_zero(A @ N)


def test_float_nullspace(rng):
    B = rng.standard_normal((5, 3)) + 0j
    A = B @ rng.standard_normal((3, 6))
    N = la.nullspace(A, tol=1e-9)
    assert N.shape[1] == 3
    assert la.max_abs(A @ N) < 1e-9


def test_positive_definite_exact_and_float():
    assert la.is_positive_definite(_exact([[2, 1], [1, 2]]))
    assert not la.is_positive_definite(_exact([[1, 2], [2, 1]]))
    assert not la.is_hermitian(_exact([[1, 2], [0, 1]]))


def test_gram_adjoint_property(rng):
    G = random_hpd(4, rng)
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    Ad = la.gram_adjoint(A, G)
    x, y = rng.standard_normal(4) + 0j, rng.standard_normal(4) + 0j
    form = la.GramForm(G)
    assert form.inner(A @ x, y) == pytest.approx(form.inner(x, Ad @ y))


def test_positive_sqrt_float(rng):
    for n in (1, 3, 7):
        A, G = random_g_positive(n, rng)
        P = la.positive_sqrt(A, G)
        assert la.max_abs(P @ P - A) < 1e-10 * max(1, la.max_abs(A))
        assert la.is_self_adjoint(P, G)
        assert np.all(np.linalg.eigvals(P).real > 0)


def test_positive_sqrt_exact_square_spectrum():
    A = _exact([[5, 4], [4, 5]])  # eigenvalues 1 and 9
    P = la.positive_sqrt(A, la.eye(2))
    assert la.is_exact(P)
    assert la.allclose(P @ P, A)
    assert la.allclose(P, _exact([[2, 1], [1, 2]]))


def test_positive_sqrt_exact_without_rational_root():
    with pytest.raises(la.NotPositive, match="no exact square root"):
        la.positive_sqrt(_exact([[2, 0], [0, 1]]), la.eye(2))


def test_positive_sqrt_rejects_indefinite():
    with pytest.raises(la.NotPositive):
        la.positive_sqrt(np.diag([1.0, -1.0]).astype(complex), np.eye(2, dtype=complex))
    with pytest.raises(la.NotSelfAdjoint):
        la.positive_sqrt(np.array([[1, 1], [0, 1]], dtype=complex), np.eye(2, dtype=complex))
    with pytest.raises(la.DegenerateForm):
        la.positive_sqrt(np.eye(2, dtype=complex), np.diag([1.0, -1.0]).astype(complex))


def test_polar_right(rng):
    G = random_hpd(5, rng)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    U, P = la.polar_right(A, G)
    assert la.max_abs(U @ P - A) < 1e-9
    assert la.max_abs(la.gram_adjoint(U, G) @ U - np.eye(5)) < 1e-9
    assert la.is_self_adjoint(P, G)


def test_abs_power_is_fourth_root_of_square(rng):
    G = random_hpd(4, rng)
    M = random_hpd(4, rng)
    M = M - 2.5 * G  # indefinite but G^-1 M still G-self-adjoint
    Q = np.linalg.solve(G, M)
    P = la.abs_power(Q, G, 0.5)
    assert la.max_abs(P @ P @ P @ P - Q @ Q) < 1e-8 * la.max_abs(Q @ Q)
    assert la.max_abs(P - la.positive_sqrt(la.positive_sqrt(Q @ Q, G), G)) < 1e-8


def test_eigensplit_exact():
    A = _exact([[2, 1], [0, 3]])
    parts = la.eigensplit(A)
    values = sorted(complex(v).real for v, _ in parts)
    assert values == [2.0, 3.0]
    for v, N in parts:
        assert la.allclose(A @ N, N * v)


def test_conj_lin_op_composition():
    M = _exact([[0, 1], [1, 0]])
    op = la.ConjLinOp(M)
    assert op.is_involutive()
    x = np.array([GaussQ(1, 2), GaussQ(0, -1)], dtype=object)
    assert la.allclose(op(x), np.array([GaussQ(0, 1), GaussQ(1, -2)], dtype=object))
    assert la.allclose(op @ op, la.eye(2))


@pytest.mark.parametrize("subscripts", ["ia,abj->ijb", "kxa,ayz->kxyz", "k,kij->ij", "abk,ab->k"])
def test_sparse_contract_matches_einsum(subscripts, rng):
    shapes = {c: 3 for c in subscripts if c.isalpha()}
    ins = subscripts.split("->")[0].split(",")
    ops = []
    for sub in ins:
        A = la.zeros(tuple(shapes[c] for c in sub))
        for idx in np.ndindex(*A.shape):
            if rng.random() < 0.4:
                A[idx] = GaussQ(int(rng.integers(-3, 4)), int(rng.integers(-2, 3)))
        ops.append(A)
    assert la.allclose(la.contract(subscripts, *ops), np.einsum(subscripts, *ops))
