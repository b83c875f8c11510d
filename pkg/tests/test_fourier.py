import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circhopf import linalg as la
from circhopf.arith import GaussQ
from circhopf.coalgebra import matrix_coalgebra
from circhopf.fourier import (
    DegenerateRestriction,
    NotFourier,
    apply_product,
    balance_residual,
    classify,
    classify_product,
    form_from_gram,
    form_to_product,
    gram_from_form,
    integral_form,
    is_left_coideal,
    is_normal,
    is_right_coideal,
    mixed_associativity,
    neutral_element,
    product_residual,
    product_to_form,
    span_product,
)
from circhopf.hopf.algebra import function_algebra, group_algebra
from circhopf.hopf.groups import GROUPS


def trace_form(n: int):
    """``omega(t_ij, t_kl) = delta_jk delta_il / n``."""
    N = n * n
    W = la.zeros((N, N))
    for i in range(n):
        for j in range(n):
            W[i * n + j, j * n + i] = GaussQ(1, 0) / n
    return W


def balanced_forms(C):
    """Exact basis of all Fourier forms on ``C`` (nullspace of the balance identity)."""
    n = C.n
    cols = []
    for idx in range(n * n):
        E = la.zeros((n, n))
        E[divmod(idx, n)] = GaussQ(1)
        lhs = la.contract("ia,abj->ijb", E, C.delta)
        rhs = la.contract("abi,bj->ija", C.delta, E)
        cols.append((lhs - rhs).ravel())
    N = la.nullspace(np.array(cols, dtype=object).T)
    return [N[:, c].reshape(n, n) for c in range(N.shape[1])]


def random_combination(forms, rng):
    W = la.zeros(forms[0].shape)
    for F in forms:
        W = W + F * GaussQ(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
    return W


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip_is_bit_exact(n):
    C = matrix_coalgebra(n)
    W = trace_form(n)
    p = form_to_product(C, W)
    assert product_residual(C, p).ok
    back = product_to_form(C, p)
    assert all(a == b for a, b in zip(back.flat, W.flat))
    q = form_to_product(C, back)
    assert all(a == b for a, b in zip(q.flat, p.flat))


def test_balanced_forms_on_matrix_coalgebra():
    C = matrix_coalgebra(2)
    forms = balanced_forms(C)
    assert len(forms) == 4  # omega(t_ij, t_kl) = delta_jk X_li
    for W in forms:
        assert balance_residual(C, W).ok


def test_non_balanced_form_rejected():
    C = matrix_coalgebra(2)
    W = la.eye(4)
    assert not balance_residual(C, W).ok
    with pytest.raises(NotFourier):
        form_to_product(C, W)


def test_mixed_associativity_with_distinct_products(rng):
    C = matrix_coalgebra(3)
    forms = balanced_forms(C)
    W1, W2 = random_combination(forms, rng), random_combination(forms, rng)
    assert not la.allclose(W1, W2)
    p1, p2 = form_to_product(C, W1), form_to_product(C, W2)
    assert mixed_associativity(p1, p2).ok
    assert mixed_associativity(p2, p1).ok
    assert mixed_associativity(p1, p1).ok


def test_mixed_associativity_detects_non_fourier(rng):
    C = matrix_coalgebra(2)
    p1 = form_to_product(C, trace_form(2))
    junk = la.as_float(p1) + 0.1 * rng.standard_normal(p1.shape)
    chk = mixed_associativity(la.as_float(p1), junk)
    assert not chk.ok and len(chk.witness) == 3


def test_right_coideal_times_left_coideal(rng):
    n = 3
    C = matrix_coalgebra(n)
    p = form_to_product(C, random_combination(balanced_forms(C), rng))
    for i in range(n):
        for j in range(n):
            R = np.zeros((n * n, n), dtype=complex)
            L = np.zeros((n * n, n), dtype=complex)
            for k in range(n):
                R[i * n + k, k] = 1  # row i
                L[k * n + j, k] = 1  # column j
            assert is_right_coideal(C, R) and is_left_coideal(C, L)
            assert not is_right_coideal(C, L)
            prod = span_product(p, R, L)
            target = np.zeros((n * n, 1), dtype=complex)
            target[i * n + j] = 1
            assert la.rank(np.hstack([target, prod]), tol=1e-9) <= 1


def test_gram_form_correspondence():
    C = matrix_coalgebra(3)
    W = trace_form(3)
    G = gram_from_form(C, W)
    assert la.allclose(form_from_gram(C, G), W)


def test_neutral_element_is_n_times_trace():
    n = 3
    C = matrix_coalgebra(n)
    D = la.eye(n * n)
    s = neutral_element(C, D, trace_form(n))
    expected = la.zeros(n * n)
    for i in range(n):
        expected[i * n + i] = GaussQ(n)
    assert la.allclose(s, expected)


def test_neutral_element_degenerate():
    C = matrix_coalgebra(2)
    with pytest.raises(DegenerateRestriction):
        neutral_element(C, la.eye(4), la.zeros((4, 4)))


def test_classify_trace_form():
    C = matrix_coalgebra(2)
    flags = classify(C, trace_form(2)).flags()
    assert all(flags.values())


def test_integral_form_is_positive_normal():
    for H in (group_algebra(GROUPS["Z2"]()), function_algebra(GROUPS["S3"]())):
        W = integral_form(H)
        assert balance_residual(H, W).ok
        cls = classify(H, W)
        assert cls.positive_definite and cls.hermitian and cls.normal


def test_negated_integral_form():
    H = group_algebra(GROUPS["Z2"]())
    cls = classify(H, -integral_form(H))
    assert not cls.positive and cls.hermitian and not cls.normal
    assert "positive" in cls.witnesses and "normal" in cls.witnesses


def test_classify_product_matches_form():
    C = matrix_coalgebra(2)
    W = trace_form(2)
    assert classify_product(C, form_to_product(C, W)).flags() == classify(C, W).flags()


def test_random_form_witnesses(rng):
    C = matrix_coalgebra(2).to_float()
    W = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    cls = classify(C, W)
    failing = [k for k, v in cls.flags().items() if not v and k != "positive_definite"]
    assert failing
    for key in failing:
        assert key in cls.witnesses


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=9, max_size=9), st.lists(st.integers(-4, 4), min_size=9, max_size=9))
def test_product_of_coefficients_matches_form(xs, ys):
    n = 3
    C = matrix_coalgebra(n)
    W = trace_form(n)
    p = form_to_product(C, W)
    x = np.array([GaussQ(v) for v in xs], dtype=object)
    y = np.array([GaussQ(v) for v in ys], dtype=object)
    # eps(x * y) = omega(x, y)
    assert C.eps @ apply_product(p, x, y) == x @ W @ y
