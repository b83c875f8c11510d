import numpy as np
import pytest

from circhopf import linalg as la
from circhopf.arith import GaussQ
from circhopf.checks import AxiomError
from circhopf.coalgebra import matrix_coalgebra
from circhopf.hopf import (
    ConsistencyError,
    GROUPS,
    HopfAlgebra,
    IntegralError,
    NotInner,
    albert_tau,
    antipode_adjoint,
    compute_beta,
    conjugate_involutions,
    conjugated_circ,
    convolution_matrices,
    function_algebra,
    gram_from_integral,
    group_algebra,
    group_automorphism_matrix,
    hopf_biderivations,
    integral_via_decomposition,
    involutivity_report,
    is_compact,
    modularity_report,
    nakayama,
    nakayama_sqrt,
    positive_antipode,
    positive_inner_automorphism,
    radford_check,
    solve_integral,
    sweedler,
    trivial_hopf,
    unitary_antipode,
)

NAMES = [f"{kind}_{g}" for g in GROUPS for kind in ("group", "fun")]


def test_group_tables_are_groups():
    for name, build in GROUPS.items():
        G = build()
        n = G.order
        e = G.identity
        for a in range(n):
            assert G.table[a, e] == a == G.table[e, a]
            assert G.table[a, G.inverse(a)] == e
            for b in range(n):
                for c in range(n):
                    assert G.table[G.table[a, b], c] == G.table[a, G.table[b, c]]
    assert not GROUPS["S3"]().is_abelian() and GROUPS["Z4"]().is_abelian()


@pytest.mark.parametrize("name", NAMES)
def test_shipped_axioms_exact(shipped_hopf, name):
    H = shipped_hopf[name]
    checks = H.checks()
    assert {"coassociativity", "associativity", "antipode-left", "circ-anticomultiplicative"} <= {c.name for c in checks}
    assert all(c.ok and c.residual == 0 for c in checks), [c for c in checks if not c.ok]


def test_perturbed_product_fails_named_check():
    H = group_algebra(GROUPS["Z3"]())
    m = H.mult.copy()
    m[0, 1, 1] = m[0, 1, 1] + GaussQ(1)
    with pytest.raises(AxiomError) as info:
        HopfAlgebra(H.delta, H.eps, m, H.unit, H.antipode, H.basis, H.circ)
    assert info.value.check.witness is not None
    bad = HopfAlgebra(H.delta, H.eps, m, H.unit, H.antipode, H.basis, H.circ, validate=False)
    assert any(not c.ok for c in bad.checks())


def test_function_algebra_circ_is_inversion():
    H = function_algebra(GROUPS["S3"]())
    G = GROUPS["S3"]()
    for g in range(G.order):
        assert la.allclose(H.apply_circ(H.unit_vector(g)), H.unit_vector(G.inverse(g)))


@pytest.mark.parametrize("name", NAMES)
def test_integral_two_routes(shipped_hopf, name):
    H = shipped_hopf[name]
    phi = solve_integral(H)
    other = integral_via_decomposition(H)
    assert la.allclose(la.as_float(phi.vec), la.as_float(other.vec), 1e-12)
    assert phi(H.unit) == GaussQ(1)


@pytest.mark.parametrize("name", NAMES)
def test_compact_gram_spectrum(shipped_hopf, name):
    H = shipped_hopf[name]
    v = is_compact(H)
    order = H.n
    assert v.compact
    assert v.min_eigenvalue >= 1 / order - 1e-9


def test_group_algebra_integral_is_delta_at_identity():
    H = group_algebra(GROUPS["D4"]())
    phi = solve_integral(H)
    assert la.allclose(phi.vec, H.unit)
    assert la.allclose(gram_from_integral(H).matrix, la.eye(H.n))


def test_sweedler_not_compact():
    H = sweedler()
    assert all(c.ok for c in H.checks())
    v = is_compact(H)
    assert not v.compact and "no normal integral" in v.reason
    with pytest.raises(IntegralError):
        solve_integral(sweedler())
    with pytest.raises(ConsistencyError):
        positive_antipode(sweedler())


def test_trivial_hopf():
    H = trivial_hopf()
    assert is_compact(H).compact
    assert involutivity_report(H).all_true


@pytest.mark.parametrize("name", NAMES)
def test_antipode_degeneracy(shipped_hopf, name):
    H = shipped_hopf[name]
    I = la.eye(H.n)
    assert la.allclose(positive_antipode(H), I)
    assert la.allclose(nakayama(H).N, I)
    assert la.allclose(nakayama_sqrt(H), I)
    assert la.allclose(unitary_antipode(H), H.antipode)
    assert la.allclose(nakayama(H).alpha.vec, H.eps)
    assert la.allclose(compute_beta(H).vec, H.eps)
    assert la.allclose(antipode_adjoint(H), H.antipode)
    mein, extra = involutivity_report(H), modularity_report(H)
    assert mein.consistent and mein.all_true
    assert extra.consistent and extra.all_true
    assert all(c.ok for c in radford_check(H))


def test_recorded_checks_in_cache():
    H = function_algebra(GROUPS["S3"]())
    positive_antipode(H)
    unitary_antipode(H)
    recorded = H.cache["checks"]
    assert "splus" in recorded and "unitary" in recorded
    assert all(c.ok for group in recorded.values() for c in group)


def test_float_backend_agrees():
    H = function_algebra(GROUPS["Q8"]()).to_float()
    assert all(c.ok for c in H.checks())
    v = is_compact(H)
    assert v.compact and v.min_eigenvalue == pytest.approx(1 / 8)
    assert la.max_abs(positive_antipode(H) - np.eye(8)) < 1e-9


@pytest.mark.parametrize("n", [2, 3])
def test_albert_exact_inner_automorphism(n):
    C = matrix_coalgebra(n)
    X = la.eye(n)
    for i in range(n):
        for j in range(n):
            X[i, j] = GaussQ(1 + (i == j) * 2, i - j)
    L, _ = convolution_matrices(C, X.ravel())
    _, R = convolution_matrices(C, la.inv(X).ravel())
    T = L.T @ R.T
    res = albert_tau(T, C)
    assert la.allclose(res.reassemble(), T)


def test_albert_float(rng):
    C = matrix_coalgebra(3).to_float()
    T = positive_inner_automorphism(C, rng)
    res = albert_tau(T, C)
    assert la.max_abs(res.reassemble() - T) < 1e-8


def test_albert_rejects_non_simple():
    H = group_algebra(GROUPS["Z2"]())
    with pytest.raises(NotInner):
        albert_tau(la.eye(2), H)


def test_albert_rejects_non_inner():
    C = matrix_coalgebra(2)
    T = C.circ.matrix  # t_ij -> t_ji reverses the coproduct
    with pytest.raises(NotInner):
        albert_tau(T, C)


@pytest.mark.parametrize("n", [2, 3])
def test_conjugacy_on_matrix_coalgebra(n, rng):
    C = matrix_coalgebra(n).to_float()
    A = positive_inner_automorphism(C, rng)
    res = conjugate_involutions(C, C.circ, conjugated_circ(A, C.circ))
    assert res.ok and res.diamond_compact
    assert res.conjugation_residual < 1e-8
    # P recovers the positive automorphism itself
    assert la.max_abs(res.P - A) < 1e-8


def test_conjugacy_trivial_pair():
    H = function_algebra(GROUPS["S3"]())
    res = conjugate_involutions(H, H.circ, H.circ)
    assert res.ok and la.allclose(res.P, la.eye(H.n))


def test_group_automorphism_preserves_circ():
    H = group_algebra(GROUPS["Z3"]())
    A = group_automorphism_matrix(H, [0, 2, 1])
    assert H.is_multiplicative_map(A) and H.is_coalgebra_map(A)
    res = conjugate_involutions(H, H.circ, conjugated_circ(A, H.circ))
    assert res.ok and la.allclose(res.P, la.eye(H.n))


@pytest.mark.parametrize("name", NAMES)
def test_no_positive_biderivations_in_finite_dimension(shipped_hopf, name):
    assert hopf_biderivations(shipped_hopf[name]) == []


def test_sign_twisted_circ_is_not_conjugate():
    C = matrix_coalgebra(2)
    X = la.eye(2)
    X[1, 1] = GaussQ(-1)
    L, _ = convolution_matrices(C, X.ravel())
    _, R = convolution_matrices(C, la.inv(X).ravel())
    twisted = la.ConjLinOp((L.T @ R.T) @ C.circ.matrix)  # t_12 -> -t_21
    res = conjugate_involutions(C, C.circ, twisted)
    assert not res.diamond_compact
    assert res.ok  # P^4 = Q^2 and the intertwining identities still hold
    assert la.allclose(res.P, la.eye(4))
    assert res.conjugation_residual == pytest.approx(2.0)  # -t_21 against t_21


def test_diamond_must_be_a_circ_structure():
    C = matrix_coalgebra(2)
    with pytest.raises(AxiomError, match="diamond"):
        conjugate_involutions(C, C.circ, la.ConjLinOp(la.eye(4)))


def test_function_algebra_integral_is_uniform():
    H = function_algebra(GROUPS["S3"]())
    phi = solve_integral(H)
    assert all(v == GaussQ(1) / 6 for v in phi.vec)


def test_function_algebra_gram_is_scaled_identity():
    H = function_algebra(GROUPS["Z3"]())
    solve_integral(H)
    assert la.allclose(gram_from_integral(H).matrix, la.eye(3) * (GaussQ(1) / 3))


def test_negated_circ_is_not_compact():
    H = group_algebra(GROUPS["Z2"]())
    M = la.eye(2)
    M[1, 1] = GaussQ(-1)
    bad = H.with_circ(la.ConjLinOp(M), validate=False)
    assert {"circ-anticomultiplicative", "circ-counit"} <= {c.name for c in bad.checks() if not c.ok}
    v = is_compact(bad)
    assert not v.compact and v.witness is not None
    assert v.min_eigenvalue == pytest.approx(-1.0)
