"""Conjugating one circ structure into another by a positive automorphism.

Given a compact circ structure ``∘`` and a second circ structure ``◇`` on the
same Hopf algebra (or coalgebra), ``Q = ◇∘`` is a linear automorphism that is
self-adjoint for the Gram form of ``∘``.  Its positive fourth root ``P`` of
``Q^2`` satisfies ``P∘ = ∘P^-1`` and ``◇P = P^-1◇``; when ``◇`` is compact as
well, ``◇ = P∘P^-1`` and ``P^2 = Q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .. import linalg as la
from ..checks import AxiomError, Check
from ..coalgebra import Coalgebra, NotCompact, NotCosemisimple, structure_basis
from .albert import convolution_matrices
from .algebra import HopfAlgebra
from .integral import gram_from_integral, is_compact, solve_integral

__all__ = [
    "InconsistentPair",
    "ConjugacyResult",
    "conjugate_involutions",
    "conjugated_circ",
    "hopf_biderivations",
    "positive_hopf_automorphism",
    "group_automorphism_matrix",
    "positive_inner_automorphism",
]


class InconsistentPair(ValueError):
    pass


@dataclass
class ConjugacyResult:
    P: np.ndarray
    Q: np.ndarray
    diamond_compact: bool
    conjugation_residual: float
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _resid(A, B) -> float:
    return la.max_abs(la.as_float(A) - la.as_float(B))


def _check(name, A, B, tol) -> Check:
    r = _resid(A, B)
    ok = la.allclose(A, B) if la.is_exact(A) and la.is_exact(B) else r <= tol
    return Check(name, ok, r)


def _root(A, G):
    try:
        return la.positive_sqrt(A, G)
    except la.NotPositive as exc:
        if la.is_exact(A) and "no exact square root" in str(exc):
            return la.positive_sqrt(la.as_float(A), la.as_float(G))
        raise


def _carrier(C: Coalgebra, circ: la.ConjLinOp) -> Coalgebra:
    """``C`` with ``circ`` attached, moved to floats when ``circ`` is a float operator."""
    if C.exact and not la.is_exact(circ.matrix):
        C = C.to_float()
    return C.with_circ(circ, validate=False)


def _circ_axioms(C: Coalgebra, circ: la.ConjLinOp) -> list[Check]:
    D = _carrier(C, circ)
    checks = D.circ_checks()
    if isinstance(D, HopfAlgebra):
        checks += D.circ_hopf_checks()
    return checks


def _default_gram(C: Coalgebra):
    if isinstance(C, HopfAlgebra):
        solve_integral(C)
        return gram_from_integral(C).matrix
    return structure_basis(C).gram


def _is_compact(C: Coalgebra) -> bool:
    if isinstance(C, HopfAlgebra):
        return is_compact(C).compact
    try:
        structure_basis(C)
    except (NotCompact, NotCosemisimple):
        return False
    return True


def conjugate_involutions(C: Coalgebra, circ: la.ConjLinOp, diamond: la.ConjLinOp, gram=None, tol: float = 1e-8) -> ConjugacyResult:
    """The positive automorphism ``P`` relating ``∘`` and ``◇``.

    ``C`` may be a :class:`HopfAlgebra` (circ-Hopf axioms are checked) or a
    plain :class:`Coalgebra`.  ``gram`` defaults to the integral Gram form of
    ``(C, ∘)`` for Hopf algebras and to the structure-basis product otherwise.
    """
    for op, label in ((circ, "circ"), (diamond, "diamond")):
        bad = [c for c in _circ_axioms(C, op) if not c.ok]
        if bad:
            raise AxiomError(Check(f"{label}: {bad[0].name}", False, bad[0].residual, bad[0].witness))
    base = _carrier(C, circ)
    G = gram if gram is not None else _default_gram(base)
    G = la.GramForm(G).matrix if not isinstance(G, la.GramForm) else G.matrix
    M, Dm = circ.matrix, diamond.matrix
    exact = la.is_exact(M) and la.is_exact(Dm) and la.is_exact(G)
    if not exact:
        M, Dm, G = la.as_float(M), la.as_float(Dm), la.as_float(G)
    Q = la.ConjLinOp(Dm) @ la.ConjLinOp(M)
    if not la.is_self_adjoint(Q, G):
        raise InconsistentPair("inconsistent involution pair: Q is not self-adjoint")
    Q2 = Q @ Q
    P = _root(_root(Q2, G), G) if exact else la.abs_power(Q, G, 0.5)
    if la.is_exact(P) != exact:
        M, Dm, G, Q, Q2 = (la.as_float(x) for x in (M, Dm, G, Q, Q2))
    Pinv = la.inv(P)
    checks = [
        _check("P4-equals-Q2", P @ P @ P @ P, Q2, tol),
        _check("P-circ-equals-circ-Pinv", P @ M, M @ la.conj(Pinv), tol),
        _check("diamond-P-equals-Pinv-diamond", Dm @ la.conj(P), Pinv @ Dm, tol),
        Check("Q-self-adjoint", True),
    ]
    conj_form = P @ M @ la.conj(Pinv)
    residual = _resid(Dm, conj_form)
    compact = _is_compact(_carrier(C, diamond))
    if compact:
        checks.append(_check("diamond-equals-P-circ-Pinv", Dm, conj_form, tol))
        checks.append(_check("P2-equals-Q", P @ P, Q, tol))
    return ConjugacyResult(P, Q, compact, residual, checks)


def conjugated_circ(A, circ: la.ConjLinOp) -> la.ConjLinOp:
    """``A∘A^-1`` as a conjugate-linear operator."""
    M = circ.matrix
    if la.is_exact(A) != la.is_exact(M):
        A, M = la.as_float(A), la.as_float(M)
    return la.ConjLinOp(A @ M @ la.conj(la.inv(A)))


# -- synthetic inputs ----------------------------------------------------------


def hopf_biderivations(H: HopfAlgebra, G=None) -> list[np.ndarray]:
    """Real basis of the G-self-adjoint maps ``D`` that are derivations and coderivations.

    ``exp(t D)`` is then a one-parameter group of positive Hopf automorphisms.
    """
    n = H.n
    Hf = H.to_float()
    if G is None:
        solve_integral(H)
        G = gram_from_integral(H).matrix
    Gf = la.as_float(G)
    m = la.as_float(Hf.mult)
    d = la.as_float(Hf.delta)
    rows = []
    for idx in range(n * n):
        E = np.zeros((n, n), dtype=complex)
        E[divmod(idx, n)] = 1
        # D(e_i e_j) - D(e_i) e_j - e_i D(e_j)
        der = np.einsum("ak,kij->aij", E, m) - np.einsum("akj,ki->aij", m, E) - np.einsum("aik,kj->aij", m, E)
        # Delta D - (D (x) id + id (x) D) Delta
        cod = np.einsum("abk,kj->abj", d, E) - np.einsum("ai,ibj->abj", E, d) - np.einsum("bi,aij->abj", E, d)
        rows.append(np.concatenate([der.ravel(), cod.ravel()]))
    A = np.array(rows).T  # complex-linear constraints on vec(D)
    # real unknowns (Re D, Im D); self-adjointness G D = D^H G is real-linear
    real_blocks = [np.hstack([A.real, -A.imag]), np.hstack([A.imag, A.real])]
    sa_re, sa_im = [], []
    for idx in range(n * n):
        E = np.zeros((n, n))
        E[divmod(idx, n)] = 1
        for part, scale in ((0, 1.0), (1, 1j)):
            Dm = E * scale
            R = Gf @ Dm - Dm.conj().T @ Gf
            (sa_re if part == 0 else sa_im).append(R.ravel())
    SA = np.array(sa_re).T, np.array(sa_im).T
    real_blocks.append(np.hstack([SA[0].real, SA[1].real]))
    real_blocks.append(np.hstack([SA[0].imag, SA[1].imag]))
    big = np.vstack(real_blocks)
    N = la.nullspace(big.astype(complex), tol=1e-9).real
    out = []
    for c in range(N.shape[1]):
        v = N[:, c]
        out.append((v[: n * n] + 1j * v[n * n :]).reshape(n, n))
    return out


def positive_hopf_automorphism(H: HopfAlgebra, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """``exp(D)`` for a random G-self-adjoint biderivation ``D``; the identity when none exist."""
    basis = hopf_biderivations(H)
    if not basis:
        return np.eye(H.n, dtype=complex)
    D = sum(c * B for c, B in zip(rng.standard_normal(len(basis)) * scale, basis))
    return sla.expm(D)


def group_automorphism_matrix(H: HopfAlgebra, perm: list[int]) -> np.ndarray:
    """Permutation matrix ``e_i -> e_{perm[i]}`` in the exact backend."""
    n = H.n
    A = la.zeros((n, n))
    for i, p in enumerate(perm):
        A[p, i] = la.ONE
    return A


def positive_inner_automorphism(C: Coalgebra, rng: np.random.Generator) -> np.ndarray:
    """``(tau * id)(id * tau^-1)`` for ``tau(t_ij) = X_ij`` with ``X`` hermitian positive definite.

    Only meaningful on a matrix coalgebra with the ``t_ij`` basis; the result
    is a positive coalgebra automorphism for the standard circ structure.
    """
    k = int(round(C.n ** 0.5))
    Y = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    X = Y @ Y.conj().T + k * np.eye(k)
    Cf = C.to_float()
    L, _ = convolution_matrices(Cf, X.ravel())
    _, R = convolution_matrices(Cf, np.linalg.inv(X).ravel())
    # convolution_matrices act on the dual; transpose to the action on C
    return L.T @ R.T
