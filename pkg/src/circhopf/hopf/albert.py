"""Inner coalgebra automorphisms of simple coalgebras.

A coalgebra automorphism ``T`` of a simple coalgebra ``D`` dualises to an
algebra automorphism ``f -> f o T`` of the full matrix algebra ``D*``, which
is inner: ``f o T = tau * f * tau^-1``.  Hence ``T = (tau * id)(id * tau^-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import linalg as la
from ..coalgebra import Coalgebra
from .algebra import Functional

__all__ = ["AlbertResult", "NotInner", "convolution_matrices", "albert_tau"]


class NotInner(ValueError):
    pass


@dataclass
class AlbertResult:
    tau: Functional
    tau_inv: Functional
    residual: float

    def reassemble(self) -> np.ndarray:
        return self.tau.left_op() @ self.tau_inv.right_op()


def convolution_matrices(D: Coalgebra, f) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of ``u -> f * u`` and ``u -> u * f`` on the dual space."""
    n = D.n
    exact = D.exact and la.is_exact(f)
    L = la.zeros((n, n), exact)
    R = la.zeros((n, n), exact)
    for k in range(n):
        for i, j, v in D.coproduct_terms(k):
            if f[i]:
                L[k, j] = L[k, j] + v * f[i]
            if f[j]:
                R[k, i] = R[k, i] + v * f[j]
    return L, R


def albert_tau(T, D: Coalgebra) -> AlbertResult:
    """The functional ``tau`` with ``T = (tau * id)(id * tau^-1)``, scaled so its
    largest coordinate is 1.
    """
    exact = D.exact and la.is_exact(T)
    if not exact:
        T = la.as_float(T)
        if D.exact:
            D = D.to_float()
    n = D.n
    blocks = []
    for i in range(n):
        L_Ti, _ = convolution_matrices(D, T[i, :])
        _, R_ei = convolution_matrices(D, D.unit_vector(i))
        blocks.append(L_Ti - R_ei)
    A = np.vstack(blocks)
    N = la.nullspace(A) if exact else la.nullspace(A, tol=1e-9)
    if N.shape[1] == 0:
        raise NotInner("automorphism not inner")
    if N.shape[1] > 1:
        raise NotInner("coalgebra is not simple: the intertwiner space has dimension > 1")
    u = N[:, 0]
    mags = [abs(complex(x)) for x in u]
    top = max(mags)
    idx = next(i for i, m in enumerate(mags) if m >= top * (1 - 1e-9))
    u = u / u[idx]
    L_u, _ = convolution_matrices(D, u)
    try:
        v = la.solve(L_u, D.eps)
    except la.LinalgError:
        raise NotInner("automorphism not inner") from None
    tau_inv = Functional(D, v)
    tau = Functional(D, u, inverse=tau_inv)
    tau_inv.inverse = tau
    rebuilt = tau.left_op() @ tau_inv.right_op()
    residual = la.max_abs(la.as_float(rebuilt) - la.as_float(T))
    return AlbertResult(tau, tau_inv, residual)
