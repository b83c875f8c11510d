"""Fourier forms and Fourier products on a coalgebra.

A Fourier form is a bilinear ``omega`` with the balance identity
``sum omega(c, d1) d2 = sum c1 omega(c2, d)``; a Fourier product ``*`` satisfies
``Delta(c * d) = sum (c * d1) (x) d2 = sum c1 (x) (c2 * d)``.  They correspond
bijectively through ``c * d = sum omega(c, d1) d2`` and ``omega(c, d) = eps(c * d)``.

Storage: ``W[i, j] = omega(e_i, e_j)`` and ``p[k, i, j]`` with
``e_i * e_j = sum_k p[k, i, j] e_k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .checks import Check
from .coalgebra import Coalgebra

__all__ = [
    "NotFourier",
    "DegenerateRestriction",
    "balance_residual",
    "product_residual",
    "form_to_product",
    "product_to_form",
    "apply_product",
    "form_from_gram",
    "gram_from_form",
    "integral_form",
    "is_normal",
    "neutral_element",
    "Classification",
    "classify",
    "classify_product",
    "mixed_associativity",
    "is_right_coideal",
    "is_left_coideal",
    "span_product",
]


class NotFourier(ValueError):
    pass


class DegenerateRestriction(ValueError):
    pass


def _align(C: Coalgebra, *arrays):
    """Cast the coalgebra and arrays to one backend."""
    exact = C.exact and all(la.is_exact(a) for a in arrays)
    if exact:
        return (C.delta, C.eps, *arrays)
    return (la.as_float(C.delta), la.as_float(C.eps), *(la.as_float(a) for a in arrays))


def _residual_check(name: str, lhs, rhs, tol: float) -> Check:
    exact = la.is_exact(lhs) and la.is_exact(rhs)
    r = la.max_abs(la.as_float(lhs) - la.as_float(rhs)) if lhs.size else 0.0
    ok = la.allclose(lhs, rhs) if exact else r <= tol
    witness = None
    if not ok:
        diff = np.abs(la.as_float(lhs) - la.as_float(rhs))
        witness = [int(x) for x in np.unravel_index(np.argmax(diff), diff.shape)]
    return Check(name, ok, r, witness)


def balance_residual(C: Coalgebra, W, tol: float = 1e-9) -> Check:
    """``sum omega(e_i, d1) d2 = sum c1 omega(c2, e_j)`` as an ``(i, j, out)`` tensor."""
    d, _, W = _align(C, W)
    lhs = la.contract("ia,abj->ijb", W, d)
    rhs = la.contract("abi,bj->ija", d, W)
    return _residual_check("fourier-form-balance", lhs, rhs, tol)


def product_residual(C: Coalgebra, p, tol: float = 1e-9) -> Check:
    """``Delta(e_i * e_j)`` against both expansions, as ``(i, j, x, y)`` tensors."""
    d, _, p = _align(C, p)
    delta_of = la.contract("kij,xyk->ijxy", p, d)
    right = la.contract("ayj,xia->ijxy", d, p)
    left = la.contract("xbi,ybj->ijxy", d, p)
    a = _residual_check("fourier-product-right", delta_of, right, tol)
    b = _residual_check("fourier-product-left", delta_of, left, tol)
    return a if not a.ok else b


def form_to_product(C: Coalgebra, W, validate: bool = True, tol: float = 1e-9) -> np.ndarray:
    """``c * d = sum omega(c, d1) d2``."""
    if validate:
        chk = balance_residual(C, W, tol)
        if not chk.ok:
            raise NotFourier(f"not a Fourier form (residual {chk.residual:.3g} at {chk.witness})")
    d, _, W = _align(C, W)
    return la.contract("ia,akj->kij", W, d)


def product_to_form(C: Coalgebra, p, validate: bool = True, tol: float = 1e-9) -> np.ndarray:
    """``omega(c, d) = eps(c * d)``."""
    if validate:
        chk = product_residual(C, p, tol)
        if not chk.ok:
            raise NotFourier(f"not a Fourier product (residual {chk.residual:.3g} at {chk.witness})")
    _, eps, p = _align(C, p)
    return la.contract("k,kij->ij", eps, p)


def apply_product(p, x, y):
    """``x * y`` for coordinate vectors."""
    return np.einsum("kij,i,j->k", p, x, y)


def form_from_gram(C: Coalgebra, G) -> np.ndarray:
    """``omega(c, d) = <d, c°>`` for a sesquilinear ``<x, y> = y^H G x``, i.e. ``W = M^H G``."""
    M = C.circ.matrix
    if not (la.is_exact(M) and la.is_exact(G)):
        M, G = la.as_float(M), la.as_float(G)
    return la.herm(M) @ G


def gram_from_form(C: Coalgebra, W) -> np.ndarray:
    """``<c, d>_omega = omega(d°, c)``, i.e. ``G = M^T W``."""
    M = C.circ.matrix
    if not (la.is_exact(M) and la.is_exact(W)):
        M, W = la.as_float(M), la.as_float(W)
    return M.T @ W


def integral_form(H) -> np.ndarray:
    """``omega_phi(x, y) = phi(S(x) y)`` for the normal integral of a Hopf algebra."""
    from .hopf.integral import bilinear_matrix, solve_integral

    phi = solve_integral(H)
    return H.antipode.T @ bilinear_matrix(H, phi)


def is_normal(C: Coalgebra, W, tol: float = 1e-9) -> Check:
    """``sum omega(c1, c2) = eps(c)`` on every basis vector."""
    d, eps, W = _align(C, W)
    lhs = la.contract("abk,ab->k", d, W)
    return _residual_check("fourier-normal", lhs, eps, tol)


def neutral_element(C: Coalgebra, D, W, tol: float = 1e-9):
    """The ``s`` in the span of the columns of ``D`` with ``omega(c, s) = eps(c) = omega(s, c)``.

    Then ``c * s = s * c = c`` for ``c`` in that span.  Raises
    :class:`DegenerateRestriction` when ``omega`` restricted to the span is
    singular.
    """
    d, eps, W, D = _align(C, W, D)
    exact = la.is_exact(W)
    WD = D.T @ W @ D
    r = D.shape[1]
    rk = la.rank(WD) if exact else _float_rank(WD, tol)
    if rk < r:
        raise DegenerateRestriction("Fourier form is degenerate on the component")
    x = la.solve(WD, D.T @ eps)
    s = D @ x
    p = la.contract("ia,akj->kij", W, d)
    for c in range(r):
        v = D[:, c]
        for name, val in (("right", apply_product(p, v, s)), ("left", apply_product(p, s, v))):
            ok = la.allclose(val, v) if exact else la.max_abs(val - v) <= 1e-8
            if not ok:
                raise DegenerateRestriction(f"no two-sided neutral element ({name} identity fails)")
    return s


def _float_rank(A, tol: float) -> int:
    sv = np.linalg.svd(la.as_float(A), compute_uv=False)
    if not sv.size or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


@dataclass
class Classification:
    positive: bool
    positive_definite: bool
    hermitian: bool
    symmetric: bool
    normal: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {
            "positive": self.positive,
            "positive_definite": self.positive_definite,
            "hermitian": self.hermitian,
            "symmetric": self.symmetric,
            "normal": self.normal,
        }

    def as_dict(self) -> dict:
        return {**self.flags(), "witnesses": self.witnesses}


def classify(C: Coalgebra, W, tol: float = 1e-9) -> Classification:
    """Decide the flags of ``omega`` from its sesquilinear form ``omega(d°, c)``.

    Witnesses: index pairs for hermitian/symmetric failures, a basis index for
    normality, and a coordinate vector (float pairs) for positivity.
    """
    if C.circ is None:
        raise ValueError("classification needs a circ structure")
    G = gram_from_form(C, W)
    exact = la.is_exact(G)
    Gf = la.as_float(G)
    Wf = la.as_float(W)
    witnesses: dict = {}

    herm_diff = Gf - Gf.conj().T
    hermitian = la.is_hermitian(G) if exact else la.max_abs(herm_diff) <= tol
    if not hermitian:
        i, j = np.unravel_index(np.argmax(np.abs(herm_diff)), herm_diff.shape)
        witnesses["hermitian"] = [int(i), int(j)]

    sym_diff = Wf - Wf.T
    symmetric = all(x == y for x, y in zip(W.flat, W.T.flat)) if la.is_exact(W) else la.max_abs(sym_diff) <= tol
    if not symmetric:
        i, j = np.unravel_index(np.argmax(np.abs(sym_diff)), sym_diff.shape)
        witnesses["symmetric"] = [int(i), int(j)]

    # positivity of the quadratic form c -> omega(c°, c) only sees the hermitian part
    Hpart = (Gf + Gf.conj().T) / 2
    w, V = np.linalg.eigh(Hpart)
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    positive = hermitian and bool(w.size == 0 or w[0] >= -tol * scale)
    if exact and hermitian:
        positive_definite = la.is_positive_definite(G)
    else:
        positive_definite = hermitian and bool(w.size and w[0] > tol * scale)
    if not positive_definite and w.size:
        vec = V[:, 0]
        vec = vec / vec[np.argmax(np.abs(vec))]
        witnesses["positive"] = [[float(round(z.real, 12)), float(round(z.imag, 12))] for z in vec]

    norm = is_normal(C, W, tol)
    if not norm.ok:
        witnesses["normal"] = norm.witness
    return Classification(positive, positive_definite, hermitian, symmetric, norm.ok, witnesses)


def classify_product(C: Coalgebra, p, tol: float = 1e-9) -> Classification:
    """Flags of a Fourier product, read off its form ``eps(c * d)``."""
    return classify(C, product_to_form(C, p, tol=tol), tol)


def mixed_associativity(p1, p2, tol: float = 1e-9) -> Check:
    """``x *1 (y *2 z) = (x *1 y) *2 z`` on all basis triples ``(x, y, z)``."""
    lhs = la.contract("kxa,ayz->kxyz", p1, p2)
    rhs = la.contract("kaz,axy->kxyz", p2, p1)
    chk = _residual_check("mixed-associativity", lhs, rhs, tol)
    if chk.witness is not None:
        chk.witness = chk.witness[1:]
    return chk


def _is_coideal(C: Coalgebra, R, side: str, tol: float) -> bool:
    d = la.as_float(C.delta)
    R = la.as_float(R)
    r = R.shape[1]
    for c in range(r):
        X = np.einsum("ijk,k->ij", d, R[:, c])
        leg = X if side == "right" else X.T  # rows index the leg that must lie in R
        for col in range(X.shape[1]):
            v = leg[:, col]
            if la.rank(np.column_stack([R, v]), tol=tol) > r:
                return False
    return True


def is_right_coideal(C: Coalgebra, R, tol: float = 1e-9) -> bool:
    """``Delta(R)`` lies in ``R (x) C``; ``R`` has independent columns."""
    return _is_coideal(C, R, "right", tol)


def is_left_coideal(C: Coalgebra, L, tol: float = 1e-9) -> bool:
    """``Delta(L)`` lies in ``C (x) L``; ``L`` has independent columns."""
    return _is_coideal(C, L, "left", tol)


def span_product(p, R, L) -> np.ndarray:
    """Columns ``r * l`` for all column pairs."""
    p = la.as_float(p)
    R, L = la.as_float(R), la.as_float(L)
    cols = [apply_product(p, R[:, a], L[:, b]) for a in range(R.shape[1]) for b in range(L.shape[1])]
    return np.column_stack(cols) if cols else np.zeros((p.shape[0], 0), dtype=complex)
