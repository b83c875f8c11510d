"""Finite-dimensional comodules, their dualities, and unitary structures.

A comodule of dimension ``m`` over a coalgebra ``C`` of dimension ``n`` is
stored as an ``m x m x n`` array ``coeffs``:

* right comodule: ``chi(e_j) = sum_i e_i (x) t_ij`` with ``t_ij = coeffs[i, j]``;
* left comodule: ``chi(e_j) = sum_i t_ij (x) e_i``.

Sesquilinear forms follow the package convention ``<u, v> = v^H B u``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .checks import AxiomError, Check
from .coalgebra import Coalgebra, StructureBasis, coeff, structure_basis

__all__ = [
    "NotSubcomodule",
    "NotUnitary",
    "Comodule",
    "is_morphism",
    "right_adjoint",
    "left_adjoint",
    "circ_of_left",
    "circ_dual",
    "antipode_dual",
    "UnitaryVerdict",
    "check_unitary",
    "unitarize",
    "is_irreducible",
    "same_coefficients",
    "commutant",
    "decompose",
    "orthogonal_complement",
    "PositiveIso",
    "positive_comodule_iso",
]


class NotSubcomodule(ValueError):
    pass


class NotUnitary(ValueError):
    pass


def _cast_pair(C: Coalgebra, coeffs) -> tuple[Coalgebra, np.ndarray]:
    coeffs = np.asarray(coeffs)
    exact = C.exact and coeffs.dtype == object
    if exact:
        return C, la.as_exact(coeffs)
    return (C.to_float() if C.exact else C), la.as_float(coeffs)


class Comodule:
    """Right or left comodule given by its matrix coefficients."""

    def __init__(self, C: Coalgebra, coeffs, side: str = "right", validate: bool = True):
        if side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        self.C, self.coeffs = _cast_pair(C, coeffs)
        m = self.coeffs.shape[0]
        if self.coeffs.shape != (m, m, self.C.n):
            raise ValueError(f"coefficients must be m x m x {self.C.n}")
        self.side = side
        self.exact = self.C.exact
        if validate:
            bad = [c for c in self.checks() if not c.ok]
            if bad:
                raise AxiomError(bad[0])

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    def coefficient(self, i: int, j: int) -> np.ndarray:
        return self.coeffs[i, j]

    def to_float(self) -> "Comodule":
        return Comodule(self.C.to_float(), la.as_float(self.coeffs), self.side, validate=False)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def from_grouplike(cls, C: Coalgebra, g) -> "Comodule":
        """One-dimensional comodule ``v -> v (x) g``."""
        return cls(C, np.asarray(g).reshape(1, 1, -1))

    @classmethod
    def defining(cls, C: Coalgebra, k: int) -> "Comodule":
        """The comodule whose coefficients are ``t_ij = e_{i k + j}`` (matrix coalgebras)."""
        coeffs = la.zeros((k, k, C.n), C.exact)
        for i in range(k):
            for j in range(k):
                coeffs[i, j] = C.unit_vector(i * k + j)
        return cls(C, coeffs)

    def direct_sum(self, other: "Comodule") -> "Comodule":
        if self.side != other.side:
            raise ValueError("cannot add comodules of different sides")
        m1, m2 = self.m, other.m
        out = la.zeros((m1 + m2, m1 + m2, self.C.n), self.exact and other.exact)
        out[:m1, :m1] = self.coeffs if self.exact and other.exact else la.as_float(self.coeffs)
        out[m1:, m1:] = other.coeffs if self.exact and other.exact else la.as_float(other.coeffs)
        C = self.C if self.exact and other.exact else self.C.to_float()
        return Comodule(C, out, self.side, validate=False)

    def change_basis(self, P) -> "Comodule":
        """Coefficients ``P^-1 T P`` in the basis given by the columns of ``P``."""
        exact = self.exact and la.is_exact(P)
        T = self.coeffs if exact else la.as_float(self.coeffs)
        P = P if exact else la.as_float(P)
        Pi = la.inv(P)
        out = _mat_coeff_product(_mat_coeff_product(Pi, T, left=True), P, left=False)
        C = self.C if exact else self.C.to_float()
        return Comodule(C, out, self.side, validate=False)

    # -- axioms -------------------------------------------------------------------

    def checks(self) -> list[Check]:
        C, T, m = self.C, self.coeffs, self.m
        exact = self.exact
        worst, witness = 0.0, None
        ok = True
        for i in range(m):
            for j in range(m):
                lhs = C.apply_delta(T[i, j])
                rhs = la.zeros((C.n, C.n), exact)
                for l in range(m):
                    a, b = (T[i, l], T[l, j]) if self.side == "right" else (T[l, j], T[i, l])
                    rhs = rhs + np.multiply.outer(a, b)
                good = la.allclose(lhs, rhs)
                r = la.max_abs(la.as_float(lhs) - la.as_float(rhs))
                if r > worst or (not good and ok):
                    worst = max(worst, r)
                if not good and ok:
                    ok, witness = False, [i, j]
        out = [Check("comodule-coassociativity", ok, worst, witness)]
        ok, worst, witness = True, 0.0, None
        for i in range(m):
            for j in range(m):
                val = C.counit(T[i, j])
                target = 1 if i == j else 0
                r = abs(complex(val) - target)
                good = (val == target) if exact else r <= la.TOL.residual
                worst = max(worst, r)
                if not good and ok:
                    ok, witness = False, [i, j]
        out.append(Check("comodule-counit", ok, worst, witness))
        return out

    def coeff_span(self) -> np.ndarray:
        """Basis (columns) of the coefficient subcoalgebra."""
        return coeff(self)

    def restrict(self, W) -> "Comodule":
        """Subcomodule spanned by the columns of ``W``."""
        exact = self.exact and la.is_exact(W)
        T = self.coeffs if exact else la.as_float(self.coeffs)
        W = W if exact else la.as_float(W)
        r, n = W.shape[1], self.C.n
        # T W = W T' coefficientwise: solve per coalgebra coordinate
        TW = _mat_coeff_product(T, W, left=False)  # m x r x n
        out = la.zeros((r, r, n), exact)
        if exact:
            for k in range(n):
                sol = _solve_overdetermined_exact(W, TW[:, :, k])
                if sol is None:
                    raise NotSubcomodule("span is not a subcomodule")
                out[:, :, k] = sol
        else:
            pinv = np.linalg.pinv(W)
            for k in range(n):
                sol = pinv @ TW[:, :, k]
                if la.max_abs(W @ sol - TW[:, :, k]) > 1e-8:
                    raise NotSubcomodule("span is not a subcomodule")
                out[:, :, k] = sol
        C = self.C if exact else self.C.to_float()
        return Comodule(C, out, self.side, validate=False)


def _solve_overdetermined_exact(A, B):
    """Exact ``X`` with ``A X = B`` for full-column-rank ``A``, or ``None``."""
    m, r = A.shape
    rows = [list(A[i]) + list(B[i]) for i in range(m)]
    rows, piv = la._rref_rows(rows, r + B.shape[1])
    if any(p >= r for p in piv) or len(piv) < r:
        return None
    return np.array([row[r:] for row in rows[:r]], dtype=object).reshape(r, B.shape[1])


def _mat_coeff_product(X, Y, left: bool):
    """Scalar matrix times coefficient matrix.

    ``left=True``: scalar ``X`` (a x m) times coefficients ``Y`` (m x b x n).
    ``left=False``: coefficients ``X`` (a x m x n) times scalar ``Y`` (m x b).
    """
    if left:
        return np.einsum("ai,ibk->abk", X, Y) if not la.is_exact(Y) else _obj_einsum_left(X, Y)
    return np.einsum("aik,ib->abk", X, Y) if not la.is_exact(X) else _obj_einsum_right(X, Y)


def _obj_einsum_left(X, Y):
    a, m = X.shape
    _, b, n = Y.shape
    out = la.zeros((a, b, n))
    for i in range(m):
        for p in range(a):
            if X[p, i]:
                out[p] = out[p] + X[p, i] * Y[i]
    return out


def _obj_einsum_right(X, Y):
    a, m, n = X.shape
    _, b = Y.shape
    out = la.zeros((a, b, n))
    for i in range(m):
        for q in range(b):
            if Y[i, q]:
                out[:, q] = out[:, q] + X[:, i] * Y[i, q]
    return out


def is_morphism(F, V: Comodule, W: Comodule, tol: float = 1e-8) -> Check:
    """``F : V -> W`` commutes with the coactions (``F T_V = T_W F``)."""
    exact = V.exact and W.exact and la.is_exact(F)
    TV = V.coeffs if exact else la.as_float(V.coeffs)
    TW = W.coeffs if exact else la.as_float(W.coeffs)
    F = F if exact else la.as_float(F)
    lhs = _mat_coeff_product(F, TV, left=True)
    rhs = _mat_coeff_product(TW, F, left=False)
    r = la.max_abs(la.as_float(lhs) - la.as_float(rhs))
    ok = la.allclose(lhs, rhs) if exact else r <= tol
    return Check("comodule-morphism", ok, r)


# -- dualities ----------------------------------------------------------------------


def right_adjoint(V: Comodule) -> Comodule:
    """Left comodule on ``V*`` with ``sum f_-1 f_0(v) = sum f(v_0) v_1``."""
    if V.side != "right":
        raise ValueError("right adjoint needs a right comodule")
    return Comodule(V.C, V.coeffs.transpose(1, 0, 2).copy(), "left", validate=False)


def left_adjoint(W: Comodule) -> Comodule:
    """Right comodule on ``W*`` with ``sum f_0(w) f_1 = sum w_-1 f(w_0)``."""
    if W.side != "left":
        raise ValueError("left adjoint needs a left comodule")
    return Comodule(W.C, W.coeffs.transpose(1, 0, 2).copy(), "right", validate=False)


def _map_coefficients(V: Comodule, fn) -> np.ndarray:
    m = V.m
    out = la.zeros(V.coeffs.shape, V.exact)
    for i in range(m):
        for j in range(m):
            out[i, j] = fn(V.coeffs[i, j])
    return out


def circ_of_left(W: Comodule) -> Comodule:
    """Right comodule on the conjugate space of a left comodule: ``t_ij -> t_ij°``."""
    if W.side != "left":
        raise ValueError("expected a left comodule")
    if W.C.circ is None:
        raise ValueError("coalgebra has no circ structure")
    return Comodule(W.C, _map_coefficients(W, W.C.apply_circ), "right", validate=False)


def circ_dual(V: Comodule) -> Comodule:
    """The conjugate dual: right comodule on ``V*_c`` with coefficients ``t'_ji = t_ij°``."""
    return circ_of_left(right_adjoint(V))


def antipode_dual(V: Comodule) -> Comodule:
    """Right comodule on ``V*`` with ``sum f_0(v) f_1 = sum f(v_0) S(v_1)``."""
    H = V.C
    S = getattr(H, "antipode", None)
    if S is None:
        raise ValueError("antipode dual needs a Hopf algebra")
    S = S if V.exact else la.as_float(S)
    moved = _map_coefficients(V, lambda t: S @ t)
    return Comodule(H, moved.transpose(1, 0, 2).copy(), "right", validate=False)


# -- unitary structures -----------------------------------------------------------------


@dataclass
class UnitaryVerdict:
    unitary: bool
    degenerate: bool
    residual: float
    witness: list | None = None

    def __bool__(self) -> bool:
        return self.unitary

    def as_dict(self) -> dict:
        out = {"unitary": self.unitary, "degenerate": self.degenerate, "residual": self.residual}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check_unitary(V: Comodule, B, tol: float = 1e-8) -> UnitaryVerdict:
    """Whether ``sum <u_0, v> u_1 = sum <u, v_0> v_1°`` on all basis pairs.

    The residual at ``(u, v) = (e_j, e_l)`` is
    ``sum_i B[l, i] t_ij - sum_i B[i, j] t_il°``; the witness is the first
    violating ``[j, l]``.
    """
    if V.side != "right":
        raise ValueError("unitarity is defined for right comodules")
    C = V.C
    if C.circ is None:
        raise ValueError("coalgebra has no circ structure")
    exact = V.exact and la.is_exact(B)
    T = V.coeffs if exact else la.as_float(V.coeffs)
    B = B if exact else la.as_float(B)
    Cc = C if exact or not C.exact else C.to_float()
    if la.is_zero(B):
        return UnitaryVerdict(True, True, 0.0)
    m = V.m
    circ_T = [[Cc.apply_circ(T[i, l]) for l in range(m)] for i in range(m)]
    worst, witness = 0.0, None
    for j in range(m):
        for l in range(m):
            lhs = sum((B[l, i] * T[i, j] for i in range(m)), la.zeros(C.n, exact))
            rhs = sum((B[i, j] * circ_T[i][l] for i in range(m)), la.zeros(C.n, exact))
            r = la.max_abs(la.as_float(lhs) - la.as_float(rhs))
            worst = max(worst, r)
            good = la.allclose(lhs, rhs) if exact else r <= tol
            if not good and witness is None:
                witness = [j, l]
    return UnitaryVerdict(witness is None, False, worst, witness)


def unitarize(V: Comodule, basis: StructureBasis | None = None, tol: float = 1e-8) -> np.ndarray:
    """A unitary inner product on ``V`` over a compact circ-coalgebra.

    Each coordinate map ``v -> sum e^a(v_0) v_1`` embeds ``V`` into ``C`` as a
    comodule; the structure-basis product of ``C`` is unitary, so its pullback
    (averaged over ``a``) is a unitary inner product on ``V``.
    """
    if V.side != "right":
        raise ValueError("unitarize expects a right comodule")
    sb = basis if basis is not None else structure_basis(V.C)
    G = la.as_float(sb.gram)
    T = la.as_float(V.coeffs)
    m = V.m
    B = np.zeros((m, m), dtype=complex)
    for a in range(m):
        B += T[a].conj() @ G @ T[a].T  # B[l, j] += t_al^H G t_aj
    B = B / m
    B = (B + B.conj().T) / 2
    verdict = check_unitary(V.to_float(), B, tol)
    if not verdict.unitary:
        raise NotUnitary(f"pulled-back form is not unitary (residual {verdict.residual:.3g})")
    if not la.is_positive_definite(B):
        raise NotUnitary("pulled-back form is not positive definite")
    return B


# -- irreducibility and decomposition -----------------------------------------------


def is_irreducible(V: Comodule) -> bool:
    """Irreducible iff the ``m^2`` matrix coefficients are linearly independent."""
    rows = V.coeffs.reshape(V.m * V.m, -1)
    r = la.rank(rows) if V.exact else la.rank(rows, tol=1e-9)
    return r == V.m * V.m


def same_coefficients(V: Comodule, W: Comodule) -> bool:
    """Equal coefficient subcoalgebras; for irreducibles this is isomorphism."""
    A = la.as_float(V.coeff_span())
    B = la.as_float(W.coeff_span())
    if A.shape[1] != B.shape[1]:
        return False
    return la.rank(np.hstack([A, B]), tol=1e-9) == A.shape[1]


def commutant(V: Comodule) -> list[np.ndarray]:
    """Basis of the comodule endomorphisms ``X`` with ``X T = T X``."""
    T = la.as_float(V.coeffs)
    m, n = V.m, V.C.n
    rows = []
    for idx in range(m * m):
        E = np.zeros((m, m), dtype=complex)
        E[divmod(idx, m)] = 1
        rows.append((np.einsum("ai,ibk->abk", E, T) - np.einsum("aik,ib->abk", T, E)).ravel())
    N = la.nullspace(np.array(rows).T, tol=1e-9)
    return [N[:, c].reshape(m, m) for c in range(N.shape[1])]


def decompose(V: Comodule, B=None, seed: int = 0, retries: int = 8) -> list[np.ndarray]:
    """Bases (columns) of irreducible subcomodules whose direct sum is ``V``.

    Splits by the eigenspaces of a random ``B``-self-adjoint endomorphism;
    ``B`` defaults to :func:`unitarize`.  Pieces are mutually ``B``-orthogonal.
    """
    if B is None:
        B = unitarize(V)
    B = la.as_float(B)
    rng = np.random.default_rng(seed)
    basis = commutant(V)
    Binv = np.linalg.inv(B)
    for _ in range(retries):
        X = sum(c * E for c, E in zip(rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis)), basis))
        X = (X + Binv @ X.conj().T @ B) / 2
        pieces = [np.asarray(vecs) for _, vecs in la.eigensplit(X)]
        if all(is_irreducible(V.restrict(P)) for P in pieces):
            return pieces
    raise la.LinalgError("could not split the comodule into irreducibles")


def orthogonal_complement(W, B) -> np.ndarray:
    """Columns spanning the ``B``-orthogonal complement of the column span of ``W``."""
    W = la.as_float(W)
    B = la.as_float(B)
    # <x, w> = w^H B x = 0 for all w
    return la.nullspace(W.conj().T @ B, tol=1e-9)


# -- positive isomorphism V -> V with coaction (id (x) S^2) chi ---------------------


@dataclass
class PositiveIso:
    phi: np.ndarray
    min_eigenvalue: float
    intertwining_residual: float
    ok: bool


def positive_comodule_iso(V: Comodule, B, Gm, tol: float = 1e-8) -> PositiveIso:
    """The map ``phi`` with ``gamma(psi_B(v), psi_B(u)) = B(phi(u), v)``.

    ``B`` must be a unitary inner product on ``V`` and ``Gm`` one on the
    antipode dual ``V*``.  With ``<u, v> = v^H B u`` this gives ``phi = Gm^T B``;
    the result is ``B``-positive definite and intertwines ``chi`` with
    ``(id (x) S^2) chi``.
    """
    H = V.C
    dual = antipode_dual(V)
    for label, comod, form in (("V", V, B), ("dual of V", dual, Gm)):
        verdict = check_unitary(comod, form, tol)
        if not verdict.unitary or verdict.degenerate:
            raise NotUnitary(f"form on {label} is not unitary")
        if not la.is_positive_definite(form):
            raise NotUnitary(f"form on {label} is not positive definite")
    exact = V.exact and la.is_exact(B) and la.is_exact(Gm)
    if not exact:
        B, Gm = la.as_float(B), la.as_float(Gm)
    phi = Gm.T @ B
    Bf = la.as_float(B)
    pos = la.as_float(B @ phi)
    eig = np.linalg.eigvalsh((pos + pos.conj().T) / 2)
    # B-positivity: spectrum of phi relative to B equals eig of B phi against B
    rel = np.linalg.eigvals(np.linalg.solve(Bf, pos)).real
    Vc = V if exact else V.to_float()
    S = H.antipode if exact else la.as_float(H.antipode)
    S2V = Comodule(Vc.C, _map_coefficients(Vc, lambda t: S @ (S @ t)), validate=False)
    inter = is_morphism(phi, Vc, S2V, tol)
    ok = bool(eig.min() > tol) and inter.ok
    return PositiveIso(phi, float(rel.min()), inter.residual, ok)
