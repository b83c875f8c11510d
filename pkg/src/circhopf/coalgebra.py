"""Finite-dimensional coalgebras given by structure constants.

``delta[i, j, k]`` is the coefficient of ``e_i (x) e_j`` in ``Delta(e_k)`` and
``eps[k] = eps(e_k)``.  An optional conjugate-linear ``circ`` makes it a
circ-coalgebra.  Inputs are validated on construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .arith import GaussQ
from .checks import AxiomError, Check, accumulate, compare

__all__ = [
    "Coalgebra",
    "SimpleComponent",
    "StructureBasis",
    "NotCosemisimple",
    "NotCompact",
    "sparse_entries",
    "matrix_coalgebra",
    "decompose_simple",
    "coeff",
    "structure_basis",
]


class NotCosemisimple(ValueError):
    pass


class NotCompact(ValueError):
    pass


def sparse_entries(T: np.ndarray) -> list[tuple]:
    """Nonzero entries of ``T`` as ``(*index, value)`` tuples."""
    if la.is_exact(T):
        return [(*idx, v) for idx, v in np.ndenumerate(T) if v]
    return [(*idx, complex(v)) for idx, v in np.ndenumerate(T) if v != 0]


class Coalgebra:
    """Coalgebra ``(C, Delta, eps)`` with an optional circ structure.

    Exactness follows the dtype of ``delta``; ``eps`` and ``circ`` are cast to
    match.
    """

    def __init__(
        self,
        delta,
        eps,
        basis: Sequence[str] | None = None,
        circ=None,
        validate: bool = True,
    ):
        delta = np.asarray(delta)
        self.exact = delta.dtype == object or np.issubdtype(delta.dtype, np.integer)
        cast = la.as_exact if self.exact else la.as_float
        self.delta = cast(delta)
        self.eps = cast(np.asarray(eps, dtype=object if self.exact else complex))
        n = self.delta.shape[0]
        if self.delta.shape != (n, n, n) or self.eps.shape != (n,):
            raise ValueError("delta must be n x n x n and eps of length n")
        self.n = n
        self.basis = list(basis) if basis is not None else [f"e{k}" for k in range(n)]
        if circ is not None and not isinstance(circ, la.ConjLinOp):
            circ = la.ConjLinOp(cast(np.asarray(circ, dtype=object if self.exact else complex)))
        elif circ is not None:
            circ = la.ConjLinOp(cast(circ.matrix))
        self.circ: la.ConjLinOp | None = circ
        self._nz = sparse_entries(self.delta)
        self._by_k: list[list[tuple]] = [[] for _ in range(n)]
        for i, j, k, v in self._nz:
            self._by_k[k].append((i, j, v))
        if validate:
            self.validate()

    # -- basic maps -----------------------------------------------------------

    def zero(self):
        return la.zeros(self.n, self.exact)

    def unit_vector(self, k: int):
        v = self.zero()
        v[k] = GaussQ(1) if self.exact else 1.0
        return v

    def coproduct_terms(self, k: int) -> list[tuple]:
        """``(i, j, coeff)`` with ``Delta(e_k) = sum coeff e_i (x) e_j``."""
        return self._by_k[k]

    def apply_delta(self, x) -> np.ndarray:
        """``Delta(x)`` as an ``n x n`` coefficient matrix."""
        X = la.zeros((self.n, self.n), self.exact)
        for i, j, k, v in self._nz:
            if x[k]:
                X[i, j] = X[i, j] + v * x[k]
        return X

    def counit(self, x):
        return sum((e * c for e, c in zip(self.eps, x) if c), GaussQ(0) if self.exact else 0j)

    def apply_circ(self, x):
        if self.circ is None:
            raise ValueError("coalgebra has no circ structure")
        return self.circ(x)

    def has_circ(self) -> bool:
        return self.circ is not None

    def to_float(self) -> "Coalgebra":
        circ = None if self.circ is None else self.circ.to_float()
        return Coalgebra(la.as_float(self.delta), la.as_float(self.eps), self.basis, circ, validate=False)

    def with_circ(self, circ, validate: bool = True) -> "Coalgebra":
        return Coalgebra(self.delta, self.eps, self.basis, circ, validate=validate)

    # -- axioms ---------------------------------------------------------------

    def coalgebra_checks(self) -> list[Check]:
        lhs: dict = {}
        rhs: dict = {}
        for i, j, k, v in self._nz:
            # (Delta (x) id) Delta
            for a, b, w in self._by_k[i]:
                accumulate(lhs, (a, b, j, k), w * v)
            # (id (x) Delta) Delta
            for b, c, w in self._by_k[j]:
                accumulate(rhs, (i, b, c, k), v * w)
        lab = lambda key: f"Delta^2({self.basis[key[3]]})"
        checks = [compare("coassociativity", lhs, rhs, self.exact, lab)]
        one = GaussQ(1) if self.exact else 1.0
        left: dict = {}
        right: dict = {}
        for i, j, k, v in self._nz:
            if self.eps[i]:
                accumulate(left, (j, k), self.eps[i] * v)
            if self.eps[j]:
                accumulate(right, (i, k), self.eps[j] * v)
        ident = {(k, k): one for k in range(self.n)}
        lab2 = lambda key: self.basis[key[1]]
        checks.append(compare("counit-left", left, ident, self.exact, lab2))
        checks.append(compare("counit-right", right, ident, self.exact, lab2))
        return checks

    def circ_checks(self) -> list[Check]:
        if self.circ is None:
            return []
        M = self.circ.matrix
        n = self.n
        inv_ok = la.allclose(M @ la.conj(M), la.eye(n, self.exact))
        res = la.max_abs(la.as_float(M) @ la.as_float(M).conj() - np.eye(n))
        checks = [Check("circ-involutive", inv_ok, res, None if inv_ok else "M conj(M) != I")]
        lhs: dict = {}
        rhs: dict = {}
        for i, j, l, v in self._nz:
            for k in range(n):
                if M[l, k]:
                    accumulate(lhs, (i, j, k), v * M[l, k])
        for a, b, k, v in self._nz:
            vc = v.conj() if self.exact else np.conj(v)
            for i in range(n):
                if not M[i, b]:
                    continue
                for j in range(n):
                    if M[j, a]:
                        accumulate(rhs, (i, j, k), vc * M[i, b] * M[j, a])
        lab = lambda key: f"Delta({self.basis[key[2]]}°)"
        checks.append(compare("circ-anticomultiplicative", lhs, rhs, self.exact, lab))
        epsM = {k: sum((self.eps[l] * M[l, k] for l in range(n) if M[l, k]), 0) for k in range(n)}
        epsc = {k: la.conj(self.eps)[k] for k in range(n)}
        checks.append(compare("circ-counit", epsM, epsc, self.exact, lambda k: self.basis[k]))
        return checks

    def checks(self) -> list[Check]:
        return self.coalgebra_checks() + self.circ_checks()

    def validate(self) -> None:
        for c in self.checks():
            if not c.ok:
                raise AxiomError(c)

    # -- subcoalgebras ----------------------------------------------------------

    def restrict(self, B: np.ndarray) -> "Coalgebra":
        """Structure constants of the subcoalgebra spanned by the columns of ``B``."""
        exact = self.exact and la.is_exact(B)
        if not exact:
            Bf = la.as_float(B)
            L = np.linalg.pinv(Bf)
            D = la.as_float(self.delta)
            d = np.einsum("ai,bj,ijk,kc->abc", L, L, D, Bf)
            eps = la.as_float(self.eps) @ Bf
            circ = None
            if self.circ is not None:
                MB = la.as_float(self.circ.matrix) @ Bf.conj()
                if la.max_abs(Bf @ (L @ MB) - MB) <= 1e-7:
                    circ = L @ MB
            return Coalgebra(d, eps, None, circ, validate=False)
        k = B.shape[1]
        L = la.solve(B.T @ la.conj(B), la.conj(B).T) if k else la.zeros((0, self.n))
        d = la.zeros((k, k, k))
        for c in range(k):
            X = self.apply_delta(B[:, c])
            Y = L @ X @ L.T
            d[:, :, c] = Y
        eps = np.array([self.counit(B[:, c]) for c in range(k)], dtype=object)
        circ = None
        if self.circ is not None:
            MB = self.circ.matrix @ la.conj(B)
            C = L @ MB
            if la.allclose(B @ C, MB):
                circ = C
        return Coalgebra(d, eps, None, circ, validate=False)


# -- builders -----------------------------------------------------------------


def matrix_coalgebra(n: int) -> Coalgebra:
    """The matrix coalgebra on ``t_ij`` (index ``i*n + j``).

    ``Delta(t_ij) = sum_k t_ik (x) t_kj``, ``eps(t_ij) = delta_ij`` and
    ``t_ij° = t_ji``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    N = n * n
    d = la.zeros((N, N, N))
    one = GaussQ(1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                d[i * n + k, k * n + j, i * n + j] = one
    eps = la.zeros(N)
    for i in range(n):
        eps[i * n + i] = one
    M = la.zeros((N, N))
    for i in range(n):
        for j in range(n):
            M[j * n + i, i * n + j] = one
    labels = [f"t{i + 1}{j + 1}" if n < 10 else f"t{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    return Coalgebra(d, eps, labels, la.ConjLinOp(M))


# -- simple decomposition -----------------------------------------------------


@dataclass
class SimpleComponent:
    """A simple subcoalgebra ``C_rho``: its basis columns inside ``C``."""

    index: int
    basis: np.ndarray
    idempotent: np.ndarray
    circ_stable: bool | None = None
    coefficients: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def size(self) -> int:
        return math.isqrt(self.dim)


def _center(D: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    # sum_k z_k (D[k,i,l] - D[i,k,l]) = 0 for all i, l
    A = (D - D.transpose(1, 0, 2)).transpose(0, 2, 1).reshape(n, n * n).T
    return la.nullspace(A, tol=1e-9)


def _conv(D: np.ndarray, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return np.einsum("i,j,ijl->l", f, g, D)


def _rationalize_basis(B: np.ndarray) -> np.ndarray | None:
    out = la.zeros(B.shape)
    for idx, z in np.ndenumerate(B):
        re = Fraction(float(z.real)).limit_denominator(10**6)
        im = Fraction(float(z.imag)).limit_denominator(10**6)
        if abs(complex(float(re), float(im)) - z) > 1e-9:
            return None
        out[idx] = GaussQ(re, im)
    return out


def _is_subcoalgebra_exact(C: Coalgebra, B: np.ndarray) -> bool:
    R, piv = la.rref(B.T)
    for c in range(B.shape[1]):
        X = C.apply_delta(B[:, c])
        Y = X[np.ix_(piv, piv)]
        if not la.allclose(B @ Y @ B.T, X):
            return False
    return True


def decompose_simple(C: Coalgebra, seed: int = 0, retries: int = 8) -> list[SimpleComponent]:
    """Split ``C`` into simple subcoalgebras via central idempotents of the dual algebra.

    Raises :class:`NotCosemisimple` when the dual algebra is not semisimple or
    the central element cannot be split after ``retries`` seeds.
    """
    n = C.n
    D = la.as_float(C.delta)
    # trace form of the dual algebra; nondegenerate iff semisimple
    Lmats = [D[i].T for i in range(n)]  # left multiplication by e^i: column j -> sum_l D[i,j,l] e^l
    T = np.array([[np.trace(Lmats[i] @ Lmats[j]) for j in range(n)] for i in range(n)])
    if la.rank(T, tol=1e-9) < n:
        raise NotCosemisimple("not cosemisimple at tolerance")
    Z = _center(D)
    r = Z.shape[1]
    unit = la.as_float(C.eps)
    idempotents = None
    for attempt in range(retries):
        rng = np.random.default_rng(seed + attempt)
        z = Z @ rng.standard_normal(r)
        Lz = np.linalg.lstsq(Z, np.stack([_conv(D, z, Z[:, j]) for j in range(r)], axis=1), rcond=None)[0]
        w, V = np.linalg.eig(Lz)
        gaps = [abs(w[a] - w[b]) for a in range(r) for b in range(a + 1, r)]
        if gaps and min(gaps) < 1e-6 * max(1.0, float(np.max(np.abs(w)))):
            continue
        ids = []
        for j in range(r):
            e = Z @ V[:, j]
            ee = _conv(D, e, e)
            lam = np.vdot(e, ee) / np.vdot(e, e)
            if abs(lam) < 1e-9 or la.max_abs(ee - lam * e) > 1e-7 * max(1.0, la.max_abs(ee)):
                ids = None
                break
            ids.append(e / lam)
        if ids is None:
            continue
        if la.max_abs(sum(ids) - unit) > 1e-7:
            continue
        idempotents = ids
        break
    if idempotents is None:
        raise NotCosemisimple("not cosemisimple at tolerance")
    comps = []
    for e in idempotents:
        Pi = np.einsum("ijk,j->ik", D, e)  # c -> sum c1 e(c2)
        U, sv, _ = np.linalg.svd(Pi)
        k = int(np.sum(sv > 1e-8 * max(1.0, sv[0])))
        if math.isqrt(k) ** 2 != k:
            raise NotCosemisimple("not cosemisimple at tolerance")
        B = la._canonical_columns(U[:, :k])
        comps.append((B, e))
    if sum(B.shape[1] for B, _ in comps) != n:
        raise NotCosemisimple("not cosemisimple at tolerance")

    def key(item):
        B, _ = item
        piv = tuple(int(np.flatnonzero(np.abs(B[:, c]) > 1e-9)[0]) for c in range(B.shape[1]))
        return (B.shape[1], piv)

    comps.sort(key=key)
    out = []
    for idx, (B, e) in enumerate(comps):
        if C.exact:
            Bx = _rationalize_basis(B)
            ex = _rationalize_basis(e.reshape(-1, 1))
            if Bx is not None and _is_subcoalgebra_exact(C, Bx):
                B = Bx
                e = ex[:, 0] if ex is not None else e
        stable = None
        if C.circ is not None:
            M = C.circ.matrix
            if la.is_exact(B) and la.is_exact(M):
                MB = M @ la.conj(B)
                stable = la.rank(np.hstack([B, MB])) == B.shape[1]
            else:
                MB = la.as_float(M) @ la.as_float(B).conj()
                stable = la.rank(np.hstack([la.as_float(B), MB]), tol=1e-8) == B.shape[1]
        out.append(SimpleComponent(idx, B, e, stable))
    return out


# -- coefficient coalgebra ----------------------------------------------------


def coeff(V) -> np.ndarray:
    """Basis (columns) of the span of all matrix coefficients of a comodule ``V``.

    ``V.coeffs[i, j]`` is the coordinate vector of ``t_ij``.
    """
    m, _, n = V.coeffs.shape
    rows = V.coeffs.reshape(m * m, n)
    if la.is_exact(rows):
        R, piv = la.rref(rows)
        return R[: len(piv)].T.copy()
    R, piv = la.rref(rows, tol=1e-9)
    return R[: len(piv)].T.copy()


# -- structure basis of a compact circ-coalgebra -------------------------------


@dataclass
class StructureBasis:
    """Matrix-coefficient bases ``t^rho_ij`` with ``(t^rho_ij)° = t^rho_ji``.

    ``grids[rho][i, j]`` is the coordinate vector of ``t^rho_ij``; ``gram``
    is the inner product making the whole family orthonormal.
    """

    components: list[SimpleComponent]
    grids: list[np.ndarray]
    gram: np.ndarray = field(repr=False)

    def all_vectors(self) -> np.ndarray:
        return np.hstack([g.reshape(-1, g.shape[-1]).T for g in self.grids])


def _matrix_coefficients(Cf: Coalgebra, B: np.ndarray, rng) -> np.ndarray:
    """An irreducible right coideal inside span(B) and its coefficient grid ``T[i, j] = t_ij``."""
    k = math.isqrt(B.shape[1])
    D = la.as_float(Cf.delta)
    L = np.linalg.pinv(B)
    for _ in range(8):
        g = rng.standard_normal(Cf.n) + 1j * rng.standard_normal(Cf.n)
        # (g * id)(c) = sum g(c1) c2, restricted to span(B)
        op = np.einsum("i,ijk->jk", g, D)
        opB = L @ op @ B
        w, V = np.linalg.eig(opB)
        groups = la._cluster(list(w))
        if len(groups) != k or any(len(gr) != k for gr in groups):
            continue
        Vsub = B @ la._canonical_columns(V[:, groups[0]])  # n x k basis of the coideal
        # Delta(v_j) = sum_i v_i (x) t_ij
        Lv = np.linalg.pinv(Vsub)
        T = np.zeros((k, k, Cf.n), dtype=complex)
        for j in range(k):
            X = np.einsum("abc,c->ab", D, Vsub[:, j])
            coef = Lv @ X  # coef[i, :] = t_ij
            T[:, j, :] = coef
        return T
    raise NotCosemisimple("not cosemisimple at tolerance")


def _circ_grid(M: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Entrywise circ of a coefficient grid."""
    return np.einsum("ab,ijb->ija", M, T.conj())


def _symmetrize_grid(Cf: Coalgebra, T: np.ndarray) -> np.ndarray:
    k, _, n = T.shape
    M = la.as_float(Cf.circ.matrix)
    Tc = _circ_grid(M, T)
    S = Tc.transpose(1, 0, 2)  # s_ij = t_ji°
    # solve S A = A T for the k x k matrix A
    rows = []
    for idx in range(k * k):
        a = idx // k, idx % k
        E = np.zeros((k, k))
        E[a] = 1
        rows.append((np.einsum("ilx,lj->ijx", S, E) - np.einsum("il,ljx->ijx", E, T)).ravel())
    N = la.nullspace(np.array(rows).T, tol=1e-8)
    if N.shape[1] != 1:
        raise NotCompact("coefficient grid admits no circ-symmetric normalisation")
    A = N[:, 0].reshape(k, k)
    for M0 in (np.linalg.inv(A), np.linalg.inv(A).conj().T, np.linalg.inv(A).T, np.linalg.inv(A).conj()):
        tr = np.trace(M0)
        if abs(tr) < 1e-12:
            continue
        Mh = M0 * (abs(tr) / tr)
        if la.max_abs(Mh - Mh.conj().T) > 1e-7 * max(1.0, la.max_abs(Mh)):
            continue
        Mh = (Mh + Mh.conj().T) / 2
        if np.linalg.eigvalsh(Mh).min() <= 1e-10:
            continue
        W = np.linalg.cholesky(Mh)
        Winv = np.linalg.inv(W)
        T2 = np.einsum("ia,abx,bj->ijx", Winv, T, W)
        if la.max_abs(_circ_grid(M, T2) - T2.transpose(1, 0, 2)) <= 1e-7:
            return T2
    raise NotCompact("component carries no positive unitary structure")


def structure_basis(C: Coalgebra, components: list[SimpleComponent] | None = None, seed: int = 0) -> StructureBasis:
    """Per-component bases ``t_ij`` with ``t_ij° = t_ji``, plus their orthonormalising product.

    Computed in floating point.  Raises :class:`NotCompact` when a component
    admits no such basis.
    """
    if C.circ is None:
        raise ValueError("structure basis needs a circ structure")
    comps = components if components is not None else decompose_simple(C, seed)
    Cf = C.to_float()
    rng = np.random.default_rng(seed)
    grids = []
    for comp in comps:
        if not comp.circ_stable:
            raise NotCompact(f"component {comp.index} is not circ-stable")
        B = la.as_float(comp.basis)
        T = _matrix_coefficients(Cf, B, rng)
        T = _symmetrize_grid(Cf, T)
        comp.coefficients = T
        grids.append(T)
    Tall = np.hstack([g.reshape(-1, C.n).T for g in grids])
    Ti = np.linalg.inv(Tall)
    gram = Ti.conj().T @ Ti
    return StructureBasis(comps, grids, gram)
