"""Dense operator calculus over the scalar backends.

Matrices are numpy arrays.  Exact matrices have ``dtype=object`` and hold
:class:`~circhopf.arith.GaussQ` entries; float matrices are ``complex128``.
Every public routine dispatches on that dtype.

Sesquilinear forms use the convention ``<x, y>_G = y^H G x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg as sla

from .arith import TOL, GaussQ, Scalar

__all__ = [
    "LinalgError",
    "DegenerateForm",
    "NotPositive",
    "NotSelfAdjoint",
    "NotDiagonalizable",
    "is_exact",
    "as_exact",
    "as_float",
    "eye",
    "zeros",
    "conj",
    "herm",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inv",
    "is_zero",
    "max_abs",
    "allclose",
    "ConjLinOp",
    "GramForm",
    "is_hermitian",
    "is_positive_definite",
    "gram_adjoint",
    "is_self_adjoint",
    "positive_sqrt",
    "polar_right",
    "abs_power",
    "contract",
    "eigensplit",
]


class LinalgError(ValueError):
    pass


class DegenerateForm(LinalgError):
    pass


class NotPositive(LinalgError):
    pass


class NotSelfAdjoint(LinalgError):
    pass


class NotDiagonalizable(LinalgError):
    pass


CLUSTER_RTOL = 1e-7

ZERO = GaussQ(0)
ONE = GaussQ(1)


# -- construction and conversion ---------------------------------------------


def is_exact(A) -> bool:
    return isinstance(A, np.ndarray) and A.dtype == object


def _to_gaussq(x) -> GaussQ:
    if isinstance(x, Scalar):
        if not isinstance(x, GaussQ):
            raise TypeError(f"exact matrices hold GaussQ entries, got {x.backend}")
        return x
    if isinstance(x, complex):
        raise TypeError("complex floats cannot enter an exact matrix")
    return GaussQ.lift(x)


def as_exact(A) -> np.ndarray:
    """Object array of GaussQ built from ints, Fractions, strings or GaussQ."""
    arr = np.asarray(A, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = _to_gaussq(x)
    return out


def as_float(A) -> np.ndarray:
    if isinstance(A, np.ndarray) and A.dtype != object:
        return A.astype(complex)
    arr = np.asarray(A, dtype=object)
    out = np.empty(arr.shape, dtype=complex)
    for idx, x in np.ndenumerate(arr):
        out[idx] = complex(x)
    return out


def eye(n: int, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.eye(n, dtype=complex)
    out = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        out[i, i] = ONE
    return out


def zeros(shape, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.zeros(shape, dtype=complex)
    return np.full(shape, ZERO, dtype=object)


def like(A, exact_value):
    """Cast a GaussQ-valued array to the dtype of ``A``."""
    return exact_value if is_exact(A) else as_float(exact_value)


_vconj = np.frompyfunc(lambda x: x.conj(), 1, 1)


def conj(A) -> np.ndarray:
    if is_exact(A):
        return _vconj(A).astype(object) if A.ndim else A.item().conj()
    return np.conj(A)


def herm(A) -> np.ndarray:
    return conj(A).T


def is_zero(A) -> bool:
    if is_exact(A):
        return not any(bool(x) for x in A.flat)
    return max_abs(A) <= TOL.eq


def max_abs(A) -> float:
    a = as_float(A)
    return float(np.max(np.abs(a))) if a.size else 0.0


def allclose(A, B, tol: float | None = None) -> bool:
    """Exact equality for exact inputs, max-abs residual below ``tol`` otherwise."""
    if is_exact(A) and is_exact(B):
        return A.shape == B.shape and all(x == y for x, y in zip(A.flat, B.flat))
    return max_abs(as_float(A) - as_float(B)) <= (TOL.residual if tol is None else tol)


# -- exact elimination --------------------------------------------------------


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = rows[r][c].inverse()
        rows[r] = [x * inv_p if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _rref_float(A: np.ndarray, tol: float) -> tuple[np.ndarray, list[int]]:
    R = np.array(A, dtype=complex)
    nrows, ncols = R.shape
    scale = max(1.0, float(np.max(np.abs(R)))) if R.size else 1.0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[piv, c]) <= tol * scale:
            R[r:, c] = 0
            continue
        R[[r, piv]] = R[[piv, r]]
        R[r] /= R[r, c]
        others = np.arange(nrows) != r
        R[others] -= np.outer(R[others, c], R[r])
        pivots.append(c)
        r += 1
    R[np.abs(R) <= tol * scale] = 0
    return R, pivots


def rref(A, tol: float | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if is_exact(A):
        rows, piv = _rref_rows([list(r) for r in A], A.shape[1])
        return np.array(rows, dtype=object).reshape(A.shape), piv
    return _rref_float(A, 1e-10 if tol is None else tol)


def rank(A, tol: float | None = None) -> int:
    if is_exact(A):
        return len(rref(A)[1])
    a = as_float(A)
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    thr = (TOL.eq if tol is None else tol) * max(1.0, sv[0])
    return int(np.sum(sv > thr))


def nullspace(A, tol: float | None = None) -> np.ndarray:
    """Columns spanning ``{x : A x = 0}``.

    Exact: the standard basis read off the rref.  Float: right singular
    vectors below ``tol`` relative to the largest singular value.
    """
    m, n = A.shape
    if is_exact(A):
        R, piv = rref(A)
        free = [c for c in range(n) if c not in piv]
        N = zeros((n, len(free)))
        for k, f in enumerate(free):
            N[f, k] = ONE
            for r, p in enumerate(piv):
                N[p, k] = -R[r, f]
        return N
    a = as_float(A)
    if m == 0:
        return np.eye(n, dtype=complex)
    _, sv, vh = np.linalg.svd(a)
    thr = (TOL.eq if tol is None else tol) * max(1.0, sv[0] if sv.size else 0.0)
    r = int(np.sum(sv > thr))
    return vh[r:].conj().T


def solve(A, b):
    """Unique solution of ``A x = b`` (``b`` a vector or a matrix)."""
    if not is_exact(A):
        a = as_float(A)
        if a.shape[0] != a.shape[1] or rank(a) < a.shape[1]:
            raise LinalgError("singular system")
        return np.linalg.solve(a, as_float(b))
    bb = b if b.ndim == 2 else b.reshape(-1, 1)
    n = A.shape[1]
    rows = [list(A[i]) + list(bb[i]) for i in range(A.shape[0])]
    rows, piv = _rref_rows(rows, n + bb.shape[1])
    if len([p for p in piv if p < n]) < n:
        raise LinalgError("singular system")
    if any(p >= n for p in piv):
        raise LinalgError("inconsistent system")
    X = np.array([r[n:] for r in rows[:n]], dtype=object).reshape(n, bb.shape[1])
    return X if b.ndim == 2 else X[:, 0]


def inv(A):
    if is_exact(A):
        return solve(A, eye(A.shape[0]))
    a = as_float(A)
    if rank(a) < a.shape[0]:
        raise LinalgError("singular matrix")
    return np.linalg.inv(a)


# -- conjugate-linear operators ----------------------------------------------


class ConjLinOp:
    """The conjugate-linear map ``x -> M conj(x)``.

    ``A @ op`` and ``op @ A`` compose with linear maps; two conjugate-linear
    maps compose to a plain matrix.
    """

    __array_ufunc__ = None

    def __init__(self, matrix):
        self.matrix = matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x):
        return self.matrix @ conj(x)

    def __matmul__(self, other):
        if isinstance(other, ConjLinOp):
            return self.matrix @ conj(other.matrix)
        if isinstance(other, np.ndarray):
            if other.ndim == 1:
                return self(other)
            return ConjLinOp(self.matrix @ conj(other))
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, np.ndarray):
            return ConjLinOp(other @ self.matrix)
        return NotImplemented

    def is_involutive(self) -> bool:
        return allclose(self.matrix @ conj(self.matrix), eye(self.n, is_exact(self.matrix)))

    def to_float(self) -> "ConjLinOp":
        return ConjLinOp(as_float(self.matrix))

    def __repr__(self):
        return f"ConjLinOp({self.matrix!r})"


# -- sesquilinear forms -------------------------------------------------------


@dataclass(frozen=True)
class GramForm:
    """``<x, y> = y^H G x``."""

    matrix: np.ndarray

    def inner(self, x, y):
        return (herm(y.reshape(-1, 1)) @ self.matrix @ x.reshape(-1, 1))[0, 0]

    def is_hermitian(self) -> bool:
        return is_hermitian(self.matrix)

    def is_positive_definite(self) -> bool:
        return is_positive_definite(self.matrix)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(_hsym(as_float(self.matrix)))


def _gram(G) -> np.ndarray:
    return G.matrix if isinstance(G, GramForm) else G


def _hsym(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def is_hermitian(G) -> bool:
    G = _gram(G)
    if is_exact(G):
        return allclose(G, herm(G))
    return max_abs(G - G.conj().T) <= TOL.eq * max(1.0, max_abs(G))


def _ldl_pivots_exact(G: np.ndarray) -> list:
    """Diagonal of the LDL^H factorisation without pivoting (None if it breaks)."""
    n = G.shape[0]
    rows = [list(r) for r in G]
    piv = []
    for k in range(n):
        d = rows[k][k]
        if not d:
            return piv + [d]
        piv.append(d)
        dinv = d.inverse()
        for i in range(k + 1, n):
            if rows[i][k]:
                f = rows[i][k] * dinv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
    return piv


def is_positive_definite(G) -> bool:
    """Hermitian with all eigenvalues above the tolerance (exact: Sylvester via LDL^H)."""
    G = _gram(G)
    if not is_hermitian(G):
        return False
    if is_exact(G):
        piv = _ldl_pivots_exact(G)
        return len(piv) == G.shape[0] and all(p.is_real() and p.re > 0 for p in piv)
    w = np.linalg.eigvalsh(_hsym(as_float(G)))
    return bool(w.size == 0 or w.min() > TOL.eq)


# -- adjoints, roots, polar decomposition -------------------------------------


def gram_adjoint(A, G):
    """``A^dagger = G^{-1} A^H G``, the adjoint for ``<x, y> = y^H G x``."""
    G = _gram(G)
    try:
        Ginv = inv(G)
    except LinalgError:
        raise DegenerateForm("degenerate form") from None
    return Ginv @ herm(A) @ G


def is_self_adjoint(A, G) -> bool:
    G = _gram(G)
    if is_exact(A) and is_exact(G):
        return allclose(G @ A, herm(A) @ G)
    lhs = as_float(G) @ as_float(A)
    return max_abs(lhs - lhs.conj().T) <= TOL.residual * max(1.0, max_abs(lhs))


def _cluster(values: Sequence[complex]) -> list[list[int]]:
    order = sorted(range(len(values)), key=lambda i: (values[i].real, values[i].imag))
    groups: list[list[int]] = []
    for i in order:
        if groups:
            ref = np.mean([values[j] for j in groups[-1]])
            if abs(values[i] - ref) <= CLUSTER_RTOL * max(1.0, abs(ref)):
                groups[-1].append(i)
                continue
        groups.append([i])
    return groups


def _canonical_columns(B: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Reduced column echelon basis of span(B): independent of the input basis."""
    R, piv = _rref_float(B.T, tol)
    return R[: len(piv)].T


def _rationalize(z: complex) -> list[GaussQ]:
    seen, out = set(), []
    for d in (1, 2, 4, 8, 12, 16, 36, 64, 100, 1000, 10**4, 10**6):
        g = GaussQ(Fraction(z.real).limit_denominator(d), Fraction(z.imag).limit_denominator(d))
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def _eigensplit_exact(A: np.ndarray) -> list[tuple[GaussQ, np.ndarray]]:
    n = A.shape[0]
    approx = np.linalg.eigvals(as_float(A)) if n else np.array([])
    out = []
    for group in _cluster(list(approx)):
        z = complex(np.mean(approx[group]))
        for lam in _rationalize(z):
            N = nullspace(A - lam * eye(n))
            if N.shape[1]:
                out.append((lam, N))
                break
        else:
            raise NotDiagonalizable(
                "eigenvalue is not a Gaussian rational; convert the operator to float"
            )
    if sum(N.shape[1] for _, N in out) != n:
        raise NotDiagonalizable("not diagonalizable at tolerance")
    return out


def eigensplit(A) -> list[tuple[object, np.ndarray]]:
    """Eigenvalues with a basis (as columns) of each eigenspace.

    Eigenvalues within a relative distance of 1e-7 merge.  Output is sorted by
    eigenvalue and eigenspace bases are in reduced column echelon form, so the
    result does not depend on the eigensolver's choice of vectors.
    """
    n = A.shape[0]
    if is_exact(A):
        return _eigensplit_exact(A)
    a = as_float(A)
    w, V = np.linalg.eig(a)
    out = []
    for group in _cluster(list(w)):
        lam = complex(np.mean(w[group]))
        out.append((lam, _canonical_columns(V[:, group])))
    basis = np.hstack([B for _, B in out]) if out else np.zeros((0, 0))
    if basis.shape[1] != n or rank(basis, tol=1e-7) < n:
        raise NotDiagonalizable("not diagonalizable at tolerance")
    D = np.diag(np.concatenate([[lam] * B.shape[1] for lam, B in out]))
    resid = max_abs(basis @ D @ np.linalg.inv(basis) - a)
    if resid > TOL.residual * max(1.0, max_abs(a)):
        raise NotDiagonalizable("not diagonalizable at tolerance")
    return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _check_gram(G) -> None:
    if not is_positive_definite(G):
        raise DegenerateForm("form is not hermitian positive definite")


def positive_sqrt(A, G):
    """The unique G-positive ``P`` with ``P @ P == A``.

    Exact input is answered exactly only when every eigenvalue is a rational
    square; otherwise convert both matrices with :func:`as_float`.
    """
    G = _gram(G)
    _check_gram(G)
    if not is_self_adjoint(A, G):
        raise NotSelfAdjoint("operator is not self-adjoint for the form")
    if is_exact(A) and is_exact(G):
        n = A.shape[0]
        cols, roots = [], []
        for lam, N in _eigensplit_exact(A):
            if not lam.is_real() or lam.re <= 0:
                raise NotPositive("operator not positive")
            r = _rational_sqrt(lam.re)
            if r is None:
                raise NotPositive(
                    f"eigenvalue {lam} has no exact square root; convert the operator to float"
                )
            cols.append(N)
            roots += [GaussQ(r)] * N.shape[1]
        V = np.hstack(cols) if cols else zeros((0, 0))
        D = zeros((n, n))
        for i, r in enumerate(roots):
            D[i, i] = r
        return V @ D @ inv(V)
    a, g = as_float(A), as_float(G)
    R = np.linalg.cholesky(_hsym(g)).conj().T  # G = R^H R
    Rinv = sla.solve_triangular(R, np.eye(len(a), dtype=complex), lower=False)
    Ap = R @ a @ Rinv
    w, V = np.linalg.eigh(_hsym(Ap))
    if w.size and w.min() <= TOL.eq * max(1.0, float(np.max(np.abs(w)))):
        raise NotPositive("operator not positive")
    Pp = (V * np.sqrt(w)) @ V.conj().T
    return Rinv @ Pp @ R


def polar_right(A, G):
    """``A = U @ P`` with ``P = positive_sqrt(A^dagger A)`` and ``U`` G-unitary."""
    G = _gram(G)
    _check_gram(G)
    if rank(A) < A.shape[0]:
        raise LinalgError("singular operator has no polar decomposition")
    if is_exact(A) and is_exact(G):
        P = positive_sqrt(gram_adjoint(A, G) @ A, G)
        return A @ inv(P), P
    # float: SVD in G-orthonormal coordinates, avoiding the squared condition of A^dagger A
    a, g = as_float(A), as_float(G)
    R = np.linalg.cholesky(_hsym(g)).conj().T
    Rinv = sla.solve_triangular(R, np.eye(len(a), dtype=complex), lower=False)
    W, sv, Vh = np.linalg.svd(R @ a @ Rinv)
    U = Rinv @ (W @ Vh) @ R
    P = Rinv @ ((Vh.conj().T * sv) @ Vh) @ R
    return U, P


def abs_power(A, G, t: float) -> np.ndarray:
    """``|A|^t`` for a G-self-adjoint invertible ``A``, from one eigendecomposition (float).

    ``abs_power(Q, G, 0.5)`` equals the fourth root of ``Q @ Q`` without squaring
    the condition number first.
    """
    G = _gram(G)
    _check_gram(G)
    if not is_self_adjoint(A, G):
        raise NotSelfAdjoint("operator is not self-adjoint for the form")
    a, g = as_float(A), as_float(G)
    R = np.linalg.cholesky(_hsym(g)).conj().T
    Rinv = sla.solve_triangular(R, np.eye(len(a), dtype=complex), lower=False)
    w, V = np.linalg.eigh(_hsym(R @ a @ Rinv))
    if w.size and np.abs(w).min() <= TOL.eq * max(1.0, float(np.max(np.abs(w)))):
        raise LinalgError("singular operator")
    return Rinv @ ((V * np.abs(w) ** t) @ V.conj().T) @ R


def _nonzeros(A: np.ndarray) -> list[tuple[tuple, object]]:
    return [(idx, A[idx]) for idx in zip(*np.nonzero(np.vectorize(bool, otypes=[bool])(A)))]


def contract(subscripts: str, A, B) -> np.ndarray:
    """Two-operand ``einsum`` that only visits nonzero entries.

    Exact structure tensors are sparse and object ``einsum`` is dense, so this
    is the fast path for exact inputs; float inputs go straight to ``einsum``.
    """
    if not (is_exact(A) or is_exact(B)):
        return np.einsum(subscripts, A, B)
    ins, out = subscripts.split("->")
    sa, sb = ins.split(",")
    shared = [c for c in sa if c in sb]
    dims = {c: n for c, n in zip(sa, A.shape)} | {c: n for c, n in zip(sb, B.shape)}
    groups: dict[tuple, list] = {}
    for idx, v in _nonzeros(B):
        pos = dict(zip(sb, idx))
        groups.setdefault(tuple(pos[c] for c in shared), []).append((pos, v))
    res = zeros(tuple(dims[c] for c in out), True)
    for idx, u in _nonzeros(A):
        pa = dict(zip(sa, idx))
        for pb, v in groups.get(tuple(pa[c] for c in shared), ()):
            key = tuple(pa[c] if c in pa else pb[c] for c in out)
            res[key] = res[key] + u * v
    return res
