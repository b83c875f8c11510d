"""Hopf algebras by structure constants, functionals, and the shipped builders."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .. import linalg as la
from ..arith import GaussQ
from ..checks import AxiomError, Check, accumulate, compare
from ..coalgebra import Coalgebra, sparse_entries
from .groups import FiniteGroup

__all__ = [
    "HopfAlgebra",
    "Functional",
    "group_algebra",
    "function_algebra",
    "sweedler",
    "trivial_hopf",
]


class HopfAlgebra(Coalgebra):
    """Coalgebra plus product ``mult[k, i, j]`` (``e_i e_j = sum_k mult[k,i,j] e_k``),
    ``unit`` vector and ``antipode`` matrix (``S(e_j) = sum_i antipode[i, j] e_i``).

    Derived data (integral, Gram form, Nakayama data, ...) is cached in
    ``self.cache`` by the functions of :mod:`circhopf.hopf`.
    """

    def __init__(
        self,
        delta,
        eps,
        mult,
        unit,
        antipode,
        basis: Sequence[str] | None = None,
        circ=None,
        validate: bool = True,
        name: str | None = None,
    ):
        super().__init__(delta, eps, basis, circ, validate=False)
        cast = la.as_exact if self.exact else la.as_float
        self.mult = cast(np.asarray(mult, dtype=object if self.exact else complex))
        self.unit = cast(np.asarray(unit, dtype=object if self.exact else complex))
        self.antipode = cast(np.asarray(antipode, dtype=object if self.exact else complex))
        n = self.n
        if self.mult.shape != (n, n, n) or self.unit.shape != (n,) or self.antipode.shape != (n, n):
            raise ValueError("inconsistent Hopf structure shapes")
        self.name = name
        self._mij: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for k, i, j, v in sparse_entries(self.mult):
            self._mij.setdefault((i, j), []).append((k, v))
        self.cache: dict = {}
        if validate:
            self.validate()

    # -- products -------------------------------------------------------------

    def product_terms(self, i: int, j: int) -> list[tuple[int, object]]:
        return self._mij.get((i, j), [])

    def mul(self, x, y):
        out = self.zero()
        for (i, j), terms in self._mij.items():
            if x[i] and y[j]:
                c = x[i] * y[j]
                for k, v in terms:
                    out[k] = out[k] + v * c
        return out

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        L = la.zeros((self.n, self.n), self.exact)
        for (i, j), terms in self._mij.items():
            if x[i]:
                for k, v in terms:
                    L[k, j] = L[k, j] + v * x[i]
        return L

    def to_float(self) -> "HopfAlgebra":
        circ = None if self.circ is None else self.circ.to_float()
        return HopfAlgebra(
            la.as_float(self.delta), la.as_float(self.eps), la.as_float(self.mult),
            la.as_float(self.unit), la.as_float(self.antipode), self.basis, circ,
            validate=False, name=self.name,
        )

    def with_circ(self, circ, validate: bool = True) -> "HopfAlgebra":
        return HopfAlgebra(
            self.delta, self.eps, self.mult, self.unit, self.antipode, self.basis, circ,
            validate=validate, name=self.name,
        )

    def is_multiplicative_map(self, T) -> bool:
        """``T(xy) = T(x) T(y)`` on basis pairs and ``T(1) = 1``."""
        return self._mult_residual(T, anti=False) == 0 if self.exact else self._mult_residual(T, False) <= 1e-8

    def is_antimultiplicative_map(self, T) -> bool:
        return self._mult_residual(T, anti=True) == 0 if self.exact else self._mult_residual(T, True) <= 1e-8

    def _mult_residual(self, T, anti: bool) -> float:
        worst = la.max_abs(la.as_float(T) @ la.as_float(self.unit) - la.as_float(self.unit))
        cols = [T[:, j] for j in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                lhs = T @ self.mul(self.unit_vector(i), self.unit_vector(j))
                rhs = self.mul(cols[j], cols[i]) if anti else self.mul(cols[i], cols[j])
                worst = max(worst, la.max_abs(la.as_float(lhs) - la.as_float(rhs)))
        return worst

    def is_coalgebra_map(self, T, anti: bool = False) -> bool:
        """``Delta T = (T (x) T) Delta`` (flipped when ``anti``) and ``eps T = eps``."""
        Tf, D = la.as_float(T), la.as_float(self.delta)
        lhs = np.einsum("abk,kj->abj", D, Tf)
        rhs = np.einsum("ai,bj,ijk->abk", Tf, Tf, D)
        if anti:
            rhs = rhs.transpose(1, 0, 2)
        ok = la.max_abs(lhs - rhs) <= 1e-8
        return ok and la.max_abs(la.as_float(self.eps) @ Tf - la.as_float(self.eps)) <= 1e-8

    # -- axioms -----------------------------------------------------------------

    def hopf_checks(self) -> list[Check]:
        n, ex = self.n, self.exact
        one = GaussQ(1) if ex else 1.0
        B = self.basis
        checks = []
        lhs: dict = {}
        rhs: dict = {}
        for (i, j), terms in self._mij.items():
            for k, v in terms:
                for l in range(n):
                    for p, w in self._mij.get((k, l), []):
                        accumulate(lhs, (p, i, j, l), v * w)
        for (j, l), terms in self._mij.items():
            for k, v in terms:
                for i in range(n):
                    for p, w in self._mij.get((i, k), []):
                        accumulate(rhs, (p, i, j, l), v * w)
        checks.append(compare("associativity", lhs, rhs, ex, lambda key: f"({B[key[1]]}{B[key[2]]}){B[key[3]]}"))

        left: dict = {}
        right: dict = {}
        for (i, j), terms in self._mij.items():
            for k, v in terms:
                if self.unit[i]:
                    accumulate(left, (k, j), self.unit[i] * v)
                if self.unit[j]:
                    accumulate(right, (k, i), self.unit[j] * v)
        ident = {(k, k): one for k in range(n)}
        checks.append(compare("unit-left", left, ident, ex, lambda key: B[key[1]]))
        checks.append(compare("unit-right", right, ident, ex, lambda key: B[key[1]]))

        # Delta is an algebra map
        lhs, rhs = {}, {}
        for (i, j), terms in self._mij.items():
            for k, v in terms:
                for a, b, w in self.coproduct_terms(k):
                    accumulate(lhs, (a, b, i, j), v * w)
        for i in range(n):
            for j in range(n):
                for p, q, v1 in self.coproduct_terms(i):
                    for r, s, v2 in self.coproduct_terms(j):
                        for a, w1 in self._mij.get((p, r), []):
                            for b, w2 in self._mij.get((q, s), []):
                                accumulate(rhs, (a, b, i, j), v1 * v2 * w1 * w2)
        checks.append(compare("delta-multiplicative", lhs, rhs, ex, lambda key: f"Delta({B[key[2]]}{B[key[3]]})"))
        d1: dict = {}
        for k in range(n):
            if self.unit[k]:
                for a, b, w in self.coproduct_terms(k):
                    accumulate(d1, (a, b), self.unit[k] * w)
        uu = {(a, b): self.unit[a] * self.unit[b] for a in range(n) for b in range(n) if self.unit[a] and self.unit[b]}
        checks.append(compare("delta-unit", d1, uu, ex, lambda key: "Delta(1)"))

        e1: dict = {}
        e2: dict = {}
        for (i, j), terms in self._mij.items():
            for k, v in terms:
                if self.eps[k]:
                    accumulate(e1, (i, j), v * self.eps[k])
        for i in range(n):
            for j in range(n):
                if self.eps[i] and self.eps[j]:
                    e2[(i, j)] = self.eps[i] * self.eps[j]
        checks.append(compare("eps-multiplicative", e1, e2, ex, lambda key: f"eps({B[key[0]]}{B[key[1]]})"))
        eu = {0: self.counit(self.unit)}
        checks.append(compare("eps-unit", eu, {0: one}, ex, lambda key: "eps(1)"))

        # antipode axioms
        S = self.antipode
        for side in ("left", "right"):
            acc: dict = {}
            for k in range(n):
                for p, q, v in self.coproduct_terms(k):
                    if side == "left":
                        for a in range(n):
                            if S[a, p]:
                                for b, w in self._mij.get((a, q), []):
                                    accumulate(acc, (b, k), v * S[a, p] * w)
                    else:
                        for a in range(n):
                            if S[a, q]:
                                for b, w in self._mij.get((p, a), []):
                                    accumulate(acc, (b, k), v * S[a, q] * w)
            target = {
                (b, k): self.unit[b] * self.eps[k]
                for b in range(n) for k in range(n) if self.unit[b] and self.eps[k]
            }
            checks.append(compare(f"antipode-{side}", acc, target, ex, lambda key: B[key[1]]))
        return checks

    def circ_hopf_checks(self) -> list[Check]:
        if self.circ is None:
            return []
        n, ex, B = self.n, self.exact, self.basis
        M = self.circ.matrix
        lhs: dict = {}
        rhs: dict = {}
        for (i, j), terms in self._mij.items():
            for k, v in terms:
                vc = v.conj() if ex else np.conj(v)
                for c in range(n):
                    if M[c, k]:
                        accumulate(lhs, (c, i, j), vc * M[c, k])
        for i in range(n):
            for j in range(n):
                for a in range(n):
                    if not M[a, i]:
                        continue
                    for b in range(n):
                        if M[b, j]:
                            for c, w in self._mij.get((a, b), []):
                                accumulate(rhs, (c, i, j), M[a, i] * M[b, j] * w)
        checks = [compare("circ-multiplicative", lhs, rhs, ex, lambda key: f"({B[key[1]]}{B[key[2]]})°")]
        u1 = self.circ(self.unit)
        checks.append(compare("circ-unit", dict(enumerate(u1)), dict(enumerate(self.unit)), ex, lambda k: "1°"))
        SMS = self.antipode @ M @ la.conj(self.antipode) @ la.conj(M)
        ident = la.eye(n, ex)
        checks.append(
            compare(
                "S-circ-S-circ",
                {idx: v for idx, v in np.ndenumerate(SMS)},
                {idx: v for idx, v in np.ndenumerate(ident)},
                ex,
                lambda key: B[key[1]],
            )
        )
        return checks

    def checks(self) -> list[Check]:
        return self.coalgebra_checks() + self.hopf_checks() + self.circ_checks() + self.circ_hopf_checks()


# -- functionals ----------------------------------------------------------------


class Functional:
    """A dual vector ``f(e_k) = vec[k]`` with convolution against functionals and ``id``."""

    def __init__(self, C: Coalgebra, vec, inverse: "Functional | None" = None):
        self.C = C
        self.vec = vec
        self.inverse = inverse

    @property
    def exact(self) -> bool:
        return la.is_exact(self.vec)

    def __call__(self, x):
        return sum((f * c for f, c in zip(self.vec, x) if c and f), GaussQ(0) if self.exact else 0j)

    def star(self, other: "Functional") -> "Functional":
        out = la.zeros(self.C.n, self.exact and other.exact)
        for k in range(self.C.n):
            for i, j, v in self.C.coproduct_terms(k):
                if self.vec[i] and other.vec[j]:
                    out[k] = out[k] + v * self.vec[i] * other.vec[j]
        return Functional(self.C, out)

    def power(self, p: int) -> "Functional":
        if p < 0:
            if self.inverse is None:
                raise ValueError("no convolution inverse recorded")
            return self.inverse.power(-p)
        out = Functional(self.C, self.C.eps.copy() if self.exact else la.as_float(self.C.eps))
        for _ in range(p):
            out = out.star(self)
        return out

    def left_op(self) -> np.ndarray:
        """Matrix of ``x -> sum f(x1) x2``."""
        L = la.zeros((self.C.n, self.C.n), self.exact)
        for k in range(self.C.n):
            for i, j, v in self.C.coproduct_terms(k):
                if self.vec[i]:
                    L[j, k] = L[j, k] + v * self.vec[i]
        return L

    def right_op(self) -> np.ndarray:
        """Matrix of ``x -> sum x1 f(x2)``."""
        R = la.zeros((self.C.n, self.C.n), self.exact)
        for k in range(self.C.n):
            for i, j, v in self.C.coproduct_terms(k):
                if self.vec[j]:
                    R[i, k] = R[i, k] + v * self.vec[j]
        return R

    def after(self, T) -> "Functional":
        """``f o T``."""
        return Functional(self.C, self.vec @ T)

    def conj_circ(self) -> "Functional":
        """``x -> conj(f(x°))``."""
        M = self.C.circ.matrix
        return Functional(self.C, la.conj(self.vec @ M))

    def is_multiplicative(self, H: HopfAlgebra) -> bool:
        if not la.allclose(np.array([self(H.unit)], dtype=self.vec.dtype), la.like(self.vec, la.as_exact([1]))):
            return False
        for i in range(H.n):
            for j in range(H.n):
                lhs = self(H.mul(H.unit_vector(i), H.unit_vector(j)))
                rhs = self.vec[i] * self.vec[j]
                if self.exact and H.exact:
                    if lhs != rhs:
                        return False
                elif abs(complex(lhs) - complex(rhs)) > 1e-8:
                    return False
        return True

    def close_to(self, other: "Functional | np.ndarray", tol: float = 1e-9) -> bool:
        v = other.vec if isinstance(other, Functional) else other
        return la.allclose(self.vec, v, tol)

    def __repr__(self):
        return f"Functional({list(self.vec)!r})"


# -- builders -------------------------------------------------------------------


def group_algebra(G: FiniteGroup) -> HopfAlgebra:
    """``CG`` with grouplike basis, ``S(g) = g^-1`` and ``g° = g``."""
    n = G.order
    one = GaussQ(1)
    d = la.zeros((n, n, n))
    m = la.zeros((n, n, n))
    S = la.zeros((n, n))
    for g in range(n):
        d[g, g, g] = one
        S[G.inverse(g), g] = one
        for h in range(n):
            m[G.table[g, h], g, h] = one
    eps = np.array([one] * n, dtype=object)
    unit = la.zeros(n)
    unit[G.identity] = one
    return HopfAlgebra(d, eps, m, unit, S, list(G.labels), la.eye(n), name=f"group_{G.name}")


def function_algebra(G: FiniteGroup) -> HopfAlgebra:
    """``C^G`` on the delta basis with ``delta_g° = delta_{g^-1}``."""
    n = G.order
    one = GaussQ(1)
    d = la.zeros((n, n, n))
    m = la.zeros((n, n, n))
    S = la.zeros((n, n))
    M = la.zeros((n, n))
    for g in range(n):
        m[g, g, g] = one
        S[G.inverse(g), g] = one
        M[G.inverse(g), g] = one
        for h in range(n):
            d[g, h, G.table[g, h]] = one
    eps = la.zeros(n)
    eps[G.identity] = one
    unit = np.array([one] * n, dtype=object)
    labels = [f"d[{x}]" for x in G.labels]
    return HopfAlgebra(d, eps, m, unit, S, labels, M, name=f"fun_{G.name}")


def sweedler(with_circ: bool = True) -> HopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra on ``1, g, x, gx``.

    ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``, ``Delta x = x (x) 1 + g (x) x``.
    The circ structure is ``g° = g``, ``x° = gx``.
    """
    one, mone = GaussQ(1), GaussQ(-1)
    E, Gi, X, GX = range(4)
    # words as (sign, index); products via (g^a x^b)(g^c x^d) = (-1)^{b c} g^{a+c} x^{b+d}
    def word(a, b):
        return {(0, 0): E, (1, 0): Gi, (0, 1): X, (1, 1): GX}[(a % 2, b)]

    exps = {E: (0, 0), Gi: (1, 0), X: (0, 1), GX: (1, 1)}
    m = la.zeros((4, 4, 4))
    for i, (a, b) in exps.items():
        for j, (c, dd) in exps.items():
            if b + dd > 1:
                continue
            m[word(a + c, b + dd), i, j] = mone if (b * c) % 2 else one
    d = la.zeros((4, 4, 4))
    d[E, E, E] = one
    d[Gi, Gi, Gi] = one
    d[X, E, X] = one
    d[Gi, X, X] = one
    d[GX, Gi, GX] = one
    d[E, GX, GX] = one
    eps = la.as_exact([1, 1, 0, 0])
    unit = la.as_exact([1, 0, 0, 0])
    S = la.zeros((4, 4))
    S[E, E] = one
    S[Gi, Gi] = one
    S[GX, X] = mone
    S[X, GX] = one
    circ = None
    if with_circ:
        circ = la.zeros((4, 4))
        circ[E, E] = one
        circ[Gi, Gi] = one
        circ[GX, X] = one
        circ[X, GX] = one
    return HopfAlgebra(d, eps, m, unit, S, ["1", "g", "x", "gx"], circ, name="sweedler_H4")


def trivial_hopf() -> HopfAlgebra:
    one = GaussQ(1)
    arr = la.as_exact([[[1]]])
    return HopfAlgebra(arr, [one], arr, [one], [[one]], ["1"], [[one]], name="trivial")
