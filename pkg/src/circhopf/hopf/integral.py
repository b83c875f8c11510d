"""Normal integral, its Gram form, and the compactness test."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import linalg as la
from ..checks import Check
from ..coalgebra import decompose_simple
from .algebra import Functional, HopfAlgebra

__all__ = [
    "IntegralError",
    "solve_integral",
    "integral_via_decomposition",
    "bilinear_matrix",
    "gram_from_integral",
    "CompactVerdict",
    "is_compact",
]


class IntegralError(ValueError):
    pass


def solve_integral(H: HopfAlgebra) -> Functional:
    """The functional with ``sum phi(x1) x2 = phi(x) 1 = sum x1 phi(x2)`` and ``phi(1) = 1``.

    Solved as one homogeneous linear system over the dual basis.
    """
    if "integral" in H.cache:
        return H.cache["integral"]
    n = H.n
    rows = []
    for k in range(n):
        right = la.zeros((n, n), H.exact)  # row j: sum_i d[i,j,k] phi_i - phi_k u_j
        left = la.zeros((n, n), H.exact)  # row i: sum_j d[i,j,k] phi_j - phi_k u_i
        for i, j, v in H.coproduct_terms(k):
            right[j, i] = right[j, i] + v
            left[i, j] = left[i, j] + v
        for a in range(n):
            if H.unit[a]:
                right[a, k] = right[a, k] - H.unit[a]
                left[a, k] = left[a, k] - H.unit[a]
        rows.append(right)
        rows.append(left)
    A = np.vstack(rows)
    N = la.nullspace(A)
    if N.shape[1] == 0:
        raise IntegralError("no normal integral (not cosemisimple)")
    if N.shape[1] > 1:
        raise IntegralError("integral not unique")
    phi = N[:, 0]
    at_one = sum((p * u for p, u in zip(phi, H.unit) if u), 0)
    if (at_one == 0) if H.exact else abs(complex(at_one)) <= 1e-12:
        raise IntegralError("no normal integral (not cosemisimple)")
    phi = phi / at_one if H.exact else phi / complex(at_one)
    out = Functional(H, phi)
    H.cache["integral"] = out
    return out


def integral_via_decomposition(H: HopfAlgebra) -> Functional:
    """Independent route: the central idempotent of the simple component containing 1."""
    comps = decompose_simple(H)
    unit = la.as_float(H.unit)
    for comp in comps:
        B = la.as_float(comp.basis)
        if comp.dim == 1 and la.rank(np.column_stack([B, unit]), tol=1e-9) == 1:
            return Functional(H, comp.idempotent)
    raise IntegralError("no normal integral (not cosemisimple)")


def bilinear_matrix(H: HopfAlgebra, phi: Functional) -> np.ndarray:
    """``Bm[i, j] = phi(e_i e_j)``."""
    Bm = la.zeros((H.n, H.n), H.exact and phi.exact)
    for (i, j), terms in H._mij.items():
        for k, v in terms:
            if phi.vec[k]:
                Bm[i, j] = Bm[i, j] + v * phi.vec[k]
    return Bm


def gram_from_integral(H: HopfAlgebra) -> la.GramForm:
    """Gram form ``<x, y> = phi(S(y°) x)``, i.e. ``G = (S M)^T Bm``."""
    if "gram" in H.cache:
        return H.cache["gram"]
    if "integral" not in H.cache:
        raise IntegralError("integral not computed")
    if H.circ is None:
        raise ValueError("Gram form needs a circ structure")
    phi = H.cache["integral"]
    G = (H.antipode @ H.circ.matrix).T @ bilinear_matrix(H, phi)
    form = la.GramForm(G)
    H.cache["gram"] = form
    return form


@dataclass
class CompactVerdict:
    compact: bool
    reason: str = ""
    min_eigenvalue: float | None = None
    witness: list | None = None
    eigenvalues: list = field(default_factory=list)
    axiom_failures: list[Check] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"verdict": "compact" if self.compact else "not_compact", "reason": self.reason}
        if self.min_eigenvalue is not None:
            out["min_gram_eigenvalue"] = self.min_eigenvalue
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def is_compact(H: HopfAlgebra) -> CompactVerdict:
    """Compact iff a normal integral exists and its Gram form is hermitian positive definite."""
    failures = [c for c in H.circ_checks() + H.circ_hopf_checks() if not c.ok] if H.circ is not None else []
    if H.circ is None:
        return CompactVerdict(False, "no circ structure")
    try:
        solve_integral(H)
    except IntegralError as exc:
        return CompactVerdict(False, str(exc), axiom_failures=failures)
    G = gram_from_integral(H).matrix
    Gf = la.as_float(G)
    herm_ok = la.is_hermitian(G)
    w, V = np.linalg.eigh((Gf + Gf.conj().T) / 2)
    minw = float(w[0])
    pd = la.is_positive_definite(G)
    reasons = []
    if failures:
        reasons.append("circ axioms fail: " + ", ".join(c.name for c in failures))
    if not herm_ok:
        reasons.append("Gram form not hermitian")
    if not pd:
        reasons.append("Gram form not positive definite")
    witness = None
    if not pd:
        vec = V[:, 0]
        vec = vec / vec[np.argmax(np.abs(vec))]
        witness = [[float(round(z.real, 12)), float(round(z.imag, 12))] for z in vec]
    compact = herm_ok and pd and not failures
    return CompactVerdict(compact, "; ".join(reasons), minw, witness, [float(x) for x in w], failures)
