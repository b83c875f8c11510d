"""Positive antipode, Nakayama automorphism, modular function, beta, adjoint and
unitary antipode, the two equivalence batteries and the Radford residuals.

Every routine reads and fills ``H.cache``.  Exact algebras stay exact whenever
the required square roots are rational; otherwise the computation falls back
to floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import linalg as la
from ..arith import GaussQ
from ..checks import Check
from ..coalgebra import decompose_simple
from .albert import albert_tau
from .algebra import Functional, HopfAlgebra
from .integral import bilinear_matrix, gram_from_integral, is_compact, solve_integral

__all__ = [
    "ConsistencyError",
    "NakayamaData",
    "positive_antipode",
    "nakayama",
    "nakayama_sqrt",
    "modular_function",
    "compute_beta",
    "antipode_adjoint",
    "unitary_antipode",
    "Battery",
    "involutivity_report",
    "modularity_report",
    "radford_check",
]


class ConsistencyError(RuntimeError):
    """An identity that must hold for compact input did not."""


def _close(A, B, tol: float = 1e-9) -> bool:
    return la.allclose(A, B, tol)


def _resid(A, B) -> float:
    return la.max_abs(la.as_float(A) - la.as_float(B))


def _require_compact(H: HopfAlgebra) -> la.GramForm:
    if "verdict" not in H.cache:
        H.cache["verdict"] = is_compact(H)
    v = H.cache["verdict"]
    if not v.compact:
        raise ConsistencyError(f"Hopf algebra is not compact: {v.reason}")
    return gram_from_integral(H)


def _sqrt(A, G):
    """Positive square root, exact when possible."""
    try:
        return la.positive_sqrt(A, G)
    except la.NotPositive as exc:
        if la.is_exact(A) and "no exact square root" in str(exc):
            return la.positive_sqrt(la.as_float(A), la.as_float(G))
        raise


def _checks(H, key) -> list[Check]:
    return H.cache.setdefault("checks", {}).setdefault(key, [])


def _record(H, key, name, ok, resid=0.0, detail=""):
    _checks(H, key).append(Check(name, bool(ok), float(resid), None, detail))


def positive_antipode(H: HopfAlgebra):
    """``S_+``: the G-positive square root of ``S^2``."""
    if "splus" in H.cache:
        return H.cache["splus"]
    G = _require_compact(H)
    S = H.antipode
    S2 = S @ S
    try:
        Sp = _sqrt(S2, G.matrix)
    except la.LinalgError as exc:
        raise ConsistencyError(f"S^2 is not a positive operator: {exc}") from exc
    _record(H, "splus", "splus-squared", _close(Sp @ Sp, S2), _resid(Sp @ Sp, S2))
    _record(H, "splus", "splus-multiplicative", H.is_multiplicative_map(Sp))
    _record(H, "splus", "splus-comultiplicative", H.is_coalgebra_map(Sp))
    comps = H.cache.get("components") or decompose_simple(H)
    H.cache["components"] = comps
    ok = True
    for comp in comps:
        B = la.as_float(comp.basis)
        ok &= la.rank(np.hstack([B, la.as_float(Sp) @ B]), tol=1e-8) == comp.dim
    _record(H, "splus", "splus-preserves-components", ok)
    H.cache["splus"] = Sp
    return Sp


@dataclass
class NakayamaData:
    N: np.ndarray
    alpha: Functional
    grouplike: np.ndarray
    checks: list[Check] = field(default_factory=list)


def nakayama(H: HopfAlgebra) -> NakayamaData:
    """``N`` with ``phi(xy) = phi(y N(x))``, the modular function ``alpha = eps N``
    and the distinguished grouplike ``g`` with ``sum x1 phi(x2) = phi(x) g``.
    """
    if "nakayama" in H.cache:
        return H.cache["nakayama"]
    G = _require_compact(H)
    phi = solve_integral(H)
    Bm = bilinear_matrix(H, phi)
    try:
        N = la.inv(Bm) @ Bm.T
    except la.LinalgError:
        raise la.DegenerateForm("degenerate form") from None
    S = H.antipode
    Sinv = la.inv(S)
    alpha = Functional(H, H.eps @ N)
    alpha.inverse = Functional(H, alpha.vec @ S, inverse=alpha)
    # distinguished grouplike
    g = None
    ok_g = True
    for k in range(H.n):
        col = H.zero()
        for i, j, v in H.coproduct_terms(k):
            if phi.vec[j]:
                col[i] = col[i] + v * phi.vec[j]
        pk = phi.vec[k]
        if g is None and (pk if H.exact else abs(pk) > 1e-12):
            g = col / pk
        if g is not None and not _close(col, g * pk):
            ok_g = False
    if g is None:
        raise ConsistencyError("integral vanishes identically")
    La = alpha.left_op()
    Lai = alpha.inverse.left_op()
    checks = [
        Check("nakayama-defining", _close(Bm.T, Bm @ N), _resid(Bm.T, Bm @ N)),
        Check("nakayama-formula", _close(N, Sinv @ Sinv @ La), _resid(N, Sinv @ Sinv @ La)),
        Check("nakayama-inverse-formula", _close(la.inv(N), S @ S @ Lai), _resid(la.inv(N), S @ S @ Lai)),
        Check("distinguished-grouplike", ok_g),
        Check("nakayama-self-adjoint", la.is_self_adjoint(N, G)),
        Check(
            "nakayama-positive",
            bool(np.min(np.linalg.eigvals(la.as_float(N)).real) > 1e-9),
        ),
        Check(
            "nakayama-commutes-circ",
            _close(N @ H.circ.matrix, H.circ.matrix @ la.conj(N)),
            _resid(N @ H.circ.matrix, H.circ.matrix @ la.conj(N)),
        ),
    ]
    data = NakayamaData(N, alpha, g, checks)
    H.cache["nakayama"] = data
    return data


def modular_function(H: HopfAlgebra) -> Functional:
    return nakayama(H).alpha


def nakayama_sqrt(H: HopfAlgebra):
    """``P``: the G-positive square root of ``N``."""
    if "psqrt" in H.cache:
        return H.cache["psqrt"]
    G = _require_compact(H)
    N = nakayama(H).N
    P = _sqrt(N, G.matrix)
    _record(H, "psqrt", "psqrt-squared", _close(P @ P, N), _resid(P @ P, N))
    _record(H, "psqrt", "psqrt-multiplicative", H.is_multiplicative_map(P))
    H.cache["psqrt"] = P
    return P


def antipode_adjoint(H: HopfAlgebra):
    """``S* = S N^-1``, cross-checked against the Gram adjoint of ``S``."""
    if "sstar" in H.cache:
        return H.cache["sstar"]
    G = _require_compact(H)
    nk = nakayama(H)
    S = H.antipode
    Sstar = S @ la.inv(nk.N)
    direct = la.gram_adjoint(S, G)
    _record(H, "sstar", "sstar-is-gram-adjoint", _close(Sstar, direct), _resid(Sstar, direct))
    Rai = nk.alpha.inverse.right_op()
    La = nk.alpha.left_op()
    _record(H, "sstar", "S-Sstar", _close(S @ Sstar, Rai), _resid(S @ Sstar, Rai))
    _record(H, "sstar", "Sstar-S", _close(Sstar @ S, La), _resid(Sstar @ S, La))
    H.cache["sstar"] = Sstar
    return Sstar


def unitary_antipode(H: HopfAlgebra):
    """``U = S S_+^-1 P^-1``, the unitary factor of the polar decomposition of ``S``."""
    if "unitary" in H.cache:
        return H.cache["unitary"]
    G = _require_compact(H)
    S = H.antipode
    Sp = positive_antipode(H)
    P = nakayama_sqrt(H)
    if la.is_exact(Sp) != la.is_exact(P):
        Sp, P, S = la.as_float(Sp), la.as_float(P), la.as_float(S)
    U = S @ la.inv(Sp) @ la.inv(P)
    n = H.n
    I = la.eye(n, la.is_exact(U))
    Gm = G.matrix if la.is_exact(U) else la.as_float(G.matrix)
    UdU = la.gram_adjoint(U, Gm) @ U
    _record(H, "unitary", "U-unitary", _close(UdU, I), _resid(UdU, I))
    _record(H, "unitary", "U-involutive", _close(U @ U, I), _resid(U @ U, I))
    _record(H, "unitary", "U-antimultiplicative", H.is_antimultiplicative_map(U))
    Upol, _ = la.polar_right(la.as_float(H.antipode), la.as_float(G.matrix))
    _record(H, "unitary", "U-polar-factor", _close(Upol, U), _resid(Upol, U))
    H.cache["unitary"] = U
    return U


# -- beta -------------------------------------------------------------------------


def _rationalize_vec(v):
    out = la.zeros(len(v))
    for i, z in enumerate(v):
        re = Fraction(float(z.real)).limit_denominator(10**6)
        im = Fraction(float(z.imag)).limit_denominator(10**6)
        out[i] = GaussQ(re, im)
    return out


def compute_beta(H: HopfAlgebra) -> Functional:
    """The multiplicative functional ``beta`` with ``S_+ = (beta * id)(id * beta^-1)``
    and ``beta^4 = alpha``, assembled component by component.
    """
    if "beta" in H.cache:
        return H.cache["beta"]
    G = _require_compact(H)
    Sp = la.as_float(positive_antipode(H))
    alpha = la.as_float(nakayama(H).alpha.vec)
    comps = H.cache.get("components") or decompose_simple(H)
    H.cache["components"] = comps
    Hf = H.to_float()
    Ball = np.hstack([la.as_float(c.basis) for c in comps])
    coords = []
    for comp in comps:
        B = la.as_float(comp.basis)
        Lb = np.linalg.pinv(B)
        D = Hf.restrict(B)
        res = albert_tau(Lb @ Sp @ B, D)
        tau = res.tau
        ev = np.linalg.eigvals(la.as_float(tau.left_op()))
        phase = ev[np.argmax(np.abs(ev))]
        phase = phase / abs(phase)
        if np.max(np.abs((ev / phase).imag)) > 1e-7 or np.min((ev / phase).real) <= 0:
            raise ConsistencyError(f"component {comp.index}: tau * id has no positive normalisation")
        t = Functional(D, tau.vec / phase)
        t4 = t.power(4).vec
        a_rho = alpha @ B
        c = np.vdot(t4, a_rho) / np.vdot(t4, t4)
        if la.max_abs(c * t4 - a_rho) > 1e-7 or abs(c.imag) > 1e-9 or c.real <= 0:
            raise ConsistencyError(f"component {comp.index}: alpha is not a positive multiple of tau^4")
        coords.append(t.vec * c.real**0.25)
    beta_vec = np.concatenate(coords) @ np.linalg.inv(Ball)
    beta = Functional(Hf, beta_vec)
    if H.exact:
        bx = _rationalize_vec(beta_vec)
        cand = Functional(H, bx)
        inv_c = Functional(H, bx @ H.antipode)
        if la.allclose(cand.star(inv_c).vec, H.eps) and cand.is_multiplicative(H):
            beta = cand
    Hb = beta.C
    beta.inverse = Functional(Hb, beta.vec @ (H.antipode if beta.exact else la.as_float(H.antipode)), inverse=beta)
    Lb, Rbi = beta.left_op(), beta.inverse.right_op()
    Spb = positive_antipode(H)
    if beta.exact != la.is_exact(Spb):
        Spb = la.as_float(Spb)
    _record(H, "beta", "beta-reassembles-splus", _close(Lb @ Rbi, Spb), _resid(Lb @ Rbi, Spb))
    _record(H, "beta", "beta-splus-invariant", _close(beta.vec @ Spb, beta.vec), _resid(beta.vec @ Spb, beta.vec))
    _record(H, "beta", "beta-multiplicative", beta.is_multiplicative(H if beta.exact else Hf))
    eps = H.eps if beta.exact else la.as_float(H.eps)
    bb = beta.star(beta.inverse).vec
    _record(H, "beta", "beta-inverse-is-beta-S", _close(bb, eps), _resid(bb, eps))
    b4 = beta.power(4).vec
    _record(H, "beta", "beta-fourth-power-is-alpha", _close(b4, alpha), _resid(b4, alpha))
    Gm = G.matrix if beta.exact else la.as_float(G.matrix)
    _record(H, "beta", "beta-star-id-self-adjoint", la.is_self_adjoint(Lb, Gm))
    Mf = la.as_float(H.circ.matrix)
    hermit = la.conj(la.as_float(beta.vec) @ Mf)
    _record(H, "beta", "beta-hermitian", _close(hermit, la.as_float(beta.vec)), _resid(hermit, beta.vec))
    H.cache["beta"] = beta
    return beta


# -- batteries --------------------------------------------------------------------


@dataclass
class Battery:
    flags: dict[str, bool]

    @property
    def consistent(self) -> bool:
        return len(set(self.flags.values())) <= 1

    @property
    def all_true(self) -> bool:
        return all(self.flags.values())

    def as_dict(self) -> dict:
        return {"flags": dict(self.flags), "consistent": self.consistent}


def _finite_order(S, bound: int) -> bool:
    n = S.shape[0]
    I = la.eye(n, la.is_exact(S))
    P = S
    for _ in range(bound):
        if _close(P, I):
            return True
        P = P @ S
    return False


def involutivity_report(H: HopfAlgebra) -> Battery:
    """The eight equivalent involutivity conditions, each evaluated on its own."""
    G = _require_compact(H)
    n = H.n
    S = H.antipode
    I = la.eye(n, H.exact)
    Sp = positive_antipode(H)
    U = unitary_antipode(H)
    N = nakayama(H).N
    adj = la.gram_adjoint(S, G)
    Bm = bilinear_matrix(H, solve_integral(H))
    flags = {
        "S2_is_id": _close(S @ S, I),
        "Splus_is_id": _close(Sp, la.like(Sp, I)),
        "U_is_S": _close(U, la.like(U, S)),
        "S_finite_order": _finite_order(S, 2 * n),
        "S_normal": _close(S @ adj, adj @ S),
        "S_self_adjoint": la.is_self_adjoint(S, G),
        "integral_central": _close(Bm, Bm.T),
        "N_is_id": _close(N, I),
    }
    return Battery(flags)


def modularity_report(H: HopfAlgebra) -> Battery:
    """The five equivalent conditions on ``S*``, ``U``, ``N`` and ``alpha``.

    The unitary antipode is tested as an anti-morphism of coalgebras, which is
    what ``U = S`` gives in the involutive case.
    """
    _require_compact(H)
    S = H.antipode
    nk = nakayama(H)
    Sstar = antipode_adjoint(H)
    U = unitary_antipode(H)
    Sinv = la.inv(S)
    flags = {
        "Sstar_coalgebra_antimorphism": H.is_coalgebra_map(Sstar, anti=True),
        "U_coalgebra_antimorphism": H.is_coalgebra_map(U, anti=True),
        "N_comultiplicative": H.is_coalgebra_map(nk.N),
        "alpha_is_eps": _close(nk.alpha.vec, H.eps),
        "N_is_S_minus_2": _close(nk.N, Sinv @ Sinv),
    }
    return Battery(flags)


def radford_check(H: HopfAlgebra) -> list[Check]:
    """Residuals of the Radford, Nakayama and Fourier identities."""
    G = _require_compact(H)
    nk = nakayama(H)
    S = H.antipode
    S2 = S @ S
    Sm2 = la.inv(S2)
    N = nk.N
    alpha, ainv = nk.alpha, nk.alpha.inverse
    out = []
    one = H.unit
    if _close(nk.grouplike, one):
        rhs = alpha.left_op() @ ainv.right_op()
        out.append(Check("radford-S4", _close(S2 @ S2, rhs), _resid(S2 @ S2, rhs)))
    else:
        g = nk.grouplike
        ginv = S @ g
        Lg = H.left_mult_matrix(g)
        Rgi = la.zeros((H.n, H.n), H.exact)
        for j in range(H.n):
            Rgi[:, j] = H.mul(H.unit_vector(j), ginv)
        rhs = Lg @ alpha.left_op() @ ainv.right_op() @ Rgi
        out.append(Check("radford-S4-conjugated", _close(S2 @ S2, rhs), _resid(S2 @ S2, rhs)))
    rhs2 = Sm2 @ alpha.left_op()
    out.append(Check("nakayama-alpha-S-2", _close(N, rhs2), _resid(N, rhs2)))
    rhs3 = S2 @ ainv.left_op()
    Ni = la.inv(N)
    out.append(Check("nakayama-inverse", _close(Ni, rhs3), _resid(Ni, rhs3)))
    # Delta(N x) = sum N(x1) (x) S^-2(x2)
    D = la.as_float(H.delta)
    Nf, Sm2f = la.as_float(N), la.as_float(Sm2)
    lhs = np.einsum("abk,kj->abj", D, Nf)
    rhs = np.einsum("ai,bj,ijk->abk", Nf, Sm2f, D)
    r = la.max_abs(lhs - rhs)
    out.append(Check("delta-nakayama", r <= 1e-9, r))
    # sum x1 <x2, y> = sum S^2(y1°) <x, y2>
    Gm = la.as_float(G.matrix)
    M = la.as_float(H.circ.matrix)
    S2f = la.as_float(S2)
    lhs = np.einsum("ijk,lj->ikl", D, Gm)  # [i, k, l]: coefficient of e_i, x = e_k, y = e_l
    rhs = np.einsum("ia,ap,pql,qk->ikl", S2f, M, D.conj(), Gm)
    r = la.max_abs(lhs - rhs)
    out.append(Check("fourier-gram-balance", r <= 1e-9, r))
    return out
