"""Degree-bounded exact verification of quantum SU(2) identities.

Every identity is checked on all canonical basis words up to a degree bound,
in Laurent arithmetic with zero tolerance.  The reported witness is the least
failing word in (degree, name) order.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..arith import Laurent
from .poly import NCPoly, _add, Rewriter, canonical_keys, key_degree, key_name, key_word
from .structure import GEN_KEY, ONE_KEY, SUmu, Tensor

__all__ = [
    "IDENTITIES",
    "SubCheck",
    "IdentityResult",
    "verify",
    "verify_all",
    "termination_sweep",
    "confluence_sweep",
    "product_crosscheck",
]

GENS = ("a", "A", "c", "C")
GEN_NAME = {"a": "a", "A": "ahat", "c": "c", "C": "cstar"}


@dataclass
class SubCheck:
    name: str
    ok: bool
    checked: int
    witness: str | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "verdict": "pass" if self.ok else "fail", "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class IdentityResult:
    identity: str
    sign: int
    degree: int
    checks: list[SubCheck] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def witness(self) -> str | None:
        return next((c.witness for c in self.checks if not c.ok), None)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "identity": self.identity,
            "sign": "+" if self.sign > 0 else "-",
            "degree": self.degree,
            "verdict": "pass" if self.ok else "fail",
            "residual": "0" if self.ok else "nonzero",
            "checks": [c.as_dict() for c in self.checks],
        }
        if not self.ok:
            out["witness"] = self.witness
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _sweep(name: str, keys: Iterable, test: Callable[[object], bool], label=key_name) -> SubCheck:
    n = 0
    for k in keys:
        n += 1
        if not test(k):
            return SubCheck(name, False, n, label(k))
    return SubCheck(name, True, n)


def _gen_values(name: str, op, expected: dict) -> SubCheck:
    return _sweep(name, GENS, lambda g: op(g) == expected[g], label=lambda g: GEN_NAME[g])


class _Context:
    def __init__(self, sign: int, degree: int):
        self.H = SUmu(sign)
        self.sign = sign
        self.degree = degree
        self.keys = canonical_keys(degree)
        # words w with g*w still inside the degree bound
        self.short = [k for k in self.keys if key_degree(k) < degree]


def _hopf_axioms(cx: _Context) -> list[SubCheck]:
    H = cx.H
    one = H.basis(ONE_KEY)

    def coassoc(k):
        left: dict = {}
        right: dict = {}
        for (k1, k2), c in H.delta_key(k).terms.items():
            for (a, b), v in H.delta_key(k1).terms.items():
                _add(left, (a, b, k2), c * v)
            for (a, b), v in H.delta_key(k2).terms.items():
                _add(right, (k1, a, b), c * v)
        return left == right

    def counit(k):
        x = H.basis(k)
        return H.convolve(H.eps, None)(x) == x and H.right_conv(H.eps)(x) == x

    def antipode(k):
        D = H.delta_key(k)
        target = one * H.eps.key(k)
        left = NCPoly(H.alg, {})
        right = NCPoly(H.alg, {})
        for (k1, k2), c in D.terms.items():
            left = left + H.antipode(H.basis(k1)) * H.basis(k2) * c
            right = right + H.basis(k1) * H.antipode(H.basis(k2)) * c
        return left == target and right == target

    def delta_mult(k):
        x = H.basis(k)
        for g in GENS:
            y = H.gen(g)
            if H.delta(y * x) != H.delta_gen(g) * H.delta_key(k):
                return False
            if H.delta(x * y) != H.delta_key(k) * H.delta_gen(g):
                return False
        return True

    def eps_mult(k):
        x = H.basis(k)
        return all(H.eps(H.gen(g) * x) == H.eps.key(GEN_KEY[g]) * H.eps.key(k) for g in GENS)

    def s_antimult(k):
        x = H.basis(k)
        for g in GENS:
            y = H.gen(g)
            if H.antipode(y * x) != H.antipode(x) * H.antipode(y):
                return False
            if H.antipode(x * y) != H.antipode(y) * H.antipode(x):
                return False
        return True

    return [
        _sweep("coassociativity", cx.keys, coassoc),
        _sweep("counit", cx.keys, counit),
        _sweep("antipode-axiom", cx.keys, antipode),
        _sweep("delta-multiplicative", cx.short, delta_mult),
        _sweep("eps-multiplicative", cx.short, eps_mult),
        _sweep("antipode-antimultiplicative", cx.short, s_antimult),
    ]


def _circ_hopf(cx: _Context) -> list[SubCheck]:
    H = cx.H
    circ = H.circ_poly

    def mult(k):
        x = H.basis(k)
        for g in GENS:
            y = H.gen(g)
            if circ(y * x) != circ(y) * circ(x) or circ(x * y) != circ(x) * circ(y):
                return False
        return True

    def anticomult(k):
        D = H.delta_key(k)
        flipped: dict = {}
        for (k1, k2), c in D.terms.items():
            for j2, c2 in H.circ.key(k2).items():
                for j1, c1 in H.circ.key(k1).items():
                    key = (j2, j1)
                    flipped[key] = flipped.get(key, Laurent()) + c.conj() * c2 * c1
        return H.delta(circ(H.basis(k))) == Tensor(H.alg, flipped)

    return [
        _sweep("circ-multiplicative", cx.short, mult),
        _sweep("circ-involutive", cx.keys, lambda k: circ(circ(H.basis(k))) == H.basis(k)),
        _sweep("circ-anticomultiplicative", cx.keys, anticomult),
        _sweep("circ-counit", cx.keys, lambda k: H.eps(circ(H.basis(k))) == H.eps.key(k).conj()),
        _sweep(
            "S-circ-S-circ-identity",
            cx.keys,
            lambda k: H.antipode(circ(H.antipode(circ(H.basis(k))))) == H.basis(k),
        ),
    ]


def _s2_theta(cx: _Context) -> list[SubCheck]:
    H = cx.H
    S2 = H.antipode @ H.antipode
    rhs = H.convolve(H.theta, H.theta.after(H.antipode))
    am = H.abs_mu
    return [
        _gen_values("theta-generator-values", lambda g: H.theta(H.gen(g)), {"a": am ** -1, "A": am, "c": 0, "C": 0}),
        _sweep("S2-equals-theta-id-thetaS", cx.keys, lambda k: S2(H.basis(k)) == rhs(H.basis(k))),
    ]


def _splus(cx: _Context) -> list[SubCheck]:
    H = cx.H
    Sp = H.positive_antipode()
    S2 = H.antipode @ H.antipode
    am = H.abs_mu
    g = H.gen
    beta_inv = H.beta_power(-1)
    beta_S = H.beta.after(H.antipode)

    def mult(k):
        x = H.basis(k)
        return all(Sp(g(y) * x) == Sp(g(y)) * Sp(x) for y in GENS)

    return [
        _gen_values(
            "splus-generator-values",
            lambda y: Sp(g(y)),
            {"a": g("a"), "A": g("A"), "c": g("c") * am, "C": g("C") * am ** -1},
        ),
        _sweep("splus-squared-equals-S2", cx.keys, lambda k: Sp(Sp(H.basis(k))) == S2(H.basis(k))),
        _sweep("splus-multiplicative", cx.short, mult),
        _gen_values("beta-inverse-equals-beta-S", lambda y: beta_inv(g(y)), {y: beta_S(g(y)) for y in GENS}),
        _sweep(
            "beta-star-beta-inverse-equals-eps",
            cx.keys,
            lambda k: H.conv_functionals(H.beta, beta_inv).key(k) == H.eps.key(k),
        ),
    ]


def _nakayama(cx: _Context) -> list[SubCheck]:
    H = cx.H
    N = H.nakayama()
    g = H.gen
    mu = H.mu
    S_inv2 = H.antipode_inv @ H.antipode_inv
    via_modular = H.left_conv(H.modular_function()) @ S_inv2
    return [
        _gen_values(
            "nakayama-generator-values",
            lambda y: N(g(y)),
            {"a": g("a") * mu ** -2, "A": g("A") * mu ** 2, "c": g("c"), "C": g("C")},
        ),
        _sweep("nakayama-equals-modular-star-S-2", cx.keys, lambda k: N(H.basis(k)) == via_modular(H.basis(k))),
    ]


def _psqrt(cx: _Context) -> list[SubCheck]:
    H = cx.H
    P = H.nakayama_sqrt()
    N = H.nakayama()
    g = H.gen
    am = H.abs_mu
    return [
        _gen_values(
            "psqrt-generator-values",
            lambda y: P(g(y)),
            {"a": g("a") * am ** -1, "A": g("A") * am, "c": g("c"), "C": g("C")},
        ),
        _sweep("psqrt-squared-equals-nakayama", cx.keys, lambda k: P(P(H.basis(k))) == N(H.basis(k))),
    ]


def _unitary(cx: _Context) -> list[SubCheck]:
    H = cx.H
    U = H.unitary_antipode()
    g = H.gen
    am = H.abs_mu
    sg = H.sign
    alt = H.positive_antipode_inv() @ H.nakayama_sqrt() @ H.antipode

    def antimult(k):
        x = H.basis(k)
        return all(U(g(y) * x) == U(x) * U(g(y)) for y in GENS)

    return [
        _gen_values(
            "unitary-generator-values",
            lambda y: U(g(y)),
            {"a": g("A") * am, "A": g("a") * am ** -1, "c": g("c") * (-sg), "C": g("C") * (-sg)},
        ),
        _sweep("unitary-squared-equals-id", cx.keys, lambda k: U(U(H.basis(k))) == H.basis(k)),
        _sweep("unitary-antimultiplicative", cx.short, antimult),
        _sweep("unitary-equals-Splus-inv-P-S", cx.keys, lambda k: U(H.basis(k)) == alt(H.basis(k))),
    ]


def _delta_n(cx: _Context) -> list[SubCheck]:
    H = cx.H
    N = H.nakayama()
    S_inv2 = H.antipode_inv @ H.antipode_inv

    def test(k):
        lhs = H.delta(N(H.basis(k)))
        rhs = H.delta_key(k).map_legs(N.key, S_inv2.key)
        return lhs == rhs

    return [_sweep("delta-nakayama", cx.keys, test)]


def _radford(cx: _Context) -> list[SubCheck]:
    H = cx.H
    S4 = H.antipode @ H.antipode @ H.antipode @ H.antipode
    rhs = H.left_conv(H.beta_power(4)) @ H.right_conv(H.beta_power(-4))
    alpha = H.modular_function()
    alpha_inv_via_S = alpha.after(H.antipode)
    return [
        _sweep("S4-equals-modular-conjugation", cx.keys, lambda k: S4(H.basis(k)) == rhs(H.basis(k))),
        _sweep(
            "modular-inverse-equals-modular-S",
            cx.keys,
            lambda k: H.beta_power(-4).key(k) == alpha_inv_via_S.key(k),
        ),
    ]


IDENTITIES: dict[str, Callable[[_Context], list[SubCheck]]] = {
    "hopf-axioms": _hopf_axioms,
    "circ-hopf": _circ_hopf,
    "s2-theta": _s2_theta,
    "splus": _splus,
    "nakayama": _nakayama,
    "psqrt": _psqrt,
    "unitary": _unitary,
    "deltaN": _delta_n,
    "radford": _radford,
}


def verify(identity: str, degree: int, sign: int = 1, _cx: _Context | None = None) -> IdentityResult:
    """Check ``identity`` exactly on every canonical word of degree at most ``degree``."""
    if identity not in IDENTITIES:
        raise KeyError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    cx = _cx if _cx is not None and _cx.degree == degree and _cx.sign == sign else _Context(sign, degree)
    t0 = time.perf_counter()
    checks = IDENTITIES[identity](cx)
    return IdentityResult(identity, sign, degree, checks, time.perf_counter() - t0)


def verify_all(degree: int, sign: int = 1) -> list[IdentityResult]:
    """Run the whole catalog, sharing one memoised engine."""
    cx = _Context(sign, degree)
    return [verify(name, degree, sign, cx) for name in IDENTITIES]


# -- rewriting system sweeps -----------------------------------------------------


def termination_sweep(sign: int = 1, samples: int = 10_000, max_length: int = 12, seed: int = 0) -> SubCheck:
    """Every rule application at every redex of random words strictly lowers the measure."""
    R = Rewriter(sign)
    rng = random.Random(seed)
    for i in range(samples):
        w = "".join(rng.choice(GENS) for _ in range(rng.randint(0, max_length)))
        m0 = R.measure(w)
        for pos in R.redexes(w):
            for _, w2 in R.rewrite_at(w, pos):
                if not R.measure(w2) < m0:
                    return SubCheck("termination", False, i + 1, w)
    return SubCheck("termination", True, samples)


def confluence_sweep(sign: int = 1, max_length: int = 6) -> SubCheck:
    """All one-step divergences of every free word up to ``max_length`` rejoin."""
    R = Rewriter(sign)
    n = 0
    for length in range(2, max_length + 1):
        for letters in itertools.product(GENS, repeat=length):
            w = "".join(letters)
            red = R.redexes(w)
            if len(red) < 2:
                continue
            n += 1
            forms = [R.normalize_combination(R.rewrite_at(w, p)) for p in red]
            if any(f != forms[0] for f in forms[1:]):
                return SubCheck("local-confluence", False, n, w)
    return SubCheck("local-confluence", True, n)


def product_crosscheck(sign: int = 1, degree: int = 4) -> SubCheck:
    """Closed-form products of canonical words agree with rewriting their concatenation."""
    R = Rewriter(sign)
    H = SUmu(sign)
    keys = canonical_keys(degree)
    pairs = [(k1, k2) for k1 in keys for k2 in keys if key_degree(k1) + key_degree(k2) <= degree + 2]
    return _sweep(
        "closed-form-equals-rewriting",
        pairs,
        lambda p: (H.basis(p[0]) * H.basis(p[1])) == R.normalize(key_word(p[0]) + key_word(p[1])),
        label=lambda p: f"{key_name(p[0])} . {key_name(p[1])}",
    )
