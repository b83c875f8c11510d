"""Hopf and circ structure of quantum SU(2), characters, and convolution operators.

Every map is defined on generators and extended to canonical keys by
(anti)multiplicativity through the closed-form product, then linearly to
:class:`NCPoly`.  Results are memoised per key.
"""
from __future__ import annotations

from typing import Callable, Mapping

from ..arith import Laurent, S as s_var, scalar_conj
from .poly import Key, NCPoly, SUmuAlgebra, _add, key_word

__all__ = ["Tensor", "LinearMap", "Functional", "SUmu"]

ONE_KEY: Key = (0, 0, 0)
GEN_KEY = {"a": (1, 0, 0), "A": (-1, 0, 0), "c": (0, 1, 0), "C": (0, 0, 1)}

# Generator data: (mu exponent, left key letter, right key letter) triples for the coproduct.
_DELTA_GEN = {
    "a": [(0, "a", "a"), (2, "C", "c")],
    "A": [(0, "A", "A"), (2, "c", "C")],
    "c": [(0, "c", "a"), (0, "A", "c")],
    "C": [(0, "a", "C"), (0, "C", "A")],
}


class Tensor:
    """Element of ``H (x) H`` (or a higher tensor power) as ``{key tuple: coefficient}``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: SUmuAlgebra, terms: Mapping[tuple, Laurent]):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other: "Tensor") -> "Tensor":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add(acc, k, v)
        return Tensor(self.alg, acc)

    def __sub__(self, other: "Tensor") -> "Tensor":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add(acc, k, -v)
        return Tensor(self.alg, acc)

    def __mul__(self, other: "Tensor") -> "Tensor":
        """Factorwise product ``(x (x) y)(x' (x) y') = xx' (x) yy'``."""
        acc: dict = {}
        for ks1, c1 in self.terms.items():
            for ks2, c2 in other.terms.items():
                partial = {(): c1 * c2}
                for k1, k2 in zip(ks1, ks2):
                    nxt: dict = {}
                    for prefix, c in partial.items():
                        for k, cf in self.alg.mul_keys(k1, k2):
                            _add(nxt, prefix + (k,), c * cf)
                    partial = nxt
                for ks, c in partial.items():
                    _add(acc, ks, c)
        return Tensor(self.alg, acc)

    def __eq__(self, other) -> bool:
        if isinstance(other, Tensor):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def map_legs(self, *fns: Callable[[Key], Mapping]) -> "Tensor":
        """Apply ``fns[i]`` (key -> {key: coeff}) to leg ``i``."""
        acc: dict = {}
        for ks, c in self.terms.items():
            partial = {(): c}
            for k, fn in zip(ks, fns):
                nxt: dict = {}
                for prefix, pc in partial.items():
                    for k2, c2 in fn(k).items():
                        _add(nxt, prefix + (k2,), pc * c2)
                partial = nxt
            for ks2, v in partial.items():
                _add(acc, ks2, v)
        return Tensor(self.alg, acc)


class LinearMap:
    """Linear operator given by its (memoised) values on canonical keys."""

    def __init__(self, alg: SUmuAlgebra, on_key: Callable[[Key], Mapping[Key, Laurent]], name: str = ""):
        self.alg = alg
        self._on_key = on_key
        self._memo: dict[Key, dict] = {}
        self.name = name

    def key(self, k: Key) -> dict:
        if k not in self._memo:
            self._memo[k] = {kk: v for kk, v in self._on_key(k).items() if v}
        return self._memo[k]

    def __call__(self, p: NCPoly) -> NCPoly:
        acc: dict = {}
        for k, c in p.terms.items():
            for k2, c2 in self.key(k).items():
                _add(acc, k2, c * c2)
        return NCPoly(self.alg, acc)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        def on_key(k):
            return self(NCPoly(self.alg, other.key(k))).terms

        return LinearMap(self.alg, on_key, f"{self.name}.{other.name}")


class Functional:
    """Linear functional given by its (memoised) values on canonical keys."""

    def __init__(self, alg: SUmuAlgebra, on_key: Callable[[Key], Laurent], name: str = ""):
        self.alg = alg
        self._on_key = on_key
        self._memo: dict[Key, Laurent] = {}
        self.name = name

    def key(self, k: Key) -> Laurent:
        if k not in self._memo:
            self._memo[k] = Laurent.lift(self._on_key(k))
        return self._memo[k]

    def __call__(self, p: NCPoly) -> Laurent:
        total = Laurent()
        for k, c in p.terms.items():
            v = self.key(k)
            if v:
                total = total + c * v
        return total

    def after(self, T: LinearMap) -> "Functional":
        """``f o T``."""
        return Functional(self.alg, lambda k: self(NCPoly(self.alg, T.key(k))), f"{self.name}.{T.name}")


class SUmu:
    """Quantum SU(2) at ``mu = sign * s**2`` with its circ-Hopf structure."""

    def __init__(self, sign: int):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        self.alg = SUmuAlgebra(sign)
        self.mu = self.alg.mu
        self.abs_mu = s_var ** 2
        self._delta: dict[Key, Tensor] = {ONE_KEY: Tensor(self.alg, {(ONE_KEY, ONE_KEY): self.alg.one})}
        self.identity = LinearMap(self.alg, lambda k: {k: self.alg.one}, "id")
        self.antipode = LinearMap(self.alg, self._antipode_key, "S")
        self.circ = LinearMap(self.alg, self._circ_key, "circ")
        self.antipode_inv = self.circ @ self.antipode @ self.circ
        self.antipode_inv.name = "S^-1"
        self.eps = self.character(Laurent.lift(1), "eps")
        self.theta = self.character(s_var ** -2, "theta")
        self.beta = self.character(s_var ** -1, "beta")

    # -- elements -------------------------------------------------------------

    def gen(self, g: str) -> NCPoly:
        return self.alg.gen(g)

    def basis(self, k: Key) -> NCPoly:
        return self.alg.basis(k)

    def word(self, w: str) -> NCPoly:
        return self.alg.word(w)

    # -- structure maps on keys ---------------------------------------------------

    @staticmethod
    def _split_last(k: Key) -> tuple[Key, str]:
        """``k = prefix * g`` with ``g`` the last letter of the canonical word."""
        w = key_word(k)
        g = w[-1]
        e, m, n = k
        prefix = {"a": (e - 1, m, n), "A": (e + 1, m, n), "c": (e, m - 1, n), "C": (e, m, n - 1)}[g]
        return prefix, g

    def delta_gen(self, g: str) -> Tensor:
        return Tensor(
            self.alg,
            {(GEN_KEY[x], GEN_KEY[y]): self.alg.mu_pow(p) for p, x, y in _DELTA_GEN[g]},
        )

    def delta_key(self, k: Key) -> Tensor:
        if k not in self._delta:
            prefix, g = self._split_last(k)
            self._delta[k] = self.delta_key(prefix) * self.delta_gen(g)
        return self._delta[k]

    def delta(self, p: NCPoly) -> Tensor:
        acc: dict = {}
        for k, c in p.terms.items():
            for ks, v in self.delta_key(k).terms.items():
                _add(acc, ks, c * v)
        return Tensor(self.alg, acc)

    def _antipode_gen(self, g: str) -> NCPoly:
        mu = self.mu
        return {
            "a": self.gen("A"),
            "A": self.gen("a"),
            "c": self.gen("c") * (-mu),
            "C": self.gen("C") * (-(mu ** -1)),
        }[g]

    def _antipode_key(self, k: Key) -> dict:
        if k == ONE_KEY:
            return {ONE_KEY: self.alg.one}
        prefix, g = self._split_last(k)
        return (self._antipode_gen(g) * NCPoly(self.alg, self.antipode.key(prefix))).terms

    def _circ_key(self, k: Key) -> dict:
        # a, ahat fixed, c <-> cstar; c and cstar commute so the image is canonical
        e, m, n = k
        return {(e, n, m): scalar_conj(self.alg.one)}

    def circ_poly(self, p: NCPoly) -> NCPoly:
        """Conjugate-linear extension of ``circ`` to polynomials."""
        acc: dict = {}
        for k, c in p.terms.items():
            for k2, c2 in self.circ.key(k).items():
                _add(acc, k2, scalar_conj(c) * c2)
        return NCPoly(self.alg, acc)

    # -- functionals and convolution ------------------------------------------------

    def character(self, x: Laurent, name: str = "") -> Functional:
        """Multiplicative functional with ``a -> x``, ``ahat -> 1/x``, ``c, cstar -> 0``."""
        x = Laurent.lift(x)

        def on_key(k):
            e, m, n = k
            return x ** e if m == 0 and n == 0 else Laurent()

        return Functional(self.alg, on_key, name or f"chi({x})")

    def functional_theta(self, p: NCPoly) -> Laurent:
        return self.theta(p)

    def functional_beta(self, p: NCPoly) -> Laurent:
        return self.beta(p)

    def beta_power(self, r: int) -> Functional:
        """``beta^r`` in the convolution group, equal to the character at ``s^-r``."""
        return self.character(s_var ** -r, f"beta^{r}")

    def left_conv(self, f: Functional) -> LinearMap:
        """``f * id : x -> sum f(x1) x2``."""

        def on_key(k):
            acc: dict = {}
            for (k1, k2), c in self.delta_key(k).terms.items():
                v = f.key(k1)
                if v:
                    _add(acc, k2, c * v)
            return acc

        return LinearMap(self.alg, on_key, f"({f.name}*id)")

    def right_conv(self, f: Functional) -> LinearMap:
        """``id * f : x -> sum x1 f(x2)``."""

        def on_key(k):
            acc: dict = {}
            for (k1, k2), c in self.delta_key(k).terms.items():
                v = f.key(k2)
                if v:
                    _add(acc, k1, c * v)
            return acc

        return LinearMap(self.alg, on_key, f"(id*{f.name})")

    def convolve(self, f: Functional | None, g: Functional | None) -> LinearMap:
        """``f * id * g`` with ``None`` standing for the counit."""
        ops = [op for op in (self.left_conv(f) if f else None, self.right_conv(g) if g else None) if op]
        if not ops:
            return self.identity
        out = ops[0]
        for op in ops[1:]:
            out = out @ op
        return out

    def conv_functionals(self, f: Functional, g: Functional) -> Functional:
        """``f * g : x -> sum f(x1) g(x2)``."""

        def on_key(k):
            total = Laurent()
            for (k1, k2), c in self.delta_key(k).terms.items():
                a = f.key(k1)
                if a:
                    b = g.key(k2)
                    if b:
                        total = total + c * a * b
            return total

        return Functional(self.alg, on_key, f"{f.name}*{g.name}")

    # -- named operators ---------------------------------------------------------

    def positive_antipode(self) -> LinearMap:
        return self.convolve(self.beta_power(1), self.beta_power(-1))

    def positive_antipode_inv(self) -> LinearMap:
        return self.convolve(self.beta_power(-1), self.beta_power(1))

    def nakayama(self) -> LinearMap:
        return self.convolve(self.beta_power(2), self.beta_power(2))

    def nakayama_sqrt(self) -> LinearMap:
        return self.convolve(self.beta_power(1), self.beta_power(1))

    def nakayama_sqrt_inv(self) -> LinearMap:
        return self.convolve(self.beta_power(-1), self.beta_power(-1))

    def unitary_antipode(self) -> LinearMap:
        return self.antipode @ self.positive_antipode_inv() @ self.nakayama_sqrt_inv()

    def modular_function(self) -> Functional:
        return self.beta_power(4)
