"""Noncommutative polynomials in the canonical basis of the quantum SU(2) algebra.

Generators are ``a`` (alpha), ``A`` (alpha hat), ``c`` (gamma) and ``C``
(gamma°).  With ``mu = sign * s**2`` the defining relations are

    A a - mu C c = 1        a A - mu^3 c C = 1        C c = c C
    mu c a = a c            mu C a = a C
    c A = mu A c            C A = mu A C

A canonical word is ``a^e c^m C^n`` (``e >= 0``) or ``A^k c^m C^n`` (``k >= 1``),
stored as the key ``(e, m, n)`` with ``e = -k`` in the second case.

Two independent normalisers are provided: :class:`SUmuAlgebra` multiplies
canonical words by closed formulas, and :class:`Rewriter` rewrites free words
with the oriented relations.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from ..arith import Laurent, laurent_mu

__all__ = [
    "Key",
    "key_degree",
    "key_name",
    "key_word",
    "word_key",
    "canonical_keys",
    "SUmuAlgebra",
    "NCPoly",
    "Rewriter",
    "RULES",
]

Key = tuple[int, int, int]
GENERATORS = ("a", "A", "c", "C")
GENERATOR_NAMES = {"a": "a", "A": "ahat", "c": "c", "C": "cstar"}


def key_degree(k: Key) -> int:
    return abs(k[0]) + k[1] + k[2]


def key_word(k: Key) -> str:
    """The canonical free word of a key, e.g. ``(2, 1, 0) -> 'aac'``."""
    e, m, n = k
    return ("a" * e if e >= 0 else "A" * (-e)) + "c" * m + "C" * n


def word_key(w: str) -> Key:
    """Key of a word already in canonical form."""
    e = w.count("a") - w.count("A")
    if w != key_word((e, w.count("c"), w.count("C"))):
        raise ValueError(f"{w!r} is not canonical")
    return (e, w.count("c"), w.count("C"))


def key_name(k: Key) -> str:
    if k == (0, 0, 0):
        return "1"
    e, m, n = k
    parts = []
    for gen, p in (("a" if e >= 0 else "ahat", abs(e)), ("c", m), ("cstar", n)):
        if p == 1:
            parts.append(gen)
        elif p > 1:
            parts.append(f"{gen}^{p}")
    return "*".join(parts)


def canonical_keys(max_degree: int) -> list[Key]:
    """All canonical keys of degree at most ``max_degree``, sorted by (degree, name)."""
    out = []
    for e in range(-max_degree, max_degree + 1):
        for m in range(max_degree + 1):
            for n in range(max_degree + 1):
                k = (e, m, n)
                if key_degree(k) <= max_degree:
                    out.append(k)
    return sorted(out, key=lambda k: (key_degree(k), key_name(k)))


# -- closed-form multiplication -------------------------------------------------


def _add(acc: dict, key, coeff) -> None:
    v = acc.get(key)
    v = coeff if v is None else v + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class SUmuAlgebra:
    """Closed-form arithmetic on canonical keys at ``mu = sign * s**2``."""

    def __init__(self, sign: int):
        self.sign = sign
        self.mu = laurent_mu(sign)
        self._mu_pow: dict[int, Laurent] = {}
        self.one = Laurent.lift(1)
        self._mul_keys = lru_cache(maxsize=None)(self._mul_keys_raw)
        self._apart = lru_cache(maxsize=None)(self._apart_raw)

    def mu_pow(self, p: int) -> Laurent:
        if p not in self._mu_pow:
            self._mu_pow[p] = Laurent.monomial(2 * p, self.sign ** (p % 2))
        return self._mu_pow[p]

    def _apart_raw(self, e1: int, e2: int) -> tuple:
        """Product of the pure a-parts as ``((e, j, coeff), ...)`` meaning ``coeff a^e (cC)^j``."""
        if e1 >= 0 and e2 >= 0 or e1 <= 0 and e2 <= 0:
            return ((e1 + e2, 0, self.one),)
        acc: dict = {}
        if e1 > 0:  # a^k A^l = a^{k-1}A^{l-1} + mu^{3+2(l-1)} a^{k-1}A^{l-1} cC
            k, l = e1, -e2
            shift = self.mu_pow(3 + 2 * (l - 1))
            rec = self._apart(k - 1, -(l - 1))
        else:  # A^k a^l = A^{k-1}a^{l-1} + mu^{1-2(l-1)} A^{k-1}a^{l-1} cC
            k, l = -e1, e2
            shift = self.mu_pow(1 - 2 * (l - 1))
            rec = self._apart(-(k - 1), l - 1)
        for e, j, cf in rec:
            _add(acc, (e, j), cf)
            _add(acc, (e, j + 1), cf * shift)
        return tuple((e, j, cf) for (e, j), cf in sorted(acc.items()))

    def _mul_keys_raw(self, k1: Key, k2: Key) -> tuple:
        e1, m1, n1 = k1
        e2, m2, n2 = k2
        factor = self.mu_pow(-(m1 + n1) * e2)
        acc: dict = {}
        for e, j, cf in self._apart(e1, e2):
            _add(acc, (e, m1 + m2 + j, n1 + n2 + j), cf * factor)
        return tuple(sorted(acc.items()))

    def mul_keys(self, k1: Key, k2: Key) -> tuple:
        return self._mul_keys(k1, k2)

    def mul(self, p: Mapping[Key, Laurent], q: Mapping[Key, Laurent]) -> dict:
        acc: dict = {}
        for k1, c1 in p.items():
            for k2, c2 in q.items():
                c = c1 * c2
                for k, cf in self._mul_keys(k1, k2):
                    _add(acc, k, c * cf)
        return acc

    # -- construction helpers -------------------------------------------------

    def poly(self, terms: Mapping[Key, object] | None = None) -> "NCPoly":
        return NCPoly(self, {k: Laurent.lift(v) for k, v in (terms or {}).items() if v})

    def basis(self, k: Key) -> "NCPoly":
        return NCPoly(self, {k: self.one})

    def gen(self, g: str) -> "NCPoly":
        return self.basis({"a": (1, 0, 0), "A": (-1, 0, 0), "c": (0, 1, 0), "C": (0, 0, 1)}[g])

    def word(self, w: str) -> "NCPoly":
        """Product of the generators spelled by ``w`` (closed-form route)."""
        out = self.basis((0, 0, 0))
        for g in w:
            out = out * self.gen(g)
        return out


class NCPoly:
    """Immutable element of the algebra: canonical key -> nonzero Laurent coefficient."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: SUmuAlgebra, terms: Mapping[Key, Laurent]):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def __iter__(self) -> Iterator[tuple[Key, Laurent]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add(acc, k, v)
        return NCPoly(self.alg, acc)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return NCPoly(self.alg, self.alg.mul(self.terms, other.terms))
        c = Laurent.lift(other)
        return NCPoly(self.alg, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other) -> "NCPoly":
        c = Laurent.lift(other)
        return NCPoly(self.alg, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((key_degree(k) for k in self.terms), default=-1)

    def coeff(self, k: Key) -> Laurent:
        return self.terms.get(k, Laurent())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{key_name(k)}" for k, c in self)


# -- independent rewriting engine ---------------------------------------------------

# left side -> list of (mu exponent, replacement word); "" is the empty word
RULES: dict[str, list[tuple[int, str]]] = {
    "Aa": [(0, ""), (1, "Cc")],
    "aA": [(0, ""), (3, "cC")],
    "Cc": [(0, "cC")],
    "ca": [(-1, "ac")],
    "Ca": [(-1, "aC")],
    "cA": [(1, "Ac")],
    "CA": [(1, "AC")],
}


class Rewriter:
    """Normal forms of free words by exhaustive leftmost rewriting."""

    def __init__(self, sign: int):
        self.alg = SUmuAlgebra(sign)
        self._memo: dict[str, dict[str, Laurent]] = {}

    @staticmethod
    def redexes(w: str) -> list[int]:
        return [i for i in range(len(w) - 1) if w[i : i + 2] in RULES]

    def rewrite_at(self, w: str, pos: int) -> list[tuple[Laurent, str]]:
        lhs = w[pos : pos + 2]
        return [(self.alg.mu_pow(p), w[:pos] + rhs + w[pos + 2 :]) for p, rhs in RULES[lhs]]

    @staticmethod
    def measure(w: str) -> tuple[int, int]:
        """(number of a/A letters, inversions w.r.t. a,A < c < C); decreases under every rule."""
        rank = {"a": 0, "A": 0, "c": 1, "C": 2}
        inv = 0
        seen = [0, 0, 0]
        for ch in w:
            r = rank[ch]
            inv += sum(seen[r + 1 :])
            seen[r] += 1
        return (w.count("a") + w.count("A"), inv)

    def normalize_word(self, w: str) -> dict[str, Laurent]:
        if w in self._memo:
            return self._memo[w]
        red = self.redexes(w)
        if not red:
            out = {w: self.alg.one}
        else:
            out = {}
            for cf, w2 in self.rewrite_at(w, red[0]):
                for nw, c2 in self.normalize_word(w2).items():
                    _add(out, nw, cf * c2)
        self._memo[w] = out
        return out

    def normalize(self, w: str) -> NCPoly:
        return NCPoly(self.alg, {word_key(nw): c for nw, c in self.normalize_word(w).items()})

    def normalize_combination(self, terms: Iterable[tuple[Laurent, str]]) -> NCPoly:
        acc: dict = {}
        for cf, w in terms:
            for nw, c2 in self.normalize_word(w).items():
                _add(acc, word_key(nw), cf * c2)
        return NCPoly(self.alg, acc)
