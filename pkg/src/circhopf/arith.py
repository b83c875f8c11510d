"""Scalar backends.

Three immutable value types share the small :class:`Scalar` protocol:

* :class:`GaussQ` -- exact Gaussian rationals ``p + q i`` with ``p, q`` in Q.
* :class:`Laurent` -- exact Laurent polynomials in a real positive symbol ``s``
  with rational coefficients.  ``mu = +-s**2`` makes ``|mu|**(1/2) = s`` exact.
* :class:`FloatC` -- complex doubles compared with a global tolerance.

Python ``int`` and ``Fraction`` values are promoted into whichever backend they
meet; two different backends never mix.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

__all__ = [
    "BackendMismatch",
    "NotInvertible",
    "Tolerance",
    "TOL",
    "tolerance",
    "Scalar",
    "GaussQ",
    "Laurent",
    "FloatC",
    "I",
    "S",
    "laurent_mu",
    "scalar_conj",
    "scalar_to_json",
    "scalar_from_json",
    "parse_rational",
]


class BackendMismatch(TypeError):
    """Raised when two scalars from different backends meet."""


class NotInvertible(ArithmeticError):
    """Raised when a Laurent value with several terms is inverted."""


@dataclass
class Tolerance:
    eq: float = 1e-9
    residual: float = 1e-8


TOL = Tolerance()


@contextlib.contextmanager
def tolerance(eq: float | None = None, residual: float | None = None) -> Iterator[Tolerance]:
    """Temporarily override the float tolerances."""
    saved = (TOL.eq, TOL.residual)
    if eq is not None:
        TOL.eq = eq
    if residual is not None:
        TOL.residual = residual
    try:
        yield TOL
    finally:
        TOL.eq, TOL.residual = saved


def parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Scalar:
    """Common base; subclasses define ``backend`` and the arithmetic."""

    __slots__ = ()
    backend = "abstract"

    def _coerce(self, other):
        if type(other) is type(self):
            return other
        if isinstance(other, Scalar):
            raise BackendMismatch(f"cannot combine {self.backend} with {other.backend}")
        try:
            return type(self).lift(other)
        except TypeError:
            return NotImplemented

    @classmethod
    def lift(cls, x):  # pragma: no cover - overridden
        raise NotImplementedError

    def __radd__(self, other):
        return self.__add__(other)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __rmul__(self, other):
        return self.__mul__(other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pos__(self):
        return self


class GaussQ(Scalar):
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")
    backend = "gaussq"

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", parse_rational(re))
        object.__setattr__(self, "im", parse_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussQ":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def lift(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        return cls._make(parse_rational(x), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ._make(self.re + o.re, self.im + o.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ._make(self.re - o.re, self.im - o.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.im and not o.im:
            return GaussQ._make(self.re * o.re, Fraction(0))
        return GaussQ._make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def inverse(self) -> "GaussQ":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussQ division by zero")
        return GaussQ._make(self.re / n, -self.im / n)

    def __neg__(self):
        return GaussQ._make(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Scalar):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conj(self) -> "GaussQ":
        return GaussQ._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussQ({_fmt(self.re)}, {_fmt(self.im)})"

    def __str__(self):
        if not self.im:
            return _fmt(self.re)
        if not self.re:
            return f"{_fmt(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt(self.re)}{sign}{_fmt(abs(self.im))}i"


I = GaussQ(0, 1)


class Laurent(Scalar):
    """Laurent polynomial in ``s`` with rational coefficients.

    ``terms`` maps integer exponents to nonzero ``Fraction`` coefficients.
    Division is only defined by monomials.
    """

    __slots__ = ("_terms", "_key")
    backend = "laurent"

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            q = parse_rational(c)
            if q:
                clean[int(e)] = q
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    @classmethod
    def _make(cls, clean: dict) -> "Laurent":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", clean)
        object.__setattr__(obj, "_key", None)
        return obj

    @classmethod
    def lift(cls, x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        q = parse_rational(x)
        return cls._make({0: q} if q else {})

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "Laurent":
        q = parse_rational(coeff)
        return cls._make({exp: q} if q else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self._terms)
        for e, c in o._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Laurent._make(out)

    def __neg__(self):
        return Laurent._make({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Laurent._make(out)

    def inverse(self) -> "Laurent":
        if not self._terms:
            raise ZeroDivisionError("Laurent division by zero")
        if len(self._terms) != 1:
            raise NotInvertible(f"{self} is not a monomial")
        ((e, c),) = self._terms.items()
        return Laurent._make({-e: 1 / c})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Laurent.lift(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        if isinstance(other, Scalar):
            return False
        return NotImplemented

    def __hash__(self):
        if self._key is None:
            object.__setattr__(self, "_key", tuple(sorted(self._terms.items())))
        return hash(self._key)

    def __bool__(self):
        return bool(self._terms)

    def conj(self) -> "Laurent":
        # s is real, so conjugation is the identity
        return self

    def evaluate(self, s: float) -> float:
        return sum(float(c) * s**e for e, c in self._terms.items())

    def __repr__(self):
        return f"Laurent({{{', '.join(f'{e}: {_fmt(c)}' for e, c in sorted(self._terms.items()))}}})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "" if e == 0 else ("s" if e == 1 else f"s^{e}")
            if e == 0:
                parts.append(_fmt(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


S = Laurent.monomial(1)


class FloatC(Scalar):
    """Complex double; ``==`` means ``|a - b| <= TOL.eq``."""

    __slots__ = ("value",)
    backend = "float"
    __hash__ = None  # tolerant equality is not transitive

    def __init__(self, re: float = 0.0, im: float = 0.0):
        object.__setattr__(self, "value", complex(re, im))

    def __setattr__(self, name, value):
        raise AttributeError("FloatC is immutable")

    @classmethod
    def lift(cls, x) -> "FloatC":
        if isinstance(x, FloatC):
            return x
        if isinstance(x, (int, float, complex, Fraction)) and not isinstance(x, bool):
            z = complex(x)
            return cls(z.real, z.imag)
        raise TypeError(f"cannot lift {x!r} to FloatC")

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FloatC.lift(self.value + o.value)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FloatC.lift(self.value - o.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FloatC.lift(self.value * o.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FloatC.lift(self.value / o.value)

    def __neg__(self):
        return FloatC.lift(-self.value)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except BackendMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return abs(self.value - o.value) <= TOL.eq

    def __bool__(self):
        return abs(self.value) > TOL.eq

    def __complex__(self):
        return self.value

    def conj(self) -> "FloatC":
        return FloatC.lift(self.value.conjugate())

    def __repr__(self):
        return f"FloatC({self.value.real!r}, {self.value.imag!r})"


def laurent_mu(sign: int) -> Laurent:
    """The deformation parameter ``mu = sign * s**2``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Laurent.monomial(2, sign)


def scalar_conj(x):
    """Complex conjugate in the value's own backend (identity on Laurent)."""
    if isinstance(x, Scalar):
        return x.conj()
    if isinstance(x, (int, Fraction)):
        return x
    return x.conjugate()


def scalar_to_json(x):
    if isinstance(x, GaussQ):
        return {"re": _fmt(x.re), "im": _fmt(x.im)}
    if isinstance(x, Laurent):
        return {"s": {str(e): _fmt(c) for e, c in sorted(x._terms.items())}}
    if isinstance(x, FloatC):
        return [x.value.real, x.value.imag]
    if isinstance(x, (complex, float)):
        z = complex(x)
        return [z.real, z.imag]
    if isinstance(x, (int, Fraction)):
        return scalar_to_json(GaussQ(x))
    raise TypeError(f"cannot encode {x!r}")


def scalar_from_json(obj):
    if isinstance(obj, dict) and "s" in obj:
        return Laurent({int(e): c for e, c in obj["s"].items()})
    if isinstance(obj, dict):
        return GaussQ(obj.get("re", 0), obj.get("im", 0))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return FloatC(float(obj[0]), float(obj[1]))
    if isinstance(obj, (int, str)):
        return GaussQ(obj)
    raise ValueError(f"unrecognised scalar encoding: {obj!r}")
