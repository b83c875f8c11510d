"""JSON encoding of coalgebras, Hopf algebras and comodules.

Coalgebra files::

    {"dim": n, "basis": [...], "delta": [[i, j, k, x], ...], "eps": [x, ...],
     "circ": [[x, ...], ...] | null, "backend": "gaussq" | "float"}

Hopf files add ``"mult": [[k, i, j, x], ...]`` (``e_i e_j = sum_k x e_k``),
``"unit": [x, ...]`` and ``"antipode": [[x, ...], ...]`` (column ``j`` is
``S(e_j)``).  Comodule files are ``{"dim": m, "coaction": [[i, k, j, x], ...],
"side": "right" | "left"}`` with ``chi(e_j) = sum e_i (x) x e_k``.  Scalars use
the encodings of :func:`circhopf.arith.scalar_to_json`.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import linalg as la
from .arith import FloatC, GaussQ, scalar_from_json, scalar_to_json
from .coalgebra import Coalgebra, sparse_entries
from .comodule import Comodule
from .hopf.algebra import HopfAlgebra

__all__ = [
    "InputError",
    "encode_matrix",
    "coalgebra_to_json",
    "coalgebra_from_json",
    "comodule_to_json",
    "comodule_from_json",
    "load_structure",
    "dump_structure",
]


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def _scalar(x):
    if isinstance(x, (complex, np.complexfloating, float, np.floating)):
        return scalar_to_json(complex(x))
    return scalar_to_json(x)


def encode_matrix(A) -> list:
    A = np.asarray(A)
    if A.ndim == 1:
        return [_scalar(x) for x in A]
    return [encode_matrix(row) for row in A]


def _backend_of(C) -> str:
    return "gaussq" if C.exact else "float"


def coalgebra_to_json(C: Coalgebra) -> dict:
    out = {
        "dim": C.n,
        "basis": list(C.basis),
        "delta": [[i, j, k, _scalar(v)] for i, j, k, v in sparse_entries(C.delta)],
        "eps": encode_matrix(C.eps),
        "circ": None if C.circ is None else encode_matrix(C.circ.matrix),
        "backend": _backend_of(C),
    }
    if isinstance(C, HopfAlgebra):
        out["mult"] = [[k, i, j, _scalar(v)] for k, i, j, v in sparse_entries(C.mult)]
        out["unit"] = encode_matrix(C.unit)
        out["antipode"] = encode_matrix(C.antipode)
        if C.name:
            out["name"] = C.name
    return out


def _decode(obj, exact: bool):
    x = scalar_from_json(obj)
    if exact:
        if not isinstance(x, GaussQ):
            raise InputError(f"backend gaussq expects exact scalars, got {obj!r}")
        return x
    if isinstance(x, FloatC):
        return complex(x)
    if isinstance(x, GaussQ):
        return complex(x)
    raise InputError(f"unsupported scalar {obj!r} for a structure file")


def _dense(rows, shape, exact: bool):
    arr = la.zeros(shape, exact)
    try:
        for idx in np.ndindex(*shape):
            v = rows
            for i in idx:
                v = v[i]
            arr[idx] = _decode(v, exact)
    except (IndexError, TypeError, KeyError) as exc:
        raise InputError(f"matrix does not have shape {shape}") from exc
    return arr


def _sparse(entries, n: int, exact: bool):
    arr = la.zeros((n, n, n), exact)
    for entry in entries:
        if len(entry) != 4:
            raise InputError(f"sparse entry must be [a, b, c, scalar], got {entry!r}")
        a, b, c, v = entry
        if not all(isinstance(t, int) and 0 <= t < n for t in (a, b, c)):
            raise InputError(f"index out of range in {entry!r}")
        arr[a, b, c] = arr[a, b, c] + _decode(v, exact)
    return arr


def coalgebra_from_json(obj: dict, validate: bool = True, backend: str | None = None) -> Coalgebra:
    """Build a :class:`Coalgebra` (or :class:`HopfAlgebra` when ``mult`` is present)."""
    if not isinstance(obj, dict):
        raise InputError("structure file must hold a JSON object")
    try:
        n = int(obj["dim"])
        file_backend = obj.get("backend", "gaussq")
        if file_backend not in ("gaussq", "float"):
            raise InputError(f"unknown backend {file_backend!r}")
        exact = file_backend == "gaussq"
        delta = _sparse(obj["delta"], n, exact)
        eps = _dense(obj["eps"], (n,), exact)
        circ = None if obj.get("circ") is None else _dense(obj["circ"], (n, n), exact)
        basis = obj.get("basis") or [f"e{k}" for k in range(n)]
        if len(basis) != n:
            raise InputError("basis length differs from dim")
        if "mult" in obj:
            mult = _sparse(obj["mult"], n, exact)
            unit = _dense(obj["unit"], (n,), exact)
            S = _dense(obj["antipode"], (n, n), exact)
            H = HopfAlgebra(delta, eps, mult, unit, S, basis, circ, validate=False, name=obj.get("name"))
        else:
            H = Coalgebra(delta, eps, basis, circ, validate=False)
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc
    if backend == "float" and H.exact:
        H = H.to_float()
    elif backend == "exact" and not H.exact:
        raise InputError("float input cannot be promoted to the exact backend")
    if validate:
        H.validate()
    return H


def comodule_to_json(V: Comodule) -> dict:
    entries = []
    for i, j, k in zip(*np.nonzero(np.vectorize(bool, otypes=[bool])(V.coeffs))):
        entries.append([int(i), int(k), int(j), _scalar(V.coeffs[i, j, k])])
    entries.sort(key=lambda e: e[:3])
    return {"dim": V.m, "coaction": entries, "side": V.side}


def comodule_from_json(obj: dict, C: Coalgebra, validate: bool = True) -> Comodule:
    try:
        m = int(obj["dim"])
        side = obj.get("side", "right")
        coeffs = la.zeros((m, m, C.n), C.exact)
        for entry in obj["coaction"]:
            i, k, j, v = entry
            coeffs[i, j, k] = coeffs[i, j, k] + _decode(v, C.exact)
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"bad comodule file: {exc}") from exc
    return Comodule(C, coeffs, side, validate=validate)


def load_structure(path, validate: bool = True, backend: str | None = None) -> Coalgebra:
    """Read a structure file; raises :class:`InputError` on unreadable or malformed input."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return coalgebra_from_json(obj, validate=validate, backend=backend)


def dump_structure(C: Coalgebra, path) -> None:
    """Write one top-level field per line."""
    obj = coalgebra_to_json(C)
    lines = [f" {json.dumps(k)}: {json.dumps(obj[k])}" for k in sorted(obj)]
    Path(path).write_text("{\n" + ",\n".join(lines) + "\n}\n")
