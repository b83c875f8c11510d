"""Check results and sparse-tensor comparison helpers shared by the validators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .arith import TOL, Scalar


@dataclass
class Check:
    name: str
    ok: bool
    residual: float = 0.0
    witness: Any = None
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "residual": self.residual}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


class AxiomError(ValueError):
    """An input failed one of its structural axioms."""

    def __init__(self, check: Check):
        self.check = check
        msg = f"{check.name} fails"
        if check.witness is not None:
            msg += f" at {check.witness}"
        if check.detail:
            msg += f": {check.detail}"
        super().__init__(msg)


def magnitude(x) -> float:
    if isinstance(x, Scalar) and x.backend == "laurent":
        return 0.0 if not x else float("inf")
    return abs(complex(x))


def accumulate(acc: dict, key, value) -> None:
    if key in acc:
        acc[key] = acc[key] + value
    else:
        acc[key] = value


def compare(
    name: str,
    lhs: Mapping,
    rhs: Mapping,
    exact: bool,
    label: Callable[[Any], Any] = lambda k: k,
) -> Check:
    """Compare two sparse tensors keyed by index tuples.

    Exact tensors must agree entry for entry.  Float tensors pass when the
    largest entrywise difference is at most the residual tolerance.  The
    witness is the smallest failing key.
    """
    worst, witness = 0.0, None
    for key in sorted(set(lhs) | set(rhs)):
        a, b = lhs.get(key, 0), rhs.get(key, 0)
        diff = a - b
        if exact:
            if diff:
                return Check(name, False, magnitude(diff), label(key))
            continue
        m = magnitude(diff)
        if m > worst:
            worst = m
        if m > TOL.residual and witness is None:
            witness = label(key)
    return Check(name, witness is None, worst, witness)


def all_ok(checks: Iterable[Check]) -> bool:
    return all(c.ok for c in checks)
