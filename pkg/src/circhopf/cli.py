"""Command-line front end.

Subcommands ``check``, ``decompose``, ``compact``, ``antipode`` take a
structure file (or the name of a shipped corpus entry); ``sumu`` runs the
quantum SU(2) identity catalog.  Exit codes: 0 pass, 1 mathematical failure,
2 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__, corpus
from . import linalg as la
from .arith import tolerance
from .checks import AxiomError, Check
from .coalgebra import Coalgebra, NotCosemisimple, decompose_simple
from .hopf import antipode as anti
from .hopf.algebra import HopfAlgebra
from .hopf.integral import is_compact
from .serialize import InputError, encode_matrix, load_structure
from .sumu import IDENTITIES, verify, verify_all

__all__ = ["Report", "main", "cmd_check", "cmd_decompose", "cmd_compact", "cmd_antipode", "cmd_sumu"]

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _num(x: float) -> float:
    """Round floats so reports are reproducible across runs."""
    return float(f"{float(x):.12g}")


class Report:
    """Ordered list of checks plus a command-specific result payload."""

    def __init__(self, command: str, source: str, digest: str):
        self.command = command
        self.source = source
        self.digest = digest
        self.checks: list[dict] = []
        self.result: dict = {}
        self.seconds: float | None = None

    def add(self, name: str, ok: bool, residual=0.0, witness=None) -> None:
        if any(c["name"] == name for c in self.checks):
            raise ValueError(f"check {name!r} listed twice")
        entry = {"name": name, "verdict": "pass" if ok else "fail", "residual": None if residual is None else _num(residual)}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def add_check(self, c: Check, prefix: str = "") -> None:
        self.add(prefix + c.name, c.ok, c.residual, c.witness)

    @property
    def ok(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)

    def as_dict(self) -> dict:
        out = {
            "tool": "circhopf",
            "version": __version__,
            "command": self.command,
            "input": self.source,
            "input_digest": self.digest,
            "verdict": "pass" if self.ok else "fail",
            "checks": self.checks,
            "result": self.result,
        }
        if self.seconds is not None:
            out["wall_time_seconds"] = round(self.seconds, 3)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} {self.source}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            extra = f"  witness={c['witness']}" if "witness" in c else ""
            res = "" if c["residual"] is None else f"  residual={c['residual']}"
            lines.append(f"  [{c['verdict']}] {c['name']}{res}{extra}")
        for key, val in self.result.items():
            if isinstance(val, (list, dict)) and len(json.dumps(val)) > 100:
                continue
            lines.append(f"  {key}: {val}")
        return "\n".join(lines) + "\n"


# -- input handling -------------------------------------------------------------------


def _resolve(name: str) -> Path:
    """A filesystem path, or a corpus entry given by name or by ``<dir>/<name>.json``."""
    p = Path(name)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    try:
        return corpus.path(stem)
    except KeyError:
        raise InputError(f"no such file or corpus entry: {name}") from None


def _load(name: str, backend: str | None, validate: bool = True) -> tuple[Coalgebra, str, str]:
    path = _resolve(name)
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    C = load_structure(path, validate=validate, backend=None if backend == "exact" else backend)
    return C, name, digest


def _require_hopf(C: Coalgebra) -> HopfAlgebra:
    if not isinstance(C, HopfAlgebra):
        raise InputError("this command needs a Hopf algebra file (with mult, unit, antipode)")
    return C


def _float_list(values) -> list:
    out = []
    for z in np.asarray(la.as_float(np.asarray(values))).ravel():
        out.append(_num(z.real) if abs(z.imag) < 1e-15 else [_num(z.real), _num(z.imag)])
    return out


# -- commands ---------------------------------------------------------------------------


def cmd_check(args) -> Report:
    C, src, digest = _load(args.file, args.backend, validate=False)
    rep = Report("check", src, digest)
    for c in C.checks():
        rep.add_check(c)
    rep.result = {"dim": C.n, "kind": "hopf" if isinstance(C, HopfAlgebra) else "coalgebra", "has_circ": C.circ is not None}
    return rep


def cmd_decompose(args) -> Report:
    C, src, digest = _load(args.file, args.backend)
    rep = Report("decompose", src, digest)
    try:
        comps = decompose_simple(C, seed=args.seed)
    except NotCosemisimple as exc:
        rep.add("cosemisimple", False, witness=str(exc))
        return rep
    rep.add("cosemisimple", True)
    total = sum(c.dim for c in comps)
    rep.add("components-span", total == C.n, float(C.n - total))
    rep.result = {
        "components": [
            {
                "index": c.index,
                "dim": c.dim,
                "matrix_size": c.size,
                "circ_stable": c.circ_stable,
            }
            for c in comps
        ]
    }
    return rep


def cmd_compact(args) -> Report:
    C, src, digest = _load(args.file, args.backend, validate=False)
    H = _require_hopf(C)
    rep = Report("compact", src, digest)
    for c in H.coalgebra_checks() + H.hopf_checks():
        rep.add_check(c)
    verdict = is_compact(H)
    rep.add("compact", verdict.compact, witness=verdict.reason or None)
    res = verdict.as_dict()
    if "integral" in H.cache:
        res["integral"] = _float_list(H.cache["integral"].vec)
        res["gram_eigenvalues"] = [_num(x) for x in verdict.eigenvalues]
    if verdict.min_eigenvalue is not None:
        res["min_gram_eigenvalue"] = _num(verdict.min_eigenvalue)
    rep.result = res
    return rep


def cmd_antipode(args) -> Report:
    C, src, digest = _load(args.file, args.backend)
    H = _require_hopf(C)
    rep = Report("antipode", src, digest)
    verdict = is_compact(H)
    rep.add("compact", verdict.compact, witness=verdict.reason or None)
    if not verdict.compact:
        return rep
    Sp = anti.positive_antipode(H)
    nk = anti.nakayama(H)
    P = anti.nakayama_sqrt(H)
    beta = anti.compute_beta(H)
    Sstar = anti.antipode_adjoint(H)
    U = anti.unitary_antipode(H)
    for key in ("splus", "psqrt", "beta", "sstar", "unitary"):
        for c in H.cache.get("checks", {}).get(key, []):
            rep.add_check(c)
    for c in nk.checks:
        rep.add_check(c)
    for c in anti.radford_check(H):
        rep.add_check(c)
    invol = anti.involutivity_report(H)
    extra = anti.modularity_report(H)
    rep.add("involutivity-battery-consistent", invol.consistent)
    rep.add("modularity-battery-consistent", extra.consistent)
    I = la.eye(H.n, H.exact)
    rep.result = {
        "splus_is_identity": bool(la.allclose(Sp, la.like(Sp, I), 1e-9)),
        "nakayama_is_identity": bool(la.allclose(nk.N, la.like(nk.N, I), 1e-9)),
        "psqrt_is_identity": bool(la.allclose(P, la.like(P, I), 1e-9)),
        "unitary_equals_antipode": bool(la.allclose(U, la.like(U, H.antipode), 1e-9)),
        "modular_is_counit": bool(la.allclose(nk.alpha.vec, la.like(nk.alpha.vec, H.eps), 1e-9)),
        "beta": _float_list(beta.vec),
        "beta_exact": bool(beta.exact),
        "antipode_adjoint": encode_matrix(Sstar) if la.is_exact(Sstar) else [_float_list(r) for r in Sstar],
        "involutivity": invol.as_dict() | {"all_true": invol.all_true},
        "modularity": extra.as_dict() | {"all_true": extra.all_true},
    }
    return rep


def cmd_sumu(args) -> Report:
    sign = 1 if args.sign == "+" else -1
    names = list(IDENTITIES) if args.identity == "all" else [args.identity]
    if args.identity != "all" and args.identity not in IDENTITIES:
        raise InputError(f"unknown identity {args.identity!r}; choose from all, {', '.join(IDENTITIES)}")
    if args.degree < 1:
        raise InputError("degree must be at least 1")
    source = f"sign={args.sign} degree={args.degree} identity={args.identity}"
    rep = Report("sumu", source, hashlib.sha256(source.encode()).hexdigest())
    results = verify_all(args.degree, sign) if args.identity == "all" else [verify(names[0], args.degree, sign)]
    for r in results:
        for c in r.checks:
            rep.add(f"{r.identity}/{c.name}", c.ok, None, c.witness)
    rep.result = {
        "mu": f"{'+' if sign > 0 else '-'}s^2",
        "degree": args.degree,
        "identities": {r.identity: "pass" if r.ok else "fail" for r in results},
    }
    return rep


COMMANDS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "compact": cmd_compact,
    "antipode": cmd_antipode,
    "sumu": cmd_sumu,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--tolerance", type=float, default=None, help="float residual tolerance")
    common.add_argument("--backend", choices=("exact", "float"), default=None, help="arithmetic backend")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised splitting")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="circhopf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"circhopf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check", "validate coalgebra, circ and Hopf axioms"),
        ("decompose", "simple components with circ-stability flags"),
        ("compact", "normal integral, Gram eigenvalues and compactness verdict"),
        ("antipode", "positive and unitary antipodes, Nakayama data, batteries"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="structure JSON file or corpus entry name")
    p = sub.add_parser("sumu", parents=[common], help="quantum SU(2) identity catalog")
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--identity", default="all")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    t0 = time.perf_counter()
    try:
        with tolerance(eq=args.tolerance, residual=args.tolerance):
            rep = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AxiomError as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except anti.ConsistencyError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.timing:
        rep.seconds = time.perf_counter() - t0
    sys.stdout.write(rep.to_json() if args.json else rep.to_text())
    return EXIT_PASS if rep.ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
