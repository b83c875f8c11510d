"""Shipped example structures.

The JSON files next to this module are generated by :func:`regenerate` from
the builders; :func:`load` reads them back.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..coalgebra import Coalgebra, matrix_coalgebra
from ..hopf.algebra import function_algebra, group_algebra, sweedler
from ..hopf.groups import GROUPS

__all__ = ["GROUP_NAMES", "names", "build", "path", "load", "regenerate"]

GROUP_NAMES = ("Z2", "Z3", "Z4", "S3", "D4", "Q8")


def names() -> list[str]:
    out = [f"group_{g}" for g in GROUP_NAMES] + [f"fun_{g}" for g in GROUP_NAMES]
    out.append("sweedler_H4")
    out += [f"matrix_{n}" for n in range(1, 5)]
    return out


def build(name: str) -> Coalgebra:
    """Construct a corpus entry from its builder."""
    if name.startswith("group_") and name[6:] in GROUP_NAMES:
        return group_algebra(GROUPS[name[6:]]())
    if name.startswith("fun_") and name[4:] in GROUP_NAMES:
        return function_algebra(GROUPS[name[4:]]())
    if name == "sweedler_H4":
        return sweedler()
    if name.startswith("matrix_") and name[7:].isdigit():
        return matrix_coalgebra(int(name[7:]))
    raise KeyError(f"unknown corpus entry {name!r}")


def path(name: str) -> Path:
    p = resources.files(__name__) / f"{name}.json"
    if not p.is_file():
        raise KeyError(f"unknown corpus entry {name!r}")
    return Path(str(p))


def load(name: str, validate: bool = True) -> Coalgebra:
    from ..serialize import load_structure

    return load_structure(path(name), validate=validate)


def regenerate(directory: Path | None = None) -> list[Path]:
    """Write every corpus entry as JSON into ``directory`` (default: this package)."""
    from ..serialize import dump_structure

    directory = Path(directory) if directory is not None else Path(__file__).parent
    written = []
    for name in names():
        target = directory / f"{name}.json"
        dump_structure(build(name), target)
        written.append(target)
    return written
