"""Small finite groups as multiplication tables."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    labels: tuple[str, ...]
    table: np.ndarray  # table[i, j] = index of g_i g_j

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        return 0

    def inverse(self, i: int) -> int:
        return int(np.flatnonzero(self.table[i] == 0)[0])

    def is_abelian(self) -> bool:
        return bool(np.all(self.table == self.table.T))

    def automorphisms_of_order_two(self) -> list[list[int]]:
        """Involutive automorphisms as index permutations (brute force, tiny groups only)."""
        from itertools import permutations

        n = self.order
        out = []
        for perm in permutations(range(1, n)):
            p = [0, *perm]
            if any(p[p[i]] != i for i in range(n)) or p == list(range(n)):
                continue
            if all(p[self.table[i, j]] == self.table[p[i], p[j]] for i in range(n) for j in range(n)):
                out.append(p)
        return out


def from_generators(
    name: str,
    identity: Hashable,
    gens: Sequence[tuple[str, Hashable]],
    mul: Callable[[Hashable, Hashable], Hashable],
) -> FiniteGroup:
    """Close ``gens`` under ``mul``; elements are ordered breadth first and named by words."""
    words = {identity: "e"}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for gname, g in gens:
            y = mul(x, g)
            if y not in words:
                words[y] = gname if words[x] == "e" else words[x] + gname
                order.append(y)
                queue.append(y)
    index = {x: i for i, x in enumerate(order)}
    n = len(order)
    table = np.array([[index[mul(order[i], order[j])] for j in range(n)] for i in range(n)], dtype=int)
    return FiniteGroup(name, tuple(words[x] for x in order), table)


def _perm_mul(p, q):
    # (p q)(x) = p(q(x))
    return tuple(p[i] for i in q)


def cyclic(n: int) -> FiniteGroup:
    return from_generators(f"Z{n}", 0, [("g", 1)], lambda a, b: (a + b) % n)


def symmetric3() -> FiniteGroup:
    return from_generators("S3", (0, 1, 2), [("s", (1, 0, 2)), ("r", (1, 2, 0))], _perm_mul)


def dihedral4() -> FiniteGroup:
    return from_generators("D4", (0, 1, 2, 3), [("r", (1, 2, 3, 0)), ("s", (0, 3, 2, 1))], _perm_mul)


def _mat_mul(a, b):
    (a11, a12, a21, a22), (b11, b12, b21, b22) = a, b
    return (
        a11 * b11 + a12 * b21,
        a11 * b12 + a12 * b22,
        a21 * b11 + a22 * b21,
        a21 * b12 + a22 * b22,
    )


def quaternion8() -> FiniteGroup:
    i = (1j, 0, 0, -1j)
    j = (0, 1, -1, 0)
    return from_generators("Q8", (1, 0, 0, 1), [("i", i), ("j", j)], _mat_mul)


GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion8,
}
