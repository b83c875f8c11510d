"""Random inputs shared by several test modules."""
import numpy as np

from circhopf import linalg as la
from circhopf.arith import GaussQ


def random_hpd(n: int, rng, shift: float = 1.0) -> np.ndarray:
    Y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return Y @ Y.conj().T + shift * np.eye(n)


def random_g_positive(n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """``(A, G)`` with ``G`` hermitian positive definite and ``A`` G-positive."""
    G = random_hpd(n, rng)
    M = random_hpd(n, rng, shift=0.5)
    return np.linalg.solve(G, M), G


def random_exact(n: int, rng, lo: int = -3, hi: int = 4) -> np.ndarray:
    A = la.zeros((n, n))
    for i in range(n):
        for j in range(n):
            A[i, j] = GaussQ(int(rng.integers(lo, hi)), int(rng.integers(lo, hi)))
    return A
