"""Compact circ-coalgebras and circ-Hopf algebras: exact and floating-point tools.

Subpackages and modules:

* :mod:`circhopf.arith` -- scalar backends (Gaussian rationals, Laurent polynomials, floats).
* :mod:`circhopf.linalg` -- matrices over those backends, forms, spectral kernels.
* :mod:`circhopf.coalgebra` -- coalgebras, simple decomposition, structure bases.
* :mod:`circhopf.comodule` -- comodules, dualities, unitary structures.
* :mod:`circhopf.fourier` -- Fourier forms and products.
* :mod:`circhopf.hopf` -- circ-Hopf algebras, integrals, antipode decompositions.
* :mod:`circhopf.sumu` -- exact engine for quantum SU(2).
"""
__version__ = "0.1.0"

from .arith import FloatC, GaussQ, Laurent  # noqa: E402
from .coalgebra import Coalgebra, decompose_simple, matrix_coalgebra, structure_basis  # noqa: E402
from .comodule import Comodule  # noqa: E402
from .hopf import HopfAlgebra, function_algebra, group_algebra, is_compact, sweedler  # noqa: E402

__all__ = [
    "__version__",
    "FloatC",
    "GaussQ",
    "Laurent",
    "Coalgebra",
    "decompose_simple",
    "matrix_coalgebra",
    "structure_basis",
    "Comodule",
    "HopfAlgebra",
    "function_algebra",
    "group_algebra",
    "is_compact",
    "sweedler",
]
