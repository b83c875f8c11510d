"""Exact engine for quantum SU(2) with real deformation parameter ``mu = +-s**2``."""
from .poly import NCPoly, Rewriter, SUmuAlgebra, canonical_keys, key_name
from .structure import Functional, LinearMap, SUmu, Tensor
from .verify import (
    IDENTITIES,
    IdentityResult,
    confluence_sweep,
    product_crosscheck,
    termination_sweep,
    verify,
    verify_all,
)

__all__ = [
    "NCPoly",
    "Rewriter",
    "SUmuAlgebra",
    "canonical_keys",
    "key_name",
    "Functional",
    "LinearMap",
    "SUmu",
    "Tensor",
    "IDENTITIES",
    "IdentityResult",
    "confluence_sweep",
    "product_crosscheck",
    "termination_sweep",
    "verify",
    "verify_all",
]
