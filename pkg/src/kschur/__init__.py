"""k-Schur characters from affine Demazure operators.

Exact computations of Catalan, Hall–Littlewood and k-Schur characters,
their basis changes, and modified Macdonald polynomials, with independent
brute-force oracles for cross-checking.
"""

__version__ = "0.1.0"

from .bases import (  # noqa: E402
    KSchurExpansion,
    SchurExpansion,
    branch_k,
    coproduct_expand,
    e1_skew,
    hl_character,
    kostka,
    kschur,
    kschur_expand,
    lr_coeff,
    product_expand,
    schur_peel,
)
from .charpoly import QTPoly, SymPoly, schur_monomials  # noqa: E402
from .demazure import (  # noqa: E402
    AffineCharacter,
    AffineWeight,
    RootIdeal,
    catalan_char,
    chain_weights,
    psi_of,
    socle_partition,
    validate_root_ideal,
)
from .partitions import (  # noqa: E402
    d_k,
    kbounded_to_core,
    omega_k,
    partition,
    pieri_pairs,
)

__all__ = [
    "AffineCharacter",
    "AffineWeight",
    "KSchurExpansion",
    "QTPoly",
    "RootIdeal",
    "SchurExpansion",
    "SymPoly",
    "branch_k",
    "catalan_char",
    "chain_weights",
    "coproduct_expand",
    "d_k",
    "e1_skew",
    "hl_character",
    "kbounded_to_core",
    "kostka",
    "kschur",
    "kschur_expand",
    "lr_coeff",
    "omega_k",
    "partition",
    "pieri_pairs",
    "product_expand",
    "psi_of",
    "schur_monomials",
    "schur_peel",
    "socle_partition",
    "validate_root_ideal",
]
