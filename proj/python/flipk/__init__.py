"""Exact algebra on countable abelian groups.

Canonical decompositions, Smith normal form, tensor/Tor pairings with
presentation-level oracles, graded Kunneth assembly, the factor-exchange
flip, and the admissibility classifier.  Groups are passed as expression
strings such as ``"Z/4+QZ[2^inf]"``; structured results come back as dicts.
"""

from ._core import (
    InternalError,
    ParseError,
    ResourceLimitError,
    UnsupportedInputError,
    canonical,
    classify,
    decompose_presentation,
    eta,
    flip_is_identity,
    flip_signs,
    kunneth,
    necessary,
    oracle_tensor,
    oracle_tor,
    smith,
    tensor,
    tor,
    torsion_free_rank,
    verify_colimit_tables,
)

__all__ = [
    "InternalError",
    "ParseError",
    "ResourceLimitError",
    "UnsupportedInputError",
    "canonical",
    "classify",
    "decompose_presentation",
    "eta",
    "flip_is_identity",
    "flip_signs",
    "kunneth",
    "necessary",
    "oracle_tensor",
    "oracle_tor",
    "smith",
    "tensor",
    "tor",
    "torsion_free_rank",
    "verify_colimit_tables",
]

__version__ = "1.0.0"
