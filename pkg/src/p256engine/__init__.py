"""Software golden model of an ECDSA P-256 verification engine.

Limb-level modular arithmetic, projective Chudnovsky point arithmetic,
three scalar-multiplication strategies, two verification engines
(generic and precompute-accelerated), and an additive cycle model.
"""

from .curve import AffinePoint, ChudnovskyPoint, G, G_AFFINE, is_on_curve
from .cycles import CycleReport, LatencyTable, Trace, estimate, throughput
from .field import P
from .inverse import mod_inverse
from .order import N
from .verify import (
    PrecomputeCache,
    PublicKey,
    Reason,
    Signature,
    VerificationRequest,
    VerifyResult,
    verify_fabric,
    verify_generic,
)

__all__ = [
    "AffinePoint",
    "ChudnovskyPoint",
    "CycleReport",
    "G",
    "G_AFFINE",
    "LatencyTable",
    "N",
    "P",
    "PrecomputeCache",
    "PublicKey",
    "Reason",
    "Signature",
    "Trace",
    "VerificationRequest",
    "VerifyResult",
    "estimate",
    "is_on_curve",
    "mod_inverse",
    "throughput",
    "verify_fabric",
    "verify_generic",
]

__version__ = "0.1.0"
