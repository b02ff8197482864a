"""Symbol conversions and metric tensors."""

from eigentope.algebra.metric import build_frame, classify_signature, gram_natural
from eigentope.algebra.symbols import e_to_f, e_to_h, f_to_e, h_to_rho, rho_to_e

__all__ = [
    "f_to_e",
    "e_to_f",
    "e_to_h",
    "h_to_rho",
    "rho_to_e",
    "gram_natural",
    "classify_signature",
    "build_frame",
]
