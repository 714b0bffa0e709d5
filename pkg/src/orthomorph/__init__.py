"""Additive, multiplicative and exponential orthomorphisms of Z/n."""
from .ortho import (
    OrthoCertificate,
    OrthoKind,
    Permutation,
    check_certificate,
    combined_map,
    is_orthomorphism,
    verify_certificate,
)

__version__ = "0.1.0"
