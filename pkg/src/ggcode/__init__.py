"""Generalized graph codes on balanced multipartite graphs.

Finite fields, dense matrices over them, linear codes with exact minimum
distance engines, multipartite graphs with a fixed edge order, the graph code
built from both, and support certificates for its distance bound.
"""
from __future__ import annotations

from .certificate import SupportCertificate, certify
from .codes import LinearCode, direct_sum, even_weight, hamming_binary, repetition
from .errors import CapacityError, DomainError, GGCodeError, NumericError, UsageError
from .field import GF, FieldElement, FieldSpec
from .graphcode import FIXTURES, GeneralizedGraphCode, build, fixture_k333, fixture_k777
from .graphs import PartiteGraph, complete_multipartite, lambda2, validate_balanced
from .kernels import get_backend, set_backend
from .matrix import GFMatrix, RealSymMatrix, kernel_basis, rank, rref, symmetric_eigh

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "FIXTURES",
    "FieldElement",
    "FieldSpec",
    "GF",
    "GFMatrix",
    "GGCodeError",
    "GeneralizedGraphCode",
    "LinearCode",
    "NumericError",
    "PartiteGraph",
    "RealSymMatrix",
    "SupportCertificate",
    "UsageError",
    "build",
    "certify",
    "complete_multipartite",
    "direct_sum",
    "even_weight",
    "fixture_k333",
    "fixture_k777",
    "get_backend",
    "hamming_binary",
    "kernel_basis",
    "lambda2",
    "rank",
    "repetition",
    "rref",
    "set_backend",
    "symmetric_eigh",
    "validate_balanced",
]
