"""Spectral radius, stabilizing index and eigenvariety structure of nonnegative tensors."""

import json as _json

from ._core import (
    NntError,
    SparseTensor,
    __version__,
    add_identity,
    eigenvariety_dimension,
    eigenvectors,
    hypergraph_tensor,
    identity_tensor,
    is_combinatorially_symmetric,
    is_irreducible,
    is_symmetric,
    is_weakly_irreducible,
    load_tensor,
    oracle_counts,
    parse_hypergraph_tensor,
    parse_tensor,
    strongly_connected_components,
)
from . import _core


def structure_profile(a):
    """Irreducibility hierarchy flags as a dict."""
    return _json.loads(_core._structure_json(a))


def spectral_radius(a, tol=1e-12, max_iter=100000):
    """Power iteration result: rho, bracket, Perron vector, residual."""
    return _json.loads(_core._spectral_json(a, tol, max_iter))


def stabilizing_index(a, cap=10000):
    """Eigenvariety report: s, ell, generators and coset representatives."""
    return _json.loads(_core._stab_json(a, cap))


def analyze(a, tol=1e-12, max_iter=100000, cap=10000, oracle=False):
    """The full report the CLI prints with --format json."""
    return _json.loads(_core._analyze_json(a, tol, max_iter, cap, oracle))


__all__ = [
    "NntError",
    "SparseTensor",
    "add_identity",
    "analyze",
    "eigenvariety_dimension",
    "eigenvectors",
    "hypergraph_tensor",
    "identity_tensor",
    "is_combinatorially_symmetric",
    "is_irreducible",
    "is_symmetric",
    "is_weakly_irreducible",
    "load_tensor",
    "oracle_counts",
    "parse_hypergraph_tensor",
    "parse_tensor",
    "spectral_radius",
    "stabilizing_index",
    "strongly_connected_components",
    "structure_profile",
]
