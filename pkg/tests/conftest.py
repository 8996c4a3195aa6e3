"""Shared fixtures and brute-force oracles.

The oracles here recompute expected values from first principles (set
arithmetic over explicitly enumerated matrices) and stay independent of
the canonical-form code paths they check.
"""

import pytest

from lirg.field import make_field
from lirg.graph import build_full_graph
from lirg.matrix import enumerate_matrices, mat_mul, vertex_encode


@pytest.fixture(scope="session")
def graphs():
    """Memoized full-graph builder keyed by (p, m, n, directed)."""
    cache = {}

    def get(p, m, n, directed=True, cap=None):
        key = (p, m, n, directed)
        if key not in cache:
            F = make_field(p, m)
            cache[key] = build_full_graph(F, n, directed=directed, cap=cap)
        return cache[key]

    return get


def brute_ideal_set(F, n, X, all_matrices=None):
    """The left ideal of X as the literal set {encode(W X) : all W}."""
    if all_matrices is None:
        all_matrices = list(enumerate_matrices(F, n, cap=None))
    return frozenset(vertex_encode(F, mat_mul(F, W, X)) for W in all_matrices)


def brute_ideal_sets(F, n):
    """Vertex index -> brute-force ideal set, for every matrix."""
    all_matrices = list(enumerate_matrices(F, n, cap=None))
    return [brute_ideal_set(F, n, X, all_matrices) for X in all_matrices]
