"""Automorphism constructors, verification, decomposition, group orders."""

import math
import random

import numpy as np
import pytest

from lirg import aut
from lirg.counting import fiber_size, gl_order
from lirg.field import make_field
from lirg.graph import build_full_graph
from lirg.ideal import ideal_of
from lirg.matrix import (
    column_swap_matrix,
    enumerate_matrices,
    identity_matrix,
    is_invertible,
    mat_mul,
    random_invertible,
    vertex_decode,
    vertex_encode,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)


# -- constructors pass verification -----------------------------------------


def test_right_mul_all_of_gl22(graphs):
    G = graphs(2, 1, 2)
    for P in enumerate_matrices(F2, 2):
        if not is_invertible(F2, P):
            continue
        f = aut.right_mul_automorphism(G, P)
        assert aut.verify(G, f) == (True, None)
        assert int(f.perm[0]) == 0  # zero matrix fixed
        assert aut.preserves_rank(G, f)


def test_right_mul_matches_matrix_action(graphs):
    G = graphs(2, 1, 2)
    P = column_swap_matrix(2, 0, 1)
    f = aut.right_mul_automorphism(G, P)
    for v, X in enumerate(enumerate_matrices(F2, 2)):
        assert f(v) == vertex_encode(F2, mat_mul(F2, X, P))
        assert f.apply_matrix(X) == mat_mul(F2, X, P)
    assert aut.compose(f, f) == aut.identity_automorphism(G)


def test_right_mul_rejects_singular(graphs):
    G = graphs(2, 1, 2)
    with pytest.raises(ValueError, match="invertible"):
        aut.right_mul_automorphism(G, ((1, 1), (1, 1)))


def test_frobenius_automorphism(graphs):
    G = graphs(2, 2, 2)
    ident = aut.frobenius_automorphism(G, 0)
    assert ident == aut.identity_automorphism(G)
    conj = aut.frobenius_automorphism(G, 1)
    assert aut.verify(G, conj) == (True, None)
    # entrywise action: x goes to x + 1 everywhere
    for v in (7, 133, 255):
        X = vertex_decode(F4, 2, v)
        img = vertex_decode(F4, 2, int(conj.perm[v]))
        assert img == tuple(tuple(F4.frobenius(a, 1) for a in row) for row in X)
    with pytest.raises(ValueError):
        aut.frobenius_automorphism(G, 2)


def test_prime_field_has_only_trivial_frobenius(graphs):
    G = graphs(2, 1, 2)
    assert F2.automorphism_exponents() == [0]
    assert aut.frobenius_automorphism(G, 0) == aut.identity_automorphism(G)


def test_class_permutation(graphs):
    G = graphs(2, 1, 2)
    ident = aut.class_permutation_automorphism(G, {})
    assert ident == aut.identity_automorphism(G)
    # swap two matrices sharing the row space span{(1, 0)}
    target = ideal_of(F2, ((1, 0), (0, 0)))
    c = G.class_ideals.index(target)
    verts = [int(v) for v in G.class_vertices[c]]
    assert len(verts) == 3
    f = aut.class_permutation_automorphism(
        G, {target: {verts[0]: verts[1], verts[1]: verts[0]}}
    )
    assert aut.verify(G, f) == (True, None)
    assert aut.compose(f, f) == aut.identity_automorphism(G)


def test_class_permutation_rejects_wrong_class(graphs):
    G = graphs(2, 1, 2)
    target = ideal_of(F2, ((1, 0), (0, 0)))
    with pytest.raises(ValueError, match="wrong class"):
        aut.class_permutation_automorphism(G, {target: {0: 0}})
    zero_ideal = ideal_of(F2, ((0, 0), (0, 0)))
    assert aut.class_permutation_automorphism(G, {zero_ideal: {0: 0}}) == \
        aut.identity_automorphism(G)


def test_rank_class_permutation_mixes_row_spaces(graphs):
    G = graphs(2, 1, 2)
    # two rank-1 vertices with different row spaces: a legal swap for n = 2
    # that is not a class permutation
    r1 = [v for v in range(16) if G.rank_of_vertex(v) == 1]
    u = r1[0]
    v = next(w for w in r1 if G.class_of(w) != G.class_of(u))
    f = aut.rank_class_automorphism(G, {1: {u: v, v: u}})
    assert aut.verify(G, f) == (True, None)
    assert G.class_of(int(f.perm[u])) != G.class_of(u)


def test_rank_class_permutation_guards(graphs):
    G3 = graphs(2, 1, 3)
    with pytest.raises(ValueError, match="n = 2"):
        aut.rank_class_automorphism(G3, {})
    G = graphs(2, 1, 2)
    with pytest.raises(ValueError, match="wrong rank class"):
        aut.rank_class_automorphism(G, {1: {0: 0}})


def test_sampled_rank_class_permutations_verify(graphs):
    G = graphs(2, 1, 2)
    for seed in range(1, 11):
        f = aut.random_rank_class_permutation(G, seed)
        assert aut.verify(G, f) == (True, None)


# -- group structure ---------------------------------------------------------


def test_compose_inverse_identity(graphs):
    G = graphs(2, 1, 2)
    f = aut.random_right_mul(G, 5)
    assert aut.compose(f, aut.inverse(f)) == aut.identity_automorphism(G)
    assert aut.compose(aut.identity_automorphism(G), f) == f


def test_right_mul_homomorphism_exhaustive(graphs):
    """compose(phi_P, phi_Q) equals phi_{QP}: apply Q first, then P."""
    G = graphs(2, 1, 2)
    gl = [X for X in enumerate_matrices(F2, 2) if is_invertible(F2, X)]
    cache = {P: aut.right_mul_automorphism(G, P) for P in gl}
    for P in gl:
        for Q in gl:
            assert aut.compose(cache[P], cache[Q]) == cache[mat_mul(F2, Q, P)]


def test_compose_context_mismatch(graphs):
    f = aut.identity_automorphism(graphs(2, 1, 2))
    g = aut.identity_automorphism(graphs(3, 1, 2))
    with pytest.raises(ValueError, match="mismatch"):
        aut.compose(f, g)


def test_frobenius_commutation_with_right_mul():
    """phi_P after Frobenius equals Frobenius after phi with the entrywise
    preimage of P, pointwise on all of M_3(F_4)."""
    F = F4
    G = build_full_graph(F, 3, cap=None)
    rng = random.Random(11)
    t = 1
    t_inv = (F.m - t) % F.m
    for _ in range(3):
        P = random_invertible(F, 3, rng)
        P_pre = tuple(tuple(F.frobenius(a, t_inv) for a in row) for row in P)
        lhs = aut.compose(aut.right_mul_automorphism(G, P), aut.frobenius_automorphism(G, t))
        rhs = aut.compose(aut.frobenius_automorphism(G, t), aut.right_mul_automorphism(G, P_pre))
        assert lhs == rhs


# -- verification ------------------------------------------------------------


def test_verify_rejects_cross_rank_transposition(graphs):
    G = graphs(2, 1, 2)
    bad = np.arange(16, dtype=np.int64)
    bad[0], bad[1] = 1, 0  # zero matrix (out-degree 15) with a rank-1 vertex
    ok, witness = aut.verify(G, bad)
    assert not ok and witness is not None
    u, v = witness
    assert G.has_edge(u, v) != G.has_edge(int(bad[u]), int(bad[v]))


def test_verify_rejects_non_bijection(graphs):
    G = graphs(2, 1, 2)
    with pytest.raises(ValueError, match="bijection"):
        aut.verify(G, np.zeros(16, dtype=np.int64))
    with pytest.raises(ValueError, match="length"):
        aut.verify(G, np.arange(5))


def test_rank_preservation_of_verified_automorphisms(graphs):
    G = graphs(2, 1, 2)
    for seed in range(1, 6):
        for f in (
            aut.random_right_mul(G, seed),
            aut.random_class_permutation(G, seed),
            aut.random_rank_class_permutation(G, seed),
        ):
            assert aut.verify(G, f) == (True, None)
            assert aut.preserves_rank(G, f)


# -- decomposition ------------------------------------------------------------


def test_decompose_identity(graphs):
    G = graphs(2, 1, 3)
    dec = aut.decompose(G, aut.identity_automorphism(G))
    assert dec.P == identity_matrix(3)
    assert dec.t == 0
    assert dec.sigma == aut.identity_automorphism(G)


def test_decompose_requires_n_at_least_3(graphs):
    G = graphs(2, 1, 2)
    with pytest.raises(ValueError, match="n >= 3"):
        aut.decompose(G, aut.identity_automorphism(G))


def test_decompose_right_mul_swap(graphs):
    G = graphs(2, 1, 3)
    f = aut.right_mul_automorphism(G, column_swap_matrix(3, 0, 1))
    dec = aut.decompose(G, f)
    assert dec.t == 0
    assert aut.recompose(G, dec) == f


def test_decompose_roundtrip_n3_q2(graphs):
    G = graphs(2, 1, 3)
    for seed in range(1, 21):
        _, _, _, f = aut.random_triple(G, seed)
        assert aut.verify(G, f) == (True, None)
        dec = aut.decompose(G, f)
        assert aut.recompose(G, dec) == f


def test_decompose_rejects_non_automorphism(graphs):
    G = graphs(2, 1, 3)
    bad = np.arange(512, dtype=np.int64)
    bad[0], bad[1] = 1, 0  # swaps rank 0 with rank 1
    with pytest.raises(aut.DecompositionError):
        aut.decompose(G, aut.Automorphism(3, F2, bad))


def test_decompose_sigma_fixes_classes(graphs):
    G = graphs(2, 1, 3)
    _, _, _, f = aut.random_triple(G, 3)
    dec = aut.decompose(G, f)
    assert np.array_equal(G.vertex_class[dec.sigma.perm], G.vertex_class)


def test_decompose_rank_classes(graphs):
    G = graphs(2, 1, 2)
    ident = aut.identity_automorphism(G)
    assert aut.decompose_rank_classes(G, ident) == {0: {}, 1: {}, 2: {}}
    for seed in range(1, 6):
        f = aut.random_right_mul(G, seed)
        assignment = aut.decompose_rank_classes(G, f)
        assert aut.rank_class_automorphism(G, assignment) == f
        rho = aut.random_rank_class_permutation(G, seed)
        assignment = aut.decompose_rank_classes(G, rho)
        assert aut.rank_class_automorphism(G, assignment) == rho
    G3 = graphs(2, 1, 3)
    with pytest.raises(ValueError, match="n = 2"):
        aut.decompose_rank_classes(G3, aut.identity_automorphism(G3))


# -- group orders -------------------------------------------------------------


def test_quotient_aut_orders():
    assert aut.quotient_aut_order(F2, 2) == 6
    assert aut.quotient_aut_order(F3, 2) == 24
    assert aut.quotient_aut_order(F2, 3) == 168
    # cross-check: |PGL(3, 2)| * m with m = 1
    assert aut.quotient_aut_order(F2, 3) == gl_order(3, 2) // (2 - 1) * 1
    with pytest.raises(ValueError, match="cap"):
        aut.quotient_aut_order(F4, 3)  # 44 subspaces


def test_quotient_aut_order_matches_enumeration():
    from lirg.graph import build_quotient_graph

    for F, n in [(F2, 2), (F3, 2), (F2, 3), (F2, 1)]:
        Q = build_quotient_graph(F, n)
        out_sets = [set(Q.super_classes[c]) for c in range(Q.class_count)]
        in_sets = [set(Q.sub_classes[c]) for c in range(Q.class_count)]
        colors = list(Q.class_rank)
        enumerated = aut.enumerate_digraph_auts(out_sets, in_sets, colors)
        assert aut.quotient_aut_order(F, n) == len(enumerated)


def test_full_aut_order_small_cases():
    assert aut.full_aut_order(F2, 1).value == 1
    assert aut.full_aut_order(F3, 1).value == 2
    fo = aut.full_aut_order(F2, 3)
    assert fo.quotient_order == 168
    assert dict(fo.factorial_terms) == {
        1: 1,
        fiber_size(3, 1, 2): 7,
        fiber_size(3, 2, 2): 7,
        fiber_size(3, 3, 2): 1,
    }


def test_full_aut_order_n1_q3_matches_enumeration(graphs):
    G = graphs(3, 1, 1)
    out_sets = [set(G.out_neighbors(v)) for v in range(3)]
    in_sets = [set(G.in_neighbors(v)) for v in range(3)]
    assert len(aut.enumerate_digraph_auts(out_sets, in_sets)) == 2
    assert aut.full_aut_order(F3, 1).value == 2


def test_full_aut_order_n2_q2_counts_rank_class_permutations(graphs):
    """For n = 2 every within-rank-class permutation is an automorphism and
    every automorphism is one, so the order is the product of rank-class
    factorials; the orbit-counting search over the 16-vertex digraph must
    agree."""
    G = graphs(2, 1, 2)
    out_sets = [set(G.out_neighbors(v)) for v in range(16)]
    in_sets = [set(G.in_neighbors(v)) for v in range(16)]
    brute = aut.digraph_aut_order(out_sets, in_sets)
    expected = math.factorial(1) * math.factorial(9) * math.factorial(6)
    assert brute == expected == 261273600
    assert aut.full_aut_order(F2, 2).value == expected


def test_digraph_aut_order_against_enumeration():
    # directed 4-cycle: cyclic group of order 4
    out_sets = [{1}, {2}, {3}, {0}]
    in_sets = [{3}, {0}, {1}, {2}]
    assert aut.digraph_aut_order(out_sets, in_sets) == 4
    assert len(aut.enumerate_digraph_auts(out_sets, in_sets)) == 4
    # two isolated vertices plus an edge
    out_sets = [set(), set(), {3}, set()]
    in_sets = [set(), set(), set(), {2}]
    assert aut.digraph_aut_order(out_sets, in_sets) == 2
