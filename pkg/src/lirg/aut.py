"""Automorphisms of the directed relation graph.

Four standard families are constructed directly: right multiplication by
an invertible matrix, the entrywise Frobenius maps, permutations acting
inside each ideal class, and (for n = 2) permutations acting inside each
rank class.  Arbitrary vertex permutations can be verified exactly, and
every verified automorphism decomposes constructively: for n >= 3 into a
class-fixing permutation followed by an entrywise Frobenius map followed
by right multiplication; for n = 2 into per-rank-class permutations.

Permutations are dense int64 arrays indexed by vertex; composition is
"right factor acts first": compose(f, g) applies g, then f.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from lirg.counting import fiber_size, gaussian_binomial
from lirg.field import Field
from lirg.graph import RelationGraph, build_quotient_graph
from lirg.ideal import LeftIdeal, ideal_of, line_vector
from lirg.matrix import (
    all_one_row_matrix,
    column_scale_matrix,
    column_swap_matrix,
    first_row_matrix,
    identity_matrix,
    mat_inverse,
    mat_mul,
    random_invertible,
    unit_vector,
    vertex_decode,
    vertex_encode,
)


class DecompositionError(RuntimeError):
    """The input permutation does not factor; it is not an automorphism
    (or signals an implementation fault)."""


@dataclass(eq=False)
class Automorphism:
    n: int
    field: Field
    perm: np.ndarray

    def __post_init__(self):
        self.perm = np.asarray(self.perm, dtype=np.int64)

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.n == other.n
            and self.field == other.field
            and np.array_equal(self.perm, other.perm)
        )

    def __call__(self, v: int) -> int:
        return int(self.perm[v])

    def apply_matrix(self, X):
        F = self.field
        return vertex_decode(F, self.n, int(self.perm[vertex_encode(F, X)]))

    @property
    def size(self) -> int:
        return len(self.perm)


def _check_context(G: RelationGraph):
    if G.kind != "full" or not G.directed:
        raise ValueError("automorphisms are defined on the directed full graph")


def _check_same(f: Automorphism, g: Automorphism):
    if f.n != g.n or f.field != g.field:
        raise ValueError("automorphism context mismatch")


def _all_digits(q: int, k: int, N: int):
    v = np.arange(N, dtype=np.int64)
    digits = np.empty((N, k), dtype=np.int64)
    for i in range(k):
        digits[:, i] = v % q
        v //= q
    return digits


def _encode_digits(digits, q: int):
    powers = q ** np.arange(digits.shape[1], dtype=np.int64)
    return digits @ powers


def identity_automorphism(G: RelationGraph) -> Automorphism:
    _check_context(G)
    return Automorphism(G.n, G.field, np.arange(G.vertex_count, dtype=np.int64))


def right_mul_automorphism(G: RelationGraph, P) -> Automorphism:
    """X -> X P for invertible P; an automorphism by construction."""
    _check_context(G)
    F, n = G.field, G.n
    from lirg.matrix import is_invertible

    if not is_invertible(F, P):
        raise ValueError("right multiplication requires an invertible matrix")
    q = F.q
    N = G.vertex_count
    digits = _all_digits(q, n * n, N)
    add_t, mul_t = F.add_table, F.mul_table
    out = np.empty_like(digits)
    for i in range(n):
        for j in range(n):
            acc = None
            for k in range(n):
                pkj = P[k][j]
                term = mul_t[digits[:, i * n + k], pkj]
                acc = term if acc is None else add_t[acc, term]
            out[:, i * n + j] = acc
    return Automorphism(n, F, _encode_digits(out, q))


def frobenius_automorphism(G: RelationGraph, t: int) -> Automorphism:
    """Entrywise a -> a^(p^t) on every matrix."""
    _check_context(G)
    F, n = G.field, G.n
    if not 0 <= t < F.m:
        raise ValueError(f"Frobenius exponent {t} out of range [0, {F.m})")
    q = F.q
    digits = _all_digits(q, n * n, G.vertex_count)
    mapped = F.frob_table[t][digits]
    return Automorphism(n, F, _encode_digits(mapped, q))


def _perm_from_blocks(G: RelationGraph, blocks):
    """Permutation acting inside the given vertex blocks, identity elsewhere.

    ``blocks`` yields (vertex array, mapping dict old -> new)."""
    perm = np.arange(G.vertex_count, dtype=np.int64)
    for verts, mapping in blocks:
        vert_set = set(int(v) for v in verts)
        if set(mapping) - vert_set or set(mapping.values()) - vert_set:
            raise ValueError("permutation leaves its block")
        if sorted(mapping) != sorted(mapping.values()):
            raise ValueError("block mapping is not a permutation")
        for old, new in mapping.items():
            perm[old] = new
    return perm


def class_permutation_automorphism(G: RelationGraph, assignment) -> Automorphism:
    """Permute vertices inside ideal classes; identity on unnamed classes.

    ``assignment`` maps a class (by canonical ideal or by class index) to a
    dict sending each member vertex to its image within the same class.
    """
    _check_context(G)
    ideal_index = {ideal: i for i, ideal in enumerate(G.class_ideals)}

    def resolve(key):
        if isinstance(key, LeftIdeal):
            if key not in ideal_index:
                raise ValueError(f"unknown ideal class {key}")
            return ideal_index[key]
        return int(key)

    blocks = [
        (G.class_vertices[resolve(key)], mapping)
        for key, mapping in assignment.items()
    ]
    try:
        perm = _perm_from_blocks(G, blocks)
    except ValueError as exc:
        raise ValueError(f"vertex listed in wrong class: {exc}") from exc
    return Automorphism(G.n, G.field, perm)


def rank_class_automorphism(G: RelationGraph, assignment) -> Automorphism:
    """Permute vertices inside rank classes (n = 2 only).

    For n = 2 adjacency depends only on rank, so any such permutation is
    an automorphism; for larger n it generally is not, hence the guard.
    """
    _check_context(G)
    if G.n != 2:
        raise ValueError("rank class permutations require n = 2")
    rank_vertices = {}
    for c in range(G.class_count):
        rank_vertices.setdefault(G.class_rank[c], []).extend(
            G.class_vertices[c].tolist()
        )
    blocks = []
    for r, mapping in assignment.items():
        if r not in rank_vertices:
            raise ValueError(f"no rank class {r}")
        blocks.append((rank_vertices[r], mapping))
    try:
        perm = _perm_from_blocks(G, blocks)
    except ValueError as exc:
        raise ValueError(f"vertex listed in wrong rank class: {exc}") from exc
    return Automorphism(G.n, G.field, perm)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """f after g: the right factor acts first."""
    _check_same(f, g)
    return Automorphism(f.n, f.field, f.perm[g.perm])


def inverse(f: Automorphism) -> Automorphism:
    inv = np.empty_like(f.perm)
    inv[f.perm] = np.arange(len(f.perm), dtype=np.int64)
    return Automorphism(f.n, f.field, inv)


def verify(G: RelationGraph, f) -> tuple:
    """(True, None) if f preserves the edge relation both ways, else
    (False, (u, v)) with a violating pair.

    Adjacency depends only on ideal classes, so it suffices to compare the
    containment bits over the distinct (source class, image class) pairs:
    exact, and linear in the vertex count.
    """
    _check_context(G)
    if isinstance(f, Automorphism):
        if f.n != G.n or f.field != G.field:
            raise ValueError("automorphism context mismatch")
        perm = f.perm
    else:
        perm = np.asarray(f, dtype=np.int64)
    N = G.vertex_count
    if len(perm) != N:
        raise ValueError(f"permutation length {len(perm)} != vertex count {N}")
    if len(perm) == 0 or perm.min() < 0 or perm.max() >= N:
        raise ValueError("not a bijection on the vertex set")
    if np.bincount(perm, minlength=N).max() != 1:
        raise ValueError("not a bijection on the vertex set")
    src = G.vertex_class
    dst = G.vertex_class[perm]
    pair_codes = src * G.class_count + dst
    uniq = np.unique(pair_codes)
    cs, ds = np.divmod(uniq, G.class_count)
    lt = G.lt
    before = lt[np.ix_(cs, cs)]
    after = lt[np.ix_(ds, ds)]
    bad = np.argwhere(before != after)
    if len(bad) == 0:
        return True, None
    a, b = bad[0]
    u = int(np.flatnonzero(pair_codes == uniq[a])[0])
    vs = np.flatnonzero(pair_codes == uniq[b])
    v = int(vs[0]) if int(vs[0]) != u else int(vs[1])
    return False, (u, v)


def preserves_rank(G: RelationGraph, f: Automorphism) -> bool:
    ranks = np.array(G.class_rank)[G.vertex_class]
    return bool(np.array_equal(ranks, ranks[f.perm]))


# -- constructive decomposition ------------------------------------------


@dataclass(eq=False)
class Decomposition:
    """(P, t, sigma) with the source permutation equal to: sigma first,
    then the entrywise Frobenius power t, then X -> X P."""

    P: tuple
    t: int
    sigma: Automorphism


def _normalizer(F: Field, n: int, a, i: int, l: int):
    """Invertible matrix sending the line of a to the line of e_i, fixing
    the lines of e_0 .. e_{i-1}; l is the chosen nonzero coordinate."""
    inv_al = F.inv(a[l])
    M1 = [list(row) for row in identity_matrix(n)]
    for j in range(n):
        if j != l and a[j]:
            M1[l][j] = F.neg(F.mul(inv_al, a[j]))
    M1 = tuple(tuple(row) for row in M1)
    M2 = column_scale_matrix(F, n, l, inv_al)
    M3 = column_swap_matrix(n, i, l)
    return mat_mul(F, mat_mul(F, M1, M2), M3)


def _probe_line(G: RelationGraph, f: Automorphism, P_acc, X):
    """Canonical spanning vector of the ideal of f(X) P_acc for rank-1 X."""
    F, n = G.field, G.n
    v = vertex_encode(F, X)
    image = vertex_decode(F, n, int(f.perm[v]))
    moved = mat_mul(F, image, P_acc)
    ideal = ideal_of(F, moved)
    if ideal.rank != 1:
        raise DecompositionError(
            f"image of a rank-1 vertex has rank {ideal.rank}; input is not an "
            "automorphism"
        )
    return line_vector(ideal)


def decompose(G: RelationGraph, f: Automorphism) -> Decomposition:
    """Factor a verified automorphism (n >= 3) into (P, t, sigma).

    Normalizes the images of the coordinate lines one at a time with
    explicit invertible matrices, then the all-one line with a diagonal
    matrix; reads the induced field map off the lines through e_0 + a e_1
    and matches it to a Frobenius exponent; the residual must fix every
    ideal class and becomes sigma.  Only composition equality is
    guaranteed, not uniqueness of the triple.
    """
    _check_context(G)
    F, n = G.field, G.n
    if n < 3:
        raise ValueError("decomposition by normalization requires n >= 3")
    if f.n != n or f.field != F:
        raise ValueError("automorphism context mismatch")

    P_acc = identity_matrix(n)
    for i in range(n):
        a = _probe_line(G, f, P_acc, first_row_matrix(n, unit_vector(n, i)))
        l = next((j for j in range(i, n) if a[j]), None)
        if l is None:
            raise DecompositionError(
                f"line image at step {i} has no usable coordinate; input is "
                "not an automorphism"
            )
        P_acc = mat_mul(F, P_acc, _normalizer(F, n, a, i, l))

    b = _probe_line(G, f, P_acc, all_one_row_matrix(n))
    if not all(b):
        raise DecompositionError(
            "all-one line maps to a line with a zero coordinate; input is "
            "not an automorphism"
        )
    diag = tuple(
        tuple(F.inv(b[i]) if i == j else 0 for j in range(n)) for i in range(n)
    )
    P_acc = mat_mul(F, P_acc, diag)

    field_map = {}
    e0, e1 = unit_vector(n, 0), unit_vector(n, 1)
    for a in F.elements():
        row = tuple(F.add(x, F.mul(a, y)) for x, y in zip(e0, e1))
        c = _probe_line(G, f, P_acc, first_row_matrix(n, row))
        if c[0] != 1 or any(c[j] for j in range(2, n)):
            raise DecompositionError(
                f"line through e0 + {a}*e1 maps outside the e0,e1 plane; "
                "input is not an automorphism"
            )
        field_map[a] = c[1]
    t = next(
        (
            t
            for t in F.automorphism_exponents()
            if all(field_map[a] == F.frobenius(a, t) for a in F.elements())
        ),
        None,
    )
    if t is None:
        raise DecompositionError(
            f"induced field map {field_map} matches no Frobenius power"
        )

    phi_acc = right_mul_automorphism(G, P_acc)
    upsilon = frobenius_automorphism(G, t)
    sigma = compose(inverse(upsilon), compose(phi_acc, f))
    fixed = G.vertex_class[sigma.perm] == G.vertex_class
    if not fixed.all():
        v = int(np.flatnonzero(~fixed)[0])
        raise DecompositionError(
            f"residual moves vertex {v} across ideal classes; input is not "
            "an automorphism (or an implementation fault)"
        )
    return Decomposition(P=mat_inverse(F, P_acc), t=t, sigma=sigma)


def recompose(G: RelationGraph, dec: Decomposition) -> Automorphism:
    """sigma first, then the Frobenius power, then right multiplication."""
    phi = right_mul_automorphism(G, dec.P)
    upsilon = frobenius_automorphism(G, dec.t)
    return compose(phi, compose(upsilon, dec.sigma))


def decompose_rank_classes(G: RelationGraph, f: Automorphism):
    """Split an n = 2 automorphism into per-rank-class permutations."""
    _check_context(G)
    if G.n != 2:
        raise ValueError("rank class decomposition is the n = 2 form")
    if not preserves_rank(G, f):
        raise DecompositionError("permutation does not preserve rank classes")
    ranks = np.array(G.class_rank)[G.vertex_class]
    assignment = {}
    for r in range(G.n + 1):
        verts = np.flatnonzero(ranks == r)
        assignment[r] = {int(v): int(f.perm[v]) for v in verts if f.perm[v] != v}
    return assignment


# -- random sampling -------------------------------------------------------


def random_right_mul(G: RelationGraph, rng) -> Automorphism:
    if isinstance(rng, int):
        rng = random.Random(rng)
    return right_mul_automorphism(G, random_invertible(G.field, G.n, rng))


def random_class_permutation(G: RelationGraph, rng) -> Automorphism:
    if isinstance(rng, int):
        rng = random.Random(rng)
    perm = np.arange(G.vertex_count, dtype=np.int64)
    for verts in G.class_vertices:
        shuffled = verts.tolist()
        rng.shuffle(shuffled)
        perm[verts] = np.array(shuffled, dtype=np.int64)
    return Automorphism(G.n, G.field, perm)


def random_rank_class_permutation(G: RelationGraph, rng) -> Automorphism:
    if isinstance(rng, int):
        rng = random.Random(rng)
    if G.n != 2:
        raise ValueError("rank class permutations require n = 2")
    ranks = np.array(G.class_rank)[G.vertex_class]
    perm = np.arange(G.vertex_count, dtype=np.int64)
    for r in range(G.n + 1):
        verts = np.flatnonzero(ranks == r)
        shuffled = verts.tolist()
        rng.shuffle(shuffled)
        perm[verts] = np.array(shuffled, dtype=np.int64)
    return Automorphism(G.n, G.field, perm)


def random_triple(G: RelationGraph, seed: int):
    """Seeded (P, t, sigma) and their composition, for sampling and tests."""
    rng = random.Random(seed)
    P = random_invertible(G.field, G.n, rng)
    t = rng.randrange(G.field.m)
    sigma = random_class_permutation(G, rng)
    f = compose(
        right_mul_automorphism(G, P),
        compose(frobenius_automorphism(G, t), sigma),
    )
    return P, t, sigma, f


# -- exact automorphism group orders ---------------------------------------


def _digraph_candidates(out_sets, in_sets, colors):
    nverts = len(out_sets)
    sig = [
        (colors[v], len(out_sets[v]), len(in_sets[v])) for v in range(nverts)
    ]
    return [
        [w for w in range(nverts) if sig[w] == sig[v]] for v in range(nverts)
    ]


def _extend(out_sets, in_sets, cand, mapping, used, order_pos, order):
    """Depth-first search for one completion of a partial vertex mapping."""
    if order_pos == len(order):
        return True
    v = order[order_pos]
    for w in cand[v]:
        if used[w]:
            continue
        ok = True
        for u, mu in mapping.items():
            if ((v in out_sets[u]) != (w in out_sets[mu])) or (
                (v in in_sets[u]) != (w in in_sets[mu])
            ):
                ok = False
                break
        if not ok:
            continue
        mapping[v] = w
        used[w] = True
        if _extend(out_sets, in_sets, cand, mapping, used, order_pos + 1, order):
            del mapping[v]
            used[w] = False
            return True
        del mapping[v]
        used[w] = False
    return False


def digraph_aut_order(out_sets, in_sets, colors=None) -> int:
    """Exact automorphism group order of a small digraph.

    Orbit counting: fix vertices one at a time; the group order is the
    product over the base of the orbit sizes, where orbit membership is
    certified by a backtracking search for one extension.  Candidates are
    pruned by color and in/out-degree, then by adjacency consistency with
    the mapped prefix.
    """
    nverts = len(out_sets)
    out_sets = [set(s) for s in out_sets]
    in_sets = [set(s) for s in in_sets]
    if colors is None:
        colors = [0] * nverts
    cand = _digraph_candidates(out_sets, in_sets, colors)
    order = sorted(range(nverts), key=lambda v: len(cand[v]))
    total = 1
    fixed = {}
    used = [False] * nverts
    for pos, v in enumerate(order):
        orbit = 0
        for w in cand[v]:
            if used[w]:
                continue
            ok = all(
                ((v in out_sets[u]) == (w in out_sets[mu]))
                and ((v in in_sets[u]) == (w in in_sets[mu]))
                for u, mu in fixed.items()
            )
            if not ok:
                continue
            mapping = dict(fixed)
            mapping[v] = w
            used2 = used[:]
            used2[w] = True
            if _extend(out_sets, in_sets, cand, mapping, used2, pos + 1, order):
                orbit += 1
        total *= orbit
        fixed[v] = v
        used[v] = True
    return total


def enumerate_digraph_auts(out_sets, in_sets, colors=None, limit=200_000):
    """All automorphisms of a small digraph by plain backtracking."""
    nverts = len(out_sets)
    out_sets = [set(s) for s in out_sets]
    in_sets = [set(s) for s in in_sets]
    if colors is None:
        colors = [0] * nverts
    cand = _digraph_candidates(out_sets, in_sets, colors)
    order = sorted(range(nverts), key=lambda v: len(cand[v]))
    found = []

    def rec(pos, mapping, used):
        if len(found) > limit:
            raise ValueError("too many automorphisms to enumerate")
        if pos == nverts:
            found.append(dict(mapping))
            return
        v = order[pos]
        for w in cand[v]:
            if used[w]:
                continue
            ok = all(
                ((v in out_sets[u]) == (w in out_sets[mu]))
                and ((v in in_sets[u]) == (w in in_sets[mu]))
                for u, mu in mapping.items()
            )
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            rec(pos + 1, mapping, used)
            del mapping[v]
            used[w] = False

    rec(0, {}, [False] * nverts)
    return found


def quotient_aut_order(F: Field, n: int, cap: int = 40) -> int:
    """Exact order of the automorphism group of the directed quotient graph.

    Backtracking over rank-level-preserving bijections with in/out-degree
    pruning and partial-image consistency; reported as an exact integer.
    """
    count = sum(gaussian_binomial(n, r, F.q) for r in range(n + 1))
    if count > cap:
        raise ValueError(f"quotient has {count} vertices, above the cap {cap}")
    Q = build_quotient_graph(F, n)
    out_sets = [set(Q.super_classes[c]) for c in range(Q.class_count)]
    in_sets = [set(Q.sub_classes[c]) for c in range(Q.class_count)]
    colors = list(Q.class_rank)
    return digraph_aut_order(out_sets, in_sets, colors)


@dataclass(frozen=True)
class FactoredGroupOrder:
    """Group order as (structure automorphisms) x (product of factorials)."""

    quotient_order: int
    factorial_terms: tuple  # (block size, multiplicity) pairs

    @property
    def value(self) -> int:
        out = self.quotient_order
        for size, mult in self.factorial_terms:
            out *= math.factorial(size) ** mult
        return out

    def __str__(self):
        parts = [str(self.quotient_order)]
        for size, mult in self.factorial_terms:
            term = f"{size}!"
            if mult > 1:
                term = f"({size}!)^{mult}"
            parts.append(term)
        return " * ".join(parts)


def full_aut_order(F: Field, n: int, cap: int = 40) -> FactoredGroupOrder:
    """Exact order of the automorphism group of the directed full graph.

    Classes with identical up-sets and down-sets are interchangeable at
    the vertex level (their members are mutual twins), so they merge into
    one block; every automorphism permutes blocks compatibly with the
    merged containment relation and acts freely inside each block.  The
    order is therefore (automorphisms of the merged structure, respecting
    block sizes) times the product of (block size)!.

    For n >= 3 no two classes are twins and this is the quotient-graph
    automorphism count times the product of fiber-size factorials; for
    n = 2 all rank-1 classes merge, giving the product of rank-class-size
    factorials.
    """
    count = sum(gaussian_binomial(n, r, F.q) for r in range(n + 1))
    if count > cap:
        raise ValueError(f"quotient has {count} vertices, above the cap {cap}")
    Q = build_quotient_graph(F, n)
    C = Q.class_count
    up = [frozenset(Q.super_classes[c]) for c in range(C)]
    down = [frozenset(Q.sub_classes[c]) for c in range(C)]
    fib = [fiber_size(n, Q.class_rank[c], F.q) for c in range(C)]

    block_key = {}
    for c in range(C):
        block_key.setdefault((up[c], down[c]), []).append(c)
    blocks = sorted(block_key.values(), key=lambda b: b[0])
    block_of = {}
    for bi, members in enumerate(blocks):
        for c in members:
            block_of[c] = bi
    sizes = [sum(fib[c] for c in members) for members in blocks]

    out_sets = [
        set(block_of[d] for c in members for d in up[c]) - {bi}
        for bi, members in enumerate(blocks)
    ]
    in_sets = [
        set(block_of[d] for c in members for d in down[c]) - {bi}
        for bi, members in enumerate(blocks)
    ]
    structure_order = digraph_aut_order(out_sets, in_sets, sizes)

    terms = {}
    for size in sizes:
        terms[size] = terms.get(size, 0) + 1
    return FactoredGroupOrder(
        quotient_order=structure_order,
        factorial_terms=tuple(sorted(terms.items())),
    )
