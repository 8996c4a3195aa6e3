"""The left-ideal relation graph on M_n(F_q) and its ideal-class quotient.

Vertices of the full graph are all q^(n^2) matrices; there is a directed
edge X -> Y exactly when the left ideal of X is properly contained in the
left ideal of Y, i.e. when the row space of X sits strictly inside the row
space of Y.  The undirected variant joins X and Y when either containment
holds.  Since adjacency depends only on row spaces, the graph is stored as
an ideal-class structure: a class-level containment relation plus the list
of member vertices per class.  Neighbor lists and edges are expanded on
demand; degree and distance queries never materialize the (possibly huge)
edge set.

Class assignment is vectorized: for each vertex the multiset of all
F_q-combinations of its rows is computed with table lookups; two vertices
get the same sorted multiset exactly when their rows span the same
subspace, because every span element is hit by the same number q^(n-r) of
coefficient tuples.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np

from lirg.counting import gaussian_binomial
from lirg.field import Field
from lirg.ideal import LeftIdeal, ideal_of, is_subideal
from lirg.matrix import DEFAULT_VERTEX_CAP, VertexCapExceeded, vertex_decode

# The class-assignment tables need all q^n row-vector codes.
VECTOR_TABLE_LIMIT = 2048
_CHUNK = 1 << 16


def subspaces(F: Field, n: int):
    """All subspaces of F_q^n as canonical ideals, via RREF enumeration.

    Ordered by (rank, basis row codes); one matrix in reduced row echelon
    form per subspace.
    """
    out = []
    for r in range(n + 1):
        for pivots in combinations(range(n), r):
            free_pos = [
                (i, j)
                for i in range(r)
                for j in range(n)
                if j > pivots[i] and j not in pivots
            ]
            for vals in product(F.elements(), repeat=len(free_pos)):
                rows = [[0] * n for _ in range(r)]
                for i in range(r):
                    rows[i][pivots[i]] = 1
                for (i, j), v in zip(free_pos, vals):
                    rows[i][j] = v
                out.append(LeftIdeal(n, tuple(tuple(rw) for rw in rows)))
    out.sort(key=lambda ideal: (ideal.rank, ideal.basis))
    return out


def _vector_tables(F: Field, n: int):
    """Componentwise add/scale tables on row-vector codes in [0, q^n)."""
    q = F.q
    qn = q**n
    if qn > VECTOR_TABLE_LIMIT:
        raise ValueError(
            f"q^n = {qn} exceeds {VECTOR_TABLE_LIMIT}; class assignment tables "
            "would be too large"
        )
    powers = q ** np.arange(n, dtype=np.int64)
    codes = np.arange(qn, dtype=np.int64)
    digits = (codes[:, None] // powers[None, :]) % q  # (qn, n)
    add_t, mul_t = F.add_table, F.mul_table
    vec_add = np.zeros((qn, qn), dtype=np.int64)
    for j in range(n):
        vec_add += add_t[digits[:, None, j], digits[None, :, j]] * powers[j]
    vec_scale = np.zeros((q, qn), dtype=np.int64)
    for j in range(n):
        vec_scale += mul_t[np.arange(q)[:, None], digits[None, :, j]] * powers[j]
    return vec_add.astype(np.int16), vec_scale.astype(np.int16)


def _assign_classes(F: Field, n: int, ideals):
    """vertex -> class index array for all q^(n^2) vertices."""
    q = F.q
    N = q ** (n * n)
    index_of = {ideal: i for i, ideal in enumerate(ideals)}
    vertex_class = np.empty(N, dtype=np.int64)

    if n == 1:
        zero_idx = index_of[LeftIdeal(1, ())]
        line_idx = index_of[LeftIdeal(1, ((1,),))]
        vertex_class[:] = line_idx
        vertex_class[0] = zero_idx
        return vertex_class

    vec_add, vec_scale = _vector_tables(F, n)
    qn = q**n
    powers = q ** np.arange(n, dtype=np.int64)
    coeff_tuples = list(product(range(q), repeat=n))
    sig_class = {}
    for start in range(0, N, _CHUNK):
        stop = min(start + _CHUNK, N)
        v = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, n * n), dtype=np.int64)
        for k in range(n * n):
            digits[:, k] = v % q
            v //= q
        rows = [
            (digits[:, i * n : (i + 1) * n] * powers).sum(axis=1).astype(np.int16)
            for i in range(n)
        ]
        sig = np.empty((stop - start, qn), dtype=np.int16)
        for ci, coeffs in enumerate(coeff_tuples):
            acc = vec_scale[coeffs[0], rows[0]]
            for i in range(1, n):
                acc = vec_add[acc, vec_scale[coeffs[i], rows[i]]]
            sig[:, ci] = acc
        sig.sort(axis=1)
        raw = sig.tobytes()
        width = qn * sig.itemsize
        for local in range(stop - start):
            key = raw[local * width : (local + 1) * width]
            cls = sig_class.get(key)
            if cls is None:
                cls = index_of[ideal_of(F, vertex_decode(F, n, start + local))]
                sig_class[key] = cls
            vertex_class[start + local] = cls
    return vertex_class


def _containment_matrix(F: Field, ideals):
    C = len(ideals)
    lt = np.zeros((C, C), dtype=bool)
    for a in range(C):
        for b in range(C):
            if ideals[a].rank < ideals[b].rank:
                lt[a, b] = is_subideal(F, ideals[a], ideals[b])
    return lt


@dataclass
class RelationGraph:
    """Built relation graph; immutable after construction, queries read-only."""

    kind: str  # 'full' | 'quotient'
    directed: bool
    n: int
    field: Field
    class_ideals: tuple
    vertex_class: np.ndarray
    class_vertices: tuple
    lt: np.ndarray  # lt[c, d]: class c properly contained in class d

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_class)

    @property
    def class_count(self) -> int:
        return len(self.class_ideals)

    @cached_property
    def class_rank(self):
        return tuple(ideal.rank for ideal in self.class_ideals)

    @cached_property
    def fiber_sizes(self):
        return tuple(len(vs) for vs in self.class_vertices)

    @cached_property
    def sub_classes(self):
        return tuple(
            tuple(np.flatnonzero(self.lt[:, c]).tolist()) for c in range(self.class_count)
        )

    @cached_property
    def super_classes(self):
        return tuple(
            tuple(np.flatnonzero(self.lt[c, :]).tolist()) for c in range(self.class_count)
        )

    @cached_property
    def comparable_classes(self):
        return tuple(
            tuple(sorted(self.sub_classes[c] + self.super_classes[c]))
            for c in range(self.class_count)
        )

    @cached_property
    def class_in_weight(self):
        fib = self.fiber_sizes
        return tuple(sum(fib[d] for d in self.sub_classes[c]) for c in range(self.class_count))

    @cached_property
    def class_out_weight(self):
        fib = self.fiber_sizes
        return tuple(sum(fib[d] for d in self.super_classes[c]) for c in range(self.class_count))

    # -- vertex queries ---------------------------------------------------

    def class_of(self, v: int) -> int:
        return int(self.vertex_class[v])

    def rank_of_vertex(self, v: int) -> int:
        return self.class_rank[self.class_of(v)]

    def ideal_of_vertex(self, v: int) -> LeftIdeal:
        return self.class_ideals[self.class_of(v)]

    def degrees(self, v: int):
        """(d_i, d_o) on the directed graph, a single degree otherwise."""
        c = self.class_of(v)
        d_i, d_o = self.class_in_weight[c], self.class_out_weight[c]
        return (d_i, d_o) if self.directed else d_i + d_o

    def in_neighbors(self, v: int):
        c = self.class_of(v)
        out = []
        for d in self.sub_classes[c]:
            out.extend(self.class_vertices[d].tolist())
        return sorted(out)

    def out_neighbors(self, v: int):
        c = self.class_of(v)
        out = []
        for d in self.super_classes[c]:
            out.extend(self.class_vertices[d].tolist())
        return sorted(out)

    def neighbors(self, v: int):
        c = self.class_of(v)
        out = []
        for d in self.comparable_classes[c]:
            out.extend(self.class_vertices[d].tolist())
        return sorted(out)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        cu, cv = self.class_of(u), self.class_of(v)
        if self.directed:
            return bool(self.lt[cu, cv])
        return bool(self.lt[cu, cv] or self.lt[cv, cu])

    def edge_count(self) -> int:
        """Directed edge count; the undirected graph has the same number of
        (unordered) edges because containment between distinct classes is
        one-directional."""
        fib = self.fiber_sizes
        total = 0
        for c in range(self.class_count):
            for d in self.super_classes[c]:
                total += fib[c] * fib[d]
        return total

    def iter_edges(self):
        """Yield edges ascending; directed as (u, v), undirected with u < v."""
        for u in range(self.vertex_count):
            c = self.class_of(u)
            targets = self.super_classes[c] if self.directed else self.comparable_classes[c]
            out = []
            for d in targets:
                out.extend(self.class_vertices[d].tolist())
            for v in sorted(out):
                if self.directed or u < v:
                    yield u, v

    def export(self, fmt: str) -> str:
        from lirg.serialize import render_graph

        return render_graph(self, fmt)


def _vertex_lists(vertex_class: np.ndarray, C: int):
    order = np.argsort(vertex_class, kind="stable")
    counts = np.bincount(vertex_class, minlength=C)
    split = np.split(order, np.cumsum(counts)[:-1])
    return tuple(np.sort(part) for part in split)


def build_full_graph(
    F: Field, n: int, directed: bool = True, cap: int | None = DEFAULT_VERTEX_CAP
) -> RelationGraph:
    """Relation graph on all matrices, bucketed by canonical ideal."""
    N = F.q ** (n * n)
    if cap is not None and N > cap:
        raise VertexCapExceeded(
            f"q^(n^2) = {N} exceeds the vertex cap {cap}; raise the cap to proceed"
        )
    ideals = tuple(subspaces(F, n))
    vertex_class = _assign_classes(F, n, ideals)
    return RelationGraph(
        kind="full",
        directed=directed,
        n=n,
        field=F,
        class_ideals=ideals,
        vertex_class=vertex_class,
        class_vertices=_vertex_lists(vertex_class, len(ideals)),
        lt=_containment_matrix(F, ideals),
    )


def build_quotient_graph(
    F: Field, n: int, cap: int | None = DEFAULT_VERTEX_CAP, directed: bool = True
) -> RelationGraph:
    """Graph on ideal classes themselves: the subspace lattice of F_q^n."""
    count = sum(gaussian_binomial(n, r, F.q) for r in range(n + 1))
    if cap is not None and count > cap:
        raise VertexCapExceeded(
            f"subspace count {count} exceeds the vertex cap {cap}"
        )
    ideals = tuple(subspaces(F, n))
    assert len(ideals) == count
    vertex_class = np.arange(len(ideals), dtype=np.int64)
    return RelationGraph(
        kind="quotient",
        directed=directed,
        n=n,
        field=F,
        class_ideals=ideals,
        vertex_class=vertex_class,
        class_vertices=tuple(np.array([c]) for c in vertex_class),
        lt=_containment_matrix(F, ideals),
    )


def contract_to_quotient(G: RelationGraph) -> RelationGraph:
    """Collapse a full graph's ideal classes; must reproduce the quotient."""
    if G.kind != "full":
        raise ValueError("can only contract a full graph")
    C = G.class_count
    return RelationGraph(
        kind="quotient",
        directed=G.directed,
        n=G.n,
        field=G.field,
        class_ideals=G.class_ideals,
        vertex_class=np.arange(C, dtype=np.int64),
        class_vertices=tuple(np.array([c]) for c in range(C)),
        lt=G.lt.copy(),
    )
