"""Graph invariants of the undirected relation graph, with closed forms.

Adjacency is comparability of ideals, so cliques are chains of nested row
spaces and the clique number is the longest chain in the class-containment
order, computed by dynamic programming, never by generic clique search.
All other invariants (girth, eccentricities, domination, strong metric
dimension, Euler parity) likewise reduce to the class-level structure plus
fiber sizes, which keeps the 19683-vertex cases instant.

Functions in this module treat their input graph as undirected regardless
of the flag it was built with.
"""

from collections import deque
from dataclasses import dataclass

from lirg.counting import matrix_space_size, predicted_degree
from lirg.field import Field
from lirg.graph import RelationGraph
from lirg.ideal import ideal_of, proper_subset
from lirg.matrix import first_row_matrix, stacked_matrix, unit_vector

ACYCLIC = "acyclic"


@dataclass(frozen=True)
class InvariantReport:
    n: int
    q: int
    clique_number: int
    chromatic_number: int
    girth: object  # int or ACYCLIC
    girth_witness: object  # triangle vertex triple, or None
    diameter: int
    radius: int
    eccentricity_by_rank: tuple  # (rank, ecc) pairs
    domination_number: int
    strong_metric_dimension: object  # int, or None when diameter != 2
    eulerian: bool
    odd_degree_witness: object  # vertex index or None
    planarity_witness: object  # ((three vertices), (three vertices)) or None


def _require_full(G: RelationGraph):
    if G.kind != "full":
        raise ValueError("invariants are defined on the full matrix graph")


def _longest_chain(lt, nodes=None, node_lt=None):
    """Longest chain (number of nodes) in a strict containment relation."""
    if node_lt is None:
        C = len(lt)
        node_lt = lambda a, b: lt[a, b]  # noqa: E731
        nodes = range(C)
    nodes = list(nodes)
    best = {}
    # containment is acyclic, so process by number of predecessors via memo
    def depth(a):
        if a in best:
            return best[a]
        best[a] = 1  # guard against cycles; overwritten below
        d = 1 + max((depth(b) for b in nodes if node_lt(b, a)), default=0)
        best[a] = d
        return d

    return max(depth(a) for a in nodes) if nodes else 0


def clique_and_chromatic(G: RelationGraph):
    """(clique number, chromatic number).

    The clique number is the longest chain of nested ideal classes.  The
    rank coloring (one color per rank, n+1 colors available) is proper
    because equal-rank vertices are never adjacent; together with the
    chain lower bound this pins the chromatic number without search.
    """
    _require_full(G)
    omega = _longest_chain(G.lt)
    ranks_used = len(set(G.class_rank))
    if not omega <= ranks_used:
        raise AssertionError("chain longer than the number of rank colors")
    chi = omega  # rank coloring meets the clique lower bound
    return omega, chi


def _class_graph_girth(G: RelationGraph):
    """Shortest cycle through >= 3 distinct classes (BFS per class)."""
    C = G.class_count
    adj = G.comparable_classes
    best = None
    for s in range(C):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    cycle = dist[u] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def girth(G: RelationGraph):
    """Length of the shortest cycle, or the ACYCLIC token.

    A cycle either passes through three or more distinct ideal classes
    (shortest such found on the small class graph) or bounces between two
    vertices of one class and two comparable outside vertices, giving a
    4-cycle whenever some class has two members and two comparable
    vertices in total.
    """
    _require_full(G)
    candidates = []
    through_classes = _class_graph_girth(G)
    if through_classes is not None:
        candidates.append(through_classes)
    fib = G.fiber_sizes
    for c in range(G.class_count):
        if fib[c] >= 2 and sum(fib[d] for d in G.comparable_classes[c]) >= 2:
            candidates.append(4)
            break
    return min(candidates) if candidates else ACYCLIC


def triangle_witness(F: Field, n: int):
    """Vertices of the 3-cycle on the rank markers 0, 1 and n (n >= 2)."""
    from lirg.matrix import rank_marker, vertex_encode

    if n < 2:
        raise ValueError("triangle witness requires n >= 2")
    return tuple(vertex_encode(F, rank_marker(n, r)) for r in (0, 1, n))


def _class_distances(G: RelationGraph):
    """All-pairs BFS distances on the class comparability graph."""
    C = G.class_count
    adj = G.comparable_classes
    dist = [[None] * C for _ in range(C)]
    for s in range(C):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if row[w] is None:
                    row[w] = row[u] + 1
                    queue.append(w)
    return dist


def metric(G: RelationGraph):
    """(diameter, radius, eccentricity per rank class).

    Distances factor through ideal classes: vertices in distinct classes
    are as far apart as their classes in the comparability graph, and two
    distinct vertices of one class are at distance 2 through any
    comparable vertex.  Raises on a disconnected graph, which would signal
    a construction bug.
    """
    _require_full(G)
    dist = _class_distances(G)
    C = G.class_count
    fib = G.fiber_sizes
    if any(d is None for row in dist for d in row):
        raise ValueError("relation graph is disconnected")
    ecc = []
    for c in range(C):
        e = max(dist[c][d] for d in range(C) if d != c) if C > 1 else 0
        if fib[c] >= 2:
            if not G.comparable_classes[c]:
                raise ValueError("relation graph is disconnected")
            e = max(e, 2)
        ecc.append(e)
    by_rank = {}
    for c in range(C):
        r = G.class_rank[c]
        by_rank[r] = max(by_rank.get(r, 0), ecc[c])
    return max(ecc), min(ecc), tuple(sorted(by_rank.items()))


def domination_number(G: RelationGraph) -> int:
    """Always 1: the zero matrix is adjacent to every other vertex.

    Verified structurally (the zero class sits below every other class)
    rather than by search.
    """
    _require_full(G)
    zero_class = G.class_of(0)
    if G.class_rank[zero_class] != 0:
        raise AssertionError("vertex 0 is not the zero matrix")
    comparable = set(G.comparable_classes[zero_class])
    if comparable != set(range(G.class_count)) - {zero_class}:
        raise AssertionError("zero matrix fails to dominate")
    return 1


def _merged_groups(G: RelationGraph):
    """Group classes whose single vertices share a closed neighborhood.

    Two vertices have equal closed neighborhoods only when both their
    classes have exactly one member, the classes are comparable, and the
    comparability sets agree outside the pair.  Vertices in classes with
    two or more members are never merged with anything.
    """
    C = G.class_count
    fib = G.fiber_sizes
    comp = [set(s) for s in G.comparable_classes]
    parent = list(range(C))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in range(C):
        if fib[c] != 1:
            continue
        for d in comp[c]:
            if d > c and fib[d] == 1 and comp[c] - {d} == comp[d] - {c}:
                parent[find(c)] = find(d)
    groups = {}
    for c in range(C):
        groups.setdefault(find(c), []).append(c)
    return list(groups.values())


def strong_metric_dimension(G: RelationGraph) -> int:
    """|V| minus the clique number of the reduced graph; needs diameter 2.

    The reduced graph merges vertices with equal closed neighborhoods; its
    cliques pick at most one vertex per merged group and otherwise follow
    chains of nested classes, so its clique number is a longest chain over
    merged groups.
    """
    _require_full(G)
    diameter, _, _ = metric(G)
    if diameter != 2:
        raise ValueError(
            f"strong metric dimension formula requires diameter 2, got {diameter}"
        )
    groups = _merged_groups(G)
    lt = G.lt

    def group_lt(ga, gb):
        # members of one merged group are pairwise comparable but collapse
        # to a single reduced-graph vertex, so a group never precedes itself
        if ga == gb:
            return False
        return any(lt[c, d] for c in groups[ga] for d in groups[gb])

    omega_reduced = _longest_chain(None, range(len(groups)), group_lt)
    return G.vertex_count - omega_reduced


def eulerian_check(G: RelationGraph):
    """(False, odd-degree witness vertex): the graph is never Eulerian.

    For even q the zero matrix has odd degree q^(n^2) - 1; for odd q any
    full-rank vertex has odd degree q^(n^2) - |GL(n, q)|.  The parity of
    the witness is checked exactly, and Eulerian-ness itself is decided
    from all class degrees.
    """
    _require_full(G)
    degrees = [
        G.class_in_weight[c] + G.class_out_weight[c] for c in range(G.class_count)
    ]
    eulerian = all(d % 2 == 0 for d in degrees)
    if eulerian:
        return True, None
    q = G.field.q
    if q % 2 == 0:
        witness = 0  # the zero matrix
    else:
        top = max(range(G.class_count), key=lambda c: G.class_rank[c])
        full_rank = [c for c in range(G.class_count) if G.class_rank[c] == G.n]
        witness = int(G.class_vertices[full_rank[0]][0]) if full_rank else int(
            G.class_vertices[top][0]
        )
    wc = G.class_of(witness)
    if degrees[wc] % 2 == 0:
        # fall back to any odd-degree vertex
        wc = next(c for c in range(G.class_count) if degrees[c] % 2 == 1)
        witness = int(G.class_vertices[wc][0])
    assert degrees[wc] % 2 == 1
    return False, witness


def k33_witness(F: Field, n: int):
    """Two triples of matrices inducing a complete bipartite K_{3,3}.

    One side holds rank-1 matrices spanning the lines of e1, e2 and
    e1 + e2; the other holds three distinct matrices with row space
    spanned by {e1, e2}.  All nine cross containments are checked, so the
    graph is non-planar for n >= 2.
    """
    if n < 2:
        raise ValueError("K_{3,3} witness requires n >= 2")
    e1, e2 = unit_vector(n, 0), unit_vector(n, 1)
    e11 = tuple(F.add(a, b) for a, b in zip(e1, e2))
    side1 = (
        first_row_matrix(n, e1),
        first_row_matrix(n, e2),
        first_row_matrix(n, e11),
    )
    side2 = (
        stacked_matrix(F, n, [e1, e2]),
        stacked_matrix(F, n, [e2, e1]),
        stacked_matrix(F, n, [e11, e1]),
    )
    if len(set(side1 + side2)) != 6:
        raise AssertionError("witness vertices are not distinct")
    for X in side1:
        for Y in side2:
            if not proper_subset(F, ideal_of(F, X), ideal_of(F, Y)):
                raise AssertionError("missing K_{3,3} cross edge")
    return side1, side2


def compute_report(G: RelationGraph) -> InvariantReport:
    _require_full(G)
    F, n = G.field, G.n
    omega, chi = clique_and_chromatic(G)
    g = girth(G)
    diameter, radius, ecc = metric(G)
    gamma = domination_number(G)
    try:
        sdim = strong_metric_dimension(G)
    except ValueError:
        sdim = None
    eulerian, witness = eulerian_check(G)
    planarity = None
    if n >= 2:
        from lirg.matrix import vertex_encode

        side1, side2 = k33_witness(F, n)
        planarity = (
            tuple(vertex_encode(F, X) for X in side1),
            tuple(vertex_encode(F, X) for X in side2),
        )
    return InvariantReport(
        n=n,
        q=F.q,
        clique_number=omega,
        chromatic_number=chi,
        girth=g,
        girth_witness=triangle_witness(F, n) if n >= 2 and g == 3 else None,
        diameter=diameter,
        radius=radius,
        eccentricity_by_rank=ecc,
        domination_number=gamma,
        strong_metric_dimension=sdim,
        eulerian=eulerian,
        odd_degree_witness=witness,
        planarity_witness=planarity,
    )


def predicted_invariants(n: int, q: int):
    """Closed-form predictions; entries are None where n = 1 falls outside
    the formulas."""
    preds = {
        "clique_number": n + 1,
        "chromatic_number": n + 1,
        "domination_number": 1,
        "eulerian": False,
    }
    if n >= 2:
        preds.update(
            girth=3,
            diameter=2,
            radius=1,
            strong_metric_dimension=matrix_space_size(n, q) - n - 1,
        )
    else:
        preds.update(girth=None, diameter=None, radius=None, strong_metric_dimension=None)
    return preds


def degree_check(G: RelationGraph):
    """Per-class degrees against the closed-form prediction; raises on any
    mismatch."""
    _require_full(G)
    q = G.field.q
    for c in range(G.class_count):
        r = G.class_rank[c]
        d_i, d_o, und = predicted_degree(G.n, r, q)
        got = (G.class_in_weight[c], G.class_out_weight[c])
        if got != (d_i, d_o):
            raise AssertionError(
                f"class {c} (rank {r}): degrees {got} != predicted {(d_i, d_o)}"
            )
    return True
