"""Closed-form counts: Gaussian binomials, fiber sizes, rank classes, degrees.

Everything is exact big-integer arithmetic; q^(n^2) outgrows 64 bits fast.
"""

from dataclasses import dataclass


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^n.

    Computed multiplicatively with exact division at each step; every
    partial product is itself a Gaussian binomial, so the divisions are
    exact by construction (asserted).
    """
    if not 0 <= r <= n:
        raise ValueError(f"r = {r} out of range [0, {n}]")
    out = 1
    for i in range(r):
        out *= q ** (n - i) - 1
        div, rem = divmod(out, q ** (i + 1) - 1)
        assert rem == 0
        out = div
    return out


def fiber_size(n: int, r: int, q: int) -> int:
    """Number of n x n matrices whose row space is one fixed r-dim subspace."""
    if not 0 <= r <= n:
        raise ValueError(f"r = {r} out of range [0, {n}]")
    out = 1
    for j in range(r):
        out *= q**n - q**j
    return out


def gl_order(n: int, q: int) -> int:
    """|GL(n, q)|; also the count of full-rank n x n matrices."""
    return fiber_size(n, n, q)


def rank_class_size(n: int, r: int, q: int) -> int:
    """Number of n x n matrices of rank exactly r."""
    return gaussian_binomial(n, r, q) * fiber_size(n, r, q)


def matrix_space_size(n: int, q: int) -> int:
    return q ** (n * n)


def superspace_count(n: int, r: int, s: int, q: int) -> int:
    """Number of s-dim subspaces of F_q^n containing a fixed r-dim subspace."""
    if not 0 <= r <= s <= n:
        raise ValueError(f"need 0 <= r <= s <= n, got r={r}, s={s}, n={n}")
    return gaussian_binomial(n - r, s - r, q)


def predicted_degree(n: int, r: int, q: int):
    """(d_i, d_o, undirected degree) of any vertex of rank r.

    In-neighbors are the matrices whose row space sits properly inside the
    vertex's row space: sum over s < r of the number of s-dim subspaces of
    an r-space times the fiber size.  Out-neighbors symmetrically over
    proper superspaces.
    """
    if not 0 <= r <= n:
        raise ValueError(f"r = {r} out of range [0, {n}]")
    d_i = sum(gaussian_binomial(r, s, q) * fiber_size(n, s, q) for s in range(r))
    d_o = sum(
        superspace_count(n, r, s, q) * fiber_size(n, s, q) for s in range(r + 1, n + 1)
    )
    return d_i, d_o, d_i + d_o


@dataclass(frozen=True)
class CountReport:
    n: int
    q: int
    subspace_counts: tuple  # per rank 0..n
    fiber_sizes: tuple
    rank_class_sizes: tuple
    gl_order: int
    total: int

    def check(self) -> bool:
        return (
            sum(s * f for s, f in zip(self.subspace_counts, self.fiber_sizes))
            == self.total
        )


def count_report(n: int, q: int) -> CountReport:
    subs = tuple(gaussian_binomial(n, r, q) for r in range(n + 1))
    fibs = tuple(fiber_size(n, r, q) for r in range(n + 1))
    sizes = tuple(s * f for s, f in zip(subs, fibs))
    report = CountReport(n, q, subs, fibs, sizes, gl_order(n, q), matrix_space_size(n, q))
    assert report.check()
    return report
