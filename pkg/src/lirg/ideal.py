"""Left ideals of M_n(F_q) in canonical row-space form.

The left ideal generated by X is the set of all WX; it consists exactly of
the matrices whose row space lies inside the row space of X.  Storing the
unique reduced-row-echelon basis of that row space therefore identifies
the ideal completely: equality and hashing are structural, and a rank-r
ideal has q^(n*r) elements without ever being materialized.
"""

from dataclasses import dataclass

from lirg.field import Field
from lirg.matrix import row_reduce, stacked_matrix, unit_vector, zero_matrix


@dataclass(frozen=True, order=True)
class LeftIdeal:
    n: int
    basis: tuple  # RREF rows spanning the row space, zero rows trimmed

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        """Dimension as an F_q vector space: n * rank."""
        return self.n * self.rank

    def __repr__(self):
        return f"LeftIdeal(n={self.n}, rank={self.rank}, basis={self.basis})"


def ideal_from_rows(F: Field, n: int, rows) -> LeftIdeal:
    reduced, r = row_reduce(F, [tuple(row) for row in rows])
    return LeftIdeal(n, reduced[:r])


def ideal_of(F: Field, X) -> LeftIdeal:
    """Canonical form of the left ideal generated by X."""
    return ideal_from_rows(F, len(X), X)


def reduce_against(F: Field, basis, vec):
    """Remainder of a row vector after elimination by an RREF basis."""
    v = list(vec)
    add, mul, neg = F.add, F.mul, F.neg
    for row in basis:
        lead = next(j for j, c in enumerate(row) if c)
        if v[lead]:
            f = neg(v[lead])
            for j in range(lead, len(v)):
                if row[j]:
                    v[j] = add(v[j], mul(f, row[j]))
    return tuple(v)


def contains_row(F: Field, I: LeftIdeal, vec) -> bool:
    return not any(reduce_against(F, I.basis, vec))


def is_subideal(F: Field, I: LeftIdeal, J: LeftIdeal) -> bool:
    """I subseteq J, i.e. row space containment."""
    if I.n != J.n:
        raise ValueError("ideal dimension mismatch")
    if I.rank > J.rank:
        return False
    return all(contains_row(F, J, row) for row in I.basis)


def proper_subset(F: Field, I: LeftIdeal, J: LeftIdeal) -> bool:
    return I.rank < J.rank and is_subideal(F, I, J)


def generator(I: LeftIdeal, F: Field):
    """Matrix with the basis rows stacked on top, zero rows below.

    Generates I as a left ideal.
    """
    if I.rank == 0:
        return zero_matrix(I.n)
    return stacked_matrix(F, I.n, I.basis)


def normal_form(F: Field, I: LeftIdeal):
    """(r, P) with P invertible such that the rank marker times P generates I.

    P extends the basis greedily with standard vectors, so the first r rows
    of P are the basis itself.
    """
    n, r = I.n, I.rank
    rows = list(I.basis)
    for i in range(n):
        if len(rows) == n:
            break
        cand = unit_vector(n, i)
        _, rk = row_reduce(F, rows + [cand])
        if rk == len(rows) + 1:
            rows.append(cand)
    P = tuple(rows)
    return r, P


def line_vector(I: LeftIdeal):
    """The unique spanning row with leading coefficient 1, for rank-1 ideals."""
    if I.rank != 1:
        raise ValueError(f"ideal has rank {I.rank}, expected 1")
    return I.basis[0]
