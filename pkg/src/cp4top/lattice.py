"""Milnor lattices of stabilised A_k singularities and their links.

The skew-symmetric forms are reduced over the integers by congruence
(simultaneous row and column operations), which keeps track of a unimodular
transform ``P`` with ``P^T S P`` in block normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import PreconditionError, WeightsError
from .polynomial import Weights

S2xS3 = "S2xS3"
S5 = "S5"
UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class SkewForm:
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not linalg.is_skew_symmetric(m):
            raise PreconditionError("matrix is not skew-symmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class SkewNormalForm:
    hyperbolic_divisors: tuple
    radical_rank: int
    transform: tuple = field(default=(), compare=False)

    def __post_init__(self):
        d = self.hyperbolic_divisors
        if any(x <= 0 for x in d) or any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"divisors {d} do not form a positive divisibility chain")

    @property
    def size(self) -> int:
        return 2 * len(self.hyperbolic_divisors) + self.radical_rank

    def block_matrix(self) -> list[list[int]]:
        n = self.size
        B = [[0] * n for _ in range(n)]
        for i, d in enumerate(self.hyperbolic_divisors):
            B[2 * i][2 * i + 1] = d
            B[2 * i + 1][2 * i] = -d
        return B


@dataclass(frozen=True)
class LinkType:
    tag: str
    normal_form: SkewNormalForm | None = None

    def __post_init__(self):
        if self.tag not in (S2xS3, S5, UNSUPPORTED):
            raise ValueError(f"unknown link tag {self.tag!r}")
        if self.tag == UNSUPPORTED and self.normal_form is None:
            raise ValueError("an unsupported link must carry the normal form that failed")

    def __str__(self) -> str:
        return self.tag


def milnor_lattice_Ak(k: int) -> SkewForm:
    """Distinguished-basis intersection matrix: +1 above, -1 below the diagonal."""
    if k < 1:
        raise PreconditionError(f"A_k needs k >= 1, got {k}")
    M = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        M[i][i + 1] = 1
        M[i + 1][i] = -1
    return SkewForm(M)


class _Congruence:
    """Skew matrix S together with P such that S = P^T S0 P."""

    def __init__(self, S0):
        self.S = [list(row) for row in S0]
        self.n = len(self.S)
        self.P = linalg.identity(self.n)

    def swap(self, i: int, j: int) -> None:
        if i == j:
            return
        S, P = self.S, self.P
        S[i], S[j] = S[j], S[i]
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    def add(self, target: int, source: int, c: int) -> None:
        """Basis change e_target += c * e_source."""
        if not c:
            return
        S, P = self.S, self.P
        for row in S:
            row[target] += c * row[source]
        S[target] = [a + c * b for a, b in zip(S[target], S[source])]
        for row in P:
            row[target] += c * row[source]


def skew_normal_form(S: SkewForm) -> SkewNormalForm:
    """Reduce to hyperbolic blocks d_1 | d_2 | ... plus a zero radical.

    Pivot: smallest nonzero absolute entry, ties broken by lowest row index
    (then lowest column).
    """
    C = _Congruence(S.matrix)
    n = C.n
    divisors = []
    k = 0
    while k + 1 < n:
        entries = [
            (abs(C.S[i][j]), i, j)
            for i in range(k, n)
            for j in range(k, n)
            if C.S[i][j]
        ]
        if not entries:
            break
        _, i, j = min(entries)
        C.swap(k, i)
        if j == k:
            j = i  # the swap moved it
        C.swap(k + 1, j)
        if C.S[k][k + 1] < 0:
            C.swap(k, k + 1)
        d = C.S[k][k + 1]
        dirty = False
        for l in range(k + 2, n):
            q, r = divmod(C.S[k][l], d)
            C.add(l, k + 1, -q)
            q2, r2 = divmod(C.S[k + 1][l], d)
            C.add(l, k, q2)
            if r or r2:
                dirty = True
        if dirty:
            continue
        bad = next(
            ((a, b) for a in range(k + 2, n) for b in range(k + 2, n) if C.S[a][b] % d),
            None,
        )
        if bad is not None:
            # pull the offending entry into the pivot row; the next pass shrinks the pivot
            C.add(k, bad[0], 1)
            continue
        divisors.append(d)
        k += 2
    radical = n - 2 * len(divisors)
    nf = SkewNormalForm(tuple(divisors), radical, tuple(tuple(r) for r in C.P))
    return nf


def verify_normal_form(S: SkewForm, nf: SkewNormalForm) -> bool:
    """Re-multiplication check: det P = +-1 and P^T S P equals the block form."""
    P = [list(r) for r in nf.transform]
    if abs(linalg.det(P)) != 1:
        return False
    PtSP = linalg.matmul(linalg.matmul(linalg.transpose(P), [list(r) for r in S.matrix]), P)
    return PtSP == nf.block_matrix()


def link_from_form(nf: SkewNormalForm) -> LinkType:
    unimodular = all(d == 1 for d in nf.hyperbolic_divisors)
    if unimodular and nf.radical_rank == 0:
        return LinkType(S5)
    if unimodular and nf.radical_rank == 1:
        return LinkType(S2xS3)
    return LinkType(UNSUPPORTED, nf)


def link_of_Ak(k: int) -> LinkType:
    return link_from_form(skew_normal_form(milnor_lattice_Ak(k)))


def milnor_number_qh(w: Weights) -> int:
    """Milnor number of a nondegenerate quasihomogeneous germ: prod(d/a_i - 1)."""
    product = Fraction(1)
    for a in w.alpha:
        product *= w.degree / a - 1
    if product <= 0 or product.denominator != 1:
        raise WeightsError(
            f"weights {w} do not define a nondegenerate quasihomogeneous germ (product {product})"
        )
    return int(product)
