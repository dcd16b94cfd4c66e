"""Invariant tuples of 6-manifolds with boundary S^2 x S^3.

Bases.  H_2(M) = Z^2 with e1 the image of the boundary class and e2 a lift
of the preferred generator x of H_2(M, dM).  The symmetric form ``q`` is
stored in the dual basis ordered (lift dual, boundary dual), i.e.
``q[0][0] = q(e2*, e2*)`` and ``q[1][1] = q(e1*, e1*)``.  With that order
``q[0][0]`` is the cube of x* and is the entry every allowed base change
fixes.

Allowed base changes (the SES automorphisms fixing x) are
``e1 -> eps*e1``, ``e2 -> e2 + m*e1`` with ``eps = +-1``.  On the dual side
they fix e2* and send e1* to ``eps*e1* + m*e2*``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from . import linalg
from .errors import InvariantsError, PreconditionError, WallCongruenceError

WALL_MODULUS = 24
DEFAULT_CONVENTION = "dp1 = <p1 u x*, [M, dM]> with <x*^3, [M, dM]> = d"


def _base_change_matrix(eps: int, m: int) -> list[list[int]]:
    """Columns are the new dual basis vectors in old (lift dual, boundary dual) coordinates."""
    if eps not in (1, -1):
        raise PreconditionError(f"eps must be +1 or -1, got {eps}")
    return [[1, m], [0, eps]]


@dataclass(frozen=True)
class SesData:
    """Basis of H_2(M) = Z^2 recorded against the exact sequence.

    ``boundary_image`` maps to 0 in H_2(M, dM); ``quotient_lift`` maps to x.
    """

    boundary_image: tuple = (1, 0)
    quotient_lift: tuple = (0, 1)

    def __post_init__(self):
        e1 = tuple(int(v) for v in self.boundary_image)
        e2 = tuple(int(v) for v in self.quotient_lift)
        if len(e1) != 2 or len(e2) != 2:
            raise InvariantsError("SES basis vectors must have two coordinates")
        if abs(e1[0] * e2[1] - e1[1] * e2[0]) != 1:
            raise InvariantsError(f"{e1}, {e2} is not a basis of Z^2")
        object.__setattr__(self, "boundary_image", e1)
        object.__setattr__(self, "quotient_lift", e2)

    def changed(self, eps: int, m: int) -> "SesData":
        e1, e2 = self.boundary_image, self.quotient_lift
        return SesData(
            tuple(eps * a for a in e1),
            tuple(b + m * a for a, b in zip(e1, e2)),
        )


@dataclass(frozen=True)
class ManifoldInvariants:
    chi: int
    dp1: int
    q: tuple
    w2_spin: bool
    cube_x: int
    ses: SesData = field(default_factory=SesData)
    convention: str = DEFAULT_CONVENTION

    def __post_init__(self):
        q = tuple(tuple(int(v) for v in row) for row in self.q)
        if len(q) != 2 or any(len(row) != 2 for row in q):
            raise InvariantsError("q must be a 2x2 matrix")
        if not linalg.is_symmetric(q):
            raise InvariantsError(f"q = {q} is not symmetric")
        if self.cube_x <= 0:
            raise InvariantsError(f"cube_x must be positive for the preferred generator, got {self.cube_x}")
        if q[0][0] != self.cube_x:
            raise InvariantsError(f"q(e2*, e2*) = {q[0][0]} disagrees with cube_x = {self.cube_x}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class BordismRecord:
    """Dp1(Y) = p*e1 + P*e2 and the trilinear form on (e1*, e2*).

    ``trilinear`` is (mu(e1*^3), mu(e1*^2 e2*), mu(e1* e2*^2), mu(e2*^3)).
    """

    dp1_vec: tuple
    trilinear: tuple
    realizable: bool = False

    def __post_init__(self):
        dp1 = tuple(int(v) for v in self.dp1_vec)
        tri = tuple(int(v) for v in self.trilinear)
        if len(dp1) != 2 or len(tri) != 4:
            raise InvariantsError("a bordism record needs 2 Pontrjagin and 4 trilinear components")
        object.__setattr__(self, "dp1_vec", dp1)
        object.__setattr__(self, "trilinear", tri)
        if self.realizable and not wall_check(self.p, self.lam):
            raise WallCongruenceError(
                f"record claims realizability but p = {self.p} is not 4*lambda = {4 * self.lam} mod 24"
            )

    @property
    def p(self) -> int:
        return self.dp1_vec[0]

    @property
    def lam(self) -> int:
        return self.trilinear[0]


def wall_check(p: int, lam: int) -> bool:
    return (p - 4 * lam) % WALL_MODULUS == 0


def glue_normalize(p: int, lam: int) -> tuple[int, int]:
    """(b, c) with Dp1(P) = 4b*u and <u*^3, [P]> = 6c + b cancelling (p, lam)."""
    if not wall_check(p, lam):
        raise WallCongruenceError(
            f"Wall congruence fails: p - 4*lambda = {p - 4 * lam} is not divisible by {WALL_MODULUS}"
        )
    b = -p // 4
    c = (p - 4 * lam) // WALL_MODULUS
    p2, lam2 = glue_replay(p, lam, b, c)
    assert (p2, lam2) == (0, 0), (p, lam, b, c)
    return b, c


def glue_replay(p: int, lam: int, b: int, c: int) -> tuple[int, int]:
    return p + 4 * b, lam + 6 * c + b


def bordism_records_equal(r0: BordismRecord, r1: BordismRecord) -> bool:
    return r0.dp1_vec == r1.dp1_vec and r0.trilinear == r1.trilinear


def transform_record(r: BordismRecord, eps: int, m: int) -> BordismRecord:
    """Express ``r`` in the basis e1' = eps*e1, e2' = e2 + m*e1."""
    if eps not in (1, -1):
        raise PreconditionError(f"eps must be +1 or -1, got {eps}")
    p, P = r.dp1_vec
    new_dp1 = (eps * (p - m * P), P)
    # dual basis of the new basis, in old dual coordinates (rows of the inverse)
    duals = ((eps, -eps * m), (0, 1))
    old = r.trilinear

    def tri(u, v, w):
        # old[n] is mu on n copies of e2* and 3 - n copies of e1*
        return sum(
            u[i] * v[j] * w[k] * old[i + j + k]
            for i, j, k in itertools.product(range(2), repeat=3)
        )

    f1, f2 = duals
    new_tri = (tri(f1, f1, f1), tri(f1, f1, f2), tri(f1, f2, f2), tri(f2, f2, f2))
    return BordismRecord(new_dp1, new_tri, r.realizable)


def apply_base_change(t: ManifoldInvariants, eps: int, m: int) -> ManifoldInvariants:
    """Pull ``t`` back along Phi(e1) = eps*e1, Phi(e2) = e2 + m*e1.

    q becomes T^T q T with T from :func:`_base_change_matrix`; chi, dp1,
    w2 and cube_x are untouched.
    """
    T = _base_change_matrix(eps, m)
    q = linalg.matmul(linalg.matmul(linalg.transpose(T), [list(r) for r in t.q]), T)
    return replace(t, q=tuple(tuple(r) for r in q), ses=t.ses.changed(eps, m))


def inverse_witness(eps: int, m: int) -> tuple[int, int]:
    return eps, -eps * m


def _scalar_invariants_match(t0: ManifoldInvariants, t1: ManifoldInvariants) -> bool:
    return (
        t0.chi == t1.chi
        and t0.dp1 == t1.dp1
        and t0.w2_spin == t1.w2_spin
        and t0.cube_x == t1.cube_x
        and t0.convention == t1.convention
    )


def _check(t: ManifoldInvariants) -> None:
    if t.cube_x <= 0:
        raise InvariantsError(f"cube_x must be positive, got {t.cube_x}")


def tuples_equivalent(t0: ManifoldInvariants, t1: ManifoldInvariants) -> tuple[int, int] | None:
    """Witness (eps, m) with apply_base_change(t0, eps, m).q == t1.q, or None.

    Closed form: the off-diagonal entry gives q1_01 = eps*q0_01 + m*q0_00,
    which fixes m since q0_00 = cube_x > 0; the (1,1) entry is then checked.
    """
    _check(t0)
    _check(t1)
    if not _scalar_invariants_match(t0, t1):
        return None
    a, b, c = t0.q[0][0], t0.q[0][1], t0.q[1][1]
    b1, c1 = t1.q[0][1], t1.q[1][1]
    if t1.q[0][0] != a:
        return None
    for eps in (1, -1):
        m, r = divmod(b1 - eps * b, a)
        if r:
            continue
        if c + 2 * eps * m * b + m * m * a == c1:
            return eps, m
    return None


def tuples_equivalent_bruteforce(
    t0: ManifoldInvariants, t1: ManifoldInvariants, bound: int | None = None
) -> tuple[int, int] | None:
    """Search eps in (1, -1) and |m| <= bound; default bound 2*(max |q entry| + 1)."""
    _check(t0)
    _check(t1)
    if not _scalar_invariants_match(t0, t1):
        return None
    if bound is None:
        bound = 2 * (max(abs(v) for row in t0.q + t1.q for v in row) + 1)
    for eps in (1, -1):
        for m in sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v < 0)):
            if apply_base_change(t0, eps, m).q == t1.q:
                return eps, m
    return None
