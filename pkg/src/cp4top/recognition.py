"""Recognising A_k germs in four variables.

Two independent routes:

* :func:`recognize_with_weights` splits a germ into its weighted-degree-one
  part plus higher terms, brings the degree-one part to
  ``r*z^n + sum d_i w_i^2`` by rational congruence and completing squares,
  and reads off A_{n-1} when the quadratic part has rank 3 and ``r != 0``.
  Every coordinate change is kept in a replayable certificate.
* :func:`classify_mu_corank` uses the fact that an isolated germ of Hessian
  corank at most one with Milnor number k is A_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    DegenerateError,
    DimensionError,
    NotSemiquasihomogeneousError,
    PreconditionError,
    WeightsError,
)
from .groebner import GermLocus
from .lattice import LinkType, link_of_Ak
from .polynomial import (
    Poly,
    Weights,
    format_poly,
    hessian_at_origin,
    permute_variables,
    substitute,
    weighted_degree,
)

HALF = Fraction(1, 2)

A = "A"
NOT_AK = "NotAk"
DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class SqhSplit:
    f0: Poly
    g: Poly
    weights: Weights


def sqh_split(f: Poly, w: Weights) -> SqhSplit:
    """Split ``f`` into its part of weighted degree ``w.degree`` and the rest."""
    if f.nvars != len(w.alpha):
        raise DimensionError(f"{f.nvars} variables against {len(w.alpha)} weights")
    if f.constant_term():
        raise NotSemiquasihomogeneousError("germ has a constant term")
    f0, g = {}, {}
    for exps, c in f.terms.items():
        d = weighted_degree(exps, w)
        if d < w.degree:
            mono = format_poly(Poly._raw(f.variables, {exps: Fraction(1)}))
            raise NotSemiquasihomogeneousError(
                f"term {mono} has weighted degree {d} < {w.degree} for weights ({w})"
            )
        (f0 if d == w.degree else g)[exps] = c
    if not f0:
        raise NotSemiquasihomogeneousError(f"no terms of weighted degree {w.degree} for weights ({w})")
    return SqhSplit(Poly._raw(f.variables, f0), Poly._raw(f.variables, g), w)


def lagrange_diagonalize(A: Sequence[Sequence[Fraction]]):
    """Rational congruence ``P^T A P = diag(D)`` by Lagrange's method.

    Pivot on the first nonzero diagonal entry; when the remaining diagonal is
    zero, replace e_i by e_i + e_j for the first nonzero off-diagonal pair.
    """
    n = len(A)
    S = [[Fraction(x) for x in row] for row in A]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add(target, source, c):
        # basis change e_target += c e_source
        for row in S:
            row[target] += c * row[source]
        S[target] = [a + c * b for a, b in zip(S[target], S[source])]
        for row in P:
            row[target] += c * row[source]

    def swap(i, j):
        S[i], S[j] = S[j], S[i]
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        piv = next((i for i in range(k, n) if S[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if S[i][j] != 0), None)
            if pair is None:
                break
            add(pair[0], pair[1], Fraction(1))
            piv = pair[0]
        if piv != k:
            swap(k, piv)
        for j in range(k + 1, n):
            if S[k][j]:
                add(j, k, -S[k][j] / S[k][k])
    D = [S[i][i] for i in range(n)]
    return P, D


@dataclass
class Certificate:
    """Replayable record of the coordinate changes behind a classification."""

    weights: Weights
    distinguished: str
    permutation: tuple | None = None
    substitutions: list = field(default_factory=list)
    normal_part: Poly | None = None
    remainder: Poly | None = None
    residual: Fraction | None = None
    diagonal: tuple = ()
    notes: list = field(default_factory=list)


def replay_certificate(f: Poly, cert: Certificate) -> bool:
    """Apply the recorded changes to ``f`` and compare with the recorded split."""
    h = permute_variables(f, cert.permutation) if cert.permutation else f
    for sigma in cert.substitutions:
        h = substitute(h, sigma)
    s = sqh_split(h, cert.weights)
    return s.f0 == cert.normal_part and s.g == cert.remainder


@dataclass(frozen=True)
class ReducedSplit:
    split: SqhSplit
    residual: Fraction
    substitution: dict
    diagonal: tuple
    distinguished: int


def _shape(w: Weights) -> tuple[int, int | None]:
    """(n, index) for weights 1/n at ``index`` and 1/2 elsewhere (index None: all halves)."""
    if w.degree != 1:
        raise WeightsError("the A_k reduction expects weighted degree 1")
    odd = [i for i, a in enumerate(w.alpha) if a != HALF]
    if not odd:
        return 2, None
    if len(odd) > 1:
        raise WeightsError(f"weights ({w}) are not of the shape (1/n, 1/2, 1/2, 1/2)")
    a = w.alpha[odd[0]]
    if a.numerator != 1 or a.denominator < 2:
        raise WeightsError(f"weight {a} is not of the form 1/n")
    return a.denominator, odd[0]


def reduce_degree_one_part(s: SqhSplit, distinguished: int | None = None) -> ReducedSplit:
    """Bring the degree-one part to ``r*z^n + sum d_i w_i^2``.

    Works for weights (1/n, 1/2, 1/2, 1/2) in any position.  For even n = 2m
    the terms z^m * z_i are absorbed by completing squares; the residual
    coefficient of z^n comes back as ``residual``.
    """
    w = s.weights
    n, idx = _shape(w)
    if idx is None:
        idx = 0 if distinguished is None else distinguished
    elif distinguished is not None and distinguished != idx:
        raise WeightsError("distinguished variable disagrees with the weights")
    variables = s.f0.variables
    others = [i for i in range(4) if i != idx]
    m = n // 2 if n % 2 == 0 else None

    def mono(powers: dict) -> tuple:
        return tuple(powers.get(j, 0) for j in range(4))

    top = mono({idx: n})
    a1 = s.f0.coefficient(top)
    lin = [Fraction(0)] * 3
    Q = [[Fraction(0)] * 3 for _ in range(3)]
    used = {top}
    for p, i in enumerate(others):
        if m is not None:
            # for n = 2 the monomial z*z_i lands here and not in Q
            e = mono({idx: m, i: 1})
            lin[p] = s.f0.coefficient(e)
            used.add(e)
        for q in range(p, 3):
            j = others[q]
            e = mono({i: 2}) if i == j else mono({i: 1, j: 1})
            c = s.f0.coefficient(e)
            used.add(e)
            if p == q:
                Q[p][p] = c
            else:
                Q[p][q] = Q[q][p] = c / 2
    stray = [e for e in s.f0.terms if e not in used]
    if stray:
        raise AssertionError(f"degree-one part has unexpected monomials {stray}")

    P, D = lagrange_diagonalize(Q)
    if any(d == 0 for d in D):
        raise DegenerateError(
            f"quadratic part in {[variables[i] for i in others]} has rank {sum(1 for d in D if d)} < 3; "
            "the degree-one part is degenerate"
        )
    # linear terms in the new coordinates, then the square-completing shifts
    lin_new = [sum(P[r][c] * lin[r] for r in range(3)) for c in range(3)]
    shift = [lin_new[c] / (2 * D[c]) for c in range(3)]
    residual = a1 - sum(lin_new[c] ** 2 / (4 * D[c]) for c in range(3))

    z = Poly.gen(variables[idx], variables) ** m if m is not None else None
    new = [Poly.gen(variables[i], variables) for i in others]
    sigma = {}
    for r, i in enumerate(others):
        img = Poly.constant(0, variables)
        for c in range(3):
            if P[r][c]:
                term = new[c] - z * shift[c] if (z is not None and shift[c]) else new[c]
                img = img + term * P[r][c]
        if img != Poly.gen(variables[i], variables):
            sigma[variables[i]] = img
    h = substitute(s.f0 + s.g, sigma) if sigma else s.f0 + s.g
    out = sqh_split(h, w)

    expected = {tuple(n if j == idx else 0 for j in range(4)): residual} if residual else {}
    for c, i in enumerate(others):
        expected[tuple(2 if j == i else 0 for j in range(4))] = D[c]
    if dict(out.f0.terms) != expected:
        raise AssertionError("completing squares did not produce the diagonal normal part")
    if residual == 0:
        raise DegenerateError(
            f"residual coefficient of {variables[idx]}^{n} vanishes; the germ is not A_{n - 1}"
        )
    return ReducedSplit(out, residual, sigma, tuple(D), idx)


@dataclass
class SingularityClass:
    tag: str
    k: int | None = None
    reason: str = ""
    milnor_number: int | None = None
    link: LinkType | None = None
    certificate: object = None
    method: str = ""

    def __post_init__(self):
        if self.tag == A:
            if self.k is None or self.k < 1:
                raise ValueError("A_k needs k >= 1")
            if self.milnor_number != self.k:
                raise ValueError("an A_k class must carry Milnor number k")
            if self.link != link_of_Ak(self.k):
                raise ValueError("link does not match the A_k index")
        elif self.tag not in (NOT_AK, DEGENERATE):
            raise ValueError(f"unknown tag {self.tag!r}")

    @property
    def is_Ak(self) -> bool:
        return self.tag == A

    def label(self) -> str:
        return f"A{self.k}" if self.tag == A else self.tag


def _a_class(k: int, certificate, method: str) -> SingularityClass:
    return SingularityClass(A, k, "", k, link_of_Ak(k), certificate, method)


def recognize_with_weights(
    f: Poly, w: Weights, permutation: Sequence[str] | None = None
) -> SingularityClass:
    """Recognise an A_k germ from semiquasihomogeneous weights (1/n, 1/2, 1/2, 1/2).

    ``permutation`` relabels the variables first (new position j takes old
    variable ``permutation[j]``); the weights refer to the relabelled germ.
    """
    if f.nvars != 4:
        raise DimensionError(f"germ must have 4 variables, got {f.variables}")
    h = permute_variables(f, permutation) if permutation else f
    try:
        n, idx = _shape(w)
    except WeightsError as exc:
        return SingularityClass(NOT_AK, reason=str(exc), method="weights")
    try:
        split = sqh_split(h, w)
    except NotSemiquasihomogeneousError as exc:
        return SingularityClass(NOT_AK, reason=str(exc), method="weights")

    candidates = [idx] if idx is not None else list(range(4))
    failure = None
    for pos in candidates:
        try:
            red = reduce_degree_one_part(split, pos)
        except DegenerateError as exc:
            failure = exc
            continue
        k = n - 1
        var = h.variables[red.distinguished]
        basis_degrees = [Fraction(i, n) for i in range(k)]
        assert all(d < 1 for d in basis_degrees)
        cert = Certificate(
            weights=w,
            distinguished=var,
            permutation=tuple(permutation) if permutation else None,
            substitutions=[red.substitution] if red.substitution else [],
            normal_part=red.split.f0,
            remainder=red.split.g,
            residual=red.residual,
            diagonal=red.diagonal,
            notes=[
                f"local algebra basis 1, {var}, ..., {var}^{k - 1} has weighted degrees "
                f"{', '.join(str(d) for d in basis_degrees)}, all < 1: no term above the diagonal",
                "nonzero residual and diagonal coefficients decide the class; no rescaling needed",
            ],
        )
        return _a_class(k, cert, "weights")
    return SingularityClass(DEGENERATE, reason=str(failure), method="weights")


def candidate_weights(f: Poly) -> list[Weights]:
    """Weights (1/n at i, 1/2 elsewhere) from the lowest pure power of each variable."""
    seen = []
    for i in range(f.nvars):
        powers = [e[i] for e in f.terms if e[i] >= 2 and sum(e) == e[i]]
        if not powers:
            continue
        n = min(powers)
        alpha = tuple(Fraction(1, n) if j == i else HALF for j in range(f.nvars))
        cand = (n, i, Weights(alpha))
        if all(c[2] != cand[2] for c in seen):
            seen.append(cand)
    seen.sort(key=lambda c: (-c[0], c[1]))
    return [c[2] for c in seen]


def recognize(f: Poly) -> SingularityClass:
    """Try every inferred weight vector; the first A_k certificate wins."""
    last = SingularityClass(NOT_AK, reason="no variable has a pure power of degree >= 2", method="weights")
    for w in candidate_weights(f):
        cls = recognize_with_weights(f, w)
        if cls.is_Ak:
            return cls
        last = cls
    return last


def corank_at_origin(f: Poly) -> int:
    return f.nvars - linalg.rank(hessian_at_origin(f))


def classify_mu_corank(f: Poly, locus_certificate: GermLocus | None) -> SingularityClass:
    """A_mu when the germ is isolated with Hessian corank <= 1."""
    if locus_certificate is None:
        raise PreconditionError("classification by Milnor number needs a locus certificate")
    if not locus_certificate.isolated_at_origin or locus_certificate.milnor_number is None:
        raise DegenerateError(f"singularity is not certified isolated: {locus_certificate.detail}")
    mu = locus_certificate.milnor_number
    corank = corank_at_origin(f)
    record = {"milnor_number": mu, "corank": corank, "tjurina_number": locus_certificate.tjurina_number}
    if mu == 0:
        return SingularityClass(DEGENERATE, reason="origin is a smooth point", certificate=record, method="mu-corank")
    if corank <= 1:
        return _a_class(mu, record, "mu-corank")
    return SingularityClass(
        NOT_AK,
        reason=f"Hessian corank {corank} >= 2 (not an A_k germ)",
        milnor_number=mu,
        certificate=record,
        method="mu-corank",
    )
