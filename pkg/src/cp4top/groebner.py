"""Buchberger's algorithm and the ideal computations built on it.

Everything here is exact over the rationals.  Internally polynomials are
plain ``{exponent tuple: Fraction}`` dicts; the public surface speaks
:class:`~cp4top.polynomial.Poly`.
"""

from __future__ import annotations

import heapq
import itertools
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .errors import (
    DimensionError,
    NotHomogeneousError,
    NotZeroDimensionalError,
    PointNotOnHypersurfaceError,
    PreconditionError,
)
from .polynomial import X_VARS, Poly, dehomogenize, gradient, translate

INFINITE = math.inf


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"grevlex"`` or ``"lex"``; ``priority`` lists variables
    from most to least significant (``None`` means declaration order)."""

    kind: str = "grevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))

    def key(self, variables: Sequence[str]) -> Callable[[tuple], tuple]:
        prio = self.priority if self.priority is not None else tuple(variables)
        if sorted(prio) != sorted(variables):
            raise DimensionError(f"order priority {prio} is not a permutation of {tuple(variables)}")
        idx = tuple(variables.index(v) for v in prio)
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in idx)
        rev = idx[::-1]
        return lambda e: (sum(e), tuple(-e[i] for i in rev))

    @classmethod
    def lex_last(cls, variables: Sequence[str], last: str) -> "MonomialOrder":
        """Lex order eliminating every variable except ``last``."""
        return cls("lex", tuple(v for v in variables if v != last) + (last,))


def _divides(a: tuple, b: tuple) -> bool:
    return all(map(operator.le, a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def _monic(p: dict, key) -> dict:
    lm = max(p, key=key)
    c = p[lm]
    if c == 1:
        return p
    return {e: v / c for e, v in p.items()}


def _reduce(p: dict, basis: list[tuple[dict, tuple]], key) -> dict:
    """Full normal form of ``p`` by monic ``basis`` entries ``(poly, lm)``."""
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, gm in basis:
            if _divides(gm, m):
                shift = tuple(a - b for a, b in zip(m, gm))
                for e, gc in g.items():
                    ne = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(ne, 0) - c * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: dict, fm: tuple, g: dict, gm: tuple) -> dict:
    lcm = _lcm(fm, gm)
    sf = tuple(a - b for a, b in zip(lcm, fm))
    sg = tuple(a - b for a, b in zip(lcm, gm))
    out: dict = {}
    for e, c in f.items():
        ne = tuple(a + b for a, b in zip(e, sf))
        out[ne] = out.get(ne, 0) + c
    for e, c in g.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        v = out.get(ne, 0) - c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial."""

    generators: tuple
    order: MonomialOrder
    variables: tuple

    @property
    def key(self):
        return self.order.key(self.variables)

    def leading_monomials(self) -> list[tuple]:
        key = self.key
        return [max(g.terms, key=key) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def _basis(self):
        key = self.key
        return [(dict(g.terms), max(g.terms, key=key)) for g in self.generators]

    def reduce(self, p: Poly) -> Poly:
        p = p.embed(self.variables) if p.variables != self.variables else p
        return Poly._raw(self.variables, _reduce(dict(p.terms), self._basis(), self.key))

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        lms = self.leading_monomials()
        n = len(self.variables)
        for i in range(n):
            if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
                return False
        return True

    def s_pairs_reduce_to_zero(self) -> bool:
        """Re-check Buchberger's criterion on every pair."""
        basis = self._basis()
        key = self.key
        for (f, fm), (g, gm) in itertools.combinations(basis, 2):
            s = _spoly(f, fm, g, gm)
            if s and _reduce(s, basis, key):
                return False
        return True


def buchberger(gens: Sequence[Poly], order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm (normal strategy).

    Pairs are treated smallest-lcm first; the product and chain criteria skip
    pairs known to reduce to zero.  Zero generators are dropped.
    """
    order = order or MonomialOrder()
    gens = list(gens)
    if not gens:
        raise PreconditionError("buchberger needs at least one generator")
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables:
            raise DimensionError(f"generators live in different rings: {variables} vs {g.variables}")
    key = order.key(variables)

    G: list[dict] = []
    LM: list[tuple] = []
    pairs: set[tuple[int, int]] = set()
    queue: list = []  # heap of (key(lcm), i, j) mirroring ``pairs``

    def add(p: dict) -> None:
        p = _monic(p, key)
        G.append(p)
        LM.append(max(p, key=key))
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))
            heapq.heappush(queue, (key(_lcm(LM[i], LM[k])), i, k))

    for g in gens:
        if g.is_zero():
            continue
        r = _reduce(dict(g.terms), [(G[i], LM[i]) for i in range(len(G))], key)
        if r:
            add(r)
    if any(not any(m) for m in LM):
        return GroebnerBasis((Poly.constant(1, variables),), order, variables)

    while queue:
        _, i, j = heapq.heappop(queue)
        pairs.discard((i, j))
        lcm = _lcm(LM[i], LM[j])
        if len(G[i]) == 1 and len(G[j]) == 1:
            continue  # two monomials
        if all(a == 0 or b == 0 for a, b in zip(LM[i], LM[j])):
            continue  # product criterion
        if any(
            k not in (i, j)
            and _divides(LM[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        s = _spoly(G[i], LM[i], G[j], LM[j])
        if not s:
            continue
        r = _reduce(s, list(zip(G, LM)), key)
        if r:
            if not any(max(r, key=key)):
                return GroebnerBasis((Poly.constant(1, variables),), order, variables)
            add(r)

    # minimalise, then inter-reduce
    keep = []
    for i, m in enumerate(LM):
        if any(
            (j != i and _divides(LM[j], m) and (LM[j] != m or j < i)) for j in range(len(LM))
        ):
            continue
        keep.append(i)
    minimal = [(G[i], LM[i]) for i in keep]
    reduced = []
    for idx, (g, m) in enumerate(minimal):
        others = [b for j, b in enumerate(minimal) if j != idx]
        tail = {e: c for e, c in g.items() if e != m}
        r = _reduce(tail, others, key) if tail else {}
        r[m] = Fraction(1)
        reduced.append((r, m))
    reduced.sort(key=lambda t: key(t[1]), reverse=True)
    return GroebnerBasis(tuple(Poly._raw(variables, g) for g, _ in reduced), order, variables)


def standard_monomials(gb: GroebnerBasis) -> list[tuple] | None:
    """Monomials outside the leading-term ideal, or ``None`` if infinitely many."""
    if gb.is_unit():
        return []
    n = len(gb.variables)
    lms = gb.leading_monomials()
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] > 0 and sum(m) == m[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    out = [
        e
        for e in itertools.product(*(range(b) for b in bounds))
        if not any(_divides(m, e) for m in lms)
    ]
    key = gb.key
    out.sort(key=key)
    return out


def standard_monomial_count(gb: GroebnerBasis):
    """Dimension of the quotient ring; ``math.inf`` when it is infinite."""
    basis = standard_monomials(gb)
    return INFINITE if basis is None else len(basis)


def _as_gb(gens_or_gb, order=None) -> GroebnerBasis:
    if isinstance(gens_or_gb, GroebnerBasis):
        return gens_or_gb
    return buchberger(list(gens_or_gb), order or MonomialOrder())


def univariate_eliminant(gens: Sequence[Poly], var: str) -> Poly:
    """Generator of the ideal's intersection with Q[var], via lex with var last.

    The unit ideal yields the constant 1.
    """
    gens = list(gens)
    variables = gens[0].variables
    gb = buchberger(gens, MonomialOrder())
    if gb.is_unit():
        return Poly.constant(1, variables)
    if not gb.is_zero_dimensional():
        raise NotZeroDimensionalError("ideal is not zero-dimensional; no univariate eliminant")
    lex = buchberger(list(gb.generators), MonomialOrder.lex_last(variables, var))
    for g in reversed(lex.generators):
        if set(g.used_variables()) <= {var}:
            return g
    raise AssertionError("zero-dimensional lex basis without a univariate element")


def _pure_power_exponent(p: Poly, var: str) -> int | None:
    """k if ``p`` is c*var^k with k >= 1, else None."""
    if len(p) != 1:
        return None
    (exps, _), = p.terms.items()
    i = p.variables.index(var)
    if exps[i] >= 1 and sum(exps) == exps[i]:
        return exps[i]
    return None


# multiplication maps on a zero-dimensional quotient


def multiplication_matrix(gb: GroebnerBasis, var: str, basis: list[tuple] | None = None) -> list[list[Fraction]]:
    """Matrix of multiplication by ``var`` on Q[x]/I in the standard-monomial basis."""
    basis = standard_monomials(gb) if basis is None else basis
    if basis is None:
        raise NotZeroDimensionalError("quotient is infinite-dimensional")
    index = {m: k for k, m in enumerate(basis)}
    i = gb.variables.index(var)
    gbasis = gb._basis()
    key = gb.key
    M = [[Fraction(0)] * len(basis) for _ in basis]
    for col, m in enumerate(basis):
        prod = m[:i] + (m[i] + 1,) + m[i + 1:]
        nf = _reduce({prod: Fraction(1)}, gbasis, key)
        for e, c in nf.items():
            M[index[e]][col] = c
    return M


def minimal_polynomial(gb: GroebnerBasis, var: str) -> Poly:
    """Monic minimal polynomial of ``var`` modulo a zero-dimensional ideal.

    Found by linear dependency among normal forms of 1, var, var^2, ...;
    independent of any lex computation.
    """
    basis = standard_monomials(gb)
    if basis is None:
        raise NotZeroDimensionalError("quotient is infinite-dimensional")
    variables = gb.variables
    if not basis:
        return Poly.constant(1, variables)
    index = {m: k for k, m in enumerate(basis)}
    gbasis = gb._basis()
    i = variables.index(var)
    vectors = []
    for k in range(len(basis) + 1):
        mono = tuple(k if j == i else 0 for j in range(len(variables)))
        nf = _reduce({mono: Fraction(1)}, gbasis, gb.key)
        vec = [Fraction(0)] * len(basis)
        for e, c in nf.items():
            vec[index[e]] = c
        vectors.append(vec)
        coeffs = _dependency(vectors)
        if coeffs is not None:
            terms = {}
            for deg, c in enumerate(coeffs):
                if c:
                    terms[tuple(deg if j == i else 0 for j in range(len(variables)))] = c
            return Poly(variables, terms)
    raise AssertionError("no dependency found within the quotient dimension")


def _dependency(vectors: list[list[Fraction]]) -> list[Fraction] | None:
    """Coefficients c with sum c_k v_k = 0 and c_last = 1, if v_last depends on the rest."""
    n = len(vectors)
    dim = len(vectors[0])
    # solve sum_{k<n-1} c_k v_k = -v_{n-1}
    A = [[vectors[k][r] for k in range(n - 1)] + [-vectors[n - 1][r]] for r in range(dim)]
    rows, cols = dim, n - 1
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][cols] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = A[i][cols]
    return sol + [Fraction(1)]


def _matpow(M, k):
    n = len(M)
    R = linalg.identity(n, Fraction(1))
    B = M
    while k:
        if k & 1:
            R = linalg.matmul(R, B)
        k >>= 1
        if k:
            B = linalg.matmul(B, B)
    return R


def local_multiplicity(gb: GroebnerBasis) -> int:
    """Length of the local ring at the origin of a zero-dimensional ideal.

    Q[x]/I splits over its points; the origin's summand is the common
    generalized kernel of all coordinate multiplication maps.
    """
    basis = standard_monomials(gb)
    if basis is None:
        raise NotZeroDimensionalError("quotient is infinite-dimensional")
    D = len(basis)
    if D == 0:
        return 0
    stacked = []
    for v in gb.variables:
        stacked.extend(_matpow(multiplication_matrix(gb, v, basis), D))
    return D - linalg.rank(stacked)


# local algebras at the origin via truncated standard bases

TRUNCATION_ORDERS = (6, 12, 24, 48)


def _local_key(e: tuple) -> tuple:
    return sum(e), e


def _truncated(p: dict, N: int) -> dict:
    return {e: c for e, c in p.items() if sum(e) < N}


def _local_monic(p: dict) -> tuple[tuple, dict]:
    lm = min(p, key=_local_key)
    c = p[lm]
    return lm, {e: v / c for e, v in p.items()}


def _local_reduce(h: dict, basis: list[tuple[tuple, dict]], N: int) -> dict:
    """Reduce the lead of ``h`` until it leaves the basis leads; terms of degree >= N vanish."""
    while h:
        lh, h = _local_monic(h)
        for lg, g in basis:
            if _divides(lg, lh):
                h = _truncated(_spoly(h, lh, g, lg), N)
                break
        else:
            return h
    return h


def truncated_local_leads(gens: Sequence[Poly], N: int) -> list[tuple]:
    """Leading monomials of a standard basis of I + m^N, leads being lowest-degree terms.

    Everything lives in Q[x]/m^N, which has finitely many monomials, so
    reduction terminates.  Pairs with coprime leads are skipped.
    """
    basis: list[tuple[tuple, dict]] = []
    queue: list = []

    def add(p: dict) -> None:
        lm, p = _local_monic(p)
        for i, (lq, _) in enumerate(basis):
            if any(map(min, lm, lq)):
                heapq.heappush(queue, (_local_key(_lcm(lm, lq)), i, len(basis)))
        basis.append((lm, p))

    for g in gens:
        r = _local_reduce(_truncated(dict(g.terms), N), basis, N)
        if r:
            add(r)
    while queue:
        _, i, j = heapq.heappop(queue)
        (li, fi), (lj, fj) = basis[i], basis[j]
        if sum(_lcm(li, lj)) >= N:
            continue
        r = _local_reduce(_truncated(_spoly(fi, li, fj, lj), N), basis, N)
        if r:
            add(r)
    return [lm for lm, _ in basis]


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for i in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - i):
            yield (i,) + rest


def local_quotient_dimension(gens: Sequence[Poly], max_order: int = TRUNCATION_ORDERS[-1]) -> int:
    """dim of the local algebra Q[x]_(x) / (gens) at the origin.

    For N = 6, 12, ... a standard basis of I + m^N is computed.  When its
    leads contain every monomial of degree N-1, m^(N-1) lies in I + m^N and
    so, by Nakayama, in I locally; the standard monomials then count the
    local algebra exactly.  Otherwise the origin is not certified isolated.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensionalError("zero ideal is not zero-dimensional")
    if any(g.constant_term() for g in gens):
        return 0
    n = len(gens[0].variables)
    orders = sorted({o for o in TRUNCATION_ORDERS if o < max_order} | {max_order})
    for N in orders:
        leads = truncated_local_leads(gens, N)

        def standard(e):
            return not any(_divides(lm, e) for lm in leads)

        if any(standard(e) for e in _monomials_of_degree(n, N - 1)):
            continue
        return sum(standard(e) for d in range(N - 1) for e in _monomials_of_degree(n, d))
    raise NotZeroDimensionalError(
        f"m^{max_order - 1} is not in the ideal locally: the origin is not certified isolated"
    )


def local_milnor_number(f: Poly) -> int:
    """Milnor number of the germ of ``f`` at the origin."""
    if f.constant_term():
        raise PreconditionError("origin is not on the germ")
    return local_quotient_dimension(gradient(f))


def local_tjurina_number(f: Poly) -> int:
    if f.constant_term():
        raise PreconditionError("origin is not on the germ")
    return local_quotient_dimension([f] + gradient(f))


# singular loci of projective hypersurfaces and affine germs


@dataclass
class ChartOutcome:
    chart: str
    role: str  # "point" or "complement"
    status: str
    detail: str = ""


@dataclass
class LocusReport:
    is_unique_at_point: bool
    milnor_number_at_point: int | None
    chart_diagnostics: list = field(default_factory=list)
    tjurina_number_at_point: int | None = None
    germ: Poly | None = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.milnor_number_at_point is not None and not self.is_unique_at_point:
            raise ValueError("Milnor number is only reported for a certified unique singularity")


def _certify_origin(gens: list[Poly]) -> tuple[str, str, GroebnerBasis]:
    """Classify the zero set of ``gens``: 'empty', 'origin' or 'other'."""
    gb = buchberger(gens)
    if gb.is_unit():
        return "empty", "ideal is the unit ideal", gb
    if not gb.is_zero_dimensional():
        return "other", "singular locus is positive-dimensional (unsupported)", gb
    details = []
    ok = True
    for v in gb.variables:
        elim = univariate_eliminant(list(gb.generators), v)
        k = _pure_power_exponent(elim, v)
        details.append(f"{v}: {elim}")
        if k is None:
            ok = False
    return ("origin" if ok else "other"), "; ".join(details), gb


def unique_projective_singularity(F: Poly, point: Sequence, ambient: Sequence[str] = X_VARS) -> LocusReport:
    """Decide whether ``point`` is the only singular point of V(F).

    ``ambient`` names the homogeneous coordinates (CP^4 by default).
    """
    ambient = tuple(ambient)
    if F.variables != ambient:
        F = F.embed(ambient)
    if not F.is_homogeneous():
        raise NotHomogeneousError(f"{F} is not homogeneous")
    if F.total_degree() < 2:
        raise PreconditionError("hypersurface degree must be at least 2")
    point = [Fraction(c) for c in point]
    if len(point) != len(ambient):
        raise DimensionError(f"projective point needs {len(ambient)} coordinates")
    if not any(point):
        raise PreconditionError("projective point has all coordinates zero")
    if F.evaluate(dict(zip(ambient, point))) != 0:
        raise PointNotOnHypersurfaceError(f"point {[str(c) for c in point]} is not on V(F)")
    c = next(i for i, p in enumerate(point) if p)
    point = [p / point[c] for p in point]
    chart = ambient[c]
    partials = gradient(F)
    notes = ["singular locus generated by the five partials; F itself is redundant by Euler's relation"]
    diagnostics = []

    # the point's own chart, translated so the point is the origin
    shift = {v: p for v, p in zip(ambient, point) if v != chart and p}
    local = [translate(dehomogenize(g, chart), shift) for g in partials]
    germ = translate(dehomogenize(F, chart), shift)
    status, detail, gb = _certify_origin(local)
    unique = status == "origin"
    if status == "empty":
        diagnostics.append(ChartOutcome(chart, "point", "smooth", "no singular point in this chart"))
    elif status == "origin":
        diagnostics.append(ChartOutcome(chart, "point", "singular only at the point", detail))
    else:
        diagnostics.append(ChartOutcome(chart, "point", "other singular points", detail))

    # remaining charts restricted to the hyperplane where the point's chart coordinate vanishes
    for i, v in enumerate(ambient):
        if i == c:
            continue
        gens = [dehomogenize(g, v) for g in partials]
        gens.append(Poly.gen(chart, gens[0].variables))
        gb_i = buchberger(gens)
        if gb_i.is_unit():
            diagnostics.append(ChartOutcome(v, "complement", "no singular points", f"{chart} = 0 slice is smooth"))
        else:
            unique = False
            diagnostics.append(
                ChartOutcome(v, "complement", "singular points", f"basis: {[str(g) for g in gb_i.generators]}")
            )

    mu = tau = None
    if unique:
        tau = standard_monomial_count(gb)
        mu = local_milnor_number(germ)
    return LocusReport(unique, mu, diagnostics, tau, germ, notes)


@dataclass
class GermLocus:
    """Certificate for the singular point of an affine germ at the origin.

    ``isolated_at_origin`` rests on a finite local Milnor number;
    ``unique_in_chart`` on pure-power eliminants of (f, grad f) and is
    None when that global check was not requested.
    """

    isolated_at_origin: bool
    unique_in_chart: bool | None
    detail: str
    milnor_number: int | None = None
    tjurina_number: int | None = None


def germ_locus(f: Poly, check_chart: bool = False) -> GermLocus:
    """Local certificate at the origin; ``check_chart`` adds the global pure-power test."""
    if f.constant_term():
        raise PreconditionError("origin is not on the germ")
    unique = None
    detail = "local algebra of the Jacobian ideal is finite-dimensional"
    if check_chart:
        status, chart_detail, _ = _certify_origin([f] + gradient(f))
        unique = status == "origin"
        detail = chart_detail
    try:
        mu = local_milnor_number(f)
    except NotZeroDimensionalError as exc:
        return GermLocus(False, unique, f"not isolated: {exc}")
    if mu == 0:
        return GermLocus(False, unique, "origin is a smooth point", 0, 0)
    return GermLocus(True, unique, detail, mu, local_tjurina_number(f))


def is_smooth_affine_curve(g: Poly) -> bool:
    """True iff (g, dg/dx_i) generate the unit ideal."""
    if g.is_constant():
        raise PreconditionError("constant polynomial does not define a curve")
    used = g.used_variables()
    if not 1 <= len(used) <= 3:
        raise DimensionError(f"expected a curve in 2 or 3 variables, got {used}")
    return buchberger([g] + gradient(g)).is_unit()
