"""Deciding when two hypersurfaces with one A_k point are homeomorphic.

Odd index A_{2k+1}: the smooth part has boundary S^2 x S^3 and is decided
by (degree, Milnor number) once H_2 has rank 2 and the degree is
square-free.  Even index A_{2k}: the boundary is S^5, cap it off with a
6-disk and compare the closed manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import chern, surgery
from .errors import DomainError, PreconditionError
from .groebner import LocusReport, germ_locus, is_smooth_affine_curve, unique_projective_singularity
from .lattice import S2xS3, S5, LinkType, link_of_Ak
from .polynomial import X_VARS, Poly, Weights, dehomogenize, parse_poly, specialize, substitute
from .recognition import SingularityClass, classify_mu_corank, recognize_with_weights

HOMEOMORPHIC = "Homeomorphic"
NOT_HOMEOMORPHIC = "NotHomeomorphic"
NOT_APPLICABLE = "NotApplicable"

MU_NOTE = "Milnor number of A_j taken as j (local algebra basis 1, z, ..., z^(j-1))"
MIXED_PARITY = "only equal-parity singularities are compared"
FAMILY_A_NOTE = "surface part taken as F0 = F - x0*x4^2 (homogeneous cubic)"

SURFACE_VARS = X_VARS[:4]
BASE_POINT = (1, 0, 0, 0, 0)


def h2_rank(d: int, k: int) -> int:
    """Rank of H_2 of the smooth part for an A_{2k+1} point on a degree-d hypersurface."""
    if d < 1 or k < 0:
        raise PreconditionError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    return 2 if 2 * d < k + 5 else 1


def is_square_free(d: int) -> bool:
    if d < 1:
        raise PreconditionError(f"square-freeness needs d >= 1, got {d}")
    return all(d % (p * p) for p in range(2, isqrt(d) + 1))


def normalized_q(d: int) -> tuple:
    if not is_square_free(d):
        raise PreconditionError(f"degree {d} is not square-free; the q-form normalization does not apply")
    return ((d, 0), (0, 0))


def dp1_paired(d: int) -> int:
    """<p1 u x, [V]> = (5 - d^2) * <x^3, [V]> = (5 - d^2) * d."""
    return chern.p1_smooth_part(d) * d


def assemble_boundary_invariants(d: int, k: int) -> surgery.ManifoldInvariants:
    """Invariants of the smooth part for a unique A_{2k+1} point (mu = 2k + 1)."""
    if k < 0:
        raise PreconditionError(f"A_(2k+1) needs k >= 0, got {k}")
    mu = 2 * k + 1
    link = link_of_Ak(mu)
    if link.tag != S2xS3:
        raise PreconditionError(f"link of A_{mu} is {link.tag}, not S2xS3")
    rank = h2_rank(d, k)
    if rank != 2:
        raise PreconditionError(f"h2_rank(d={d}, k={k}) = {rank}: need 2d < k + 5")
    if not is_square_free(d):
        raise PreconditionError(f"degree {d} is not square-free")
    return surgery.ManifoldInvariants(
        chi=chern.chi_smooth_part(d, mu),
        dp1=dp1_paired(d),
        q=normalized_q(d),
        w2_spin=chern.is_spin_smooth_part(d),
        cube_x=d,
    )


@dataclass(frozen=True)
class ClosedInvariants:
    chi: int
    p1: int
    w2_spin: bool
    cube: int
    convention: str = surgery.DEFAULT_CONVENTION

    def __post_init__(self):
        if self.cube <= 0:
            raise PreconditionError(f"generator cube must be positive, got {self.cube}")


def assemble_closed_invariants(d: int, k: int) -> ClosedInvariants:
    """Invariants of N = M u D^6 for a unique A_{2k} point."""
    if k < 1:
        raise PreconditionError(f"A_(2k) needs k >= 1, got {k}")
    link = link_of_Ak(2 * k)
    if link.tag != S5:
        raise PreconditionError(f"link of A_{2 * k} is {link.tag}, not S5")
    return ClosedInvariants(
        chi=chern.chi_smooth_part(d, 2 * k) + 1,
        p1=dp1_paired(d),
        w2_spin=chern.is_spin_smooth_part(d),
        cube=d,
    )


@dataclass(frozen=True)
class HypersurfaceRecord:
    degree: int
    k: int
    mu: int
    link: LinkType

    def __post_init__(self):
        if self.degree < 1:
            raise PreconditionError(f"degree must be positive, got {self.degree}")
        if self.k < 1:
            raise PreconditionError(f"A_k needs k >= 1, got {self.k}")
        if self.mu != self.k:
            raise PreconditionError(f"A_{self.k} has Milnor number {self.k}, record says {self.mu}")
        if self.link != link_of_Ak(self.k):
            raise PreconditionError(f"link {self.link} does not match A_{self.k}")

    @classmethod
    def from_ak(cls, degree: int, k: int) -> "HypersurfaceRecord":
        return cls(degree, k, k, link_of_Ak(k))

    def __str__(self) -> str:
        return f"d={self.degree}, A_{self.k}"


@dataclass
class Verdict:
    outcome: str
    reasons: list = field(default_factory=list)
    invariants_compared: tuple | None = None

    def __post_init__(self):
        if self.outcome not in (HOMEOMORPHIC, NOT_HOMEOMORPHIC, NOT_APPLICABLE):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == NOT_APPLICABLE and not self.reasons:
            raise ValueError("NotApplicable needs a reason")


def _odd_hypotheses(r: HypersurfaceRecord, side: str) -> list[str]:
    k = (r.k - 1) // 2
    failures = []
    if r.link.tag != S2xS3:
        failures.append(f"{side}: link is {r.link.tag}, not S2xS3")
    if h2_rank(r.degree, k) != 2:
        failures.append(f"{side}: h2_rank(d={r.degree}, k={k}) = 1 (need 2d < k + 5)")
    if not is_square_free(r.degree):
        failures.append(f"{side}: degree {r.degree} is not square-free")
    return failures


def decide_homeomorphism(r1: HypersurfaceRecord, r2: HypersurfaceRecord) -> Verdict:
    odd1, odd2 = r1.k % 2 == 1, r2.k % 2 == 1
    if odd1 != odd2:
        return Verdict(NOT_APPLICABLE, [MIXED_PARITY, f"left {r1}, right {r2}"])

    if odd1:
        failures = _odd_hypotheses(r1, "left") + _odd_hypotheses(r2, "right")
        if failures:
            return Verdict(NOT_APPLICABLE, failures)
        t1 = assemble_boundary_invariants(r1.degree, (r1.k - 1) // 2)
        t2 = assemble_boundary_invariants(r2.degree, (r2.k - 1) // 2)
        same = r1.degree == r2.degree and r1.mu == r2.mu
        witness = surgery.tuples_equivalent(t1, t2)
        if (witness is not None) != same:
            raise AssertionError(f"invariant tuples disagree with the (d, mu) comparison for {r1} vs {r2}")
        reasons = [MU_NOTE]
        if same:
            reasons.append(f"d and mu agree; tuple witness (eps, m) = {witness}")
        else:
            if r1.degree != r2.degree:
                reasons.append(f"degrees differ: {r1.degree} vs {r2.degree}")
            if r1.mu != r2.mu:
                reasons.append(f"Milnor numbers differ: {r1.mu} vs {r2.mu}")
        return Verdict(HOMEOMORPHIC if same else NOT_HOMEOMORPHIC, reasons, (t1, t2))

    n1 = assemble_closed_invariants(r1.degree, r1.k // 2)
    n2 = assemble_closed_invariants(r2.degree, r2.k // 2)
    same = r1.degree == r2.degree and r1.k == r2.k
    if same != (n1 == n2):
        raise AssertionError(f"closed invariants disagree with the (d, k) comparison for {r1} vs {r2}")
    reasons = [MU_NOTE, "closed manifolds N = M u D^6 compared"]
    if not same:
        if r1.degree != r2.degree:
            reasons.append(f"degrees differ: {r1.degree} vs {r2.degree}")
        if r1.k != r2.k:
            reasons.append(f"indices differ: {r1.k} vs {r2.k}")
    return Verdict(HOMEOMORPHIC if same else NOT_HOMEOMORPHIC, reasons, (n1, n2))


# worked families of cubics


def family_polynomial(family: str, a, b) -> tuple[Poly, Poly]:
    """(F, F0) for family A or B; F0 is the cubic surface in x0..x3."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionError(f"family parameters must be nonzero, got a={a}, b={b}")
    x0, x1, x2, x3, x4 = Poly.gens(X_VARS)
    if family == "A":
        F = x0 * (x4**2 + x1 * x2) + x1 * x3 * (x1 + a * x3) + b * x2**3
        F0 = F - x0 * x4**2
    elif family == "B":
        F0 = x0 * (x2**2 - x1 * x3) + a * x1**3 + b * x3**3
        F = F0 + x1 * x4**2
    else:
        raise PreconditionError(f"unknown family {family!r} (expected A or B)")
    return F, specialize(F0, {"x4": 0})


@dataclass
class Stage:
    name: str
    passed: bool
    detail: str
    data: object = None


@dataclass
class FamilyReport:
    family: str
    a: Fraction
    b: Fraction
    polynomial: Poly
    stages: list = field(default_factory=list)
    classification: SingularityClass | None = None
    locus: LocusReport | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.passed for s in self.stages)

    @property
    def failing_stage(self) -> str | None:
        return next((s.name for s in self.stages if not s.passed), None)


def _curve_stage(name: str, F0: Poly, values: dict) -> Stage:
    g = specialize(F0, values)
    fixed = ", ".join(f"{v}={c}" for v, c in values.items())
    if g.is_constant():
        return Stage(name, not g.is_zero(), f"F0({fixed}) is constant {g}: empty curve")
    smooth = is_smooth_affine_curve(g)
    return Stage(name, smooth, f"F0({fixed}) = {g} is {'smooth' if smooth else 'singular'}")


def _family_a_hypotheses(F0: Poly) -> list[Stage]:
    return [
        _curve_stage("curve x0=0, x1=1", F0, {"x0": 0, "x1": 1}),
        _curve_stage("curve x0=0, x2=1", F0, {"x0": 0, "x2": 1}),
        _curve_stage("curve x0=0, x3=1", F0, {"x0": 0, "x3": 1}),
    ]


def _family_b_hypotheses(F0: Poly) -> list[Stage]:
    stages = []
    germ0 = dehomogenize(F0, "x0")
    cls0 = classify_mu_corank(germ0, germ_locus(germ0))
    stages.append(Stage("surface point is A1", cls0.label() == "A1", f"F0(1, x1, x2, x3) classified {cls0.label()}"))
    curve = specialize(F0, {"x0": 1, "x1": 0})
    loc = germ_locus(curve, check_chart=True)
    ok = loc.isolated_at_origin and loc.unique_in_chart
    stages.append(
        Stage("curve x0=1, x1=0 singular only at origin", ok, f"F0(1, 0, x2, x3) = {curve}: {loc.detail}")
    )
    stages.append(_curve_stage("curve x1=0, x2=1", F0, {"x1": 0, "x2": 1}))
    stages.append(_curve_stage("curve x1=0, x3=1", F0, {"x1": 0, "x3": 1}))
    return stages


def verify_family(family: str, a, b) -> FamilyReport:
    """Run the full certificate chain for one member of family A or B."""
    F, F0 = family_polynomial(family, a, b)
    report = FamilyReport(family, Fraction(a), Fraction(b), F)
    if family == "A":
        report.notes.append(FAMILY_A_NOTE)
    report.notes.append(MU_NOTE)
    stages = report.stages

    surf = unique_projective_singularity(F0, BASE_POINT[:4], SURFACE_VARS)
    stages.append(Stage("surface singular only at [1,0,0,0]", surf.is_unique_at_point, f"mu = {surf.milnor_number_at_point}", surf))
    stages.extend(_family_a_hypotheses(F0) if family == "A" else _family_b_hypotheses(F0))

    locus = unique_projective_singularity(F, BASE_POINT)
    report.locus = locus
    stages.append(Stage("unique singular point [1,0,0,0,0]", locus.is_unique_at_point, "", locus))
    if not locus.is_unique_at_point:
        return report
    stages.append(
        Stage("Milnor number 5", locus.milnor_number_at_point == 5, f"mu = {locus.milnor_number_at_point}")
    )

    germ = locus.germ
    cls = classify_mu_corank(germ, germ_locus(germ))
    stages.append(Stage("mu-corank class A5", cls.label() == "A5", f"classified {cls.label()} {cls.reason}".strip(), cls))
    report.classification = cls

    if family == "B":
        shifted = substitute(germ, {"x3": parse_poly("x3 + x4^2", germ.variables)})
        wcls = recognize_with_weights(shifted, Weights.parse("1/2,1/2,1/2,1/6"))
        stages.append(
            Stage(
                "weights (1/2,1/2,1/2,1/6) after x3 -> x3 + x4^2",
                wcls.label() == "A5",
                f"classified {wcls.label()} {wcls.reason}".strip(),
                wcls,
            )
        )
        if wcls.is_Ak:
            report.classification = wcls

    link = report.classification.link if report.classification.is_Ak else None
    stages.append(Stage("link S2xS3", link is not None and link.tag == S2xS3, f"link {link}"))
    return report


def family_record(report: FamilyReport) -> HypersurfaceRecord:
    if not report.passed:
        raise DomainError(f"family {report.family} check failed at stage {report.failing_stage!r}")
    return HypersurfaceRecord.from_ak(report.polynomial.total_degree(), report.classification.k)
