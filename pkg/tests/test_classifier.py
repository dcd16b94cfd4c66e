import itertools
from fractions import Fraction

import pytest

from cp4top.classifier import (
    HOMEOMORPHIC,
    MIXED_PARITY,
    MU_NOTE,
    NOT_APPLICABLE,
    NOT_HOMEOMORPHIC,
    ClosedInvariants,
    HypersurfaceRecord,
    Verdict,
    assemble_boundary_invariants,
    assemble_closed_invariants,
    decide_homeomorphism,
    dp1_paired,
    family_polynomial,
    family_record,
    h2_rank,
    is_square_free,
    normalized_q,
    verify_family,
)
from cp4top.errors import DomainError, PreconditionError
from cp4top.lattice import S2xS3, link_of_Ak
from cp4top.polynomial import X_VARS, parse_poly
from cp4top.surgery import tuples_equivalent

GRID = [Fraction(1), Fraction(-2, 3), Fraction(5)]
GRID_B = [Fraction(1), Fraction(1, 2), Fraction(-3)]


def rec(d, k):
    return HypersurfaceRecord.from_ak(d, k)


def test_h2_rank_examples():
    assert h2_rank(3, 2) == 2
    assert h2_rank(4, 2) == 1
    assert h2_rank(2, 0) == 2


def test_h2_rank_flip_is_exact():
    for k in range(7):
        flip = next(d for d in range(1, 20) if 2 * d >= k + 5)
        assert all(h2_rank(d, k) == 2 for d in range(1, flip))
        assert all(h2_rank(d, k) == 1 for d in range(flip, 20))


def test_square_free():
    assert is_square_free(3) and is_square_free(30) and is_square_free(1)
    assert not is_square_free(4) and not is_square_free(18) and not is_square_free(49)
    with pytest.raises(PreconditionError):
        is_square_free(0)


def test_normalized_q():
    assert normalized_q(3) == ((3, 0), (0, 0))
    assert normalized_q(1) == ((1, 0), (0, 0))
    with pytest.raises(PreconditionError, match="square-free"):
        normalized_q(4)


def test_boundary_invariants_cubic_a5():
    t = assemble_boundary_invariants(3, 2)
    assert t.chi == -2
    assert t.q == ((3, 0), (0, 0))
    assert t.w2_spin is True
    assert t.cube_x == 3
    assert t.dp1 == dp1_paired(3) == -12


def test_boundary_invariants_errors():
    with pytest.raises(PreconditionError, match="h2_rank"):
        assemble_boundary_invariants(4, 2)
    with pytest.raises(PreconditionError, match="square-free"):
        assemble_boundary_invariants(4, 6)


def test_closed_invariants():
    n = assemble_closed_invariants(3, 1)
    assert n == ClosedInvariants(chi=-4, p1=-12, w2_spin=True, cube=3)
    assemble_closed_invariants(1, 1)
    with pytest.raises(PreconditionError):
        assemble_closed_invariants(3, 0)


def test_record_validation():
    assert rec(3, 5).link.tag == S2xS3
    with pytest.raises(PreconditionError):
        HypersurfaceRecord(3, 5, 4, link_of_Ak(5))
    with pytest.raises(PreconditionError):
        HypersurfaceRecord(3, 5, 5, link_of_Ak(4))


def test_verdict_needs_reason():
    with pytest.raises(ValueError):
        Verdict(NOT_APPLICABLE)


def test_decide_examples():
    v = decide_homeomorphism(rec(3, 5), rec(3, 5))
    assert v.outcome == HOMEOMORPHIC and MU_NOTE in v.reasons
    assert v.invariants_compared[0] == assemble_boundary_invariants(3, 2)
    v = decide_homeomorphism(rec(3, 5), rec(2, 3))
    assert v.outcome == NOT_HOMEOMORPHIC
    assert any("degrees differ" in r for r in v.reasons)
    v = decide_homeomorphism(rec(4, 5), rec(4, 5))
    assert v.outcome == NOT_APPLICABLE
    assert any("square-free" in r for r in v.reasons)
    assert any("h2_rank" in r for r in v.reasons)


def test_decide_mixed_parity():
    v = decide_homeomorphism(rec(3, 5), rec(3, 4))
    assert v.outcome == NOT_APPLICABLE and MIXED_PARITY in v.reasons


def test_decide_even_branch():
    v = decide_homeomorphism(rec(3, 2), rec(3, 2))
    assert v.outcome == HOMEOMORPHIC
    assert isinstance(v.invariants_compared[0], ClosedInvariants)
    assert decide_homeomorphism(rec(3, 2), rec(3, 4)).outcome == NOT_HOMEOMORPHIC
    assert decide_homeomorphism(rec(3, 2), rec(5, 2)).outcome == NOT_HOMEOMORPHIC


def test_decide_symmetric_and_consistent_with_tuples():
    records = [rec(d, k) for d in (1, 2, 3, 5, 6) for k in range(1, 10)]
    for r1, r2 in itertools.product(records, repeat=2):
        v = decide_homeomorphism(r1, r2)
        w = decide_homeomorphism(r2, r1)
        assert v.outcome == w.outcome
        if r1 == r2 and v.outcome != NOT_APPLICABLE:
            assert v.outcome == HOMEOMORPHIC
        if v.outcome != NOT_APPLICABLE and r1.k % 2 == 1:
            t1, t2 = v.invariants_compared
            assert (tuples_equivalent(t1, t2) is not None) == (v.outcome == HOMEOMORPHIC)


def test_family_polynomials():
    F, F0 = family_polynomial("A", 1, 1)
    assert F == parse_poly("x0*(x4^2 + x1*x2) + x1*x3*(x1 + x3) + x2^3", X_VARS)
    assert F0.variables == X_VARS[:4] and F0.is_homogeneous() and F0.total_degree() == 3
    F, F0 = family_polynomial("B", 2, 3)
    assert F == parse_poly("x0*(x2^2 - x1*x3) + 2*x1^3 + 3*x3^3 + x1*x4^2", X_VARS)
    with pytest.raises(PreconditionError):
        family_polynomial("A", 0, 1)
    with pytest.raises(PreconditionError):
        family_polynomial("C", 1, 1)


@pytest.mark.parametrize("family", ["A", "B"])
def test_verify_family_grid(family):
    for a, b in itertools.product(GRID, GRID_B):
        report = verify_family(family, a, b)
        assert report.passed, (a, b, report.failing_stage)
        assert report.classification.label() == "A5"
        assert report.locus.milnor_number_at_point == 5
        assert family_record(report) == rec(3, 5)


def test_verify_family_b_uses_weights():
    report = verify_family("B", 1, 1)
    assert report.classification.method == "weights"
    assert any("1/6" in s.name for s in report.stages)


def test_family_record_refuses_failed_report():
    report = verify_family("A", 1, 1)
    report.stages[0].passed = False
    with pytest.raises(DomainError, match="failed at stage"):
        family_record(report)
