import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cp4top.errors import DegenerateError, NotSemiquasihomogeneousError, PreconditionError
from cp4top.groebner import germ_locus
from cp4top.lattice import link_of_Ak
from cp4top.polynomial import X_VARS, Z_VARS, Poly, Weights, dehomogenize, parse_poly, substitute, weighted_degree
from cp4top.recognition import (
    DEGENERATE,
    NOT_AK,
    SingularityClass,
    classify_mu_corank,
    lagrange_diagonalize,
    recognize,
    recognize_with_weights,
    reduce_degree_one_part,
    replay_certificate,
    sqh_split,
)
from cp4top import linalg

Z = Z_VARS
A5_WEIGHTS = Weights.parse("1/6,1/2,1/2,1/2")


def z(text):
    return parse_poly(text, Z)


def ak_weights(k):
    return Weights((Fraction(1, k + 1), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))


def test_sqh_split_examples():
    s = sqh_split(z("z1^6 + z2^2 + z3^2 + z4^2 + z1^7"), A5_WEIGHTS)
    assert s.f0 == z("z1^6 + z2^2 + z3^2 + z4^2")
    assert s.g == z("z1^7")
    with pytest.raises(NotSemiquasihomogeneousError):
        sqh_split(z("z1"), A5_WEIGHTS)
    with pytest.raises(NotSemiquasihomogeneousError):
        sqh_split(z("z1^7 + z2^3"), A5_WEIGHTS)


def test_family_b_chart_is_semiquasihomogeneous():
    F = parse_poly("x0*(x2^2 - x1*x3) + x1^3 + x3^3 + x1*x4^2", X_VARS)
    f = dehomogenize(F, "x0")
    g = substitute(f, {"x3": parse_poly("x3 + x4^2", f.variables)})
    s = sqh_split(g, Weights.parse("1/2,1/2,1/2,1/6"))
    assert s.f0 + s.g == g
    assert all(weighted_degree(e, s.weights) > 1 for e in s.g.terms)


def test_reduce_normal_form_unchanged():
    for m in (1, 2, 3):
        s = sqh_split(z(f"z1^{2 * m} + z2^2 + z3^2 + z4^2"), ak_weights(2 * m - 1))
        r = reduce_degree_one_part(s)
        assert r.residual == 1
        assert r.split.f0 == s.f0


def test_reduce_completes_the_square():
    f = z("z1^4 + z1^2*z2 + z2^2 + z3^2 + z4^2")
    r = reduce_degree_one_part(sqh_split(f, ak_weights(3)))
    assert r.residual == Fraction(3, 4)
    assert r.substitution == {"z2": z("z2 - 1/2*z1^2")}
    # oracle: expand the substitution directly
    assert substitute(f, r.substitution) == z("3/4*z1^4 + z2^2 + z3^2 + z4^2")


def test_reduce_detects_cancelled_top_term():
    f = z("(z1^2 + z2)^2 + z3^2 + z4^2")
    with pytest.raises(DegenerateError):
        reduce_degree_one_part(sqh_split(f, ak_weights(3)))


def test_reduce_rank_deficient_quadratic():
    f = z("z1^4 + z2^2 + z3^2")
    with pytest.raises(DegenerateError):
        reduce_degree_one_part(sqh_split(f, ak_weights(3)))


def test_reduce_is_idempotent():
    f = z("z1^4 + z1^2*z2 - z1^2*z4 + z2*z3 + z4^2 + z1^5*z3")
    r = reduce_degree_one_part(sqh_split(f, ak_weights(3)))
    again = reduce_degree_one_part(r.split)
    assert again.split == r.split and again.residual == r.residual and again.substitution == {}


@settings(max_examples=60)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_lagrange_diagonalize_is_a_congruence(entries):
    a, b, c, d, e, f = map(Fraction, entries)
    A = [[a, b, c], [b, d, e], [c, e, f]]
    P, D = lagrange_diagonalize(A)
    assert linalg.det(P) != 0
    PtAP = linalg.matmul(linalg.matmul(linalg.transpose(P), A), P)
    assert PtAP == [[D[i] if i == j else 0 for j in range(3)] for i in range(3)]
    assert sum(1 for x in D if x) == linalg.rank(A)


def test_hyperbolic_fallback():
    P, D = lagrange_diagonalize([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert sorted(D) == [-2, 0, 2] or sorted(D) == [Fraction(-1, 2), 0, 2]
    assert sum(1 for x in D if x) == 2


def test_recognize_examples():
    c = recognize_with_weights(z("z1^6 + z2^2 + z3^2 + z4^2"), A5_WEIGHTS)
    assert c.label() == "A5" and c.milnor_number == 5 and c.link == link_of_Ak(5)
    c = recognize_with_weights(z("z4^6 + z1^2 + z2^2 + z3^2"), A5_WEIGHTS, ("z4", "z1", "z2", "z3"))
    assert c.label() == "A5"
    assert replay_certificate(z("z4^6 + z1^2 + z2^2 + z3^2"), c.certificate)


def test_recognize_family_b():
    F = parse_poly("x0*(x2^2 - x1*x3) + x1^3 + x3^3 + x1*x4^2", X_VARS)
    f = dehomogenize(F, "x0")
    g = substitute(f, {"x3": parse_poly("x3 + x4^2", f.variables)})
    c = recognize_with_weights(g, Weights.parse("1/2,1/2,1/2,1/6"))
    assert c.label() == "A5"
    assert c.certificate.distinguished == "x4"
    assert replay_certificate(g, c.certificate)


def test_recognize_failures():
    assert recognize_with_weights(z("z1^3 + z2^3 + z3^2 + z4^2"), A5_WEIGHTS).tag == NOT_AK
    assert recognize_with_weights(z("(z1^3 + z2)^2 + z3^2 + z4^2"), A5_WEIGHTS).tag == DEGENERATE
    assert recognize_with_weights(z("z1^6 + z2^2"), Weights.parse("1/6,1/3,1/2,1/2")).tag == NOT_AK


def test_recognize_infers_weights():
    assert recognize(z("z3^2 + z1^2 + z4^8 + z2^2 + z1*z4^5")).label() == "A7"


def test_classify_mu_corank_examples():
    f = parse_poly("x4^2 + x1*x2 + x1^2*x3 + x1*x3^2 + x2^3", X_VARS[1:])
    c = classify_mu_corank(f, germ_locus(f))
    assert c.label() == "A5" and c.certificate["corank"] == 1
    f = z("z1^2 + z2^2 + z3^2 + z4^2")
    c = classify_mu_corank(f, germ_locus(f))
    assert c.label() == "A1" and c.certificate["corank"] == 0
    f = z("z1^3 + z2^3 + z3^2 + z4^2")
    c = classify_mu_corank(f, germ_locus(f))
    assert c.tag == NOT_AK and "corank 2" in c.reason
    with pytest.raises(PreconditionError):
        classify_mu_corank(f, None)
    with pytest.raises(DegenerateError):
        f = z("z2^2 + z3^2 + z4^2")
        classify_mu_corank(f, germ_locus(f))


def test_singularity_class_invariants():
    with pytest.raises(ValueError):
        SingularityClass("A", 5, milnor_number=4, link=link_of_Ak(5))
    with pytest.raises(ValueError):
        SingularityClass("A", 5, milnor_number=5, link=link_of_Ak(4))


def high_terms(rng, k, count):
    """``count`` random monomials of weighted degree > 1 for weights (1/(k+1), 1/2, 1/2, 1/2)."""
    w = ak_weights(k)
    out = {}
    while len(out) < count:
        e = (rng.randint(0, k + 3), rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2))
        if weighted_degree(e, w) > 1 and sum(e) <= k + 4:
            out[e] = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3))
    return Poly(Z, out)


@pytest.mark.parametrize("k", range(1, 10))
def test_recognition_invariance(k):
    rng = random.Random(1000 + k)
    base = z(f"z1^{k + 1} + z2^2 + z3^2 + z4^2")
    w = ak_weights(k)
    for perm in itertools.permutations(("z2", "z3", "z4")):
        scale = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(4)]
        f = permute_rest(base, perm)
        f = substitute(f, {v: Poly.gen(v, Z) * c for v, c in zip(Z, scale)})
        f = f + high_terms(rng, k, 5)
        c = recognize_with_weights(f, w)
        assert c.label() == f"A{k}"
        assert replay_certificate(f, c.certificate)
        m = classify_mu_corank(f, germ_locus(f))
        assert m.label() == f"A{k}"


def permute_rest(f, perm):
    return substitute(f, {old: Poly.gen(new, Z) for old, new in zip(("z2", "z3", "z4"), perm)})
