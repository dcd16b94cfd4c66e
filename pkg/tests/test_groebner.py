from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cp4top.errors import NotZeroDimensionalError, PointNotOnHypersurfaceError, NotHomogeneousError, PreconditionError
from cp4top.groebner import (
    INFINITE,
    MonomialOrder,
    buchberger,
    germ_locus,
    is_smooth_affine_curve,
    local_milnor_number,
    local_multiplicity,
    local_quotient_dimension,
    local_tjurina_number,
    minimal_polynomial,
    standard_monomial_count,
    unique_projective_singularity,
    univariate_eliminant,
)
from conftest import small_polys
from cp4top.polynomial import X_VARS, Z_VARS, Poly, format_poly, gradient, parse_poly, permute_variables

XY = ("x1", "x2")


def P(text, variables=XY):
    return parse_poly(text, variables)


def to_sympy(p: Poly):
    syms = sympy.symbols(p.variables)
    return sympy.sympify(format_poly(p).replace("^", "**"), locals=dict(zip(p.variables, syms))), syms


def sympy_basis(gens, order="grevlex"):
    exprs = [to_sympy(g)[0] for g in gens]
    syms = sympy.symbols(gens[0].variables)
    G = sympy.groebner(exprs, *syms, order=order)
    return sorted(str(sympy.expand(g / sympy.Poly(g, *syms).LC(order=order))) for g in G.exprs)


def ours_as_sympy(gb):
    return sorted(str(sympy.expand(to_sympy(g)[0])) for g in gb.generators)


def test_already_a_basis():
    gb = buchberger([P("x1^2"), P("x2^2")])
    assert gb.generators == (P("x1^2"), P("x2^2"))
    assert standard_monomial_count(gb) == 4


def test_unit_ideal():
    gb = buchberger([P("x1"), P("1 + x1")])
    assert gb.is_unit()
    assert standard_monomial_count(gb) == 0


def test_zero_ideal_and_empty_input():
    gb = buchberger([Poly.constant(0, XY)])
    assert gb.is_zero_ideal()
    assert standard_monomial_count(gb) == INFINITE
    with pytest.raises(PreconditionError):
        buchberger([])


def test_jacobian_of_a5():
    f = parse_poly("z1^6 + z2^2 + z3^2 + z4^2", Z_VARS)
    gb = buchberger(gradient(f))
    assert set(gb.generators) == {parse_poly(t, Z_VARS) for t in ["z1^5", "z2", "z3", "z4"]}
    assert univariate_eliminant(gradient(f), "z1") == parse_poly("z1^5", Z_VARS)


def test_hand_reduction_oracle():
    gb = buchberger([P("x1^2 + x2"), P("x2^2")])
    assert sorted(gb.leading_monomials()) == [(0, 2), (2, 0)]
    assert standard_monomial_count(gb) == 4


def test_eliminants():
    assert univariate_eliminant([P("x1 - 1"), P("x2")], "x1") == P("x1 - 1")
    assert univariate_eliminant([P("x1"), P("x1 + 1")], "x1").is_constant()
    with pytest.raises(NotZeroDimensionalError):
        univariate_eliminant([P("x1*x2")], "x1")


@pytest.mark.parametrize(
    "gens",
    [
        ["x1^2 + x2", "x2^2"],
        ["x1^3 - x2", "x2^2 - x1", "x1*x2 - 1"],
        ["x1^2*x2 - 1/2*x2^2 + x1", "x2^3 - x1^2 + 3"],
        ["x1^4 + x2^3 - 2", "x1*x2^2 - x1^2"],
    ],
)
def test_against_sympy(gens):
    polys = [P(g) for g in gens]
    assert ours_as_sympy(buchberger(polys)) == sympy_basis(polys)
    lex = MonomialOrder("lex")
    assert ours_as_sympy(buchberger(polys, lex)) == sympy_basis(polys, "lex")


@settings(max_examples=25, deadline=None)
@given(
    st.lists(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
            st.integers(-3, 3).filter(bool),
            min_size=1,
            max_size=3,
        ),
        min_size=1,
        max_size=3,
    )
)
def test_buchberger_properties(raw):
    V = ("x1", "x2", "x3")
    gens = [Poly(V, {e: Fraction(c) for e, c in t.items()}) for t in raw]
    gb = buchberger(gens)
    assert gb.s_pairs_reduce_to_zero()
    assert all(gb.contains(g) for g in gens)
    lead = [dict(g.terms)[m] for g, m in zip(gb.generators, gb.leading_monomials())]
    assert all(c == 1 for c in lead)
    assert ours_as_sympy(gb) == sympy_basis(gens)


@pytest.mark.parametrize("k", range(1, 10))
def test_eliminant_agrees_with_minimal_polynomial(k):
    f = parse_poly(f"z1^{k + 1} + z1*z2^2 + z2^2 + z3^2 + z4^2", Z_VARS)
    gens = gradient(f)
    gb = buchberger(gens)
    assert univariate_eliminant(gens, "z1") == minimal_polynomial(gb, "z1")


def test_local_milnor_number_ignores_far_critical_points():
    # x^3 - 3x has Morse points at x = +-1 and none at 0; add a cusp at 0
    f = parse_poly("z1^3 + z2^2 + z3^2 + z4^2 - z1^4", Z_VARS)
    assert standard_monomial_count(buchberger(gradient(f))) == 3
    assert local_milnor_number(f) == 2


FAMILY_A = "x0*(x4^2 + x1*x2) + x1*x3*(x1 + a*x3) + b*x2^3"


def family_a(a, b):
    return parse_poly(FAMILY_A.replace("a*", f"({a})*").replace("b*", f"({b})*"), X_VARS)


@pytest.mark.parametrize("a, b", [(1, 1), ("-2", "1/3")])
def test_family_a_unique_a5(a, b):
    rep = unique_projective_singularity(family_a(a, b), [1, 0, 0, 0, 0])
    assert rep.is_unique_at_point
    assert rep.milnor_number_at_point == 5
    assert rep.tjurina_number_at_point == 5


def test_fermat_cubic_is_smooth():
    F = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", X_VARS)
    rep = unique_projective_singularity(F, [1, -1, 0, 0, 0])
    assert not rep.is_unique_at_point
    assert rep.milnor_number_at_point is None
    assert rep.chart_diagnostics[0].status == "smooth"
    assert all(c.status == "no singular points" for c in rep.chart_diagnostics[1:])


def test_quadric_cone():
    rep = unique_projective_singularity(parse_poly("x1^2 + x2^2 + x3^2 + x4^2", X_VARS), [1, 0, 0, 0, 0])
    assert rep.is_unique_at_point and rep.milnor_number_at_point == 1


def test_two_singular_points_detected():
    # singular at [1,0,0,0,0] and also at [0,1,0,0,0]
    F = parse_poly("x0*x1*x2 + x0*x3^2 + x1*x4^2 + x2^3 + x3^3", X_VARS)
    assert not unique_projective_singularity(F, [1, 0, 0, 0, 0]).is_unique_at_point


def test_locus_errors():
    with pytest.raises(NotHomogeneousError):
        unique_projective_singularity(parse_poly("x0 + x1^2", X_VARS), [1, 0, 0, 0, 0])
    with pytest.raises(PointNotOnHypersurfaceError):
        unique_projective_singularity(parse_poly("x0^2 + x1^2", X_VARS), [1, 0, 0, 0, 0])


@pytest.mark.parametrize("perm", [(0, 2, 1, 3, 4), (0, 4, 3, 2, 1), (0, 3, 1, 4, 2)])
def test_locus_invariant_under_permutation(perm):
    F = family_a(1, 1)
    order = tuple(X_VARS[i] for i in perm)
    G = permute_variables(F, order)
    point = [1, 0, 0, 0, 0]
    rep = unique_projective_singularity(G, point)
    assert rep.is_unique_at_point and rep.milnor_number_at_point == 5


def test_smooth_curves():
    assert is_smooth_affine_curve(parse_poly("x3 + x3^2 + x2^3", ("x2", "x3")))
    assert not is_smooth_affine_curve(parse_poly("x2^2 - x3^3", ("x2", "x3")))
    assert is_smooth_affine_curve(parse_poly("x2", ("x2", "x3")))
    with pytest.raises(PreconditionError):
        is_smooth_affine_curve(Poly.constant(1, ("x2", "x3")))


def test_germ_locus():
    loc = germ_locus(parse_poly("z1^6 + z2^2 + z3^2 + z4^2", Z_VARS), check_chart=True)
    assert loc.isolated_at_origin and loc.unique_in_chart
    assert loc.milnor_number == 5 and loc.tjurina_number == 5
    smooth = germ_locus(parse_poly("z1 + z2^2", Z_VARS))
    assert not smooth.isolated_at_origin and smooth.milnor_number == 0
    line = germ_locus(parse_poly("z2^2 + z3^2 + z4^2", Z_VARS))
    assert not line.isolated_at_origin


def test_local_counts_against_generalized_kernel():
    # the far critical points of z1^3 - z1^4 must not count locally
    for text in ["z1^6 + z2^2 + z3^2 + z4^2", "z1^3 - z1^4 + z2^2 + z3^2 + z4^2", "z1^3 + z2^3 + z1*z2*z3 + z3^2 + z4^2"]:
        f = parse_poly(text, Z_VARS)
        assert local_milnor_number(f) == local_multiplicity(buchberger(gradient(f)))


@settings(max_examples=80, deadline=None)
@given(st.lists(small_polys(XY, max_terms=3, max_exp=4), min_size=2, max_size=3))
def test_local_dimension_matches_generalized_kernel(gens):
    # drop constants so every ideal passes through the origin
    gens = [g - g.constant_term() for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens)
    if gb.is_unit() or not gb.is_zero_dimensional():
        return
    assert local_quotient_dimension(gens) == local_multiplicity(gb)


def test_tjurina_below_milnor_for_non_quasihomogeneous():
    # x^4 + y^5 + x^2*y^3 (plus squares) is not quasihomogeneous: mu = 12, tau = 11
    f = parse_poly("z1^4 + z2^5 + z1^2*z2^3 + z3^2 + z4^2", Z_VARS)
    assert local_milnor_number(f) == 12
    assert local_tjurina_number(f) == 11
