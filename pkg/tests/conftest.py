import sys
from fractions import Fraction

from hypothesis import strategies as st

from cp4top.polynomial import Poly

SMALL_VARS = ("x1", "x2", "x3")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def small_polys(draw, variables=SMALL_VARS, max_terms=4, max_exp=3):
    n = len(variables)
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n),
            coeffs.filter(lambda c: c != 0),
            max_size=max_terms,
        )
    )
    return Poly(variables, {e: Fraction(c) for e, c in terms.items()})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.format_line(number))
