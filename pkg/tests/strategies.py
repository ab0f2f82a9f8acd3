"""Hypothesis strategies for small exact objects."""

from fractions import Fraction

from hypothesis import strategies as st

from indkit.exactpoly import Polynomial
from indkit.vectorfield import VectorField

rationals = st.builds(
    Fraction,
    st.integers(min_value=-5, max_value=5),
    st.sampled_from([1, 1, 1, 2, 3]),
)
nonzero_rationals = rationals.filter(lambda c: c != 0)


def monomials(n: int, max_degree: int):
    return st.lists(st.integers(min_value=0, max_value=max_degree), min_size=n, max_size=n).filter(
        lambda m: sum(m) <= max_degree
    ).map(tuple)


def polynomials(n: int = 2, max_degree: int = 6, max_terms: int = 4):
    return st.dictionaries(monomials(n, max_degree), rationals, max_size=max_terms).map(
        lambda terms: Polynomial(n, terms)
    )


def fields(n: int = 2, max_degree: int = 4, max_terms: int = 3):
    return st.lists(polynomials(n, max_degree, max_terms), min_size=n, max_size=n).map(VectorField)
