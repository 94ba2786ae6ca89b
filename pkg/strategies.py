from hypothesis import strategies as st

from braid_core import BraidWord, Permutation
from laurent_ring import LaurentPoly
from poly_matrix import IntMatrix, PolyMatrix


def exponent_vectors(nvars, low=-2, high=2):
    return st.tuples(*[st.integers(low, high)] * nvars)


def polys(nvars=2, max_terms=4):
    return st.dictionaries(
        exponent_vectors(nvars), st.integers(-5, 5), max_size=max_terms
    ).map(lambda terms: LaurentPoly(nvars, terms))


def units(nvars=2):
    return st.builds(
        LaurentPoly.monomial, exponent_vectors(nvars, -3, 3), st.sampled_from([1, -1])
    )


def permutations(degree):
    return st.permutations(range(1, degree + 1)).map(Permutation)


def letters(n):
    return st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1]))


def braid_words(n, max_len=10):
    return st.lists(letters(n), max_size=max_len).map(lambda ls: BraidWord(n, ls))


def strands(low=2, high=5):
    return st.integers(low, high)


def int_matrices(size, low=-4, high=4):
    return st.lists(
        st.lists(st.integers(low, high), min_size=size, max_size=size), min_size=size, max_size=size
    ).map(IntMatrix)


def nonzero_points(nvars=2):
    return st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda x: x != 0),
        min_size=nvars, max_size=nvars,
    )


def poly_matrices(size, nvars=2):
    return st.lists(polys(nvars, max_terms=2), min_size=size * size, max_size=size * size).map(
        lambda entries: PolyMatrix([entries[r * size:(r + 1) * size] for r in range(size)])
    )
