import os

from hypothesis import settings, strategies as st

from flowvol import MultiPoly, MultiplicityMatrix

settings.register_profile("deterministic", derandomize=True, max_examples=60, deadline=None)
settings.register_profile("stress", derandomize=False, max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "deterministic"))


small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
nonzero_fractions = small_fractions.filter(bool)


@st.composite
def multipolys(draw, nvars=None, max_terms=4, max_exp=3):
    n = nvars if nvars is not None else draw(st.integers(min_value=1, max_value=3))
    nterms = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.integers(min_value=0, max_value=max_exp)) for _ in range(n))
        terms[exps] = draw(small_fractions)
    return MultiPoly(n, terms)


@st.composite
def multiplicity_matrices(draw, min_rank=1, max_rank=3, max_mult=3):
    rank = draw(st.integers(min_value=min_rank, max_value=max_rank))
    count = rank * (rank + 1) // 2
    mult = tuple(draw(st.integers(min_value=1, max_value=max_mult)) for _ in range(count))
    return MultiplicityMatrix(rank, mult)


@st.composite
def rational_points(draw, nvars):
    return tuple(draw(small_fractions) for _ in range(nvars))
