import pytest
from hypothesis import strategies as st

from fthresh import Ideal, make_ring, parse_generators


@pytest.fixture
def r7():
    return make_ring(7, "x,y")


def ideal(ring, text):
    return Ideal(ring, parse_generators(text, ring))


@st.composite
def polys(draw, ring, max_terms=4, max_deg=4):
    n = ring.nvars
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * n),
        st.integers(0, ring.p - 1),
        max_size=max_terms,
    ))
    from fthresh import Poly
    return Poly(ring, terms)
