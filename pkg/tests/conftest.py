import os

from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def rationals(draw, bound=20, max_den=12):
    return mpq(draw(st.integers(-bound, bound)), draw(st.integers(1, max_den)))


@st.composite
def polys(draw, nvars=8, max_terms=4, max_deg=2):
    from g2verify.exactmath import Poly

    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) if i < nvars else 0 for i in range(8))
        terms[e] = draw(rationals())
    return Poly(terms)


@st.composite
def points8(draw):
    return tuple(draw(rationals(bound=5, max_den=4)) for _ in range(8))
