from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from residue.algebra.multipoly import MultiPoly
from residue.algebra.unipoly import UniPoly

settings.register_profile(
    "default",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_int = st.integers(-9, 9)
small_frac = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def unipolys(draw, max_degree=6, coeff=small_int, nonzero=False):
    cs = draw(st.lists(coeff, min_size=1, max_size=max_degree + 1))
    p = UniPoly([Fraction(c) for c in cs])
    if nonzero and p.is_zero():
        p = UniPoly([Fraction(1)])
    return p


@st.composite
def multipolys(draw, max_degree=4, max_terms=6, coeff=small_int):
    """Random polynomials in s, t with total degree at most ``max_degree``."""
    n = draw(st.integers(0, max_terms))
    s, t = MultiPoly.var("s"), MultiPoly.var("t")
    p = MultiPoly.constant(0)
    for _ in range(n):
        i = draw(st.integers(0, max_degree))
        j = draw(st.integers(0, max_degree - i))
        p = p + MultiPoly.constant(draw(coeff)) * s**i * t**j
    return p
