import cmath
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from anyonsim.cyclotomic import OMEGA, ZETA24, Cyclo24

small = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=8, max_size=8).map(Cyclo24)


def test_root_of_unity_orders():
    assert ZETA24 ** 24 == Cyclo24([1])
    assert ZETA24 ** 12 == Cyclo24([-1])
    assert OMEGA ** 3 == Cyclo24([1])
    assert OMEGA != Cyclo24([1])
    assert 1 + OMEGA + OMEGA ** 2 == Cyclo24()


def test_numeric_value():
    assert abs(complex(ZETA24) - cmath.exp(1j * cmath.pi / 12)) < 1e-15
    assert complex(Cyclo24([Fraction(1, 3)])) == 1 / 3


def test_conjugate_is_inverse_on_roots():
    for k in range(24):
        z = Cyclo24.root(k)
        assert z.conjugate() * z == Cyclo24([1])


@given(small, small)
def test_field_axioms(x, y):
    assert x + y == y + x
    assert x * y == y * x
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9
    assert hash(x + y) == hash(y + x)


@given(small)
def test_inverse(x):
    if x:
        assert x * x.inverse() == Cyclo24([1])
        assert abs(complex(1 / x) * complex(x) - 1) < 1e-9
