from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nearvec import charmix, gf
from nearvec.errors import ZeroArgument
from nearvec.charmix import MixedVector, RatFunc3, mixed_vector, sigma

rationals = st.builds(lambda n, d, neg: Fraction(-n if neg else n, d),
                      st.integers(1, 500), st.integers(1, 60), st.booleans())
polys = st.lists(st.integers(0, 2), max_size=4)


def ratfunc(num, den=(1,)):
    return RatFunc3(tuple(num), tuple(den))


def test_sigma_examples():
    assert str(sigma(2)) == "t"
    assert str(sigma(3)) == "t+1"
    assert str(sigma(6)) == "t^2+t"
    assert str(sigma(Fraction(-1, 2))) == "2/t"
    assert sigma(-1) == RatFunc3.const(2)
    assert sigma(1) == RatFunc3.const(1)
    with pytest.raises(ZeroArgument):
        sigma(0)


def test_primes_go_to_irreducibles_in_order():
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23]
    images = [sigma(p) for p in primes]
    assert all(im.den == (1,) for im in images)
    assert len({im.num for im in images}) == len(primes)
    # the i-th prime goes to the i-th monic irreducible in enumeration order
    assert [im.num for im in images] == gf.irreducibles_enum(3, 3)[:len(primes)]
    assert [str(im) for im in images[:3]] == ["t", "t+1", "t+2"]


@given(rationals, rationals)
def test_sigma_is_multiplicative(a, b):
    assert sigma(a * b) == sigma(a) * sigma(b)
    assert sigma(a / b) == sigma(a) / sigma(b)


@given(polys, polys.filter(lambda p: any(p)))
def test_ratfunc_field_laws(n, d):
    x = ratfunc(gf.poly_trim(n) or (), gf.poly_trim(d))
    one = RatFunc3.const(1)
    assert x.den[-1] == 1
    assert x * one == x and x + RatFunc3(()) == x
    assert (x - x).is_zero
    if not x.is_zero:
        assert x * x.inverse() == one


@given(polys, polys.filter(lambda p: any(p)))
def test_ratfunc_print_parse_roundtrip(n, d):
    x = ratfunc(gf.poly_trim(n) or (), gf.poly_trim(d))
    if not x.is_zero:
        assert charmix.parse_ratfunc3(str(x)) == x


def test_parsers():
    assert charmix.parse_poly3("t^2 + 2*t + 1") == (1, 2, 1)
    assert charmix.parse_poly3("-t") == (0, 2)
    assert charmix.parse_ratfunc3("(t^2+1)/(2t)") == ratfunc((2, 0, 2), (0, 1))
    assert charmix.parse_rational("-3/4") == Fraction(-3, 4)
    assert charmix.parse_rational_sum("1+.-1/2+.3") == [1, Fraction(-1, 2), 3]
    for bad in ("", "2*", "t^", "x"):
        with pytest.raises(ValueError):
            charmix.parse_poly3(bad)


def test_mixed_action():
    v = mixed_vector(1, "t")
    assert str(charmix.mixed_act(2, v)) == "(2, t^2)"
    assert str(charmix.mixed_act(Fraction(-1, 2), v)) == "(-1/2, 2)"
    assert charmix.is_additive_on(Fraction(5, 3), [v, mixed_vector(2, 1), mixed_vector(0, "t+1")])


def test_rationals_by_height():
    assert charmix.rationals_by_height(1) == [1, -1]
    assert charmix.rationals_by_height(2)[:2] == [1, -1]
    h3 = charmix.rationals_by_height(3)
    assert len(h3) == len(set(h3)) and all(max(abs(q.numerator), q.denominator) <= 3 for q in h3)
    with pytest.raises(ValueError):
        charmix.qk_refute(mixed_vector(1, 1), 0)


def test_qk_refute():
    # 1 + 1 = 2 in Q but sigma(1) + sigma(1) = 2 != t = sigma(2)
    assert charmix.qk_refute(mixed_vector(1, 1)) == (1, 1)
    assert charmix.qk_refute(mixed_vector(Fraction(3, 7), "t^2+1")) is not None
    assert charmix.qk_refute(mixed_vector(0, "t")) is None
    assert charmix.qk_refute(mixed_vector(5, 0)) is None


def test_fbar_demo():
    d = charmix.fbar_demo("1+.1", mixed_vector(1, 1))
    assert str(d.image) == "(2, 2)" and d.automorphism
    d = charmix.fbar_demo([1, 1, 1], mixed_vector(1, "t"))
    assert str(d.image) == "(3, 0)" and not d.automorphism
    assert d.as_dict() == {"image": "(3, 0)", "multipliers": ["3", "0"], "automorphism": False}
    d = charmix.fbar_demo("2+.-2", mixed_vector(1, 1))
    # sigma(2) + sigma(-2) = t + 2t = 0 in characteristic 3
    assert str(d.image) == "(0, 0)" and not d.automorphism


@given(st.lists(rationals, min_size=1, max_size=5), rationals, polys.filter(lambda p: any(p)))
def test_demo_is_pointwise_sum(terms, a, p):
    v = MixedVector(a, ratfunc(gf.poly_trim(p)))
    total = MixedVector(Fraction(0), RatFunc3(()))
    for lam in terms:
        total = total + charmix.mixed_act(lam, v)
    assert charmix.fbar_demo(terms, v).image == total
