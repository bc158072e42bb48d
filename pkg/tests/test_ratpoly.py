from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import sylvester_resultant
from quadorbit.algebra import (
    IntPolynomial,
    RatPolynomial,
    discriminant,
    gcd_primitive,
    is_square,
    is_squarefree,
    parse_poly,
    resultant,
    square_in_quadratic_extension,
    squarefree_decomposition,
)


def rp(text):
    return RatPolynomial.from_int(parse_poly(text))


small_int_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(IntPolynomial).filter(
    lambda p: not p.is_zero()
)


class TestSquarefreeDecomposition:
    def test_already_squarefree(self):
        unit, parts = squarefree_decomposition(rp("t^2+t"))
        assert unit == 1
        assert parts == [(rp("t^2+t"), 1)]

    def test_with_square_factor(self):
        unit, parts = squarefree_decomposition(rp("t^3+t^2"))
        assert unit == 1
        assert parts == [(rp("t+1"), 1), (rp("t"), 2)]

    def test_constant(self):
        unit, parts = squarefree_decomposition(RatPolynomial.from_int(5))
        assert unit == 5
        assert parts == []

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            squarefree_decomposition(RatPolynomial.from_int(0))

    def test_multiplicities_strictly_increase(self):
        f = rp("t") * rp("t") * rp("t+1") * rp("t-1") * rp("t-1") * rp("t-1")
        _, parts = squarefree_decomposition(f)
        mults = [m for _, m in parts]
        assert mults == sorted(mults)
        assert len(set(mults)) == len(mults)

    @settings(deadline=None, max_examples=60)
    @given(small_int_polys, small_int_polys, st.integers(1, 3), st.integers(1, 2))
    def test_remultiplication_identity(self, f, g, e1, e2):
        poly = RatPolynomial.from_int(f**e1 * g**e2)
        unit, parts = squarefree_decomposition(poly)
        acc = RatPolynomial.from_coeffs([unit])
        for factor, mult in parts:
            for _ in range(mult):
                acc = acc * factor
        assert acc == poly


class TestIsSquare:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (Fraction(4, 9), True),
            (Fraction(-4, 9), False),
            ("t^2+t", False),
            ("t^2+2t+1", True),
            ("4t^2", True),
            ("2t^2", False),
            ("-t^2", False),
        ],
    )
    def test_examples(self, value, expected):
        arg = rp(value) if isinstance(value, str) else value
        assert is_square(arg) is expected

    @settings(deadline=None, max_examples=40)
    @given(small_int_polys)
    def test_square_of_anything_is_square(self, f):
        assert is_square(RatPolynomial.from_int(f * f))

    @settings(deadline=None, max_examples=40)
    @given(small_int_polys)
    def test_square_times_squarefree_nonsquare(self, f):
        g = parse_poly("t^2+t")  # square-free, nonconstant
        if gcd_primitive(f, g).is_constant():
            assert not is_square(RatPolynomial.from_int(f * f * g))


class TestQuadraticExtension:
    def test_examples(self):
        assert square_in_quadratic_extension(Fraction(2), Fraction(-1)) is False
        assert square_in_quadratic_extension(Fraction(-4), Fraction(-1)) is True
        assert square_in_quadratic_extension(Fraction(9), Fraction(-1)) is True

    def test_rejects_square_modulus(self):
        with pytest.raises(ValueError):
            square_in_quadratic_extension(Fraction(2), Fraction(4))
        with pytest.raises(ValueError):
            square_in_quadratic_extension(Fraction(2), Fraction(0))

    def test_polynomial_side(self):
        # a = t^2 (square): True regardless of m
        assert square_in_quadratic_extension(rp("t^2"), rp("t+1")) is True
        # a = t+1, m = t: neither t+1 nor t(t+1) are squares
        assert square_in_quadratic_extension(rp("t+1"), rp("t")) is False
        # a = t, m = t: t*t = t^2 is a square
        assert square_in_quadratic_extension(rp("t"), rp("t")) is True


class TestResultantDiscriminant:
    def test_examples(self):
        assert resultant(rp("t^2+1"), rp("2t")) == 4
        assert discriminant(rp("t^2+1")) == -4
        assert discriminant(rp("t^4+2t^2+2")) == 512

    def test_quartic_formula_oracle(self):
        # disc(x^4+px^2+q) = 16p^4q - 128p^2q^2 + 256q^3
        for p, q in [(2, 2), (1, 3), (-3, 5), (0, 7)]:
            f = RatPolynomial.from_coeffs([q, 0, p, 0, 1])
            expected = 16 * p**4 * q - 128 * p**2 * q**2 + 256 * q**3
            assert discriminant(f) == expected

    @settings(deadline=None, max_examples=50)
    @given(small_int_polys, small_int_polys)
    def test_sylvester_oracle(self, f, g):
        ours = resultant(RatPolynomial.from_int(f), RatPolynomial.from_int(g))
        assert ours == sylvester_resultant(f.coeffs, g.coeffs)

    @settings(deadline=None, max_examples=50)
    @given(small_int_polys, small_int_polys)
    def test_zero_iff_common_factor(self, f, g):
        r = resultant(RatPolynomial.from_int(f), RatPolynomial.from_int(g))
        common = gcd_primitive(f, g)
        if f.is_constant() or g.is_constant():
            return
        assert (r == 0) == (common.degree > 0)

    def test_zero_inputs_rejected(self):
        with pytest.raises(ValueError):
            resultant(rp("0"), rp("t"))
        with pytest.raises(ValueError):
            discriminant(rp("5"))


class TestGcd:
    def test_basic(self):
        f = parse_poly("t^3+t^2")
        g = parse_poly("t^2+2t+1")
        assert gcd_primitive(f, g) == parse_poly("t+1")

    def test_coprime_certificate(self):
        assert gcd_primitive(parse_poly("t^2+1"), parse_poly("t")).is_constant()

    def test_large_degree_squarefree_certificate(self):
        # gamma_9(0) for the map x^2+t has degree 256; square-freeness via
        # one homomorphic image must stay fast.
        v = parse_poly("t")
        for _ in range(8):
            v = v * v + parse_poly("t")
        assert v.degree == 256
        assert is_squarefree(RatPolynomial.from_int(v))

    @settings(deadline=None, max_examples=40)
    @given(small_int_polys, small_int_polys, small_int_polys)
    def test_gcd_divides_both(self, f, g, h):
        a, b = f * h, g * h
        d = gcd_primitive(a, b)
        assert a.divmod_exact_or_none(d) is not None
        assert b.divmod_exact_or_none(d) is not None
        # h divides the gcd
        assert d.divmod_exact_or_none(h.primitive_part()) is not None

    def test_huge_coefficient_gcd_needs_crt(self):
        # common factor with ~200-bit coefficients forces the multi-prime lift
        h = IntPolynomial((3**130 + 1, 5**87, 1))
        f = h * IntPolynomial((1, 0, 2))
        g = h * IntPolynomial((-4, 1))
        assert gcd_primitive(f, g) == h.primitive_part()
