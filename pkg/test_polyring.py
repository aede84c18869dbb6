import itertools
import random
import unittest

import pytest
from parameterized import parameterized

import config
from errors import ExponentOverflowError, NotDivisibleError, PolynomialSyntaxError, ZeroPolynomialError
from oracle import divisors_bruteforce
from polyring import (
    LaurentPoly2,
    PrimitiveDirection,
    add,
    antipode,
    bounding_box,
    canonicalize,
    collinear_profile,
    div_exact,
    divides,
    f2x_divmod,
    f2x_gcd,
    f2x_mul,
    gcd2,
    is_monomial,
    minkowski_vertices,
    monomial_ratio,
    mul,
    newton,
    parse,
    render,
    shift,
)

SIX_TERM_RULE = "1 + x^-1*y + y + x*y + y^2 + x^-1*y^2"


def _random_poly(rng, box, max_terms):
    points = [(i, j) for i in range(box + 1) for j in range(box + 1)]
    return LaurentPoly2(frozenset(rng.sample(points, rng.randint(1, max_terms))))


class TestParsing(unittest.TestCase):
    """Test the polynomial grammar and its canonical rendering"""

    def test_parse_six_term(self):
        """Test that the six-term rule parses to the expected support"""
        p = parse(SIX_TERM_RULE)
        self.assertEqual(p.support, {(0, 0), (-1, 1), (0, 1), (1, 1), (0, 2), (-1, 2)})

    @parameterized.expand([
        ("zero", "0", set()),
        ("one", "1", {(0, 0)}),
        ("cancel", "x + x", set()),
        ("juxtaposed", "x y^2", None),
        ("implicit_product", "xy^2", {(1, 2)}),
        ("negative", "x^-3*y^-1", {(-3, -1)}),
        ("whitespace", "  1 +   y  ", {(0, 0), (0, 1)}),
    ])
    def test_parse_cases(self, _name, text, expected):
        """Test parser edge cases"""
        if expected is None:
            with self.assertRaises(PolynomialSyntaxError):
                parse(text)
        else:
            self.assertEqual(parse(text).support, expected)

    @parameterized.expand([
        ("bad_leading", "2", 0),
        ("missing_digits", "x^", 2),
        ("dangling_plus", "1 + ", 4),
        ("garbage_after_zero", "0 + x", 2),
    ])
    def test_syntax_error_offset(self, _name, text, offset):
        """Test that syntax errors report the byte offset of the failure"""
        with self.assertRaises(PolynomialSyntaxError) as ctx:
            parse(text)
        self.assertEqual(ctx.exception.offset, offset)
        self.assertEqual(ctx.exception.to_dict()["code"], "syntax")

    def test_exponent_bound(self):
        """Test that exponents beyond the configured bound are rejected"""
        with self.assertRaises(ExponentOverflowError):
            parse(f"x^{config.EXPONENT_BOUND + 1}")

    def test_render_order(self):
        """Test rendering sorts by y-exponent, then x-exponent"""
        self.assertEqual(render(parse(SIX_TERM_RULE)), "1 + x^-1*y + y + x*y + x^-1*y^2 + y^2")
        self.assertEqual(render(LaurentPoly2.zero()), "0")
        self.assertEqual(str(parse("y^-1*x^2")), "x^2*y^-1")

    def test_render_reparses(self):
        """Test that rendered output parses back to the same polynomial"""
        rng = random.Random(config.DEFAULT_SEED)
        for _ in range(50):
            p = shift(_random_poly(rng, 4, 6), rng.randint(-3, 3), rng.randint(-3, 3))
            self.assertEqual(parse(render(p)), p)


class TestRingOperations(unittest.TestCase):
    """Test addition, multiplication and unit handling"""

    def test_fracton_sum(self):
        """Test (x + y) + (1 + xy) = 1 + x + y + xy"""
        self.assertEqual(add(parse("x + y"), parse("1 + x*y")), parse("1 + x + y + x*y"))

    def test_product(self):
        """Test (1 + x)(1 + y) and squaring in characteristic 2"""
        self.assertEqual(mul(parse("1 + x"), parse("1 + y")), parse("1 + x + y + x*y"))
        self.assertEqual(mul(parse("1 + x"), parse("1 + x")), parse("1 + x^2"))
        self.assertEqual(parse("1 + x") * LaurentPoly2.zero(), LaurentPoly2.zero())

    def test_antipode_is_involution(self):
        """Test antipode reverses every exponent"""
        p = parse(SIX_TERM_RULE)
        self.assertEqual(antipode(antipode(p)), p)
        self.assertIn((1, -2), antipode(p).support)

    def test_canonicalize(self):
        """Test canonical representatives have minimum exponents 0"""
        p = canonicalize(parse("x^-2*y^3 + x*y^5"))
        self.assertEqual(bounding_box(p)[0], 0)
        self.assertEqual(bounding_box(p)[2], 0)
        with self.assertRaises(ZeroPolynomialError):
            canonicalize(LaurentPoly2.zero())

    def test_monomial_ratio(self):
        """Test detection of equality up to a monomial unit"""
        p = parse("1 + x*y")
        self.assertEqual(monomial_ratio(shift(p, 3, -1), p), (3, -1))
        self.assertIsNone(monomial_ratio(parse("1 + x"), p))

    def test_is_monomial(self):
        """Test is_monomial"""
        self.assertTrue(is_monomial(parse("x^-4*y")))
        self.assertFalse(is_monomial(parse("1 + y")))

    def test_shift_overflow(self):
        """Test shifting past the 32-bit exponent range is an overflow"""
        edge = LaurentPoly2(frozenset({(2 ** 30, 0)}))
        self.assertEqual(shift(edge, 2 ** 30 - 1, 0).support, frozenset({(2 ** 31 - 1, 0)}))
        with self.assertRaises(ExponentOverflowError):
            shift(edge, 2 ** 30, 0)
        with self.assertRaises(ExponentOverflowError):
            shift(parse("y^-1"), 0, -(2 ** 31))

    def test_antipode_overflow(self):
        """Test the antipode rejects exponents outside the 32-bit range"""
        with self.assertRaises(ExponentOverflowError):
            antipode(LaurentPoly2(frozenset({(0, -(2 ** 31))})))


class TestUnivariate(unittest.TestCase):
    """Test the F2[x] bitmask kernel"""

    def test_mul_and_divmod(self):
        """Test (1 + x)^3 = 1 + x + x^2 + x^3 and exact division back"""
        cube = f2x_mul(0b11, f2x_mul(0b11, 0b11))
        self.assertEqual(cube, 0b1111)
        self.assertEqual(f2x_divmod(cube, 0b11), (0b101, 0))

    def test_gcd(self):
        """Test gcd(1 + x^2, 1 + x^3) = 1 + x"""
        self.assertEqual(f2x_gcd(0b101, 0b1001), 0b11)

    def test_division_by_zero(self):
        """Test dividing by the zero polynomial raises"""
        with self.assertRaises(ZeroDivisionError):
            f2x_divmod(0b101, 0)


class TestDivisionAndGcd(unittest.TestCase):
    """Test exact division and the bivariate GCD"""

    def test_lineon_gcd(self):
        """Test gcd(f, 1 + y + xy) = 1 + y + xy for the six-term rule"""
        f = parse(SIX_TERM_RULE)
        m = parse("1 + y + x*y")
        self.assertEqual(gcd2(f, m), m)
        self.assertEqual(div_exact(f, parse("1 + x^-1*y")), m)

    def test_gcd_of_units(self):
        """Test monomials are units"""
        self.assertEqual(gcd2(parse("x^3*y"), parse("1 + x")), LaurentPoly2.one())
        self.assertEqual(gcd2(parse("1 + x"), LaurentPoly2.zero()), parse("1 + x"))
        with self.assertRaises(ZeroPolynomialError):
            gcd2(LaurentPoly2.zero(), LaurentPoly2.zero())

    def test_not_divisible(self):
        """Test div_exact raises when the quotient is not a polynomial"""
        self.assertFalse(divides(parse("1 + x"), parse("1 + y")))
        with self.assertRaises(NotDivisibleError):
            div_exact(parse("1 + y"), parse("1 + x"))

    def test_division_by_zero(self):
        """Test dividing by zero raises a domain error"""
        with self.assertRaises(ZeroPolynomialError):
            divides(LaurentPoly2.zero(), parse("1 + x"))

    def test_gcd_is_symmetric_and_divides(self):
        """Test gcd(a, b) = gcd(b, a) and divides both inputs"""
        rng = random.Random(config.DEFAULT_SEED + 1)
        for _ in range(100):
            a = _random_poly(rng, 3, 6)
            b = _random_poly(rng, 3, 6)
            g = gcd2(a, b)
            self.assertEqual(g, gcd2(b, a))
            self.assertTrue(divides(g, a) and divides(g, b))

    def test_gcd_of_products(self):
        """Test gcd(a c, b c) is c times gcd(a, b) up to a unit"""
        rng = random.Random(config.DEFAULT_SEED + 2)
        for _ in range(50):
            a, b, c = (_random_poly(rng, 2, 4) for _ in range(3))
            expected = canonicalize(mul(gcd2(a, b), c))
            self.assertEqual(gcd2(mul(a, c), mul(b, c)), expected)

    def test_gcd_invariant_under_sum(self):
        """Test gcd(f, g) = gcd(f, f + g)"""
        rng = random.Random(config.DEFAULT_SEED + 3)
        for _ in range(100):
            f = _random_poly(rng, 3, 6)
            g = _random_poly(rng, 3, 6)
            if f == g:
                continue
            self.assertEqual(gcd2(f, g), gcd2(f, add(f, g)))

    @pytest.mark.slow
    def test_gcd_matches_divisor_search(self):
        """Test gcd2 is the largest common divisor found by exhaustive search"""
        rng = random.Random(config.DEFAULT_SEED + 4)
        for _ in range(200):
            a = _random_poly(rng, 2, 5)
            b = _random_poly(rng, 2, 5)
            common = divisors_bruteforce(a) & divisors_bruteforce(b)
            g = gcd2(a, b)
            self.assertIn(g, common)
            self.assertTrue(all(divides(d, g) for d in common))


class TestNewtonPolygon(unittest.TestCase):
    """Test Newton polygons and collinear profiles"""

    def test_two_dimensional(self):
        """Test the six-term rule has a two-dimensional polygon"""
        self.assertEqual(newton(parse(SIX_TERM_RULE)).dim, 2)

    def test_segment(self):
        """Test 1 + x^-1*y is a segment with the expected endpoints"""
        polygon = newton(parse("1 + x^-1*y"))
        self.assertEqual(polygon.dim, 1)
        self.assertEqual(set(polygon.vertices), {(0, 0), (-1, 1)})

    def test_point(self):
        """Test a monomial has a zero-dimensional polygon"""
        self.assertEqual(newton(parse("x^2*y")).dim, 0)

    def test_hull_drops_interior_points(self):
        """Test interior and edge points are not vertices"""
        square = parse("1 + x^2 + y^2 + x^2*y^2 + x*y + x")
        self.assertEqual(newton(square).vertices, ((0, 0), (2, 0), (2, 2), (0, 2)))

    @parameterized.expand([
        ("anti_diagonal", "1 + x^-1*y", (1, -1), [1, 1]),
        ("gapped", "1 + x^-2*y^2", (1, -1), [1, 0, 1]),
        ("vertical", "y + y^2 + y^4", (0, 1), [1, 1, 0, 1]),
    ])
    def test_collinear_profile(self, _name, text, direction, profile):
        """Test collinear supports become a direction and a profile"""
        self.assertEqual(collinear_profile(parse(text)), (PrimitiveDirection(*direction), profile))

    def test_profile_of_plane(self):
        """Test two-dimensional supports have no profile"""
        self.assertIsNone(collinear_profile(parse("1 + x + y")))

    def test_direction_sign(self):
        """Test directions are stored in canonical sign"""
        self.assertEqual(PrimitiveDirection.of(-2, 2), PrimitiveDirection(1, -1))
        self.assertEqual(PrimitiveDirection.of(0, -3), PrimitiveDirection(0, 1))
        with self.assertRaises(ValueError):
            PrimitiveDirection(-1, 0)

    @pytest.mark.slow
    def test_ostrowski(self):
        """Test Newt(ab) = Newt(a) + Newt(b)"""
        rng = random.Random(config.DEFAULT_SEED + 5)
        for _ in range(200):
            a = _random_poly(rng, 3, 5)
            b = _random_poly(rng, 3, 5)
            expected = minkowski_vertices(newton(a).vertices, newton(b).vertices)
            self.assertEqual(newton(mul(a, b)).vertices, expected)

    @pytest.mark.slow
    def test_newton_dimension_monotone(self):
        """Test dim Newt(ab) is at least the dimension of either factor"""
        rng = random.Random(config.DEFAULT_SEED + 6)
        for _ in range(200):
            a = _random_poly(rng, 3, 5)
            b = _random_poly(rng, 3, 5)
            self.assertGreaterEqual(newton(mul(a, b)).dim, max(newton(a).dim, newton(b).dim))

    def test_vertices_survive_products(self):
        """Test every vertex of a product is a sum of factor vertices"""
        a, b = parse(SIX_TERM_RULE), parse("1 + x^-1*y")
        sums = {(i1 + i2, j1 + j2) for (i1, j1), (i2, j2) in itertools.product(newton(a).vertices, newton(b).vertices)}
        self.assertTrue(set(newton(mul(a, b)).vertices) <= sums)


if __name__ == '__main__':
    unittest.main()
