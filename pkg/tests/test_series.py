"""
Test rational reconstruction, singularity reports and the L-series analysis
"""

import os
import sys
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.aevw import AevwEvaluator, family_poly
from src.cyclotomic import CycFrac, make_ring
from src.errors import PreconditionError, ReconstructionError
from src.field import make_field
from src.gauss_sums import context_for
from src.selberg import SelbergEngine
from src.series import (LSeriesAnalyzer, PowerSeriesWindow, RationalFn, int_series_quotient,
                        poly_series_product, rational_reconstruct, series_coeffs, singularity_report)


class TestRationalFn(unittest.TestCase):
    """Test the rational-function container."""

    def setUp(self):
        """Use Z[zeta_20]."""
        self.ring = make_ring(20)

    def test_expand_geometric(self):
        """Test 1/(1 - 2X) = sum 2^k X^k."""
        fn = RationalFn([self.ring.one], [self.ring.one, self.ring.from_int(-2)])
        self.assertEqual(fn.expand(5), [1, 2, 4, 8, 16])
        self.assertEqual(fn.degrees, (0, 1))

    def test_stripping_and_normalization(self):
        """Test trailing zeros and den(0) = 1 scaling."""
        one, zero = self.ring.one, self.ring.zero
        fn = RationalFn([one * 2, zero], [one * 2, one, zero])
        self.assertEqual(fn.degrees, (0, 1))
        norm = fn.normalized()
        self.assertEqual(norm.den[0], 1)
        self.assertTrue(norm.matches(fn.expand(4)))

    def test_invalid_denominator(self):
        """Test that den(0) = 0 and an empty denominator are refused."""
        with self.assertRaises(PreconditionError):
            RationalFn([self.ring.one], [self.ring.zero, self.ring.one])
        with self.assertRaises(PreconditionError):
            RationalFn([self.ring.one], [])

    def test_window_needs_values(self):
        """Test that an empty window is refused."""
        with self.assertRaises(PreconditionError):
            PowerSeriesWindow(i0=0, n=1, coeffs=[])


class TestReconstruction(unittest.TestCase):
    """Test exact Pade fits."""

    def setUp(self):
        """Use Z[zeta_20]."""
        self.ring = make_ring(20)

    def test_geometric(self):
        """Test that 1, 2, 4, ... reconstructs as 1/(1 - 2X)."""
        coeffs = [self.ring.from_int(2 ** k) for k in range(7)]
        fn = rational_reconstruct(coeffs, 2, 3)
        self.assertIsNotNone(fn)
        self.assertEqual(fn.degrees, (0, 1))
        self.assertEqual(fn.den[1], -2)

    def test_double_pole_with_root_of_unity(self):
        """Test s_k = (k + 1) zeta^k, which is 1/(1 - zeta X)^2."""
        zeta = self.ring.root_of_unity(1)
        coeffs = [(k + 1) * zeta ** k for k in range(8)]
        fn = rational_reconstruct(coeffs, 2, 3)
        self.assertEqual(fn.degrees, (0, 2))
        self.assertEqual(fn.den[1], -2 * zeta)
        self.assertEqual(fn.den[2], zeta * zeta)

    def test_polynomial(self):
        """Test that a finite sequence gives a constant denominator."""
        one = self.ring.one
        coeffs = [one, one * 3, self.ring.zero, self.ring.zero, self.ring.zero, self.ring.zero, self.ring.zero]
        fn = rational_reconstruct(coeffs, 2, 3)
        self.assertEqual(fn.degrees, (1, 0))

    def test_no_fit(self):
        """Test that a sequence outside the degree bounds gives None."""
        coeffs = [self.ring.from_int(k * k * k + 1) for k in range(6)]
        self.assertIsNone(rational_reconstruct(coeffs, 1, 1))

    def test_short_window(self):
        """Test that too few coefficients raise."""
        with self.assertRaises(ReconstructionError):
            rational_reconstruct([self.ring.one] * 4, 2, 3)


class TestSingularities(unittest.TestCase):
    """Test root location and clustering."""

    def setUp(self):
        """Use Z[zeta_20]."""
        self.ring = make_ring(20)

    def test_double_root_inside(self):
        """Test 1/(1 - 5X)^2: a double root at 1/5, inside |X| < 5^(-1/2)."""
        r = self.ring
        fn = RationalFn([r.one], [r.one, r.from_int(-10), r.from_int(25)])
        report = singularity_report(fn, 5, 1, tol=1e-4, predicted=0.2)
        self.assertEqual(len(report['singularities']), 1)
        self.assertEqual(report['singularities'][0]['multiplicity'], 2)
        self.assertEqual(report['inside_count'], 1)
        self.assertFalse(report['inside_simple'])
        self.assertTrue(report['predicted_matches'])

    def test_simple_root_outside(self):
        """Test 1/(1 - 2X): root 1/2 lies outside |X| < 5^(-1/2)."""
        r = self.ring
        fn = RationalFn([r.one], [r.one, r.from_int(-2)])
        report = singularity_report(fn, 5)
        self.assertAlmostEqual(report['threshold'], 5 ** -0.5)
        self.assertEqual(report['inside_count'], 0)
        self.assertAlmostEqual(report['singularities'][0]['magnitude'], 0.5)
        self.assertNotIn('predicted', report)

    def test_constant_denominator(self):
        """Test that a polynomial has no singularities to report."""
        fn = RationalFn([self.ring.one], [self.ring.one])
        with self.assertRaises(PreconditionError):
            singularity_report(fn, 5)


class TestSeriesHelpers(unittest.TestCase):
    """Test the integer series helpers."""

    def test_quotient_and_product(self):
        """Test 1/(1 - X) = 1 + X + ... and (1 - X)(1 + X + ...) = 1."""
        geometric = int_series_quotient([1], [1, -1], 5)
        self.assertEqual(geometric, [1, 1, 1, 1, 1])
        self.assertEqual(poly_series_product([1, -1], geometric, 5), [1, 0, 0, 0, 0])


class TestLSeries(unittest.TestCase):
    """Test a_i = sum chi1(r/c) and b_i = sum mu(c) chi1(r/c)."""

    def setUp(self):
        """Set up an analyzer over F_5."""
        self.field = make_field(5)
        self.engine = SelbergEngine(self.field)
        self.analyzer = LSeriesAnalyzer(self.engine)
        self.G = self.engine.group
        self.P = self.engine.polys

    def test_constant_r(self):
        """Test r = 1: a_i = q^i and b = 1 - qT."""
        report = self.analyzer.analyze(self.P.one(), self.G.trivial(), max_degree=3)
        self.assertTrue(report['principal'])
        self.assertEqual(report['a'], [1, 5, 25, 125])
        self.assertEqual(report['b'], [1, -5, 0, 0])
        self.assertTrue(report['product_is_one'])
        self.assertTrue(report['b_matches_quotient'])
        self.assertTrue(report['b_matches_product'])

    def test_principal_quotient_form(self):
        """Test r = x with chi1 trivial: b follows the quotient, not the product."""
        report = self.analyzer.analyze(self.P.x(), self.G.trivial())
        self.assertEqual(report['a'], [1, 4, 20])
        self.assertEqual(report['b'], [1, -4, -4])
        self.assertTrue(report['product_is_one'])
        self.assertTrue(report['b_matches_quotient'])
        self.assertFalse(report['b_matches_product'])
        self.assertFalse(report['primitive'])

    def test_even_symbol_trivial_zero(self):
        """Test r = x(x-1), omega: L(T) = 1 - T, whose only zero is the trivial one."""
        r = family_poly(self.P, 1, 1)
        report = self.analyzer.analyze(r, self.G.quadratic())
        self.assertTrue(report['primitive'])
        self.assertTrue(report['even'])
        self.assertEqual(report['a'][:2], [1, -1])
        self.assertEqual(report['a_vanishes_from'], 2)
        self.assertTrue(report['trivial_zero'])
        self.assertEqual(report['inverse_roots'], [])
        self.assertTrue(report['product_is_one'])

    def test_odd_symbol_weil(self):
        """Test r = x(x-1), chi_1: a_1 = chi_1(-1) J(chi_1, chi_1) and |inverse root| = sqrt(q)."""
        r = family_poly(self.P, 1, 1)
        chi = self.G.character(1)
        ctx = context_for(self.field)
        report = self.analyzer.analyze(r, chi)
        self.assertFalse(report['even'])
        self.assertEqual(report['a'][1], self.G.sign(chi) * ctx.jacobi_sum(chi, chi))
        self.assertEqual(len(report['inverse_roots']), 1)
        self.assertAlmostEqual(report['inverse_root_magnitudes'][0], 5 ** 0.5)
        self.assertTrue(report['weil'])
        self.assertTrue(report['product_is_one'])

    def test_zero_r(self):
        """Test that r = 0 is refused."""
        with self.assertRaises(PreconditionError):
            self.analyzer.analyze((), self.G.trivial())


class TestSeriesWindow(unittest.TestCase):
    """Test windows of Selberg sums along a progression."""

    def test_window(self):
        """Test that window entries are the sums at i0 + l n."""
        field = make_field(5)
        engine = SelbergEngine(field)
        G = engine.group
        r = family_poly(engine.polys, 1, 1)
        window = series_coeffs(engine, r, G.character(1), G.quadratic(), 1, 2)
        self.assertEqual(window.n, 2)
        self.assertEqual(window.coeffs[1], engine.selberg(r, G.character(1), G.quadratic(), 3))
        with self.assertRaises(PreconditionError):
            series_coeffs(engine, r, G.character(1), G.quadratic(), 0, 0)

    def test_fraction_entries(self):
        """Test that fitted coefficients compare against fractions."""
        ring = make_ring(20)
        fn = RationalFn([CycFrac(ring.one, ring.from_int(2))], [ring.one])
        self.assertTrue(fn.matches([CycFrac(ring.from_int(2), ring.from_int(4))]))


class TestFamilyWindows(unittest.TestCase):
    """Test brute-force windows of x^e0 (x-1)^e1 against the predicted series and exact fits."""

    def _setup(self, p):
        field = make_field(p)
        ctx = context_for(field).warmup()
        return SelbergEngine(field), AevwEvaluator(ctx), ctx.group

    def test_third_branch_window(self):
        """Test chi1 = chi2 = omega over F_3 at i0 = 0: branch 3 and a denominator of degree 2."""
        engine, ev, G = self._setup(3)
        omega = G.quadratic()
        r = family_poly(engine.polys, 1, 1)
        window = series_coeffs(engine, r, omega, omega, 0, 5)
        predicted, branch = ev.predicted_series(1, 1, omega, omega, 0)
        self.assertEqual(branch, 3)
        self.assertTrue(predicted.matches(window.coeffs))
        fit = rational_reconstruct(window.coeffs, 1, 2)
        self.assertIsNotNone(fit)
        self.assertEqual(fit.degrees, (1, 2))
        self.assertEqual(predicted.degrees, (1, 2))

    def test_non_metaplectic_window(self):
        """Test chi1 = chi_1, chi2 = omega over F_5: a geometric series with a denominator of degree 1."""
        engine, ev, G = self._setup(5)
        chi1, chi2 = G.character(1), G.quadratic()
        r = family_poly(engine.polys, 1, 1)
        window = series_coeffs(engine, r, chi1, chi2, 0, 3)
        predicted, branch = ev.predicted_series(1, 1, chi1, chi2, 0)
        self.assertIsNone(branch)
        self.assertTrue(predicted.matches(window.coeffs))
        fit = rational_reconstruct(window.coeffs, 0, 1)
        self.assertIsNotNone(fit)
        self.assertEqual(fit.degrees, (0, 1))
        self.assertTrue(fit.matches(predicted.expand(6)))

    def test_even_and_odd_branch_windows(self):
        """Test chi1 trivial, chi2 = omega over F_3: branches 1 and 2 with cubic denominators."""
        engine, ev, G = self._setup(3)
        chi1, chi2 = G.trivial(), G.quadratic()
        r = family_poly(engine.polys, 1, 1)
        for i0, length, expected_branch in ((0, 4, 1), (1, 3, 2)):
            window = series_coeffs(engine, r, chi1, chi2, i0, length)
            predicted, branch = ev.predicted_series(1, 1, chi1, chi2, i0)
            self.assertEqual(branch, expected_branch)
            self.assertTrue(predicted.matches(window.coeffs), i0)
            # a (2, 3) fit needs seven terms, past what brute force reaches here
            fit = rational_reconstruct(predicted.expand(7), 2, 3)
            self.assertEqual(fit.degrees, (2, 3), i0)
            self.assertTrue(fit.matches(window.coeffs), i0)


if __name__ == '__main__':
    unittest.main()
