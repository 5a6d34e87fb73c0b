"""
Test the brute-force Selberg engine and its identities
"""

import json
import os
import sys
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.aevw import family_poly
from src.errors import BudgetExceededError, PoleClashError, PreconditionError
from src.field import make_field
from src.selberg import RationalArg, SelbergEngine, SelbergParams, split_range

GOLDEN = os.path.join(os.path.dirname(__file__), 'golden', 'integer_values.json')


class TestSplitRange(unittest.TestCase):
    """Test index partitioning."""

    def test_partitions_cover_range(self):
        """Test that ranges are contiguous, nonempty and cover [0, total)."""
        for total in (1, 7, 25, 125):
            for parts in (1, 2, 3, 8, 200):
                ranges = split_range(total, parts)
                self.assertEqual(ranges[0][0], 0)
                self.assertEqual(ranges[-1][1], total)
                for (a, b), (c, _) in zip(ranges, ranges[1:]):
                    self.assertEqual(b, c)
                self.assertTrue(all(b > a for a, b in ranges))
                self.assertLessEqual(len(ranges), parts)

    def test_empty_range(self):
        """Test the degenerate total of zero."""
        self.assertEqual(split_range(0, 4), [(0, 0)])


class TestSelbergValues(unittest.TestCase):
    """Test Se against values derivable by hand."""

    def setUp(self):
        """Set up an engine over F_5."""
        self.field = make_field(5)
        self.engine = SelbergEngine(self.field)
        self.G = self.engine.group
        self.P = self.engine.polys
        with open(GOLDEN, 'r') as f:
            self.golden = json.load(f)

    def test_low_degrees(self):
        """Test Se = 0 for i < 0 and Se = 1 for i = 0."""
        r = family_poly(self.P, 1, 1)
        chi1, chi2 = self.G.character(1), self.G.character(3)
        self.assertTrue(self.engine.selberg(r, chi1, chi2, -1).is_zero())
        self.assertEqual(self.engine.selberg(r, chi1, chi2, 0), 1)

    def test_squarefree_counts(self):
        """Test Se(1, 1, omega, i) = (-1)^i #squarefree and Se(1, 1, 1, i) = sum of mu."""
        G, P = self.G, self.P
        trivial, omega = G.trivial(), G.quadratic()
        for i, expected in enumerate(self.golden['selberg_one_trivial_quadratic']):
            self.assertEqual(self.engine.selberg(P.one(), trivial, omega, i), expected, i)
        for i, expected in enumerate(self.golden['selberg_one_trivial_trivial']):
            self.assertEqual(self.engine.selberg(P.one(), trivial, trivial, i), expected, i)

    def test_degree_one_counts_roots(self):
        """Test Se(x(x-1), 1, 1, 1) = -(q - 2)."""
        r = family_poly(self.P, 1, 1)
        trivial = self.G.trivial()
        self.assertEqual(self.engine.selberg(r, trivial, trivial, 1),
                         self.golden['selberg_family11_trivial_trivial_i1'])

    def test_degree_one_is_jacobi(self):
        """Test Se(x^e0 (x-1)^e1, chi1, chi2, 1) = -chi1(-1)^e1 J(chi1^e0, chi1^e1)."""
        from src.gauss_sums import context_for
        ctx = context_for(self.field)
        for e0, e1 in ((1, 1), (1, 2), (2, 3)):
            r = family_poly(self.P, e0, e1)
            for chi1 in self.G.all_characters():
                for chi2 in self.G.all_characters():
                    expected = -(self.G.sign(chi1) ** e1) * ctx.jacobi_sum(chi1 ** e0, chi1 ** e1)
                    self.assertEqual(self.engine.selberg(r, chi1, chi2, 1), expected)

    def test_bruteforce_result(self):
        """Test the metadata of a brute-force evaluation."""
        G, P = self.G, self.P
        params = SelbergParams(r=family_poly(P, 1, 1), chi1=G.character(1), chi2=G.quadratic(), i=2)
        result = self.engine.selberg_bruteforce(params)
        self.assertEqual(result.count_enumerated, 25)
        self.assertEqual((result.n, result.n_prime), (2, 4))
        self.assertEqual(result.case, 'general')
        self.assertIsNone(result.f0)
        self.assertEqual(result.value, self.engine.selberg(params.r, params.chi1, params.chi2, 2))

        family = SelbergParams(r=params.r, chi1=G.quadratic(), chi2=G.quadratic(), i=2, family=(1, 1))
        info = self.engine.selberg_bruteforce(family)
        self.assertEqual(info.case, 'metaplectic')
        self.assertEqual((info.f0, info.f1), (1, 1))
        trivial = SelbergParams(r=params.r, chi1=G.character(1), chi2=G.trivial(), i=1)
        self.assertEqual(self.engine.selberg_bruteforce(trivial).case, 'n-equals-1')


class TestEngineControls(unittest.TestCase):
    """Test budget, poles and partitioning."""

    def setUp(self):
        """Set up an engine over F_3."""
        self.field = make_field(3)
        self.engine = SelbergEngine(self.field)
        self.G = self.engine.group
        self.P = self.engine.polys

    def test_budget(self):
        """Test that q^i above the budget raises before enumerating."""
        engine = SelbergEngine(self.field, term_budget=10)
        with self.assertRaises(BudgetExceededError) as ctx:
            engine.selberg(self.P.x(), self.G.trivial(), self.G.trivial(), 3)
        self.assertEqual(ctx.exception.terms, 27)
        self.assertEqual(engine.selberg(self.P.x(), self.G.trivial(), self.G.trivial(), 2).ring.N, 6)

    def test_zero_argument(self):
        """Test that r = 0 is refused."""
        with self.assertRaises(PreconditionError):
            self.engine.selberg((), self.G.trivial(), self.G.trivial(), 1)

    def test_pole_policies(self):
        """Test that a pole clash raises under 'error' and drops the term under 'vanish'."""
        P, G = self.P, self.G
        arg = RationalArg(factors=((P.linear(1), 1), (P.x(), -1)))
        chi = G.quadratic()
        with self.assertRaises(PoleClashError):
            self.engine.selberg(arg, chi, G.trivial(), 1)
        value = self.engine.selberg(arg, chi, G.trivial(), 1, pole_policy='vanish')
        # only c = x - 2 meets neither factor: -chi((2-1)/2) = -chi(2) = 1
        self.assertEqual(value, 1)
        with self.assertRaises(PreconditionError):
            self.engine.selberg(arg, chi, G.trivial(), 1, pole_policy='ignore')

    def test_numerator_zero_wins_over_pole(self):
        """Test that a term whose numerator vanishes is dropped before its pole is seen."""
        P, G = self.P, self.G
        arg = RationalArg(factors=((P.x(), -1), (P.x(), 1)))
        value = self.engine.selberg(arg, G.quadratic(), G.trivial(), 1)
        self.assertEqual(value, -2)

    def test_partition_independence(self):
        """Test that splitting the enumeration does not change the value."""
        P, G = self.P, self.G
        r = family_poly(P, 1, 2)
        chi1, chi2 = G.quadratic(), G.quadratic()
        reference = self.engine.selberg(r, chi1, chi2, 4)
        for parts in (2, 3, 7):
            self.assertEqual(self.engine.selberg(r, chi1, chi2, 4, partitions=parts), reference)

    def test_worker_processes(self):
        """Test that a process pool gives the in-process value."""
        P, G = self.P, self.G
        r = family_poly(P, 1, 1)
        serial = self.engine.selberg(r, G.quadratic(), G.quadratic(), 3)
        pooled = SelbergEngine(self.field, threads=2).selberg(r, G.quadratic(), G.quadratic(), 3)
        self.assertEqual(pooled, serial)


class TestIdentities(unittest.TestCase):
    """Test scaling, stability, the Moebius-transformation formula and Pellet substitution."""

    def setUp(self):
        """Set up an engine over F_5."""
        self.field = make_field(5)
        self.engine = SelbergEngine(self.field)
        self.G = self.engine.group
        self.P = self.engine.polys

    def test_scaling(self):
        """Test Se(theta r_o^a) = chi1(theta)^i Se(r_o, chi1^a)."""
        P, G, F = self.P, self.G, self.field
        r_o = family_poly(P, 1, 1)
        for a in (1, 2):
            for chi1 in G.all_characters():
                for i in range(3):
                    res = self.engine.scaling_check(F.generator, r_o, a, chi1, G.quadratic(), i)
                    self.assertTrue(res['equal'], (a, chi1.m, i))
        with self.assertRaises(PreconditionError):
            self.engine.scaling_check(0, r_o, 1, G.trivial(), G.trivial(), 1)

    def test_stability_pi_divides_r(self):
        """Test Se(pi^n' r) = Se(r) when pi | r."""
        P, G = self.P, self.G
        r = family_poly(P, 1, 1)
        for chi1 in G.all_characters():
            for i in range(3):
                res = self.engine.stability_check(P.x(), r, chi1, G.character(1), i)
                self.assertEqual(res['case'], 'pi_divides_r')
                self.assertTrue(res['equal'])

    def test_stability_coprime(self):
        """Test that the intermediate right-hand side matches the difference."""
        P, G = self.P, self.G
        pi = P.linear(2)
        r = P.x()
        for chi1 in G.all_characters():
            for chi2 in G.all_characters():
                for i in range(3):
                    res = self.engine.stability_check(pi, r, chi1, chi2, i)
                    self.assertEqual(res['case'], 'pi_coprime_to_r')
                    self.assertTrue(res['equal_intermediate'], (chi1.m, chi2.m, i))
                    self.assertTrue(res['equal_positive'], (chi1.m, chi2.m, i))
                    if res['a'] >= 1 and res['b'] >= 1:
                        self.assertTrue(res['equal_literal'])

    def test_stability_needs_irreducible(self):
        """Test that a reducible pi is refused."""
        P, G = self.P, self.G
        with self.assertRaises(PreconditionError):
            self.engine.stability_check(family_poly(P, 1, 1), P.linear(2), G.trivial(), G.trivial(), 1)

    def _theorem1_holds(self, r, matrices, max_i=3):
        G = self.G
        for matrix in matrices:
            for chi1 in G.all_characters():
                for chi2 in G.all_characters():
                    for i in range(max_i + 1):
                        res = self.engine.theorem1_check(matrix, r, chi1, chi2, i)
                        self.assertTrue(res['equal'], (matrix, chi1.m, chi2.m, i))

    def test_theorem1_identity_and_translations(self):
        """Test the Moebius-transformation formula for the identity and every translation."""
        F, P = self.field, self.P
        matrices = [(F.one, 0, 0, F.one)] + [(F.one, lam, 0, F.one) for lam in F.nonzero()]
        self._theorem1_holds(family_poly(P, 1, 1), matrices)

    def test_theorem1_inversion(self):
        """Test the inversion matrix for r(0) = 0 over every pair of characters."""
        F, P = self.field, self.P
        self._theorem1_holds(family_poly(P, 1, 1), [(0, F.one, F.one, 0)])

    def test_theorem1_diagonal(self):
        """Test diagonal matrices, where chi2(Delta)^(i(i-1)) is the whole correction."""
        F, P = self.field, self.P
        self._theorem1_holds(family_poly(P, 1, 1), [(F.generator, 0, 0, 3), (2, 0, 0, 2), (4, 0, 0, 1)])

    def test_theorem1_general_matrices(self):
        """Test matrices with gamma != 0 on x(x-1) and on x^2 + 1."""
        P = self.P
        matrices = [(1, 2, 3, 4), (2, 1, 1, 4), (0, 3, 2, 1)]
        self._theorem1_holds(family_poly(P, 1, 1), matrices)
        self._theorem1_holds((1, 0, 1), matrices + [(1, 0, 0, 1)])

    def test_theorem1_literal_reading_differs(self):
        """Test that the literal prefactor chi2(Delta)^(1-i) is off by chi2(2) at i = 0 for diag(1, 2)."""
        G, P = self.G, self.P
        r = family_poly(P, 1, 1)
        chi2 = G.character(1)
        res = self.engine.theorem1_check((1, 0, 0, 2), r, G.trivial(), chi2, 0)
        self.assertTrue(res['equal'])
        self.assertEqual(res['rhs'], 1)
        self.assertEqual(res['lhs_literal'], G.char_value(chi2, 2))
        self.assertFalse(res['equal_literal'])

    def test_theorem1_singular_matrix(self):
        """Test that a singular matrix is refused."""
        F, G, P = self.field, self.G, self.P
        with self.assertRaises(PreconditionError):
            self.engine.theorem1_check((F.one, F.one, F.one, F.one), P.x(), G.trivial(), G.trivial(), 1)

    def test_pellet_substitution(self):
        """Test sum chi1 omega(D) chi'(D) = (-1)^i sum mu chi1 chi'(D)."""
        G, P = self.G, self.P
        r = family_poly(P, 1, 1)
        for chi1 in G.all_characters():
            for chi_p in G.all_characters():
                for i in range(4):
                    self.assertTrue(self.engine.pellet_substitution(r, chi1, chi_p, i)['equal'])

    def test_lseries_coefficients(self):
        """Test a_1 for r = x: the number of nonzero roots, and b_1 its negative."""
        G, P = self.G, self.P
        self.assertEqual(self.engine.lseries_coeff(P.x(), G.trivial(), 1), 4)
        self.assertEqual(self.engine.lseries_coeff(P.x(), G.trivial(), 1, mobius=True), -4)


if __name__ == '__main__':
    unittest.main()
