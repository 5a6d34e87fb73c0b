"""
Test the closed forms for r = x^e0 (x-1)^e1
"""

import json
import os
import sys
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.aevw import (METAPLECTIC, NON_METAPLECTIC, N_EQUALS_1, AevwEvaluator, classify, family_poly,
                      branch_factor, metaplectic_branch, s_factor, t_factor, u_polys)
from src.errors import PreconditionError
from src.field import make_field
from src.gauss_sums import context_for
from src.selberg import SelbergEngine

GOLDEN = os.path.join(os.path.dirname(__file__), 'golden', 'integer_values.json')


class TestFactors(unittest.TestCase):
    """Test T, S and U."""

    def setUp(self):
        """Load pinned values."""
        with open(GOLDEN, 'r') as f:
            self.golden = json.load(f)

    def test_t_and_s(self):
        """Test T(y, 5) and S(y, 5) for small y."""
        q = self.golden['q']
        self.assertEqual([t_factor(y, q) for y in range(5)], self.golden['t_factor'])
        self.assertEqual([s_factor(y, q) for y in range(4)], self.golden['s_factor'])
        with self.assertRaises(PreconditionError):
            t_factor(-1, q)

    def test_u_special_values(self):
        """Test U_e(q, 1) = U_o(q, 1) = 2 (q-1)^2."""
        for q in (3, 5, 7, 9):
            u_e, u_o = u_polys(q, 1)
            self.assertEqual(u_e, 2 * (q - 1) ** 2)
            self.assertEqual(u_o, 2 * (q - 1) ** 2)


class TestClassification(unittest.TestCase):
    """Test the metaplectic split and the branch selector."""

    def setUp(self):
        """Set up the character group of F_7."""
        self.ctx = context_for(make_field(7))
        self.G = self.ctx.group

    def test_cases(self):
        """Test the three cases."""
        G = self.G
        self.assertEqual(classify(G, 1, 1, G.character(1), G.trivial()).case, N_EQUALS_1)
        meta = classify(G, 1, 1, G.character(4), G.character(2))
        self.assertEqual(meta.case, METAPLECTIC)
        self.assertEqual((meta.n, meta.f0, meta.f1), (3, 1, 1))
        other = classify(G, 1, 1, G.character(1), G.character(2))
        self.assertEqual(other.case, NON_METAPLECTIC)
        self.assertIsNone(other.f0)

    def test_branches(self):
        """Test the branch for f0 = f1 = 1, n = 3 across residues of i."""
        G = self.G
        params = classify(G, 1, 1, G.character(4), G.character(2))
        # i = 0: rs = 0 so the third branch; i = 1: branch 1; i = 2: rs = 1 <= 1 < 2, branch 2
        self.assertEqual([metaplectic_branch(params, i) for i in range(3)], [3, 1, 2])
        self.assertEqual(metaplectic_branch(params, 4), 1)
        other = classify(G, 1, 1, G.character(1), G.character(2))
        self.assertIsNone(metaplectic_branch(other, 1))


class TestClosedForm(unittest.TestCase):
    """Test the closed form against brute force on full character grids."""

    def _grid(self, p, max_i):
        field = make_field(p)
        ctx = context_for(field).warmup()
        ev = AevwEvaluator(ctx)
        engine = SelbergEngine(field)
        G = ctx.group
        branches = {None: 0, 1: 0, 2: 0, 3: 0}
        for e0 in (1, 2):
            for e1 in (1, 2):
                r = family_poly(ctx.polys, e0, e1)
                for chi2 in G.all_characters()[1:]:
                    for chi1 in G.all_characters():
                        for i in range(max_i + 1):
                            closed, branch = ev.closed_form_with_branch(e0, e1, chi1, chi2, i)
                            self.assertEqual(closed, engine.selberg(r, chi1, chi2, i),
                                             (p, e0, e1, chi1.m, chi2.m, i, branch))
                            if i == 0:
                                self.assertEqual(closed, 1)
                            branches[branch] += 1
        for branch, count in branches.items():
            self.assertGreater(count, 0, (p, branch))

    def test_grid_q5(self):
        """Test every chi1, every chi2 of order > 1, e0, e1 in {1, 2} and i <= 4 over F_5."""
        self._grid(5, 4)

    def test_grid_q7(self):
        """Test every chi1, every chi2 of order > 1, e0, e1 in {1, 2} and i <= 3 over F_7."""
        self._grid(7, 3)

    def test_trivial_chi1_second_branch(self):
        """Test f0 = f1 = 0 at i = 1: brute force 2 - q, which the literal factor misses by q."""
        field = make_field(5)
        ctx = context_for(field)
        ev = AevwEvaluator(ctx)
        G = ctx.group
        r = family_poly(ctx.polys, 1, 1)
        closed, branch = ev.closed_form_with_branch(1, 1, G.trivial(), G.quadratic(), 1)
        brute = SelbergEngine(field).selberg(r, G.trivial(), G.quadratic(), 1)
        self.assertEqual(branch, 2)
        self.assertEqual(brute, -3)
        self.assertEqual(closed, brute)
        self.assertEqual(ev.closed_form(1, 1, G.trivial(), G.quadratic(), 1, reading='literal') * 5, -3)

    def test_n_equals_one_refused(self):
        """Test that the closed form needs ord(chi2) > 1."""
        ctx = context_for(make_field(5))
        ev = AevwEvaluator(ctx)
        with self.assertRaises(PreconditionError):
            ev.closed_form(1, 1, ctx.group.character(1), ctx.group.trivial(), 2)
        with self.assertRaises(PreconditionError):
            ev.closed_form(1, 1, ctx.group.character(1), ctx.group.quadratic(), 2, reading='guess')


class TestBranchFactor(unittest.TestCase):
    """Test the integer branch multipliers in both readings."""

    def test_derived(self):
        """Test q^L T(2L), q^(L+1) T(2L+1) and q^L (1 + (1-q) L) at q = 5."""
        self.assertEqual([branch_factor(1, L, 5) for L in range(3)], [1, 5 * 13, 25 * 345])
        self.assertEqual([branch_factor(2, L, 5) for L in range(2)], [5 * -3, 25 * -71])
        self.assertEqual([branch_factor(3, L, 5) for L in range(3)], [1, 5 * -3, 25 * -7])

    def test_literal(self):
        """Test q^L T(2L + 1) and q^L S(L + 1) at q = 5."""
        self.assertEqual(branch_factor(1, 1, 5, 'literal'), 5 * 13)
        self.assertEqual([branch_factor(2, L, 5, 'literal') for L in range(2)], [-3, 5 * -71])
        self.assertEqual([branch_factor(3, L, 5, 'literal') for L in range(3)], [5, 5 * 9, 25 * 13])

    def test_invalid(self):
        """Test an unknown branch and an unknown reading."""
        with self.assertRaises(PreconditionError):
            branch_factor(4, 0, 5)
        with self.assertRaises(PreconditionError):
            branch_factor(1, 0, 5, 'guess')


class TestPeriodicity(unittest.TestCase):
    """Test P_{i+n} = P_n P_i and the period factor A."""

    def setUp(self):
        """Set up F_7."""
        self.ctx = context_for(make_field(7)).warmup()
        self.ev = AevwEvaluator(self.ctx)
        self.G = self.ctx.group

    def test_shift(self):
        """Test P_{i+n} = P_n P_i for a metaplectic and a non-metaplectic triple."""
        G, ev = self.G, self.ev
        for chi1, chi2 in ((G.character(4), G.character(2)), (G.character(1), G.character(3))):
            period = ev.period_factor(1, 1, chi1, chi2)
            for i in range(chi2.order):
                shifted = ev.p_product(1, 1, chi1, chi2, i + chi2.order)
                self.assertEqual(shifted, period * ev.p_product(1, 1, chi1, chi2, i))

    def test_metaplectic_a_is_period(self):
        """Test that the closed-form A equals P_n in the metaplectic case."""
        G, ev = self.G, self.ev
        chi1, chi2 = G.character(4), G.character(2)
        self.assertEqual(ev.a_factor(1, 1, chi1, chi2), ev.period_factor(1, 1, chi1, chi2))

    def test_magnitudes(self):
        """Test |A| against the admissible classes in every embedding."""
        G, ev = self.G, self.ev
        ring = self.ctx.ring
        for chi2 in G.all_characters()[1:]:
            for chi1 in G.all_characters():
                params = ev.classify(1, 2, chi1, chi2)
                A = ev.a_factor(1, 2, chi1, chi2)
                classes = ev.magnitude_classes(chi2.order, params.case == METAPLECTIC)
                for sigma in ring.embedding_indices():
                    value = abs(A.embed_complex(sigma))
                    self.assertTrue(any(abs(value - c) < 1e-9 * max(classes) for c in classes))

    def test_extra_evaluation_needs_metaplectic(self):
        """Test that the extra evaluation is refused outside the metaplectic case."""
        G, ev = self.G, self.ev
        with self.assertRaises(PreconditionError):
            ev.van_wamelen_value(1, 1, G.character(1), G.character(2))
        with self.assertRaises(PreconditionError):
            ev.van_wamelen_value(1, 1, G.character(4), G.character(2), reading='guess')

    def test_extra_evaluation_grid(self):
        """Test the closed P_s, s = f0 + f1 + 1, on every metaplectic triple over F_5 and F_7."""
        for p in (5, 7):
            ctx = context_for(make_field(p)).warmup()
            ev, G = AevwEvaluator(ctx), ctx.group
            checked = 0
            for e0 in (1, 2):
                for e1 in (1, 2):
                    for chi2 in G.all_characters()[1:]:
                        for chi1 in G.all_characters():
                            if ev.classify(e0, e1, chi1, chi2).case != METAPLECTIC:
                                continue
                            value, product = ev.van_wamelen_value(e0, e1, chi1, chi2)
                            self.assertFalse(product.is_zero())
                            self.assertEqual(value, product, (p, e0, e1, chi1.m, chi2.m))
                            checked += 1
            self.assertGreater(checked, 0)


class TestPredictedSeries(unittest.TestCase):
    """Test the generating series predicted by the closed form."""

    def test_derived_reading_sums_closed_form(self):
        """Test that the derived series expands to the closed-form values in every residue class."""
        ctx = context_for(make_field(7)).warmup()
        ev = AevwEvaluator(ctx)
        G = ctx.group
        chi1, chi2 = G.character(4), G.character(2)
        n = chi2.order
        for i0 in range(n):
            fn, branch = ev.predicted_series(1, 1, chi1, chi2, i0, 'derived')
            self.assertEqual(branch, metaplectic_branch(ev.classify(1, 1, chi1, chi2), i0))
            expected = [ev.closed_form(1, 1, chi1, chi2, i0 + l * n) for l in range(4)]
            self.assertTrue(fn.matches(expected), i0)

    def test_invalid_arguments(self):
        """Test unknown readings and out-of-range residues."""
        ctx = context_for(make_field(5))
        ev = AevwEvaluator(ctx)
        G = ctx.group
        with self.assertRaises(PreconditionError):
            ev.predicted_series(1, 1, G.character(1), G.quadratic(), 0, 'guess')
        with self.assertRaises(PreconditionError):
            ev.predicted_series(1, 1, G.character(1), G.quadratic(), 2)
        with self.assertRaises(PreconditionError):
            ev.predicted_series(1, 1, G.character(1), G.trivial(), 0)


if __name__ == '__main__':
    unittest.main()
