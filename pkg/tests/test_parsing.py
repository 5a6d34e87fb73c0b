"""
Test the command-line value syntax
"""

import os
import sys
import unittest

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import ParseError
from src.field import make_field
from src.parsing import parse_element, parse_family, parse_int_list, parse_matrix, parse_poly
from src.polynomial import ring_for


class TestParsing(unittest.TestCase):
    """Test elements, polynomials, lists, families and matrices."""

    def setUp(self):
        """Set up F_5 and F_9."""
        self.f5 = make_field(5)
        self.f9 = make_field(3, 2)

    def test_prime_field_elements(self):
        """Test residues, including negatives."""
        self.assertEqual(parse_element(self.f5, '3'), 3)
        self.assertEqual(parse_element(self.f5, '-1'), 4)
        self.assertEqual(parse_element(self.f5, ' 7 '), 2)

    def test_extension_elements(self):
        """Test bracketed coordinates over F_9."""
        self.assertEqual(parse_element(self.f9, '[1,1]'), 4)
        self.assertEqual(parse_element(self.f9, '[0,1]'), 1)
        self.assertEqual(parse_element(self.f9, '1'), self.f9.one)
        self.assertEqual(self.f9.format_element(parse_element(self.f9, '[2,1]')), '[2,1]')
        with self.assertRaises(ParseError):
            parse_element(self.f9, '[1]')
        with self.assertRaises(ParseError):
            parse_element(self.f9, '[1,1')

    def test_polynomials(self):
        """Test coefficient lists, lowest degree first, with trailing zeros stripped."""
        P5 = ring_for(self.f5)
        self.assertEqual(parse_poly(P5, '1,0,1'), (1, 0, 1))
        self.assertEqual(parse_poly(P5, '0,4,1,0'), (0, 4, 1))
        self.assertEqual(parse_poly(P5, '0'), ())
        P9 = ring_for(self.f9)
        self.assertEqual(parse_poly(P9, '[1,1],[0,1]'), (4, 1))

    def test_bad_polynomials(self):
        """Test empty input, empty slots and non-integers."""
        P5 = ring_for(self.f5)
        for text in ('', '1,,2', 'x,1'):
            with self.assertRaises(ParseError, msg=text):
                parse_poly(P5, text)

    def test_int_lists(self):
        """Test lists with ranges and negative entries."""
        self.assertEqual(parse_int_list('0-3,7'), [0, 1, 2, 3, 7])
        self.assertEqual(parse_int_list('-2,5'), [-2, 5])
        self.assertEqual(parse_int_list(''), [])
        with self.assertRaises(ParseError):
            parse_int_list('1,a')

    def test_family(self):
        """Test that both family exponents must be positive."""
        self.assertEqual(parse_family('2,1'), (2, 1))
        for text in ('1', '0,1', '1,2,3'):
            with self.assertRaises(ParseError, msg=text):
                parse_family(text)

    def test_matrix(self):
        """Test four-entry matrices."""
        self.assertEqual(parse_matrix(self.f5, '1,0,-1,1'), (1, 0, 4, 1))
        with self.assertRaises(ParseError):
            parse_matrix(self.f5, '1,0,1')


if __name__ == '__main__':
    unittest.main()
