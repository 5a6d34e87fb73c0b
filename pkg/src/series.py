"""
Generating-series experiments: windows of Selberg sums along i = i0 + l n,
exact rational reconstruction over Q(zeta_N), singularity reports, and the
L-series analysis of the symbol chi1(r/.) for trivial chi2.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .characters import MulCharacter
from .cyclotomic import CycFrac, CycInt
from .errors import PreconditionError, ReconstructionError
from .polynomial import Poly

logger = logging.getLogger(__name__)

Scalar = Union[CycInt, CycFrac]


@dataclass
class PowerSeriesWindow:
    """Se values at i = i0 + l n for l = 0..len(coeffs)-1."""
    i0: int
    n: int
    coeffs: List[CycInt]

    def __post_init__(self):
        if not self.coeffs:
            raise PreconditionError("a series window needs at least one coefficient")


def _frac(value: Union[Scalar, int], like: CycFrac) -> CycFrac:
    if isinstance(value, CycFrac):
        return value
    if isinstance(value, int):
        return CycFrac(like.ring.from_int(value))
    return CycFrac(value)


class RationalFn:
    """num(X)/den(X) with coefficient lists (low degree first) over Q(zeta_N); den(0) != 0."""

    def __init__(self, num: Sequence[Scalar], den: Sequence[Scalar]):
        if not den:
            raise PreconditionError("rational function needs a denominator")
        like = den[0] if isinstance(den[0], CycFrac) else CycFrac(den[0])
        self.den = [_frac(c, like) for c in den]
        self.num = [_frac(c, like) for c in num]
        if self.den[0].is_zero():
            raise PreconditionError("denominator must have a nonzero constant term")
        while len(self.den) > 1 and self.den[-1].is_zero():
            self.den.pop()
        while self.num and self.num[-1].is_zero():
            self.num.pop()

    @property
    def ring(self):
        return self.den[0].ring

    @property
    def degrees(self):
        return len(self.num) - 1, len(self.den) - 1

    def expand(self, count: int) -> List[CycFrac]:
        """First `count` Taylor coefficients at X = 0."""
        out: List[CycFrac] = []
        zero = CycFrac(self.ring.zero)
        lead = self.den[0]
        for k in range(count):
            acc = self.num[k] if k < len(self.num) else zero
            for j in range(1, min(k, len(self.den) - 1) + 1):
                acc = acc - self.den[j] * out[k - j]
            out.append(acc / lead)
        return out

    def matches(self, coeffs: Sequence[Scalar]) -> bool:
        return all(a == b for a, b in zip(self.expand(len(coeffs)), coeffs))

    def normalized(self) -> 'RationalFn':
        """Same function with den(0) = 1."""
        lead = self.den[0]
        return RationalFn([c / lead for c in self.num], [c / lead for c in self.den])

    def denominator_complex(self, sigma: int = 1) -> np.ndarray:
        return np.array([c.embed_complex(sigma) for c in self.den])

    def to_json(self) -> Dict[str, Any]:
        return {'num': [c.to_json() for c in self.num], 'den': [c.to_json() for c in self.den]}


def _solve(matrix: List[List[CycFrac]], rhs: List[CycFrac]) -> Optional[List[CycFrac]]:
    """
    Gaussian elimination over the fraction field; free variables are set to 0.

    Returns None when the system is inconsistent.
    """
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    n_vars = len(matrix[0]) if matrix else 0
    pivots: List[int] = []
    r = 0
    for col in range(n_vars):
        pivot = next((k for k in range(r, len(rows)) if not rows[k][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inv()
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][col].is_zero():
                factor = rows[k][col]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    for k in range(r, len(rows)):
        if not rows[k][-1].is_zero():
            return None
    zero = rhs[0] * 0 if rhs else None
    solution = [zero] * n_vars
    for k, col in enumerate(pivots):
        solution[col] = rows[k][-1]
    return solution


def rational_reconstruct(coeffs: Sequence[Scalar], dmax_num: int, dmax_den: int) -> Optional[RationalFn]:
    """
    Smallest-degree exact Pade fit num/den with den(0) = 1 reproducing every coefficient.

    Pairs (l, m) are tried by increasing l + m, then increasing m. For each pair the
    Toeplitz system sum_j b_j s_{k-j} = 0 (k = l+1..l+m, b_0 = 1) is solved exactly and
    the candidate is checked against the whole window.

    Returns:
        The fitted function, or None when no (l, m) within the bounds fits

    Raises:
        ReconstructionError: window shorter than dmax_num + dmax_den + 2
    """
    need = dmax_num + dmax_den + 2
    if len(coeffs) < need:
        raise ReconstructionError(f"window has {len(coeffs)} coefficients, needs {need}")
    s = [c if isinstance(c, CycFrac) else CycFrac(c) for c in coeffs]
    one = CycFrac(s[0].ring.one)
    zero = CycFrac(s[0].ring.zero)

    def at(k: int) -> CycFrac:
        return s[k] if k >= 0 else zero

    for total in range(dmax_num + dmax_den + 1):
        for m in range(min(total, dmax_den) + 1):
            l = total - m
            if l > dmax_num:
                continue
            if m:
                matrix = [[at(k - j) for j in range(1, m + 1)] for k in range(l + 1, l + m + 1)]
                rhs = [-at(k) for k in range(l + 1, l + m + 1)]
                b = _solve(matrix, rhs)
                if b is None:
                    continue
                den = [one] + b
            else:
                den = [one]
            num = []
            for k in range(l + 1):
                acc = zero
                for j in range(min(k, m) + 1):
                    acc = acc + den[j] * s[k - j]
                num.append(acc)
            fn = RationalFn(num, den)
            if fn.matches(s):
                logger.debug("rational fit with numerator degree %d, denominator degree %d", l, m)
                return fn
    return None


def singularity_report(fn: RationalFn, q: int, n: int = 1, sigma: int = 1, tol: float = 1e-6,
                       predicted: Optional[complex] = None) -> Dict[str, Any]:
    """
    Roots of the embedded denominator with magnitudes and multiplicities.

    Args:
        fn: Fitted series
        q: Field size (for the q^(-n/2) threshold)
        n: Progression step
        sigma: Complex embedding index
        tol: Clustering tolerance for repeated roots
        predicted: Expected location of the singularity inside |T| < q^(-n/2), if any
    """
    coeffs = fn.denominator_complex(sigma)
    if len(coeffs) < 2:
        raise PreconditionError("singularity report needs a nonconstant denominator")
    roots = np.roots(coeffs[::-1])
    clusters: List[Dict[str, Any]] = []
    for root in sorted(roots, key=lambda z: (abs(z), np.angle(z))):
        for cluster in clusters:
            if abs(cluster['root'] - root) < tol * max(1.0, abs(root)):
                cluster['multiplicity'] += 1
                break
        else:
            clusters.append({'root': complex(root), 'multiplicity': 1})
    threshold = q ** (-n / 2)
    for cluster in clusters:
        cluster['magnitude'] = abs(cluster['root'])
        cluster['inside'] = cluster['magnitude'] < threshold * (1 - tol)
    inside = [c for c in clusters if c['inside']]
    report: Dict[str, Any] = {
        'threshold': threshold,
        'singularities': clusters,
        'inside_count': len(inside),
        'inside_simple': all(c['multiplicity'] == 1 for c in inside),
    }
    if predicted is not None:
        report['predicted'] = complex(predicted)
        report['predicted_matches'] = len(inside) == 1 and abs(inside[0]['root'] - predicted) < tol
    return report


def poly_series_product(a: Sequence[Scalar], b: Sequence[Scalar], order: int) -> List:
    """Truncated product of two power series given by coefficient lists."""
    out = []
    for k in range(order):
        acc = 0
        for j in range(k + 1):
            if j < len(a) and k - j < len(b):
                acc = a[j] * b[k - j] + acc
        out.append(acc)
    return out


def int_series_quotient(num: List[int], den: List[int], order: int) -> List[int]:
    """Taylor coefficients of num/den for integer polynomials with den(0) = 1."""
    out: List[int] = []
    for k in range(order):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc)
    return out


def int_poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class LSeriesAnalyzer:
    """
    Compares a_i = sum chi1(r/c) and b_i = sum mu(c) chi1(r/c) over monic c of degree i.

    Args:
        engine: A SelbergEngine over the field of r
        weil_tol: Tolerance for |inverse root| = sqrt(q)
    """

    def __init__(self, engine, weil_tol: float = 1e-6):
        self.engine = engine
        self.field = engine.field
        self.polys = engine.polys
        self.group = engine.group
        self.weil_tol = weil_tol

    def analyze(self, r: Poly, chi1: MulCharacter, max_degree: Optional[int] = None) -> Dict[str, Any]:
        P, q = self.polys, self.field.q
        if not r:
            raise PreconditionError("L-series needs r != 0")
        radical = P.radical(r)
        conductor = P.conductor_support(r, chi1.order)
        principal = len(conductor) == 1
        primitive = not principal and conductor == radical
        if max_degree is None:
            max_degree = len(radical)
        order = max_degree + 1

        a = [self.engine.lseries_coeff(r, chi1, i) for i in range(order)]
        b = [self.engine.lseries_coeff(r, chi1, i, mobius=True) for i in range(order)]

        vanish_from = order
        while vanish_from > 0 and a[vanish_from - 1].is_zero():
            vanish_from -= 1
        product = poly_series_product(a, b, order)
        product_is_one = all(product[k] == (1 if k == 0 else 0) for k in range(order))

        report: Dict[str, Any] = {
            'identity': 'lseries',
            'r': P.format_poly(r), 'chi1': chi1.m,
            'principal': principal, 'primitive': primitive,
            'deg_conductor': len(conductor) - 1, 'deg_radical': len(radical) - 1,
            'a': a, 'b': b,
            'a_vanishes_from': vanish_from,
            'product_is_one': product_is_one,
        }

        if principal:
            linear = [1, -q]
            local = [1]
            for pi, _ in P.factor(r).factors:
                local = int_poly_mul(local, [1] + [0] * (len(pi) - 2) + [-1])
            product_form = int_poly_mul(linear, local)
            quotient_form = int_series_quotient(linear, local, order)
            report['b_matches_product'] = all(
                b[k] == (product_form[k] if k < len(product_form) else 0) for k in range(order))
            report['b_matches_quotient'] = all(b[k] == quotient_form[k] for k in range(order))
        else:
            even = (chi1.m * (len(r) - 1)) % (q - 1) == 0
            report['even'] = even
            report.update(self._roots(a[:vanish_from], even, primitive))
        return report

    def _roots(self, a: List[CycInt], even: bool, primitive: bool) -> Dict[str, Any]:
        """Inverse roots of sum a_i T^i; the trivial zero T = 1 is set aside for even symbols."""
        q = self.field.q
        if len(a) < 2:
            return {'inverse_roots': [], 'trivial_zero': False, 'weil': None}
        coeffs = np.array([c.embed_complex() for c in a])
        roots = list(np.roots(coeffs[::-1]))
        trivial = False
        if even:
            hit = min(range(len(roots)), key=lambda k: abs(roots[k] - 1))
            if abs(roots[hit] - 1) < self.weil_tol:
                roots.pop(hit)
                trivial = True
        inverse = [1 / z for z in roots]
        weil = None
        if primitive:
            weil = all(abs(abs(z) - q ** 0.5) < self.weil_tol * q ** 0.5 for z in inverse)
        return {
            'inverse_roots': [complex(z) for z in inverse],
            'inverse_root_magnitudes': [abs(z) for z in inverse],
            'trivial_zero': trivial,
            'weil': weil,
        }


def series_coeffs(engine, r: Poly, chi1: MulCharacter, chi2: MulCharacter, i0: int, count: int,
                  n: Optional[int] = None) -> PowerSeriesWindow:
    """Se(r, chi1, chi2, i0 + l n) for l < count; n defaults to ord(chi2)."""
    step = n or chi2.order
    if count < 1:
        raise PreconditionError("series window needs count >= 1")
    values = [engine.selberg(r, chi1, chi2, i0 + l * step) for l in range(count)]
    return PowerSeriesWindow(i0=i0, n=step, coeffs=values)
