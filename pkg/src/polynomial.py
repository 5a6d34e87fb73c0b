"""
Polynomials over F_q: arithmetic, resultants, discriminants, factorisation,
the Möbius function, conductors and rankable enumeration of monic polynomials.

A polynomial is a tuple of element codes, lowest degree first, with trailing
zeros stripped; the zero polynomial is the empty tuple and has degree -1.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .errors import PolynomialError, PreconditionError
from .field import FiniteField

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]

ZERO_POLY: Poly = ()


def eta(i: int) -> int:
    """Sign in D(f) = eta(deg f) R(f, f'): +1 for i = 0, 1 (mod 4), -1 otherwise."""
    return 1 if i % 4 in (0, 1) else -1


def degree(f: Poly) -> int:
    return len(f) - 1


@dataclass(frozen=True)
class RationalFunc:
    """num/den with den != 0; not reduced."""
    num: Poly
    den: Poly

    def __post_init__(self):
        if not self.den:
            raise PolynomialError("rational function with zero denominator")


@dataclass(frozen=True)
class FactoredPoly:
    """unit * prod(pi^k); bases are distinct monic irreducibles in (degree, rank) order."""
    unit: int
    factors: Tuple[Tuple[Poly, int], ...]


class PolynomialRing:
    """F_q[x] over a fixed field, with cached irreducible and Möbius tables."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.q = field.q
        self._irreducibles: Dict[int, List[Poly]] = {}
        self._mobius_tables: Dict[int, List[int]] = {}

    def __reduce__(self):
        return (ring_for, (self.field,))

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @staticmethod
    def strip(coeffs: Sequence[int]) -> Poly:
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        return tuple(coeffs[:n])

    def const(self, a: int) -> Poly:
        return (a,) if a else ZERO_POLY

    def one(self) -> Poly:
        return (self.field.one,)

    def x(self) -> Poly:
        return (0, self.field.one)

    def linear(self, a: int) -> Poly:
        """The monic polynomial x - a."""
        return (self.field.neg(a), self.field.one)

    def monomial(self, k: int, a: int = None) -> Poly:
        a = self.field.one if a is None else a
        return self.strip((0,) * k + (a,))

    def lc(self, f: Poly) -> int:
        if not f:
            raise PolynomialError("leading coefficient of the zero polynomial")
        return f[-1]

    def is_monic(self, f: Poly) -> bool:
        return bool(f) and f[-1] == self.field.one

    def monic(self, f: Poly) -> Poly:
        if not f:
            raise PolynomialError("the zero polynomial has no monic associate")
        return self.scale(f, self.field.inv(f[-1]))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def add(self, f: Poly, g: Poly) -> Poly:
        F = self.field
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, b in enumerate(g):
            if b:
                out[i] = F.add(out[i], b)
        return self.strip(out)

    def neg(self, f: Poly) -> Poly:
        return tuple(self.field.neg(a) for a in f)

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, self.neg(g))

    def scale(self, f: Poly, a: int) -> Poly:
        if not a:
            return ZERO_POLY
        return tuple(self.field.mul(c, a) for c in f)

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return ZERO_POLY
        F = self.field
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return self.strip(out)

    def divrem(self, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
        if not g:
            raise PolynomialError("division by the zero polynomial")
        if len(f) < len(g):
            return ZERO_POLY, f
        F = self.field
        dg = len(g) - 1
        inv_lc = F.inv(g[-1])
        rem = list(f)
        quot = [0] * (len(f) - dg)
        for top in range(len(f) - 1, dg - 1, -1):
            c = rem[top]
            if c:
                c = F.mul(c, inv_lc)
                quot[top - dg] = c
                for j in range(dg + 1):
                    if g[j]:
                        rem[top - dg + j] = F.sub(rem[top - dg + j], F.mul(c, g[j]))
        return self.strip(quot), self.strip(rem[:dg])

    def mod(self, f: Poly, g: Poly) -> Poly:
        return self.divrem(f, g)[1]

    def gcd(self, f: Poly, g: Poly) -> Poly:
        """Monic gcd; gcd(0, 0) is the zero polynomial."""
        while g:
            f, g = g, self.mod(f, g)
        return self.monic(f) if f else ZERO_POLY

    def eval(self, f: Poly, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(f):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def derivative(self, f: Poly) -> Poly:
        F = self.field
        return self.strip([F.mul(F.from_int(k), f[k]) for k in range(1, len(f))])

    def compose(self, f: Poly, g: Poly) -> Poly:
        """f(g(x))."""
        acc = ZERO_POLY
        for c in reversed(f):
            acc = self.add(self.mul(acc, g), self.const(c))
        return acc

    def pow(self, f: Poly, k: int) -> Poly:
        if k < 0:
            raise PolynomialError("negative polynomial power")
        result, base = self.one(), f
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def poly_arith(self, op: str, *args):
        """Dispatch add, mul, divrem, gcd, eval, derivative, compose or pow by name."""
        ops: Dict[str, Callable] = {
            'add': self.add, 'mul': self.mul, 'divrem': self.divrem, 'gcd': self.gcd,
            'eval': self.eval, 'derivative': self.derivative, 'compose': self.compose,
            'pow': self.pow,
        }
        if op not in ops:
            raise PreconditionError(f"unknown polynomial operation '{op}'")
        return ops[op](*args)

    # ------------------------------------------------------------------
    # Enumeration
    # ------------------------------------------------------------------

    def monic_unrank(self, i: int, k: int) -> Poly:
        """The k-th monic polynomial of degree i: base-q digits of k are c_0..c_{i-1}."""
        q = self.q
        if i < 0 or not 0 <= k < q ** i:
            raise PreconditionError(f"index {k} out of range for monic degree {i}")
        coeffs = []
        for _ in range(i):
            k, d = divmod(k, q)
            coeffs.append(d)
        coeffs.append(self.field.one)
        return tuple(coeffs)

    def monic_rank(self, f: Poly) -> int:
        if not self.is_monic(f):
            raise PreconditionError("monic_rank needs a monic polynomial")
        k = 0
        for c in reversed(f[:-1]):
            k = k * self.q + c
        return k

    def monic_polys(self, i: int) -> Iterator[Poly]:
        for k in range(self.q ** i):
            yield self.monic_unrank(i, k)

    def poly_from_index(self, k: int, length: int) -> Poly:
        """Polynomial of degree < length whose base-q digits (low first) are those of k."""
        coeffs = []
        for _ in range(length):
            k, d = divmod(k, self.q)
            coeffs.append(d)
        return self.strip(coeffs)

    # ------------------------------------------------------------------
    # Resultant and discriminant
    # ------------------------------------------------------------------

    def resultant(self, f: Poly, g: Poly) -> int:
        """
        R(f, g) = lc(f)^deg(g) * prod g(rho) over the roots rho of f.

        Euclidean recursion: with g = Q f + s, R(f, g) = lc(f)^(deg g - deg s) R(f, s),
        then reciprocity R(f, s) = (-1)^(deg f deg s) R(s, f). A nonzero constant
        against the zero polynomial gives 1.
        """
        F = self.field
        acc = F.one
        while True:
            df, dg = len(f) - 1, len(g) - 1
            if df < 0:
                return acc if dg == 0 else 0
            if dg < 0:
                return acc if df == 0 else 0
            if df == 0:
                return F.mul(acc, F.pow(f[0], dg))
            if dg == 0:
                return F.mul(acc, F.pow(g[0], df))
            if df == 1:
                root = F.neg(F.div(f[0], f[1]))
                return F.mul(acc, F.mul(F.pow(f[1], dg), self.eval(g, root)))
            if dg == 1:
                root = F.neg(F.div(g[0], g[1]))
                value = F.mul(F.pow(g[1], df), self.eval(f, root))
                if df & 1:
                    value = F.neg(value)
                return F.mul(acc, value)
            s = self.mod(g, f)
            if not s:
                return 0
            ds = len(s) - 1
            acc = F.mul(acc, F.pow(f[-1], dg - ds))
            if (df * ds) & 1:
                acc = F.neg(acc)
            f, g = s, f

    def discriminant(self, f: Poly) -> int:
        """D(f) = eta(deg f) R(f, f') for monic f; 1 when deg f <= 1."""
        if not self.is_monic(f):
            raise PolynomialError("discriminant needs a monic polynomial")
        d = len(f) - 1
        if d <= 1:
            return self.field.one
        value = self.resultant(f, self.derivative(f))
        return value if eta(d) == 1 else self.field.neg(value)

    # ------------------------------------------------------------------
    # Irreducibles, factorisation, Möbius
    # ------------------------------------------------------------------

    def irreducibles(self, d: int) -> List[Poly]:
        """All monic irreducibles of degree d in rank order (sieve over monic_unrank)."""
        cached = self._irreducibles.get(d)
        if cached is not None:
            return cached
        if d < 1:
            return []
        if d == 1:
            result = [self.monic_unrank(1, k) for k in range(self.q)]
        else:
            touched = bytearray(self.q ** d)
            for e in range(1, d // 2 + 1):
                for pi in self.irreducibles(e):
                    for h in self.monic_polys(d - e):
                        touched[self.monic_rank(self.mul(pi, h))] = 1
            result = [self.monic_unrank(d, k) for k in range(self.q ** d) if not touched[k]]
        self._irreducibles[d] = result
        logger.debug("F_%d: %d monic irreducibles of degree %d", self.q, len(result), d)
        return result

    def is_irreducible(self, f: Poly) -> bool:
        if len(f) < 2:
            return False
        g = self.monic(f)
        return self.mobius_table(len(g) - 1)[self.monic_rank(g)] == -1 and \
            len(self.factor(g).factors) == 1

    def factor(self, f: Poly) -> FactoredPoly:
        """Trial division by the cached irreducibles up to half the degree."""
        if not f:
            raise PolynomialError("cannot factor the zero polynomial")
        unit = f[-1]
        g = self.monic(f)
        found: List[Tuple[Poly, int]] = []
        d = 1
        while 2 * d <= len(g) - 1:
            for pi in self.irreducibles(d):
                if 2 * d > len(g) - 1:
                    break
                k = 0
                while True:
                    quot, rem = self.divrem(g, pi)
                    if rem:
                        break
                    g, k = quot, k + 1
                if k:
                    found.append((pi, k))
            d += 1
        if len(g) > 1:
            found.append((g, 1))
        found.sort(key=lambda item: (len(item[0]), self.monic_rank(item[0])))
        return FactoredPoly(unit, tuple(found))

    def mobius(self, f: Poly) -> int:
        if not f:
            raise PolynomialError("Möbius function of the zero polynomial")
        if len(f) == 1:
            return 1
        if len(self.gcd(f, self.derivative(f))) > 1:
            return 0
        return -1 if len(self.factor(f).factors) % 2 else 1

    def mobius_table(self, i: int) -> List[int]:
        """
        mu of every monic polynomial of degree i, indexed by rank.

        Sieve: each prime pi of degree < i flips the sign of its multiples and
        zeroes the multiples of pi^2; untouched entries are irreducible.
        """
        cached = self._mobius_tables.get(i)
        if cached is not None:
            return cached
        size = self.q ** i
        mu = [1] * size
        if i >= 1:
            touched = bytearray(size)
            for d in range(1, i):
                for pi in self.irreducibles(d):
                    for h in self.monic_polys(i - d):
                        k = self.monic_rank(self.mul(pi, h))
                        mu[k] = -mu[k]
                        touched[k] = 1
                    if 2 * d <= i:
                        square = self.mul(pi, pi)
                        for h in self.monic_polys(i - 2 * d):
                            mu[self.monic_rank(self.mul(square, h))] = 0
            for k in range(size):
                if not touched[k]:
                    mu[k] = -1
        self._mobius_tables[i] = mu
        logger.debug("F_%d: Möbius table for degree %d (%d entries)", self.q, i, size)
        return mu

    def conductor_support(self, r: Poly, n: int) -> Poly:
        """Product of the monic primes of r whose multiplicity is not divisible by n."""
        if not r:
            raise PolynomialError("conductor of the zero polynomial")
        if n < 1:
            raise PreconditionError(f"character order must be >= 1, got {n}")
        out = self.one()
        for pi, k in self.factor(r).factors:
            if k % n:
                out = self.mul(out, pi)
        return out

    def radical(self, r: Poly) -> Poly:
        out = self.one()
        for pi, _ in self.factor(r).factors:
            out = self.mul(out, pi)
        return out

    # ------------------------------------------------------------------
    # Formatting
    # ------------------------------------------------------------------

    def format_poly(self, f: Poly) -> str:
        """Coefficient list c0,c1,... in the command-line syntax ('0' for zero)."""
        if not f:
            return '0'
        return ','.join(self.field.format_element(c) for c in f)


_RINGS: Dict[Tuple[int, int, int], PolynomialRing] = {}


def ring_for(field: FiniteField) -> PolynomialRing:
    """Shared polynomial ring per field, so irreducible and Möbius tables are built once."""
    key = (field.p, field.e, field.bound)
    ring = _RINGS.get(key)
    if ring is None:
        ring = PolynomialRing(field)
        _RINGS[key] = ring
    return ring
