"""
Exact arithmetic in the cyclotomic ring Z[zeta_N].

Elements are kept as their canonical remainder modulo the N-th cyclotomic
polynomial (phi(N) integer coefficients), so equality is a tuple comparison.
Formal quotients (CycFrac) are never reduced; they compare by
cross-multiplication.
"""

import logging
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import divisors

from .errors import PreconditionError, RingMismatchError

logger = logging.getLogger(__name__)


def _exact_divide(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """Quotient of integer polynomials (low degree first) by a monic divisor."""
    rem = list(num)
    d = len(den) - 1
    quot = [0] * (len(rem) - d)
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top]
        if c:
            quot[top - d] = c
            for j in range(d + 1):
                rem[top - d + j] -= c * den[j]
    if any(rem[:d]):
        raise ArithmeticError("inexact division of integer polynomials")
    return quot


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> Tuple[int, ...]:
    """
    Coefficients (low degree first) of the N-th cyclotomic polynomial.

    Computed as (x^N - 1) divided by the product of Phi_d over the proper divisors d.
    """
    if N < 1:
        raise PreconditionError(f"cyclotomic index must be >= 1, got {N}")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in divisors(N):
        if d < N:
            poly = _exact_divide(poly, cyclotomic_poly(d))
    return tuple(poly)


class CycRing:
    """The ring Z[zeta_N]; one instance per N, immutable and shareable."""

    def __init__(self, N: int):
        self.N = N
        self.cyclo_poly = cyclotomic_poly(N)
        self.phi_N = len(self.cyclo_poly) - 1

        product = [1]
        for d in divisors(N):
            product = _poly_mul(product, cyclotomic_poly(d))
        if product != [-1] + [0] * (N - 1) + [1]:
            raise ArithmeticError(f"cyclotomic factorisation of x^{N} - 1 failed")

        self._roots: Dict[int, 'CycInt'] = {}
        self._embeddings: Dict[int, np.ndarray] = {}
        self.zero = CycInt(self, (0,) * self.phi_N)
        self.one = self.from_int(1)
        logger.debug("cyclotomic ring N=%d, phi(N)=%d", N, self.phi_N)

    def __reduce__(self):
        return (make_ring, (self.N,))

    def __repr__(self) -> str:
        return f"CycRing(N={self.N})"

    def reduce(self, vec: Iterable[int]) -> Tuple[int, ...]:
        """Canonical remainder of an integer vector (coefficients of zeta^k) modulo Phi_N."""
        v = list(vec)
        phi = self.phi_N
        cyc = self.cyclo_poly
        for top in range(len(v) - 1, phi - 1, -1):
            c = v[top]
            if c:
                base = top - phi
                for j in range(phi):
                    if cyc[j]:
                        v[base + j] -= c * cyc[j]
                v[top] = 0
        if len(v) < phi:
            v.extend([0] * (phi - len(v)))
        return tuple(v[:phi])

    def element(self, vec: Iterable[int]) -> 'CycInt':
        return CycInt(self, self.reduce(vec))

    def from_int(self, n: int) -> 'CycInt':
        return CycInt(self, (int(n),) + (0,) * (self.phi_N - 1))

    def root_of_unity(self, k: int) -> 'CycInt':
        """Canonical form of zeta_N^k; k is taken mod N."""
        k %= self.N
        cached = self._roots.get(k)
        if cached is None:
            vec = [0] * (k + 1)
            vec[k] = 1
            cached = self.element(vec)
            self._roots[k] = cached
        return cached

    def from_exponent_counts(self, counts: Sequence[int], step: int = 1) -> 'CycInt':
        """
        Sum of counts[k] * zeta_N^(k * step) in one reduction pass.

        Args:
            counts: Integer multiplicities indexed by k
            step: Exponent stride (e.g. p when counts are indexed mod q-1)

        Returns:
            The canonical ring element
        """
        vec = [0] * self.N
        for k, c in enumerate(counts):
            if c:
                vec[(k * step) % self.N] += c
        return self.element(vec)

    def embedding_indices(self) -> List[int]:
        """All sigma in [1, N) coprime to N (every complex embedding)."""
        return [s for s in range(1, self.N) if gcd(s, self.N) == 1] or [1]

    def _embedding_vector(self, sigma: int) -> np.ndarray:
        vec = self._embeddings.get(sigma)
        if vec is None:
            if gcd(sigma, self.N) != 1:
                raise PreconditionError(f"embedding index {sigma} is not coprime to N={self.N}")
            vec = np.exp(2j * np.pi * sigma * np.arange(self.phi_N) / self.N)
            self._embeddings[sigma] = vec
        return vec


class CycInt:
    """An element of Z[zeta_N] in canonical form."""

    __slots__ = ('ring', 'coeffs')

    def __init__(self, ring: CycRing, coeffs: Tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> Optional['CycInt']:
        if isinstance(other, CycInt):
            if other.ring.N != self.ring.N:
                raise RingMismatchError(f"Z[zeta_{self.ring.N}] vs Z[zeta_{other.ring.N}]")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.ring, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.ring, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycInt(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.ring, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.ring, self.ring.reduce(_poly_mul(self.coeffs, o.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative powers live in CycFrac")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> 'CycInt':
        """Complex conjugation: zeta^k -> zeta^(N-k)."""
        N = self.ring.N
        vec = [0] * N
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(N - k) % N] += c
        return self.ring.element(vec)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CycFrac):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.ring.N, self.coeffs))

    def embed_complex(self, sigma: int = 1) -> complex:
        """Value under zeta_N -> exp(2 pi i sigma / N)."""
        vec = self.ring._embedding_vector(sigma)
        return complex(np.dot(np.array([float(c) for c in self.coeffs]), vec))

    def to_json(self) -> Dict[str, object]:
        return {'N': self.ring.N, 'coeffs': [str(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        return f"CycInt(N={self.ring.N}, {list(self.coeffs)})"


Scalar = Union[CycInt, int]


class CycFrac:
    """A formal quotient num/den of cyclotomic integers."""

    __slots__ = ('num', 'den')

    def __init__(self, num: Scalar, den: Optional[Scalar] = None):
        if isinstance(num, CycFrac):
            if den is not None:
                raise TypeError("CycFrac numerator must be a cyclotomic integer")
            self.num, self.den = num.num, num.den
            return
        if isinstance(num, int):
            if not isinstance(den, CycInt):
                raise TypeError("an integer numerator needs a CycInt denominator to fix the ring")
            num = den.ring.from_int(num)
        if den is None:
            den = num.ring.one
        elif isinstance(den, int):
            den = num.ring.from_int(den)
        if den.ring.N != num.ring.N:
            raise RingMismatchError(f"Z[zeta_{num.ring.N}] vs Z[zeta_{den.ring.N}]")
        if den.is_zero():
            raise ZeroDivisionError("CycFrac with zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self) -> CycRing:
        return self.num.ring

    def _coerce(self, other) -> Optional['CycFrac']:
        if isinstance(other, CycFrac):
            if other.ring.N != self.ring.N:
                raise RingMismatchError(f"Z[zeta_{self.ring.N}] vs Z[zeta_{other.ring.N}]")
            return other
        if isinstance(other, (CycInt, int)):
            if isinstance(other, int):
                other = self.ring.from_int(other)
            return CycFrac(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycFrac(self.num + o.num, self.den)
        return CycFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycFrac(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> 'CycFrac':
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of a CycFrac equal to zero")
        return CycFrac(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return CycFrac(self.num ** k, self.den ** k)

    def conj(self) -> 'CycFrac':
        return CycFrac(self.num.conj(), self.den.conj())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den) == (o.num * self.den)

    __hash__ = None

    def embed_complex(self, sigma: int = 1) -> complex:
        return self.num.embed_complex(sigma) / self.den.embed_complex(sigma)

    def to_json(self) -> Dict[str, object]:
        return {'num': self.num.to_json(), 'den': self.den.to_json()}

    def __repr__(self) -> str:
        return f"CycFrac({self.num!r} / {self.den!r})"


def frac_ops(op: str, a: CycFrac, b: Optional[CycFrac] = None):
    """Dispatch add, mul, div, eq or inv on formal fractions by name."""
    if op == 'inv':
        return a.inv()
    table = {
        'add': lambda x, y: x + y,
        'mul': lambda x, y: x * y,
        'div': lambda x, y: x / y,
        'eq': lambda x, y: x == y,
    }
    if op not in table:
        raise PreconditionError(f"unknown fraction operation '{op}'")
    return table[op](a, b)


@lru_cache(maxsize=None)
def make_ring(N: int) -> CycRing:
    """Cached ring constructor; one instance per N per process."""
    return CycRing(N)
