"""
Arithmetic in F_q for q = p^e, p an odd prime.

Elements are plain integer codes. The element whose representative polynomial
is c_0 + c_1 t + ... + c_{e-1} t^{e-1} (mod the field modulus) has code
sum(c_j * p^(e-1-j)), so comparing codes as integers is the lexicographic order
of the vectors (c_0, ..., c_{e-1}). For e = 1 the code is the residue itself.
"""

import itertools
import logging
from functools import lru_cache
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import factorint, isprime

from .errors import FieldError

logger = logging.getLogger(__name__)

DEFAULT_FIELD_BOUND = 2 ** 20

# Above this size an addition table (q^2 entries) is not worth the memory.
_ADD_TABLE_LIMIT = 256


def _fp_divides(divisor: Sequence[int], poly: Sequence[int], p: int) -> bool:
    """True when the monic F_p polynomial `divisor` divides `poly` (low degree first)."""
    rem = list(poly)
    d = len(divisor) - 1
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top] % p
        if c:
            for j in range(d + 1):
                rem[top - d + j] = (rem[top - d + j] - c * divisor[j]) % p
    return not any(c % p for c in rem[:d])


class FiniteField:
    """
    The field F_q with a deterministic modulus, generator and discrete-log table.

    Instances are immutable after construction and pickle by parameters, so a
    worker process rebuilds (or reuses) its own copy through :func:`make_field`.
    """

    def __init__(self, p: int, e: int = 1, bound: int = DEFAULT_FIELD_BOUND):
        """
        Build the field tables.

        Args:
            p: Odd prime characteristic
            e: Extension degree (>= 1)
            bound: Largest admissible q

        Raises:
            FieldError: p is not an odd prime, e < 1, or p^e exceeds the bound
        """
        if p < 3 or not isprime(p):
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        q = p ** e
        if q > bound:
            raise FieldError(f"q = {p}^{e} = {q} exceeds the field bound {bound}")

        self.p = p
        self.e = e
        self.q = q
        self.bound = bound
        self._scale = p ** (e - 1)
        self.zero = 0
        self.one = self._scale

        self._reps: List[Tuple[int, ...]] = [self._decode(k) for k in range(q)]
        self.modulus: Tuple[int, ...] = self._find_modulus()
        self._neg = [self._encode(tuple((-c) % p for c in rep)) for rep in self._reps]
        self._add_table: Optional[List[int]] = None
        if e > 1 and q <= _ADD_TABLE_LIMIT:
            self._add_table = [self._add_digits(a, b) for a in range(q) for b in range(q)]

        self.generator = self._find_generator()
        self.exp_table: List[int] = [0] * (q - 1)
        self.log_table: List[int] = [-1] * q
        cur = self._reps[self.one]
        gen_rep = self._reps[self.generator]
        for k in range(q - 1):
            code = self._encode(cur)
            self.exp_table[k] = code
            self.log_table[code] = k
            cur = self._mul_reps(cur, gen_rep)
        self._trace_table: Optional[List[int]] = None
        logger.debug("built F_%d: modulus %s, generator %s", q, self.modulus, self.format_element(self.generator))

    def __reduce__(self):
        return (make_field, (self.p, self.e, self.bound))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, e={self.e})"

    @property
    def cyclotomic_order(self) -> int:
        """N = p(q-1): every character and additive-character value is an N-th root of unity."""
        return self.p * (self.q - 1)

    # ------------------------------------------------------------------
    # Representation
    # ------------------------------------------------------------------

    def _decode(self, code: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.e):
            code, d = divmod(code, self.p)
            digits.append(d)
        return tuple(reversed(digits))

    def _encode(self, rep: Sequence[int]) -> int:
        code = 0
        for c in rep:
            code = code * self.p + c
        return code

    def rep(self, a: int) -> Tuple[int, ...]:
        """Coefficient vector (c_0, ..., c_{e-1}) of an element code."""
        return self._reps[a]

    def element(self, rep: Sequence[int]) -> int:
        """Element code of a coefficient vector; entries are reduced mod p."""
        if len(rep) != self.e:
            raise FieldError(f"expected {self.e} coordinates, got {len(rep)}")
        return self._encode([c % self.p for c in rep])

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime field."""
        return (k % self.p) * self._scale

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def format_element(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        return '[' + ','.join(str(c) for c in self._reps[a]) + ']'

    # ------------------------------------------------------------------
    # Construction helpers (work on coefficient vectors)
    # ------------------------------------------------------------------

    def _find_modulus(self) -> Tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return (0,)
        for low in itertools.product(range(p), repeat=e):
            poly = list(low) + [1]
            if low[0] == 0:
                continue
            irreducible = True
            for d in range(1, e // 2 + 1):
                for tail in itertools.product(range(p), repeat=d):
                    if _fp_divides(list(tail) + [1], poly, p):
                        irreducible = False
                        break
                if not irreducible:
                    break
            if irreducible:
                return tuple(low)
        raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")

    def _mul_reps(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        # t^e = -(m_0 + m_1 t + ... + m_{e-1} t^{e-1})
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[top] % p
            if c:
                for j, m in enumerate(self.modulus):
                    prod[top - e + j] -= c * m
        return tuple(c % p for c in prod[:e])

    def _pow_reps(self, a: Sequence[int], k: int) -> Tuple[int, ...]:
        result = self._reps[self.one]
        base = tuple(a)
        while k:
            if k & 1:
                result = self._mul_reps(result, base)
            base = self._mul_reps(base, base)
            k >>= 1
        return result

    def _find_generator(self) -> int:
        order = self.q - 1
        one = self._reps[self.one]
        cofactors = [order // ell for ell in factorint(order)]
        for code in range(1, self.q):
            rep = self._reps[code]
            if all(self._pow_reps(rep, c) != one for c in cofactors):
                return code
        raise FieldError(f"no generator found for F_{self.q}")

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        code, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            code += ((da + db) % p) * place
            place *= p
        return code

    # ------------------------------------------------------------------
    # Field operations on codes
    # ------------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a * self.q + b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise FieldError("inversion of zero")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a^k by square-and-multiply; negative k inverts first."""
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def arith(self, op: str, *args: int) -> int:
        """Dispatch one of add, sub, mul, neg, inv, pow by name."""
        ops: Dict[str, Callable[..., int]] = {
            'add': self.add, 'sub': self.sub, 'mul': self.mul,
            'neg': self.neg, 'inv': self.inv, 'pow': self.pow,
        }
        if op not in ops:
            raise FieldError(f"unknown field operation '{op}'")
        return ops[op](*args)

    def dlog(self, a: int) -> int:
        """Discrete logarithm to the fixed generator, in [0, q-2]."""
        if not a:
            raise FieldError("discrete logarithm of zero")
        return self.log_table[a]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        return (self.q - 1) // gcd(self.dlog(a), self.q - 1)

    def trace(self, a: int) -> int:
        """Tr(a) = a + a^p + ... + a^(p^(e-1)), returned as a residue in [0, p)."""
        if self._trace_table is None:
            self._trace_table = [self._compute_trace(x) for x in range(self.q)]
        return self._trace_table[a]

    def _compute_trace(self, a: int) -> int:
        acc, conj = a, a
        for _ in range(self.e - 1):
            conj = self.pow(conj, self.p)
            acc = self.add(acc, conj)
        t, rest = divmod(acc, self._scale)
        if rest:
            raise FieldError(f"trace of {self.format_element(a)} left the prime field")
        return t


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1, bound: int = DEFAULT_FIELD_BOUND) -> FiniteField:
    """Cached field constructor; one instance per (p, e, bound) per process."""
    return FiniteField(p, e, bound)
