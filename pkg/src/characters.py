"""
Multiplicative characters of F_q^x, the additive character e_o and its
extension to rational functions, and the Dirichlet symbol chi(f/g).

Characters are indexed by an exponent m relative to the field's fixed
generator g: chi_m(g^k) = zeta_{q-1}^{mk}. Values live in Z[zeta_N] with
N = p(q-1), where zeta_{q-1} = zeta_N^p and zeta_p = zeta_N^(q-1).
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Union

from .cyclotomic import CycInt, CycRing, make_ring
from .errors import PoleClashError, PolynomialError, PreconditionError
from .field import FiniteField
from .polynomial import Poly, PolynomialRing, RationalFunc, ring_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MulCharacter:
    """chi_m on F_q^x; m is stored reduced mod q-1."""
    q: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, 'm', self.m % (self.q - 1))

    @property
    def order(self) -> int:
        return (self.q - 1) // gcd(self.m, self.q - 1)

    @property
    def is_trivial(self) -> bool:
        return self.m == 0

    def inverse(self) -> 'MulCharacter':
        return MulCharacter(self.q, -self.m)

    def __mul__(self, other: 'MulCharacter') -> 'MulCharacter':
        if other.q != self.q:
            raise PreconditionError(f"characters of F_{self.q} and F_{other.q} do not multiply")
        return MulCharacter(self.q, self.m + other.m)

    def __pow__(self, k: int) -> 'MulCharacter':
        return MulCharacter(self.q, self.m * k)

    def __str__(self) -> str:
        return f"chi_{self.m}"


@dataclass(frozen=True)
class CharTriple:
    """chi1 = chi0^a and chi2^2 = chi0^b; n = ord(chi2), n_prime = ord(chi1)."""
    chi0: MulCharacter
    chi1: MulCharacter
    chi2: MulCharacter
    a: int
    b: int
    n: int
    n_prime: int


class CharacterGroup:
    """The character group of F_q^x together with its symbol maps into Z[zeta_N]."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.q = field.q
        self.p = field.p
        self.N = field.cyclotomic_order
        self.ring: CycRing = make_ring(self.N)
        self.polys: PolynomialRing = ring_for(field)

    # ------------------------------------------------------------------
    # The group
    # ------------------------------------------------------------------

    def character(self, m: int) -> MulCharacter:
        return MulCharacter(self.q, m)

    def trivial(self) -> MulCharacter:
        return MulCharacter(self.q, 0)

    def quadratic(self) -> MulCharacter:
        """omega, the unique character of order 2."""
        return MulCharacter(self.q, (self.q - 1) // 2)

    def all_characters(self) -> List[MulCharacter]:
        return [MulCharacter(self.q, m) for m in range(self.q - 1)]

    # ------------------------------------------------------------------
    # Values
    # ------------------------------------------------------------------

    def log_value(self, chi: MulCharacter, x: int) -> Optional[int]:
        """k with chi(x) = zeta_{q-1}^k, or None for x = 0."""
        if not x:
            return None
        return (chi.m * self.field.dlog(x)) % (self.q - 1)

    def char_value(self, chi: MulCharacter, x: int) -> CycInt:
        k = self.log_value(chi, x)
        if k is None:
            return self.ring.zero
        return self.ring.root_of_unity(self.p * k)

    def sign(self, chi: MulCharacter) -> int:
        """chi(-1) as +1 or -1."""
        return -1 if self.log_value(chi, self.field.neg(self.field.one)) else 1

    def e_o_exponent(self, t: int) -> int:
        """k with e_o(t) = zeta_N^k."""
        return ((self.q - 1) * self.field.trace(t)) % self.N

    def e_o(self, t: int) -> CycInt:
        return self.ring.root_of_unity(self.e_o_exponent(t))

    def residue_at_infinity(self, f: RationalFunc) -> int:
        """Coefficient of x^(-1) in the expansion of f at infinity."""
        polys = self.polys
        s = polys.mod(f.num, f.den)
        d = len(f.den) - 1
        if d < 1 or len(s) < d:
            return 0
        return self.field.div(s[d - 1], f.den[-1])

    def additive_e(self, f: RationalFunc) -> CycInt:
        """e(f) = e_o(-Res_inf(f dx)), which is e_o of the x^(-1) coefficient."""
        return self.e_o(self.residue_at_infinity(f))

    # ------------------------------------------------------------------
    # Dirichlet symbol
    # ------------------------------------------------------------------

    def symbol_log(self, chi: MulCharacter, f: Union[Poly, RationalFunc], g: Poly) -> Optional[int]:
        """
        Exponent k with chi(f/g) = zeta_{q-1}^k, or None when the symbol is 0.

        Raises:
            PolynomialError: g is zero
            PoleClashError: the denominator of a rational f shares a factor with g
        """
        if not g:
            raise PolynomialError("Dirichlet symbol modulo the zero polynomial")
        polys = self.polys
        if isinstance(f, RationalFunc):
            den = polys.resultant(g, f.den)
            if not den:
                raise PoleClashError("pole of the symbol argument shares a factor with the modulus")
            num = polys.resultant(g, f.num)
            if not num:
                return None
            return (self.log_value(chi, num) - self.log_value(chi, den)) % (self.q - 1)
        return self.log_value(chi, polys.resultant(g, f))

    def dirichlet_symbol(self, chi: MulCharacter, f: Union[Poly, RationalFunc], g: Poly) -> CycInt:
        """chi(f/g) = chi(R(g, f)), extended multiplicatively to rational f."""
        k = self.symbol_log(chi, f, g)
        if k is None:
            return self.ring.zero
        return self.ring.root_of_unity(self.p * k)

    # ------------------------------------------------------------------
    # Subgroup structure
    # ------------------------------------------------------------------

    def decompose(self, chi1: MulCharacter, chi2: MulCharacter) -> CharTriple:
        """chi0 generating <chi1, chi2^2>, with the least a, b >= 0 such that chi1 = chi0^a, chi2^2 = chi0^b."""
        order = self.q - 1
        m1, m2sq = chi1.m, (2 * chi2.m) % order
        g0 = gcd(gcd(m1, m2sq), order)
        span = order // g0
        chi0 = MulCharacter(self.q, g0)
        triple = CharTriple(
            chi0=chi0, chi1=chi1, chi2=chi2,
            a=(m1 // g0) % span, b=(m2sq // g0) % span,
            n=chi2.order, n_prime=chi1.order,
        )
        logger.debug("decompose(%s, %s): chi0=%s a=%d b=%d", chi1, chi2, chi0, triple.a, triple.b)
        return triple

    def subgroup_log(self, chi: MulCharacter, psi: MulCharacter) -> Optional[int]:
        """Least f in [0, ord psi) with chi * psi^f trivial, or None."""
        for f in range(psi.order):
            if (chi.m + f * psi.m) % (self.q - 1) == 0:
                return f
        return None


_GROUPS = {}


def group_for(field: FiniteField) -> CharacterGroup:
    key = (field.p, field.e, field.bound)
    group = _GROUPS.get(key)
    if group is None:
        group = CharacterGroup(field)
        _GROUPS[key] = group
    return group
