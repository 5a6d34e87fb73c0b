"""
Gauss and Jacobi sums over F_q, the global Gauss sum g(r, chi, c) over F_q[x],
its Davenport-Hasse closed form, and the conductor-product identity check.
"""

import logging
from typing import Any, Dict, Optional

from .characters import CharacterGroup, MulCharacter, group_for
from .cyclotomic import CycFrac, CycInt
from .errors import PreconditionError
from .field import FiniteField
from .polynomial import Poly, RationalFunc, eta

logger = logging.getLogger(__name__)

DH_VARIANTS = ('derivative', 'discriminant')


class GaussContext:
    """
    Per-field cache of tau(chi_m), shared read-only once warmed up.

    Attributes:
        field: The base field
        group: Character group (values in Z[zeta_N])
        ring: Z[zeta_N], N = p(q-1)
    """

    def __init__(self, field: FiniteField):
        self.field = field
        self.group: CharacterGroup = group_for(field)
        self.ring = self.group.ring
        self.polys = self.group.polys
        self._tau: Dict[int, CycInt] = {}

    def warmup(self) -> 'GaussContext':
        """Fill the tau cache for every character."""
        for m in range(self.field.q - 1):
            self.gauss_sum(self.group.character(m))
        logger.debug("F_%d: cached %d Gauss sums", self.field.q, len(self._tau))
        return self

    # ------------------------------------------------------------------
    # Sums over F_q
    # ------------------------------------------------------------------

    def gauss_sum(self, chi: MulCharacter) -> CycInt:
        """tau(chi) = sum over a != 0 of chi(a) e_o(a), by direct summation."""
        cached = self._tau.get(chi.m)
        if cached is not None:
            return cached
        G, p = self.group, self.field.p
        counts = [0] * self.ring.N
        for a in self.field.nonzero():
            counts[(p * G.log_value(chi, a) + G.e_o_exponent(a)) % self.ring.N] += 1
        value = self.ring.from_exponent_counts(counts)
        self._tau[chi.m] = value
        return value

    def gauss_power(self, chi: MulCharacter, k: int) -> CycFrac:
        """tau(chi)^k for any integer k (tau is never zero)."""
        return CycFrac(self.gauss_sum(chi)) ** k

    def jacobi_sum(self, chi1: MulCharacter, chi2: MulCharacter) -> CycInt:
        """J(chi1, chi2) = sum over a not in {0, 1} of chi1(a) chi2(1 - a)."""
        F, G = self.field, self.group
        counts = [0] * (F.q - 1)
        for a in F.nonzero():
            if a == F.one:
                continue
            counts[(G.log_value(chi1, a) + G.log_value(chi2, F.sub(F.one, a))) % (F.q - 1)] += 1
        return self.ring.from_exponent_counts(counts, step=F.p)

    # ------------------------------------------------------------------
    # Global Gauss sums
    # ------------------------------------------------------------------

    def global_gauss(self, r: Poly, chi: MulCharacter, c: Poly) -> CycInt:
        """
        g(r, chi, c) = sum over d mod c of chi(d/c) e(rd/c).

        All q^deg(c) residues are enumerated; those sharing a factor with c
        have symbol 0 and contribute nothing.
        """
        if not c or not r:
            raise PreconditionError("global Gauss sum needs nonzero r and c")
        G, P = self.group, self.polys
        p, N = self.field.p, self.ring.N
        counts = [0] * N
        for k in range(self.field.q ** (len(c) - 1)):
            d = P.poly_from_index(k, len(c) - 1)
            s = G.log_value(chi, P.resultant(c, d))
            if s is None:
                continue
            t = G.residue_at_infinity(RationalFunc(P.mul(r, d), c))
            counts[(p * s + G.e_o_exponent(t)) % N] += 1
        return self.ring.from_exponent_counts(counts)

    def dh_evaluate(self, r: Poly, chi: MulCharacter, c: Poly, variant: str = 'derivative') -> CycInt:
        """
        Closed form mu(c) chi(r/c)^(-1) chi(c'/c) (-tau(chi))^deg(c) for monic c coprime to r.

        The 'discriminant' variant replaces chi(c'/c) with chi(eta(deg c)) chi(D(c)).
        """
        if variant not in DH_VARIANTS:
            raise PreconditionError(f"unknown closed-form variant '{variant}'")
        P, G, F = self.polys, self.group, self.field
        if not P.is_monic(c):
            raise PreconditionError("closed form needs a monic modulus")
        if len(P.gcd(r, c)) > 1:
            raise PreconditionError("closed form needs r and c coprime")
        mu = P.mobius(c)
        if mu == 0:
            return self.ring.zero
        d = len(c) - 1
        k = -G.log_value(chi, P.resultant(c, r))
        if variant == 'derivative':
            twist = G.symbol_log(chi, P.derivative(c), c)
        else:
            twist = G.log_value(chi, F.from_int(eta(d))) + G.log_value(chi, P.discriminant(c))
        if twist is None:
            return self.ring.zero
        unit = self.ring.root_of_unity(F.p * (k + twist))
        return mu * unit * (-self.gauss_sum(chi)) ** d

    def quadratic_gauss_closed_form(self, c: Poly) -> CycInt:
        """g(1, omega, c) = mu(c)^2 omega(eta(deg c)) tau(omega)^deg(c)."""
        P, G = self.polys, self.group
        omega = G.quadratic()
        d = len(c) - 1
        mu = P.mobius(c)
        return (mu * mu) * G.char_value(omega, self.field.from_int(eta(d))) * self.gauss_sum(omega) ** d

    # ------------------------------------------------------------------
    # Conductor-product identity
    # ------------------------------------------------------------------

    def anderson_identity_check(self, f: Poly, chi: MulCharacter) -> Dict[str, Any]:
        """
        Compare sum over monic g of degree deg(f_o)-1 of chi(f/g) against the
        conductor-product expression, for both exponent readings of tau(chi^-1).

        Args:
            f: Monic polynomial
            chi: Character with chi(f/.) non-principal

        Returns:
            Report with exact 'lhs', 'rhs_deg_f', 'rhs_deg_fo', the verdict
            ('deg_f', 'deg_fo', 'both' or 'neither') and 'magnitude_ratio'
        """
        P, G = self.polys, self.group
        if not P.is_monic(f):
            raise PreconditionError("identity check needs a monic f")
        if chi.is_trivial:
            raise PreconditionError("symbol chi(f/.) is principal for the trivial character")
        f_o = P.conductor_support(f, chi.order)
        if len(f_o) == 1:
            raise PreconditionError("conductor support f_o is 1; chi(f/.) is principal")

        deg_fo = len(f_o) - 1
        counts = [0] * (self.field.q - 1)
        for g in P.monic_polys(deg_fo - 1):
            k = G.log_value(chi, P.resultant(g, f))
            if k is not None:
                counts[k] += 1
        lhs = self.ring.from_exponent_counts(counts, step=self.field.p)

        omega = G.quadratic()
        head = CycFrac(G.char_value(omega, P.discriminant(f_o)) * G.dirichlet_symbol(chi, f, P.derivative(f_o)))
        for pi, k in P.factor(f).factors:
            if k % chi.order:
                head = head * self.gauss_power(chi ** (-k), -(len(pi) - 1))
        inverse = chi.inverse()
        rhs_deg_f = head * self.gauss_power(inverse, len(f) - 2)
        rhs_deg_fo = head * self.gauss_power(inverse, deg_fo - 1)

        matches = [rhs_deg_f == lhs, rhs_deg_fo == lhs]
        verdict = {(True, True): 'both', (True, False): 'deg_f',
                   (False, True): 'deg_fo', (False, False): 'neither'}[tuple(matches)]
        ratio: Optional[float] = None
        if not rhs_deg_f.is_zero():
            ratio = abs(lhs.embed_complex()) / abs(rhs_deg_f.embed_complex())
        return {
            'identity': 'anderson',
            'f': P.format_poly(f),
            'chi': chi.m,
            'f_o': P.format_poly(f_o),
            'lhs': lhs,
            'rhs_deg_f': rhs_deg_f,
            'rhs_deg_fo': rhs_deg_fo,
            'verdict': verdict,
            'magnitude_ratio': ratio,
        }


_CONTEXTS: Dict[tuple, GaussContext] = {}


def context_for(field: FiniteField) -> GaussContext:
    key = (field.p, field.e, field.bound)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = GaussContext(field)
        _CONTEXTS[key] = ctx
    return ctx
