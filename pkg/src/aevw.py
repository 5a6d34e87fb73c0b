"""
Closed-form evaluation of Se(x^e0 (x-1)^e1, chi1, chi2, i).

Case classification (metaplectic when chi1^e0 and chi1^e1 lie in <chi2>),
the Gauss-sum product P_i, its period factor A, the T/S/U polynomials, the
closed form itself, and the generating series it predicts along i = i0 + l n.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .characters import CharacterGroup, MulCharacter
from .cyclotomic import CycFrac, CycInt
from .errors import PreconditionError
from .gauss_sums import GaussContext
from .polynomial import Poly, PolynomialRing, eta
from .series import RationalFn

logger = logging.getLogger(__name__)

METAPLECTIC = 'metaplectic'
NON_METAPLECTIC = 'non-metaplectic'
N_EQUALS_1 = 'n-equals-1'

READINGS = ('derived', 'literal')


@dataclass(frozen=True)
class AevwParams:
    e0: int
    e1: int
    chi1: MulCharacter
    chi2: MulCharacter
    n: int
    case: str
    f0: Optional[int]
    f1: Optional[int]


def residue(j: int, m: int) -> int:
    """(j)_m, the least nonnegative residue of j modulo m."""
    return j % m


def t_factor(y: int, q: int) -> int:
    """T(y, q) = -y + sum_{k=0}^{y} (2k+1)(-q)^(y-k)."""
    if y < 0:
        raise PreconditionError("T(y, q) needs y >= 0")
    return -y + sum((2 * k + 1) * (-q) ** (y - k) for k in range(y + 1))


def s_factor(y: int, q: int) -> int:
    """S(y, q) = 1 - (1-q) y."""
    if y < 0:
        raise PreconditionError("S(y, q) needs y >= 0")
    return 1 - (1 - q) * y


def u_polys(q: int, X):
    """(U_e(q, X), U_o(q, X)) for any X supporting ring arithmetic with integers."""
    u_e = 2 * q * q * X * X - q * X * X - 3 * q * X + X + 1
    u_o = q * q * X * X + q * q * X - 3 * q * X - q + 2
    return u_e, u_o


def family_poly(polys: PolynomialRing, e0: int, e1: int) -> Poly:
    """x^e0 (x-1)^e1."""
    field = polys.field
    return polys.mul(polys.pow(polys.x(), e0), polys.pow(polys.linear(field.one), e1))


def classify(group: CharacterGroup, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter) -> AevwParams:
    """Metaplectic iff both chi1^e0 and chi1^e1 lie in <chi2>; f0, f1 in [0, n) only then."""
    n = chi2.order
    f0 = group.subgroup_log(chi1 ** e0, chi2)
    f1 = group.subgroup_log(chi1 ** e1, chi2)
    if n == 1:
        case = N_EQUALS_1
    elif f0 is not None and f1 is not None:
        case = METAPLECTIC
    else:
        case = NON_METAPLECTIC
    if case != METAPLECTIC:
        f0 = f1 = None
    return AevwParams(e0=e0, e1=e1, chi1=chi1, chi2=chi2, n=n, case=case, f0=f0, f1=f1)


def check_reading(reading: str) -> None:
    if reading not in READINGS:
        raise PreconditionError(f"unknown reading '{reading}'")


def branch_factor(branch: int, L: int, q: int, reading: str = 'derived') -> int:
    """
    Integer multiplier of chi1(-1)^(e1 i) (-1)^i P_i in a metaplectic branch, L = [i/n].

    derived: q^L T(2L), q^(L+1) T(2L+1), q^L (1 + (1-q) L); these agree with brute force.
    literal: q^L T(2L), q^L T(2L+1), q^L S(L+1).
    """
    check_reading(reading)
    if branch == 1:
        return q ** L * t_factor(2 * L, q)
    if branch == 2:
        shift = 1 if reading == 'derived' else 0
        return q ** (L + shift) * t_factor(2 * L + 1, q)
    if branch == 3:
        if reading == 'derived':
            return q ** L * (1 + (1 - q) * L)
        return q ** L * s_factor(L + 1, q)
    raise PreconditionError(f"no metaplectic branch {branch}")


def metaplectic_branch(params: AevwParams, i: int) -> Optional[int]:
    """1 (T even), 2 (T odd) or 3 (S) for the metaplectic case; None otherwise."""
    if params.case != METAPLECTIC:
        return None
    n, f0, f1 = params.n, params.f0, params.f1
    lo, hi = min(f0, f1), max(f0, f1)
    ri = residue(i, n)
    rs = residue(f0 + f1 - i + 1, n)
    if ri <= lo and hi < rs:
        return 1
    if rs <= lo and hi < ri:
        return 2
    return 3


class AevwEvaluator:
    """Closed forms for the family x^e0 (x-1)^e1 over one field."""

    def __init__(self, ctx: GaussContext):
        self.ctx = ctx
        self.field = ctx.field
        self.group = ctx.group
        self.ring = ctx.ring
        self.q = ctx.field.q

    def classify(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter) -> AevwParams:
        return classify(self.group, e0, e1, chi1, chi2)

    def _eta_value(self, chi: MulCharacter, k: int) -> CycInt:
        return self.group.char_value(chi, self.field.from_int(eta(k)))

    def p_product(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter, i: int) -> CycFrac:
        """
        P_i = prod_{0<=j<i} tau(chi1^e0 chi2^j) tau(chi1^e1 chi2^j) tau(chi2^(j+1))
              conj(tau(chi1^(e0+e1) chi2^(i-1+j))) / (q tau(chi2)).
        """
        if i < 0:
            raise PreconditionError("P_i needs i >= 0")
        tau = self.ctx.gauss_sum
        num = self.ring.one
        for j in range(i):
            num = num * tau(chi1 ** e0 * chi2 ** j) * tau(chi1 ** e1 * chi2 ** j) * tau(chi2 ** (j + 1))
            num = num * tau(chi1 ** (e0 + e1) * chi2 ** (i - 1 + j)).conj()
        den = (self.q * tau(chi2)) ** i
        return CycFrac(num, den)

    def period_factor(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter) -> CycFrac:
        """The exact quotient P_{i+n} / P_i, which does not depend on i; computed as P_n."""
        return self.p_product(e0, e1, chi1, chi2, chi2.order)

    def a_factor(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter) -> CycFrac:
        """A from its closed form in the metaplectic and non-metaplectic cases."""
        params = self.classify(e0, e1, chi1, chi2)
        n = params.n
        tail = CycFrac(self._eta_value(chi2, n)) / (self.ctx.gauss_sum(chi2) ** n)
        if params.case == METAPLECTIC:
            return tail * CycFrac(self.ring.from_int(self.q)) ** (n - 2)
        jac = self.ctx.jacobi_sum(chi1 ** (e0 * n), chi1 ** (e1 * n))
        return tail * (-jac) * self.q ** (n - 1)

    def van_wamelen_value(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter,
                          reading: str = 'derived') -> Tuple[CycFrac, CycFrac]:
        """
        (the closed value, P_s) in the metaplectic case, s = f0 + f1 + 1:
        -q^k chi1(-1)^j chi2(eta(s)) tau(chi2^s) / tau(chi2)^s.

        derived: k = f0 + f1 - 1 - [(f0 + f1) / n], j = e1 s.
        literal: k = (f0 + f1)_n - 1, j = s.
        """
        check_reading(reading)
        params = self.classify(e0, e1, chi1, chi2)
        if params.case != METAPLECTIC:
            raise PreconditionError("the extra evaluation needs the metaplectic case")
        f = params.f0 + params.f1
        s = f + 1
        if reading == 'derived':
            k, j = f - 1 - f // params.n, e1 * s
        else:
            k, j = residue(f, params.n) - 1, s
        q_frac = CycFrac(self.ring.from_int(self.q))
        value = -self.group.sign(chi1) ** j * q_frac ** k * self._eta_value(chi2, s)
        value = value * self.ctx.gauss_sum(chi2 ** s) / self.ctx.gauss_sum(chi2) ** s
        return value, self.p_product(e0, e1, chi1, chi2, s)

    def closed_form_with_branch(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter,
                                i: int, reading: str = 'derived') -> Tuple[CycFrac, Optional[int]]:
        check_reading(reading)
        params = self.classify(e0, e1, chi1, chi2)
        if params.n == 1:
            raise PreconditionError("closed form needs ord(chi2) > 1; use the L-series analysis for n = 1")
        sign = self.group.sign(chi1) ** (e1 * i) * (-1) ** i
        value = sign * self.p_product(e0, e1, chi1, chi2, i)
        branch = metaplectic_branch(params, i)
        if branch is None:
            return value, None
        return value * branch_factor(branch, i // params.n, self.q, reading), branch

    def closed_form(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter, i: int,
                    reading: str = 'derived') -> CycFrac:
        return self.closed_form_with_branch(e0, e1, chi1, chi2, i, reading)[0]

    def series_sign(self, e1: int, chi1: MulCharacter, n: int) -> int:
        """sigma = chi1(-1)^(e1 n) (-1)^n."""
        return self.group.sign(chi1) ** (e1 * n) * (-1) ** n

    def predicted_series(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter, i0: int,
                         reading: str = 'derived') -> Tuple[RationalFn, Optional[int]]:
        """
        Generating series sum_l Se(x^e0 (x-1)^e1, chi1, chi2, i0 + l n) X^l as a rational function.

        The 'derived' reading is the term-by-term sum of the derived closed form,
        with Y = sigma q A X: U_e(q, Y), q U_o(q, Y) and 1 - qY over (1 - Y)^2 (1 - q^2 Y)
        or (1 - Y)^2. The 'literal' reading puts sigma A X into U_e and U_o and
        uses (1 + (q-2)Y)^2 as the third numerator.

        Returns:
            (series, metaplectic branch or None)
        """
        check_reading(reading)
        params = self.classify(e0, e1, chi1, chi2)
        n = params.n
        if n == 1:
            raise PreconditionError("predicted series needs ord(chi2) > 1")
        if not 0 <= i0 < n:
            raise PreconditionError(f"i0 must lie in [0, {n})")
        q = self.q
        sigma = self.series_sign(e1, chi1, n)
        A = self.a_factor(e0, e1, chi1, chi2)
        lead = self.group.sign(chi1) ** (e1 * i0) * (-1) ** i0 * self.p_product(e0, e1, chi1, chi2, i0)
        one = CycFrac(self.ring.one)

        if params.case != METAPLECTIC:
            return RationalFn([lead], [one, -(sigma * A)]), None

        branch = metaplectic_branch(params, i0)
        c = sigma * q * A
        cubic = [one, -(2 + q * q) * c, (1 + 2 * q * q) * c * c, -(q * q) * c * c * c]
        square = [one, -2 * c, c * c]
        if reading == 'derived':
            arg = c
        else:
            arg = sigma * A
        if branch == 1:
            num = [one, (1 - 3 * q) * arg, (2 * q * q - q) * arg * arg]
            return RationalFn([lead * t for t in num], cubic), branch
        if branch == 2:
            num = [one * (2 - q), (q * q - 3 * q) * arg, (q * q) * arg * arg]
            if reading == 'derived':
                num = [q * t for t in num]
            return RationalFn([lead * t for t in num], cubic), branch
        if reading == 'derived':
            num = [one, -q * c]
        else:
            num = [one, 2 * (q - 2) * c, (q - 2) ** 2 * c * c]
        return RationalFn([lead * t for t in num], square), branch

    def magnitude_classes(self, n: int, metaplectic: bool) -> List[float]:
        """Admissible |A| for n > 1."""
        q = float(self.q)
        if metaplectic:
            return [q ** (n / 2 - 2)]
        return [q ** (n / 2 - 1), q ** (n / 2 - 0.5), q ** (n / 2)]
