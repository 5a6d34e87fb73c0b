"""
Brute-force Selberg sums

    Se(r, chi1, chi2, i) = sum over monic c of degree i of mu(c) chi1(r/c) chi2(D(c))

together with the scaling reduction, the stability identities and the
Moebius-transformation formula, all checked by exact equality in Z[zeta_N].

Every term is a root of unity zeta_{q-1}^k (times mu(c) = +-1), so a sum is
accumulated as an integer count vector indexed by k and converted to a ring
element once. Count vectors from disjoint index ranges add exactly, which is
what makes the result independent of how the range is split across workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .characters import CharacterGroup, MulCharacter, group_for
from .cyclotomic import CycInt
from .errors import BudgetExceededError, PoleClashError, PreconditionError
from .field import FiniteField, make_field
from .polynomial import Poly, PolynomialRing, ring_for

logger = logging.getLogger(__name__)

DEFAULT_TERM_BUDGET = 2 ** 24
POLE_POLICIES = ('error', 'vanish')

# (polynomial, power, character exponent): contributes chi_m(f/c)^power
SymbolFactor = Tuple[Poly, int, int]


@dataclass(frozen=True)
class RationalArg:
    """A symbol argument prod f^k; factors with k < 0 are poles."""
    factors: Tuple[Tuple[Poly, int], ...]


@dataclass(frozen=True)
class SelbergParams:
    r: Union[Poly, RationalArg]
    chi1: MulCharacter
    chi2: MulCharacter
    i: int
    family: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class SelbergResult:
    value: CycInt
    n: int
    n_prime: int
    case: str
    f0: Optional[int]
    f1: Optional[int]
    count_enumerated: int


@dataclass(frozen=True)
class SymbolSumJob:
    """Everything a worker process needs to sum one index range."""
    p: int
    e: int
    bound: int
    degree: int
    factors: Tuple[SymbolFactor, ...]
    disc_m: Optional[int]
    mobius: bool
    pole_policy: str


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous, nonempty ranges."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges, start = [], 0
    for j in range(parts):
        stop = start + step + (1 if j < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def sum_range(job: SymbolSumJob, start: int, stop: int) -> List[int]:
    """Count vector (indexed mod q-1) of the terms with monic_unrank index in [start, stop)."""
    field = make_field(job.p, job.e, job.bound)
    P = ring_for(field)
    order = field.q - 1
    log = field.log_table
    mu_table = P.mobius_table(job.degree) if job.mobius else None
    counts = [0] * order
    for k in range(start, stop):
        weight = 1
        if mu_table is not None:
            weight = mu_table[k]
            if not weight:
                continue
        c = P.monic_unrank(job.degree, k)
        total = 0
        for f, power, m in job.factors:
            res = P.resultant(c, f)
            if not res:
                if power < 0 and job.pole_policy == 'error':
                    raise PoleClashError(
                        f"c = {P.format_poly(c)} meets the pole {P.format_poly(f)}")
                total = None
                break
            total += power * m * log[res]
        if total is None:
            continue
        if job.disc_m is not None:
            d = P.discriminant(c)
            if not d:
                continue
            total += job.disc_m * log[d]
        counts[total % order] += weight
    return counts


def _sum_range_star(args) -> List[int]:
    return sum_range(*args)


class SelbergEngine:
    """
    Enumeration engine over monic polynomials of a fixed degree.

    Args:
        field: Base field F_q
        threads: Worker processes (1 runs in-process)
        term_budget: Largest admissible q^i
    """

    def __init__(self, field: FiniteField, threads: int = 1, term_budget: int = DEFAULT_TERM_BUDGET):
        self.field = field
        self.threads = max(1, threads)
        self.term_budget = term_budget
        self.group: CharacterGroup = group_for(field)
        self.polys: PolynomialRing = ring_for(field)
        self.ring = self.group.ring

    # ------------------------------------------------------------------
    # Core enumeration
    # ------------------------------------------------------------------

    def symbol_sum(self, factors: Sequence[SymbolFactor], degree: int, chi2: Optional[MulCharacter] = None,
                   mobius: bool = True, pole_policy: str = 'error',
                   partitions: Optional[int] = None) -> Tuple[CycInt, int]:
        """
        Sum over monic c of degree `degree` of [mu(c)] prod chi_m(f/c)^k [chi2(D(c))].

        Args:
            factors: (f, k, m) triples; k = 0 keeps only the support of f
            degree: Degree of c (negative gives the empty sum)
            chi2: Character applied to D(c), or None for no discriminant factor
            mobius: Weight terms by mu(c)
            pole_policy: 'error' raises on c meeting a pole, 'vanish' drops the term
            partitions: Number of index ranges (defaults to the thread count)

        Returns:
            (exact value, number of enumerated c)
        """
        if pole_policy not in POLE_POLICIES:
            raise PreconditionError(f"unknown pole policy '{pole_policy}'")
        if degree < 0:
            return self.ring.zero, 0
        total = self.field.q ** degree
        if total > self.term_budget:
            raise BudgetExceededError(total, self.term_budget)
        for f, _, _ in factors:
            if not f:
                raise PreconditionError("symbol argument has a zero factor")

        # numerator factors first, so a vanishing numerator wins over a pole
        ordered = tuple(sorted(factors, key=lambda t: t[1] < 0))
        job = SymbolSumJob(
            p=self.field.p, e=self.field.e, bound=self.field.bound, degree=degree,
            factors=ordered, disc_m=None if chi2 is None else chi2.m,
            mobius=mobius, pole_policy=pole_policy,
        )
        ranges = split_range(total, partitions or self.threads)
        work = [(job, start, stop) for start, stop in ranges]
        if self.threads > 1 and len(ranges) > 1:
            logger.info("degree %d over F_%d: %d terms in %d ranges on %d workers",
                        degree, self.field.q, total, len(ranges), self.threads)
            with ProcessPoolExecutor(max_workers=self.threads) as pool:
                partials = list(pool.map(_sum_range_star, work))
        else:
            partials = [sum_range(*w) for w in work]

        merged = [0] * (self.field.q - 1)
        for part in partials:
            for k, c in enumerate(part):
                merged[k] += c
        return self.ring.from_exponent_counts(merged, step=self.field.p), total

    def as_factors(self, r: Union[Poly, RationalArg], chi: MulCharacter) -> Tuple[SymbolFactor, ...]:
        if isinstance(r, RationalArg):
            return tuple((f, k, chi.m) for f, k in r.factors)
        if not r:
            raise PreconditionError("Selberg sums need r != 0")
        return ((r, 1, chi.m),)

    def selberg(self, r: Union[Poly, RationalArg], chi1: MulCharacter, chi2: MulCharacter, i: int,
                pole_policy: str = 'error', partitions: Optional[int] = None) -> CycInt:
        """Se(r, chi1, chi2, i); 0 for i < 0 and 1 for i = 0."""
        value, _ = self.symbol_sum(self.as_factors(r, chi1), i, chi2=chi2,
                                   pole_policy=pole_policy, partitions=partitions)
        return value

    def selberg_bruteforce(self, params: SelbergParams, pole_policy: str = 'error',
                           partitions: Optional[int] = None) -> SelbergResult:
        from .aevw import classify

        value, count = self.symbol_sum(self.as_factors(params.r, params.chi1), params.i,
                                       chi2=params.chi2, pole_policy=pole_policy, partitions=partitions)
        case, f0, f1 = ('n-equals-1' if params.chi2.order == 1 else 'general'), None, None
        if params.family is not None:
            info = classify(self.group, params.family[0], params.family[1], params.chi1, params.chi2)
            case, f0, f1 = info.case, info.f0, info.f1
        return SelbergResult(value=value, n=params.chi2.order, n_prime=params.chi1.order,
                             case=case, f0=f0, f1=f1, count_enumerated=count)

    def lseries_coeff(self, r: Poly, chi1: MulCharacter, i: int, mobius: bool = False) -> CycInt:
        """sum over monic c of degree i of chi1(r/c), optionally weighted by mu(c)."""
        value, _ = self.symbol_sum(self.as_factors(r, chi1), i, chi2=None, mobius=mobius)
        return value

    # ------------------------------------------------------------------
    # Identities
    # ------------------------------------------------------------------

    def _unit_root(self, chi: MulCharacter, x: int, power: int) -> CycInt:
        """chi(x)^power for nonzero x."""
        return self.ring.root_of_unity(self.field.p * self.group.log_value(chi, x) * power)

    def scaling_check(self, theta: int, r_o: Poly, a: int, chi1: MulCharacter, chi2: MulCharacter,
                      i: int) -> Dict[str, Any]:
        """Se(theta r_o^a, chi1, chi2, i) against chi1(theta)^i Se(r_o, chi1^a, chi2, i)."""
        if not theta or a < 1:
            raise PreconditionError("scaling needs theta != 0 and a >= 1")
        P = self.polys
        lhs = self.selberg(P.scale(P.pow(r_o, a), theta), chi1, chi2, i)
        rhs = self._unit_root(chi1, theta, i) * self.selberg(r_o, chi1 ** a, chi2, i)
        return {'identity': 'scaling', 'lhs': lhs, 'rhs': rhs, 'equal': lhs == rhs}

    def stability_check(self, pi: Poly, r: Poly, chi1: MulCharacter, chi2: MulCharacter, i: int) -> Dict[str, Any]:
        """
        Compare Se(r) with Se(pi^n' r), n' = ord(chi1).

        When pi | r the two sums agree. Otherwise their difference is compared
        with three right-hand sides: the transcribed form
        -chi1(r/pi) chi2(D(pi)) Se(r^a pi^b, chi0, chi2, i - deg pi), the
        intermediate sum over c1 with chi2(pi/c1)^2, and the transcribed form
        with a, b raised by ord(chi0) when zero.

        Raises:
            PreconditionError: pi is not a monic irreducible
        """
        P, G = self.polys, self.group
        if not P.is_monic(pi) or not P.is_irreducible(pi):
            raise PreconditionError(f"{P.format_poly(pi)} is not a monic irreducible")
        triple = G.decompose(chi1, chi2)
        n_prime = triple.n_prime
        base = self.selberg(r, chi1, chi2, i)
        raised = self.selberg(P.mul(P.pow(pi, n_prime), r), chi1, chi2, i)
        report: Dict[str, Any] = {
            'identity': 'stability', 'pi': P.format_poly(pi), 'r': P.format_poly(r),
            'chi1': chi1.m, 'chi2': chi2.m, 'i': i,
            'chi0': triple.chi0.m, 'a': triple.a, 'b': triple.b, 'n_prime': n_prime,
            'se_r': base, 'se_pi_r': raised,
        }
        if not P.mod(r, pi):
            report.update(case='pi_divides_r', equal=base == raised)
            return report

        diff = base - raised
        d_pi = len(pi) - 1
        sub = i - d_pi
        chi0 = triple.chi0
        k = G.log_value(chi1, P.resultant(pi, r)) + G.log_value(chi2, P.discriminant(pi))
        prefactor = -self.ring.root_of_unity(self.field.p * k)

        literal = prefactor * self.selberg(P.mul(P.pow(r, triple.a), P.pow(pi, triple.b)), chi0, chi2, sub)
        intermediate = prefactor * self.symbol_sum(((r, 1, chi1.m), (pi, 2, chi2.m)), sub, chi2=chi2)[0]
        a_pos = triple.a or chi0.order
        b_pos = triple.b or chi0.order
        positive = prefactor * self.selberg(P.mul(P.pow(r, a_pos), P.pow(pi, b_pos)), chi0, chi2, sub)

        report.update(
            case='pi_coprime_to_r', difference=diff,
            rhs_literal=literal, rhs_intermediate=intermediate, rhs_positive=positive,
            equal_literal=diff == literal, equal_intermediate=diff == intermediate,
            equal_positive=diff == positive,
        )
        report['equal'] = report['equal_literal']
        return report

    def theorem1_check(self, matrix: Tuple[int, int, int, int], r: Poly, chi1: MulCharacter,
                       chi2: MulCharacter, i: int) -> Dict[str, Any]:
        """
        Moebius-transformation formula for (alpha, beta; gamma, delta).

        With phi = (alpha x + beta)/(gamma x + delta) and r~ = (gamma x + delta)^deg r r(phi),
        the c with roots phi(rho) range over the monic c of degree i prime to (-gamma x + alpha), and
        D(c_phi) = Delta^(i(i-1)) D(c) / R(c, gamma x + delta)^(2(i-1)). Hence

            chi2(Delta)^(i(i-1)) Se(r~^a (gamma x + delta)^-(a deg r + b(i-1) + M), chi0, chi2, i)
                = Se(r (-gamma x + alpha)^M', chi1, chi2, i)

        where c meeting the pole are dropped. The literal reading, prefactor
        chi2(Delta)^(1-i) and pole exponent a deg r + 2(b(i-1) + M), is reported as
        lhs_literal / equal_literal.
        """
        F, P, G = self.field, self.polys, self.group
        alpha, beta, gamma, delta = matrix
        det = F.sub(F.mul(alpha, delta), F.mul(beta, gamma))
        if not det:
            raise PreconditionError("matrix is singular")
        if not r:
            raise PreconditionError("Selberg sums need r != 0")
        triple = G.decompose(chi1, chi2)
        a, b, chi0 = triple.a, triple.b, triple.chi0
        d = len(r) - 1

        if gamma:
            M = 0
            while M + b * (i - 1) <= a * d:
                M += chi0.order
            M_prime = triple.n_prime
        else:
            M, M_prime = 0, 0

        num_lin = P.strip((beta, alpha))
        den_lin = P.strip((delta, gamma))
        r_tilde = ()
        for k, coeff in enumerate(r):
            term = P.mul(P.pow(num_lin, k), P.pow(den_lin, d - k))
            r_tilde = P.add(r_tilde, P.scale(term, coeff))

        def left(den_power: int, det_power: int) -> CycInt:
            factors: List[SymbolFactor] = [(r_tilde, a, chi0.m)]
            if den_power:
                factors.append((den_lin, -den_power, chi0.m))
            total = self.symbol_sum(factors, i, chi2=chi2, pole_policy='vanish')[0]
            return self._unit_root(chi2, det, det_power) * total

        lhs = left(a * d + b * (i - 1) + M, i * (i - 1))
        lhs_literal = left(a * d + 2 * (b * (i - 1) + M), 1 - i)

        right_factors: List[SymbolFactor] = [(r, 1, chi1.m)]
        if M_prime:
            right_factors.append((P.strip((alpha, F.neg(gamma))), M_prime, chi1.m))
        rhs = self.symbol_sum(right_factors, i, chi2=chi2)[0]

        return {
            'identity': 'theorem1',
            'matrix': [F.format_element(v) for v in matrix],
            'r': P.format_poly(r), 'chi1': chi1.m, 'chi2': chi2.m, 'i': i,
            'chi0': chi0.m, 'a': a, 'b': b, 'M': M, 'M_prime': M_prime,
            'lhs': lhs, 'rhs': rhs, 'equal': lhs == rhs,
            'lhs_literal': lhs_literal, 'equal_literal': lhs_literal == rhs,
        }

    def pellet_substitution(self, r: Poly, chi1: MulCharacter, chi_prime: MulCharacter, i: int) -> Dict[str, Any]:
        """sum_c chi1(r/c) omega(D(c)) chi'(D(c)) against (-1)^i sum_c mu(c) chi1(r/c) chi'(D(c))."""
        omega = self.group.quadratic()
        lhs, _ = self.symbol_sum(self.as_factors(r, chi1), i, chi2=omega * chi_prime, mobius=False)
        rhs = self.selberg(r, chi1, chi_prime, i) * (-1) ** i
        return {'identity': 'pellet_substitution', 'lhs': lhs, 'rhs': rhs, 'equal': lhs == rhs}
