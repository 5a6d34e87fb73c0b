"""
Verification suites behind the `verify *` and `selberg verify-aevw` commands.

Every suite walks a parameter grid, records each failing point under
'counterexamples' and each point that raised under 'errors', and keeps going.
A report's status is 'pass' only when both lists are empty.
"""

import logging
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Rational

from .aevw import (METAPLECTIC, AevwEvaluator, family_poly, metaplectic_branch, s_factor,
                   t_factor, u_polys)
from .characters import MulCharacter
from .errors import SelbergError
from .field import FiniteField
from .gauss_sums import DH_VARIANTS, context_for
from .polynomial import Poly
from .selberg import SelbergEngine
from .series import int_poly_mul, int_series_quotient

logger = logging.getLogger(__name__)


class SuiteReport:
    """Accumulates grid points, counterexamples and errors for one identity."""

    def __init__(self, identity: str, field: Optional[FiniteField], grid: Dict[str, Any]):
        self.identity = identity
        self.field = field
        self.grid = grid
        self.checked = 0
        self.counterexamples: List[Dict[str, Any]] = []
        self.errors: List[Dict[str, Any]] = []
        self.extra: Dict[str, Any] = {}

    def check(self, point: Dict[str, Any], fn: Callable[[], Any]) -> Any:
        """Run one grid point; fn returns (ok, detail) or raises."""
        self.checked += 1
        try:
            ok, detail = fn()
        except SelbergError as e:
            self.errors.append({'point': point, 'error': f"{type(e).__name__}: {e}"})
            logger.warning("%s: %s at %s", self.identity, e, point)
            return None
        if not ok:
            entry = dict(point)
            if detail:
                entry['detail'] = detail
            self.counterexamples.append(entry)
        return detail

    @property
    def status(self) -> str:
        return 'pass' if not self.counterexamples and not self.errors else 'fail'

    def to_dict(self) -> Dict[str, Any]:
        report = {
            'identity': self.identity,
            'grid': self.grid,
            'checked': self.checked,
            'status': self.status,
            'counterexamples': self.counterexamples,
            'errors': self.errors,
        }
        report.update(self.extra)
        return report


class VerificationSuites:
    """
    The identity suites over one field.

    Args:
        field: Base field
        threads: Worker processes for the Selberg engine
        term_budget: Enumeration budget per sum
        embedding_tol: Tolerance for magnitude checks
    """

    def __init__(self, field: FiniteField, threads: int = 1, term_budget: int = 2 ** 24,
                 embedding_tol: float = 1e-9):
        self.field = field
        self.ctx = context_for(field).warmup()
        self.group = self.ctx.group
        self.polys = self.ctx.polys
        self.engine = SelbergEngine(field, threads=threads, term_budget=term_budget)
        self.aevw = AevwEvaluator(self.ctx)
        self.embedding_tol = embedding_tol

    def _omega_int(self, x: int) -> int:
        if not x:
            return 0
        return -1 if self.field.dlog(x) % 2 else 1

    def _chars(self, ms: Optional[Sequence[int]]) -> List[MulCharacter]:
        if ms is None:
            return self.group.all_characters()
        return [self.group.character(m) for m in ms]

    # ------------------------------------------------------------------
    # Polynomial and Gauss-sum identities
    # ------------------------------------------------------------------

    def pellet(self, max_deg: int = 4) -> Dict[str, Any]:
        """mu(f) = (-1)^deg(f) omega(D(f)) for every monic f of degree <= max_deg."""
        P = self.polys
        report = SuiteReport('pellet', self.field, {'q': self.field.q, 'max_deg': max_deg})
        for d in range(max_deg + 1):
            table = P.mobius_table(d)
            for k, f in enumerate(P.monic_polys(d)):
                def run(f=f, k=k, d=d):
                    lhs = table[k]
                    rhs = (-1) ** d * self._omega_int(P.discriminant(f))
                    return lhs == rhs, {'mu': lhs, 'rhs': rhs}
                report.check({'f': P.format_poly(f)}, run)
        return report.to_dict()

    def gauss_jacobi(self, chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        ctx, G, q = self.ctx, self.group, self.field.q
        tau, jac = ctx.gauss_sum, ctx.jacobi_sum
        report = SuiteReport('gauss-jacobi', self.field, {'q': q, 'chars': chars or 'all'})
        trivial = G.trivial()
        report.check({'law': 'tau(1) = -1'}, lambda: (tau(trivial) == -1, None))
        report.check({'law': 'J(1,1) = q-2'}, lambda: (jac(trivial, trivial) == q - 2, None))
        for chi in self._chars(chars):
            if chi.is_trivial:
                continue
            sign = G.sign(chi)
            report.check({'law': 'tau(chi) tau(chi^-1) = chi(-1) q', 'chi': chi.m},
                         lambda chi=chi, sign=sign: (tau(chi) * tau(chi.inverse()) == sign * q, None))
            report.check({'law': 'J(chi,1) = -1', 'chi': chi.m},
                         lambda chi=chi: (jac(chi, trivial) == -1, None))
        for chi1 in self._chars(chars):
            for chi2 in self._chars(chars):
                point = {'chi1': chi1.m, 'chi2': chi2.m}
                prod = chi1 * chi2
                j12 = jac(chi1, chi2)
                s1, s2 = G.sign(chi1), G.sign(chi2)
                report.check(dict(point, law='J(chi1,chi2) = J(chi2,chi1)'),
                             lambda: (j12 == jac(chi2, chi1), None))
                report.check(dict(point, law='J(chi1,chi2) = chi2(-1) J((chi1 chi2)^-1, chi2)'),
                             lambda: (j12 == s2 * jac(prod.inverse(), chi2), None))
                report.check(dict(point, law='J(chi1,chi2) = chi1(-1) J(chi1, (chi1 chi2)^-1)'),
                             lambda: (j12 == s1 * jac(chi1, prod.inverse()), None))
                if not prod.is_trivial:
                    report.check(dict(point, law='J(chi1,chi2) tau(chi1 chi2) = tau(chi1) tau(chi2)'),
                                 lambda: (j12 * tau(prod) == tau(chi1) * tau(chi2), None))
                elif not chi1.is_trivial:
                    report.check(dict(point, law='J(chi, chi^-1) = -chi(-1)'),
                                 lambda: (j12 == -s1, None))
        return report.to_dict()

    def dh(self, max_deg: int = 3, rs: Optional[Sequence[Poly]] = None,
           chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        """Closed form of g(r, chi, c) against direct summation on all coprime monic c."""
        P, ctx = self.polys, self.ctx
        one = self.field.one
        if rs is None:
            rs = [P.one(), P.x(), P.linear(one), P.strip((one, 0, one))]
        report = SuiteReport('dh', self.field, {'q': self.field.q, 'max_deg': max_deg,
                                                'r': [P.format_poly(r) for r in rs]})
        omega = self.group.quadratic()
        for r in rs:
            for chi in self._chars(chars):
                for d in range(max_deg + 1):
                    for c in P.monic_polys(d):
                        if len(P.gcd(r, c)) > 1:
                            continue
                        point = {'r': P.format_poly(r), 'chi': chi.m, 'c': P.format_poly(c)}

                        def run(r=r, chi=chi, c=c):
                            direct = ctx.global_gauss(r, chi, c)
                            ok = all(ctx.dh_evaluate(r, chi, c, v) == direct for v in DH_VARIANTS)
                            if ok and chi == omega and r == P.one():
                                ok = ctx.quadratic_gauss_closed_form(c) == direct
                            return ok, None
                        report.check(point, run)
        return report.to_dict()

    def anderson(self, fs: Sequence[Poly], chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        """Adjudicate the conductor-product identity; verdicts are recorded, not asserted."""
        P = self.polys
        report = SuiteReport('anderson', self.field, {'q': self.field.q,
                                                      'f': [P.format_poly(f) for f in fs]})
        verdicts: List[Dict[str, Any]] = []
        for f in fs:
            for chi in self._chars(chars):
                if chi.is_trivial or len(P.conductor_support(f, chi.order)) == 1:
                    continue
                detail = report.check({'f': P.format_poly(f), 'chi': chi.m},
                                      lambda f=f, chi=chi: (True, self.ctx.anderson_identity_check(f, chi)))
                if detail is not None:
                    verdicts.append(detail)
        report.extra['verdicts'] = verdicts
        tally: Dict[str, int] = {}
        for v in verdicts:
            tally[v['verdict']] = tally.get(v['verdict'], 0) + 1
        report.extra['verdict_counts'] = tally
        return report.to_dict()

    def magnitudes(self, e_values: Sequence[int] = (1, 2)) -> Dict[str, Any]:
        """|tau(chi)| = sqrt(q) and the |A| classes in every complex embedding."""
        q, tol = self.field.q, self.embedding_tol
        ctx, ring = self.ctx, self.ctx.ring
        sigmas = ring.embedding_indices()
        report = SuiteReport('magnitudes', self.field, {'q': q, 'embeddings': len(sigmas)})
        for chi in self.group.all_characters():
            if chi.is_trivial:
                continue
            value = ctx.gauss_sum(chi)
            report.check({'tau': chi.m}, lambda value=value: (
                all(abs(abs(value.embed_complex(s)) - q ** 0.5) < tol * q for s in sigmas), None))
        for chi2 in self.group.all_characters():
            n = chi2.order
            if n == 1:
                continue
            for chi1 in self.group.all_characters():
                for e0 in e_values:
                    for e1 in e_values:
                        def run(chi1=chi1, chi2=chi2, e0=e0, e1=e1, n=n):
                            params = self.aevw.classify(e0, e1, chi1, chi2)
                            A = self.aevw.a_factor(e0, e1, chi1, chi2)
                            classes = self.aevw.magnitude_classes(n, params.case == METAPLECTIC)
                            scale = max(classes)
                            ok = all(min(abs(abs(A.embed_complex(s)) - c) for c in classes) < tol * scale
                                     for s in sigmas)
                            return ok, None
                        report.check({'chi1': chi1.m, 'chi2': chi2.m, 'e0': e0, 'e1': e1}, run)
        return report.to_dict()

    # ------------------------------------------------------------------
    # Selberg-sum identities
    # ------------------------------------------------------------------

    def scaling(self, max_i: int = 3, r_os: Optional[Sequence[Poly]] = None, a_values: Sequence[int] = (1, 2),
                chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        P, F = self.polys, self.field
        if r_os is None:
            r_os = [P.x(), family_poly(P, 1, 1)]
        report = SuiteReport('scaling', F, {'q': F.q, 'max_i': max_i,
                                            'r_o': [P.format_poly(r) for r in r_os], 'a': list(a_values)})
        thetas = [F.one, F.generator]
        for r_o in r_os:
            for a in a_values:
                for theta in thetas:
                    for chi1 in self._chars(chars):
                        for chi2 in self._chars(chars):
                            for i in range(max_i + 1):
                                point = {'r_o': P.format_poly(r_o), 'a': a, 'theta': F.format_element(theta),
                                         'chi1': chi1.m, 'chi2': chi2.m, 'i': i}
                                report.check(point, lambda r_o=r_o, a=a, theta=theta, chi1=chi1, chi2=chi2, i=i: (
                                    self.engine.scaling_check(theta, r_o, a, chi1, chi2, i)['equal'], None))
        return report.to_dict()

    def stability(self, max_i: int = 3, pis: Optional[Sequence[Poly]] = None,
                  rs: Optional[Sequence[Poly]] = None, chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        """
        Both stability cases. A point passes when the pi | r equality holds, or
        when the intermediate and raised-exponent right-hand sides match; literal
        mismatches are counted separately.
        """
        P, F = self.polys, self.field
        if pis is None:
            pis = P.irreducibles(1)[:2] + P.irreducibles(2)[:2]
        if rs is None:
            rs = [P.x(), family_poly(P, 1, 1)]
        report = SuiteReport('stability', F, {'q': F.q, 'max_i': max_i,
                                              'pi': [P.format_poly(p) for p in pis],
                                              'r': [P.format_poly(r) for r in rs]})
        literal_mismatches: List[Dict[str, Any]] = []
        for pi in pis:
            for r in rs:
                for chi1 in self._chars(chars):
                    for chi2 in self._chars(chars):
                        for i in range(max_i + 1):
                            point = {'pi': P.format_poly(pi), 'r': P.format_poly(r),
                                     'chi1': chi1.m, 'chi2': chi2.m, 'i': i}

                            def run(pi=pi, r=r, chi1=chi1, chi2=chi2, i=i):
                                res = self.engine.stability_check(pi, r, chi1, chi2, i)
                                if res['case'] == 'pi_divides_r':
                                    return res['equal'], None
                                return res['equal_intermediate'] and res['equal_positive'], res
                            detail = report.check(point, run)
                            if detail is not None and not detail['equal_literal']:
                                literal_mismatches.append(dict(point, a=detail['a'], b=detail['b']))
        report.extra['literal_mismatches'] = literal_mismatches
        return report.to_dict()

    def theorem1(self, max_i: int = 3, r: Optional[Poly] = None, random_count: int = 10, seed: int = 0,
                 chars: Optional[Sequence[int]] = None,
                 extra_matrices: Sequence[Tuple[int, int, int, int]] = ()) -> Dict[str, Any]:
        """
        Identity, translations, inversion (with r(0) = 0), seeded random invertible
        matrices and any extra matrices given; a singular extra matrix is recorded as an error.
        Points where the transcribed prefactor and exponent fail go to 'literal_mismatches'.
        """
        P, F = self.polys, self.field
        if r is None:
            r = family_poly(P, 1, 1)
        one, zero = F.one, F.zero
        matrices = [(one, zero, zero, one)]
        matrices += [(one, lam, zero, one) for lam in F.nonzero()]
        if not P.eval(r, zero):
            matrices.append((zero, one, one, zero))
        rng = np.random.default_rng(seed)
        target = len(matrices) + random_count
        while len(matrices) < target:
            m = tuple(int(v) for v in rng.integers(0, F.q, size=4))
            if F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2])):
                matrices.append(m)
        matrices += list(extra_matrices)
        report = SuiteReport('theorem1', F, {'q': F.q, 'max_i': max_i, 'r': P.format_poly(r),
                                             'matrices': len(matrices), 'seed': seed})
        literal_mismatches: List[Dict[str, Any]] = []
        for matrix in matrices:
            for chi1 in self._chars(chars):
                for chi2 in self._chars(chars):
                    for i in range(max_i + 1):
                        point = {'matrix': [F.format_element(v) for v in matrix],
                                 'chi1': chi1.m, 'chi2': chi2.m, 'i': i}

                        def run(matrix=matrix, chi1=chi1, chi2=chi2, i=i):
                            res = self.engine.theorem1_check(matrix, r, chi1, chi2, i)
                            return res['equal'], {'lhs': res['lhs'], 'rhs': res['rhs'],
                                                  'equal_literal': res['equal_literal'],
                                                  'M': res['M'], 'M_prime': res['M_prime']}
                        detail = report.check(point, run)
                        if detail is not None and not detail['equal_literal']:
                            literal_mismatches.append(dict(point, M=detail['M'], M_prime=detail['M_prime']))
        report.extra['literal_mismatches'] = literal_mismatches
        return report.to_dict()

    def aevw_grid(self, e_values: Sequence[int] = (1, 2), max_i: int = 5,
                  chi1s: Optional[Sequence[int]] = None, chi2s: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        """
        Closed form against brute force for r = x^e0 (x-1)^e1, plus P periodicity,
        the exact period factor and the extra metaplectic evaluation. Each point also
        carries equal_literal for the transcribed branch factors.
        """
        P, F, ev = self.polys, self.field, self.aevw
        report = SuiteReport('aevw', F, {'q': F.q, 'e': list(e_values), 'max_i': max_i})
        points: List[Dict[str, Any]] = []
        branches = {1: 0, 2: 0, 3: 0}
        for chi2 in self._chars(chi2s):
            n = chi2.order
            if n == 1:
                continue
            for chi1 in self._chars(chi1s):
                for e0 in e_values:
                    for e1 in e_values:
                        params = ev.classify(e0, e1, chi1, chi2)
                        base = {'chi1': chi1.m, 'chi2': chi2.m, 'e0': e0, 'e1': e1}
                        period = report.check(dict(base, check='period'),
                                              lambda: self._period(e0, e1, chi1, chi2))
                        if params.case == METAPLECTIC:
                            report.check(dict(base, check='van_wamelen'),
                                         lambda: self._van_wamelen(e0, e1, chi1, chi2))
                        r = family_poly(P, e0, e1)
                        for i in range(max_i + 1):
                            point = dict(base, i=i)

                            def run(i=i, r=r):
                                brute = self.engine.selberg(r, chi1, chi2, i)
                                closed, branch = ev.closed_form_with_branch(e0, e1, chi1, chi2, i)
                                literal = ev.closed_form(e0, e1, chi1, chi2, i, reading='literal')
                                equal = closed == brute
                                return equal, {'branch': branch, 'equal': equal,
                                               'equal_literal': literal == brute}
                            detail = report.check(point, run)
                            branch = metaplectic_branch(params, i)
                            if branch is not None:
                                branches[branch] += 1
                            points.append(dict(point, case=params.case, branch=branch,
                                               f0=params.f0, f1=params.f1,
                                               equal=bool(detail and detail['equal']),
                                               equal_literal=bool(detail and detail['equal_literal']),
                                               a_matches_period=period))
        report.extra['points'] = points
        report.extra['branch_counts'] = {str(k): v for k, v in branches.items()}
        return report.to_dict()

    def _period(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter):
        """(P_{i+n} = P_n P_i for 0 <= i < n, closed-form A equals P_n)."""
        ev = self.aevw
        A = ev.a_factor(e0, e1, chi1, chi2)
        period = ev.period_factor(e0, e1, chi1, chi2)
        n = chi2.order
        shifted = all(ev.p_product(e0, e1, chi1, chi2, i + n) == period * ev.p_product(e0, e1, chi1, chi2, i)
                      for i in range(n))
        return shifted, A == period

    def _van_wamelen(self, e0: int, e1: int, chi1: MulCharacter, chi2: MulCharacter):
        value, product = self.aevw.van_wamelen_value(e0, e1, chi1, chi2)
        literal, _ = self.aevw.van_wamelen_value(e0, e1, chi1, chi2, reading='literal')
        return value == product, {'equal_literal': literal == product}

    def pellet_substitution(self, max_i: int = 3, rs: Optional[Sequence[Poly]] = None,
                            chars: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        P = self.polys
        if rs is None:
            rs = [P.x(), family_poly(P, 1, 1)]
        report = SuiteReport('pellet-substitution', self.field, {'q': self.field.q, 'max_i': max_i})
        for r in rs:
            for chi1 in self._chars(chars):
                for chi_p in self._chars(chars):
                    for i in range(max_i + 1):
                        point = {'r': P.format_poly(r), 'chi1': chi1.m, 'chi_prime': chi_p.m, 'i': i}
                        report.check(point, lambda r=r, chi1=chi1, chi_p=chi_p, i=i: (
                            self.engine.pellet_substitution(r, chi1, chi_p, i)['equal'], None))
        return report.to_dict()


def series_identities(q: int, count: int = 8) -> Dict[str, Any]:
    """The T/S generating functions and the four special values of U_e, U_o."""
    report = SuiteReport('series-identities', None, {'q': q, 'count': count})
    cubic_den = int_poly_mul(int_poly_mul([1, -1], [1, -1]), [1, -q * q])
    u_e_poly = [1, 1 - 3 * q, 2 * q * q - q]
    u_o_poly = [2 - q, q * q - 3 * q, q * q]
    even = int_series_quotient(u_e_poly, cubic_den, count)
    odd = int_series_quotient(u_o_poly, cubic_den, count)
    s_series = int_series_quotient([1, q - 2], [1, -2, 1], count)
    for m in range(count):
        report.check({'series': 'T(2m)', 'm': m}, lambda m=m: (even[m] == t_factor(2 * m, q), None))
        report.check({'series': 'T(2m+1)', 'm': m}, lambda m=m: (odd[m] == t_factor(2 * m + 1, q), None))
        report.check({'series': 'S(m)', 'm': m}, lambda m=m: (s_series[m] == s_factor(m, q), None))
    inv_sq = Rational(1, q * q)
    cube = (1 - Rational(1, q)) ** 3
    ue_small, uo_small = u_polys(q, inv_sq)
    ue_one, uo_one = u_polys(q, 1)
    report.check({'value': 'U_e(q, q^-2)'}, lambda: (ue_small == cube, None))
    report.check({'value': 'U_e(q, 1)'}, lambda: (ue_one == 2 * (q - 1) ** 2, None))
    report.check({'value': 'U_o(q, q^-2)'}, lambda: (uo_small == -q * cube, None))
    report.check({'value': 'U_o(q, 1)'}, lambda: (uo_one == 2 * (q - 1) ** 2, None))
    return report.to_dict()


def overall_status(reports: Iterable[Dict[str, Any]]) -> str:
    return 'pass' if all(r.get('status') == 'pass' for r in reports) else 'fail'
