"""
Multi-step runs: the generating-series analysis and the parameter sweep.
"""

import json
import os
from contextlib import ExitStack
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .aevw import METAPLECTIC, READINGS, AevwEvaluator, metaplectic_branch
from .characters import MulCharacter
from .errors import BudgetExceededError, PreconditionError, ReconstructionError
from .field import FiniteField
from .gauss_sums import context_for
from .polynomial import Poly
from .report_writer import csv_rows, header_block, write_csv, write_json
from .selberg import SelbergEngine
from .series import LSeriesAnalyzer, rational_reconstruct, series_coeffs, singularity_report


class SeriesPipeline:
    """
    Generating-series analysis for one (r, chi1, chi2, i0).

    Steps:
    1. Compute the window Se(r, chi1, chi2, i0 + l n), l < length
    2. Reconstruct num/den exactly
    3. Locate the singularities of the fit
    4. Compare with the predicted series (family r) or run the L-series analysis (trivial chi2)
    """

    def __init__(self, field: FiniteField, threads: int = 1, term_budget: int = 2 ** 24,
                 root_cluster_tol: float = 1e-6, weil_tol: float = 1e-6, verbose: bool = True):
        self.field = field
        self.ctx = context_for(field).warmup()
        self.engine = SelbergEngine(field, threads=threads, term_budget=term_budget)
        self.aevw = AevwEvaluator(self.ctx)
        self.root_cluster_tol = root_cluster_tol
        self.weil_tol = weil_tol
        self.verbose = verbose

    def _say(self, text: str):
        if self.verbose:
            print(text)

    def run(self, r: Poly, chi1: MulCharacter, chi2: MulCharacter, i0: int, length: int,
            dmax_num: int = 2, dmax_den: int = 3, family: Optional[Tuple[int, int]] = None,
            output_dir: Optional[str] = None, write_csv_file: bool = False) -> Dict[str, Any]:
        """
        Run the analysis.

        Args:
            r: Selberg argument (x^e0 (x-1)^e1 when family is given)
            chi1, chi2: Characters
            i0: Residue class of i modulo n = ord(chi2)
            length: Window length; must be at least dmax_num + dmax_den + 2
            dmax_num, dmax_den: Degree bounds for the fit
            family: (e0, e1) enabling the closed-form comparison
            output_dir: Where series_report.json (and series_values.csv) go, if given

        Returns:
            The report dictionary
        """
        P, q = self.ctx.polys, self.field.q
        n = chi2.order
        need = dmax_num + dmax_den + 2
        if length < need:
            raise ReconstructionError(f"--len {length} is too short for degrees ({dmax_num}, {dmax_den}); need {need}")

        self._say("=" * 80)
        self._say("Generating-series analysis")
        self._say("=" * 80)

        self._say(f"\n[Step 1] Computing Se(r, chi1, chi2, {i0} + {n} l) for l < {length}...")
        window = series_coeffs(self.engine, r, chi1, chi2, i0, length)
        self._say(f"  - r = {P.format_poly(r)}, chi1 = chi_{chi1.m}, chi2 = chi_{chi2.m}, n = {n}")

        self._say("\n[Step 2] Reconstructing a rational function...")
        fit = rational_reconstruct(window.coeffs, dmax_num, dmax_den)
        if fit is None:
            self._say("  - no fit within the degree bounds")
        else:
            self._say(f"  - numerator degree {fit.degrees[0]}, denominator degree {fit.degrees[1]}")

        report: Dict[str, Any] = dict(header_block(self.field))
        report.update({
            'r': P.format_poly(r), 'chi1': chi1.m, 'chi2': chi2.m, 'i0': i0, 'n': n,
            'coeffs': window.coeffs,
            'fit': fit,
            'singularities': None,
            'checks': {},
        })

        self._say("\n[Step 3] Locating singularities...")
        if fit is not None and fit.degrees[1] >= 1:
            predicted = None
            if n % chi1.order == 0:
                tau_inv = self.ctx.gauss_sum(chi2.inverse()).embed_complex()
                predicted = (-tau_inv) ** (-n) / q
            sing = singularity_report(fit, q, n, tol=self.root_cluster_tol, predicted=predicted)
            report['singularities'] = sing
            self._say(f"  - {len(sing['singularities'])} distinct roots, {sing['inside_count']} inside |T| < q^(-n/2)")
        else:
            self._say("  - constant denominator, nothing to locate")

        self._say("\n[Step 4] Checking predictions...")
        checks = report['checks']
        if family is not None and n > 1:
            params = self.aevw.classify(family[0], family[1], chi1, chi2)
            branch = metaplectic_branch(params, i0)
            checks['case'] = params.case
            checks['branch'] = branch
            for reading in READINGS:
                predicted_fn, _ = self.aevw.predicted_series(family[0], family[1], chi1, chi2, i0, reading)
                checks[f'predicted_{reading}'] = predicted_fn.matches(window.coeffs)
            if fit is not None:
                expected = 1 if params.case != METAPLECTIC else (2 if branch == 3 else 3)
                checks['denominator_degree'] = fit.degrees[1]
                checks['denominator_shape'] = fit.degrees[1] == expected
            self._say(f"  - case {params.case}, derived reading {'matches' if checks['predicted_derived'] else 'differs'}")
        if n == 1:
            checks['lseries'] = LSeriesAnalyzer(self.engine, self.weil_tol).analyze(r, chi1)
            self._say(f"  - L-series: product_is_one = {checks['lseries']['product_is_one']}")

        if output_dir:
            path = write_json(os.path.join(output_dir, 'series_report.json'), report)
            self._say(f"  - Saved report to: {path}")
            if write_csv_file:
                rows = []
                for l, value in enumerate(window.coeffs):
                    rows.extend(csv_rows(self.field, P.format_poly(r), chi1.m, chi2.m, i0 + l * n, value))
                self._say(f"  - Saved values to: {write_csv(os.path.join(output_dir, 'series_values.csv'), rows)}")

        self._say("\n" + "=" * 80)
        self._say("Series analysis completed")
        self._say("=" * 80)
        return report


@dataclass
class SweepSpec:
    """A grid of (r, chi1, chi2, i) points over one field."""
    p: int
    e: int
    rs: List[Tuple[str, Poly]]
    chi1s: List[int]
    chi2s: List[int]
    i_values: List[int]
    output: str
    fmt: str = 'json'
    threads: int = 1
    term_budget: int = 2 ** 24
    row_log: Optional[str] = None

    def points(self) -> List[Tuple[str, Poly, int, int, int]]:
        return [(label, r, m1, m2, i)
                for label, r in self.rs for m1 in self.chi1s for m2 in self.chi2s for i in self.i_values]


class SweepPipeline:
    """
    Evaluates every grid point of a SweepSpec and writes one dataset.

    Rows are keyed by grid index; with a row log, rows already logged are
    reused and new rows are appended as they finish, so an interrupted sweep
    resumes where it stopped.
    """

    def __init__(self, field: FiniteField, verbose: bool = True):
        self.field = field
        self.verbose = verbose

    def _say(self, text: str):
        if self.verbose:
            print(text)

    @staticmethod
    def _load_log(path: Optional[str]) -> Dict[int, Dict[str, Any]]:
        rows: Dict[int, Dict[str, Any]] = {}
        if path and os.path.exists(path):
            with open(path, 'r') as f:
                for line in f:
                    line = line.strip()
                    if line:
                        entry = json.loads(line)
                        rows[entry['index']] = entry
        return rows

    def run(self, spec: SweepSpec) -> Dict[str, Any]:
        if spec.fmt not in ('json', 'csv'):
            raise PreconditionError(f"unknown output format '{spec.fmt}'")
        engine = SelbergEngine(self.field, threads=spec.threads, term_budget=spec.term_budget)
        group = engine.group
        points = spec.points()
        logged = self._load_log(spec.row_log)

        self._say("=" * 80)
        self._say(f"Sweep over F_{self.field.q}: {len(points)} grid points")
        self._say("=" * 80)
        if logged:
            self._say(f"\n[Step 1] Resuming: {len(logged)} rows already in {spec.row_log}")
        else:
            self._say("\n[Step 1] Starting a fresh sweep")

        self._say("\n[Step 2] Evaluating grid points...")
        rows: List[Dict[str, Any]] = []
        values: Dict[int, Any] = {}
        skipped = 0
        with ExitStack() as stack:
            log_file = stack.enter_context(open(spec.row_log, 'a')) if spec.row_log else None
            for index, (label, r, m1, m2, i) in enumerate(points):
                if index in logged:
                    rows.append(logged[index])
                    continue
                row: Dict[str, Any] = {'index': index, 'r': label, 'chi1': m1, 'chi2': m2, 'i': i}
                try:
                    value = engine.selberg(r, group.character(m1), group.character(m2), i)
                    row['coeffs'] = [str(c) for c in value.coeffs]
                    values[index] = value
                except BudgetExceededError as e:
                    row['skipped'] = str(e)
                    skipped += 1
                rows.append(row)
                if log_file:
                    log_file.write(json.dumps(row) + '\n')
                    log_file.flush()
        self._say(f"  - {len(rows)} rows, {skipped} skipped over budget")

        self._say("\n[Step 3] Writing dataset...")
        if spec.fmt == 'json':
            dataset = dict(header_block(self.field))
            dataset['rows'] = rows
            path = write_json(spec.output, dataset)
        else:
            ring = engine.ring
            csv_data = []
            for row in rows:
                if 'coeffs' not in row:
                    continue
                value = values.get(row['index']) or ring.element(int(c) for c in row['coeffs'])
                csv_data.extend(csv_rows(self.field, row['r'], row['chi1'], row['chi2'], row['i'], value))
            path = write_csv(spec.output, csv_data)
        self._say(f"  - Saved dataset to: {path}")
        self._say("\n" + "=" * 80)
        self._say("Sweep completed")
        self._say("=" * 80)
        return {'rows': rows, 'skipped': skipped, 'output': path}
