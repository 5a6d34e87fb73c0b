#!/usr/bin/env python3
"""
Command-line front end for exact Selberg character sums over F_q[x]

Usage:
    python main.py ff-info --p 5
    python main.py selberg eval --p 5 --family 1,1 --chi1 1 --chi2 2 --i 3
    python main.py verify pellet --p 3 --max-deg 4
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from src.aevw import family_poly
from src.config import Settings, load_settings
from src.errors import FieldError, ParseError, SelbergError
from src.field import make_field
from src.parsing import parse_family, parse_int_list, parse_matrix, parse_poly
from src.pipeline import SeriesPipeline, SweepPipeline, SweepSpec
from src.polynomial import ring_for
from src.report_writer import dumps, header_block, write_json
from src.selberg import SelbergEngine, SelbergParams
from src.suites import VerificationSuites, series_identities

logger = logging.getLogger('selberg')

VERIFY_SUITES = ['pellet', 'pellet-substitution', 'gauss-jacobi', 'dh', 'anderson', 'stability', 'theorem1',
                 'scaling', 'magnitudes', 'series-identities']


def _common(parser: argparse.ArgumentParser):
    parser.add_argument('--p', type=int, required=True, help='Odd prime characteristic')
    parser.add_argument('--e', type=int, default=1, help='Extension degree (default: 1)')
    parser.add_argument('--threads', type=int, default=None, help='Worker processes for enumeration')
    parser.add_argument('--budget', type=int, default=None, help='Largest number of terms per sum')
    parser.add_argument('--field-bound', type=int, default=None, help='Largest admissible q')
    parser.add_argument('--config', default=None, help='YAML settings file (default: config.yaml)')
    parser.add_argument('--output', '-o', default=None, help='Output directory or file')
    parser.add_argument('--log-level', default=None, help='Logging level (default from config)')


def _argument_r(parser: argparse.ArgumentParser, many: bool = False):
    action = 'append' if many else 'store'
    parser.add_argument('--r', action=action, default=None,
                        help='Polynomial as coefficients c0,c1,... (lowest degree first)')
    parser.add_argument('--family', action=action, default=None,
                        help='e0,e1 for r = x^e0 (x-1)^e1')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Exact Selberg character sums over F_q[x]',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Field tables
  python main.py ff-info --p 5 --e 1

  # One Selberg sum for r = x(x-1)
  python main.py selberg eval --p 5 --family 1,1 --chi1 1 --chi2 2 --i 3

  # Closed form against brute force
  python main.py selberg verify-aevw --p 5 --max-i 4 --threads 4

  # Identity suites
  python main.py verify pellet --p 3 --max-deg 4
  python main.py verify dh --p 5 --max-deg 2

  # Generating series along i = i0 + l n
  python main.py series analyze --p 5 --family 1,1 --chi1 2 --chi2 2 --i0 0 --len 7

  # Parameter sweep to CSV
  python main.py sweep --p 5 --family 1,1 --chi1 0-3 --chi2 1-3 --i 0-3 --format csv -o sweep.csv
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    info = sub.add_parser('ff-info', help='Print field parameters')
    _common(info)

    selberg = sub.add_parser('selberg', help='Selberg sums')
    selberg_sub = selberg.add_subparsers(dest='action', required=True)
    ev = selberg_sub.add_parser('eval', help='Evaluate one Selberg sum')
    _common(ev)
    _argument_r(ev)
    ev.add_argument('--chi1', type=int, required=True)
    ev.add_argument('--chi2', type=int, required=True)
    ev.add_argument('--i', type=int, required=True)
    va = selberg_sub.add_parser('verify-aevw', help='Closed form against brute force')
    _common(va)
    va.add_argument('--e-values', default='1,2')
    va.add_argument('--max-i', type=int, default=5)
    va.add_argument('--chi1', default=None, help='Exponent list (default: all)')
    va.add_argument('--chi2', default=None, help='Exponent list (default: all)')

    verify = sub.add_parser('verify', help='Identity suites')
    verify_sub = verify.add_subparsers(dest='suite', required=True)
    for name in VERIFY_SUITES:
        sp = verify_sub.add_parser(name)
        _common(sp)
        sp.add_argument('--chars', default=None, help='Character exponent list (default: all)')
        sp.add_argument('--max-deg', type=int, default=None)
        sp.add_argument('--max-i', type=int, default=None)
        if name in ('dh', 'anderson', 'stability', 'theorem1', 'scaling', 'pellet-substitution'):
            _argument_r(sp, many=True)
        if name == 'stability':
            sp.add_argument('--pi', action='append', default=None, help='Monic irreducible (repeatable)')
        if name == 'theorem1':
            sp.add_argument('--random', type=int, default=10, help='Number of seeded random matrices')
            sp.add_argument('--seed', type=int, default=0)
            sp.add_argument('--matrix', action='append', default=None,
                            help='Extra matrix alpha,beta,gamma,delta (repeatable)')
        if name == 'series-identities':
            sp.add_argument('--count', type=int, default=8)

    series = sub.add_parser('series', help='Generating-series analysis')
    series_sub = series.add_subparsers(dest='action', required=True)
    an = series_sub.add_parser('analyze')
    _common(an)
    _argument_r(an)
    an.add_argument('--chi1', type=int, required=True)
    an.add_argument('--chi2', type=int, required=True)
    an.add_argument('--i0', type=int, default=0)
    an.add_argument('--len', type=int, default=7)
    an.add_argument('--dmax-num', type=int, default=2)
    an.add_argument('--dmax-den', type=int, default=3)
    an.add_argument('--csv', action='store_true', help='Also write per-embedding values as CSV')

    sweep = sub.add_parser('sweep', help='Parameter sweep')
    _common(sweep)
    _argument_r(sweep, many=True)
    sweep.add_argument('--chi1', required=True, help='Exponent list, e.g. 0-3')
    sweep.add_argument('--chi2', required=True, help='Exponent list')
    sweep.add_argument('--i', required=True, help='Degree list, e.g. 0-4')
    sweep.add_argument('--format', choices=['json', 'csv'], default='json')
    sweep.add_argument('--row-log', default=None, help='Append-only JSON-lines log for resuming')
    return parser


def _settings(args) -> Settings:
    settings = load_settings(args.config)
    return settings.override(
        threads=args.threads, term_budget=args.budget, field_bound=args.field_bound,
        log_level=args.log_level,
    )


def _single_r(args, polys) -> tuple:
    """(label, polynomial, family or None) from --r / --family."""
    if args.family:
        e0, e1 = parse_family(args.family)
        return f"x^{e0}(x-1)^{e1}", family_poly(polys, e0, e1), (e0, e1)
    if args.r:
        r = parse_poly(polys, args.r)
        if not r:
            raise ParseError("--r must be a nonzero polynomial")
        return polys.format_poly(r), r, None
    raise ParseError("one of --r or --family is required")


def _many_r(args, polys) -> List[tuple]:
    out = []
    for text in args.family or []:
        e0, e1 = parse_family(text)
        out.append((f"x^{e0}(x-1)^{e1}", family_poly(polys, e0, e1)))
    for text in args.r or []:
        r = parse_poly(polys, text)
        if not r:
            raise ParseError("--r must be a nonzero polynomial")
        out.append((polys.format_poly(r), r))
    return out


def _report_path(args, settings: Settings, name: str) -> str:
    if args.output and args.output.endswith('.json'):
        return args.output
    return os.path.join(args.output or settings.output_dir, f"{name}.json")


def _finish(report: Dict[str, Any], path: str, field) -> int:
    document = dict(header_block(field)) if field is not None else {'schema': 1}
    document.update(report)
    write_json(path, document)
    status = report.get('status', 'pass')
    mark = '✓' if status == 'pass' else '✗'
    print(f"{mark} {report.get('identity')}: {report.get('checked', 0)} checks, "
          f"{len(report.get('counterexamples', []))} counterexamples, {len(report.get('errors', []))} errors")
    print(f"  - Saved report to: {path}")
    return 0 if status == 'pass' else 1


def cmd_ff_info(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    print("=" * 80)
    print(f"F_{field.q}")
    print("=" * 80)
    print(f"p = {field.p}, e = {field.e}, q = {field.q}")
    if field.e > 1:
        print(f"modulus: t^{field.e} + {' + '.join(f'{c} t^{j}' for j, c in enumerate(field.modulus))}")
    print(f"generator = {field.format_element(field.generator)}")
    print(f"N = p(q-1) = {field.cyclotomic_order}")
    return 0


def cmd_selberg_eval(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    polys = ring_for(field)
    engine = SelbergEngine(field, threads=settings.threads, term_budget=settings.term_budget)
    label, r, family = _single_r(args, polys)
    group = engine.group
    params = SelbergParams(r=r, chi1=group.character(args.chi1), chi2=group.character(args.chi2),
                           i=args.i, family=family)
    result = engine.selberg_bruteforce(params)
    report = dict(header_block(field))
    report.update({
        'r': label, 'chi1': params.chi1.m, 'chi2': params.chi2.m, 'i': args.i,
        'value_coeffs': [str(c) for c in result.value.coeffs],
        'value_complex': result.value.embed_complex(),
        'case': result.case, 'n': result.n, 'n_prime': result.n_prime,
        'f0': result.f0, 'f1': result.f1,
        'count_enumerated': result.count_enumerated,
    })
    text = dumps(report)
    if args.output:
        write_json(args.output, report)
    print(text)
    return 0


def cmd_verify_aevw(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    suites = VerificationSuites(field, settings.threads, settings.term_budget, settings.embedding_tol)
    chi1s = parse_int_list(args.chi1) if args.chi1 else None
    chi2s = parse_int_list(args.chi2) if args.chi2 else None
    report = suites.aevw_grid(parse_int_list(args.e_values), args.max_i, chi1s, chi2s)
    print(f"  - branch counts: {report['branch_counts']}")
    return _finish(report, _report_path(args, settings, 'verify_aevw'), field)


def cmd_verify(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    if args.suite == 'series-identities':
        return _finish(series_identities(field.q, args.count), _report_path(args, settings, 'verify_series_identities'),
                       field)
    suites = VerificationSuites(field, settings.threads, settings.term_budget, settings.embedding_tol)
    polys = suites.polys
    chars = parse_int_list(args.chars) if args.chars else None
    rs = _many_r(args, polys) if hasattr(args, 'r') else []
    r_polys = [r for _, r in rs] or None
    name = args.suite
    if name == 'pellet':
        report = suites.pellet(args.max_deg if args.max_deg is not None else 4)
    elif name == 'pellet-substitution':
        report = suites.pellet_substitution(args.max_i if args.max_i is not None else 3, r_polys, chars)
    elif name == 'gauss-jacobi':
        report = suites.gauss_jacobi(chars)
    elif name == 'dh':
        report = suites.dh(args.max_deg if args.max_deg is not None else 3, r_polys, chars)
    elif name == 'anderson':
        if not r_polys:
            raise ParseError("verify anderson needs at least one --r or --family")
        report = suites.anderson(r_polys, chars)
    elif name == 'stability':
        pis = [parse_poly(polys, t) for t in args.pi] if args.pi else None
        report = suites.stability(args.max_i if args.max_i is not None else 3, pis, r_polys, chars)
    elif name == 'theorem1':
        r = r_polys[0] if r_polys else None
        extra = [parse_matrix(field, t) for t in args.matrix or []]
        report = suites.theorem1(args.max_i if args.max_i is not None else 3, r, args.random, args.seed, chars,
                                 extra)
    elif name == 'scaling':
        report = suites.scaling(args.max_i if args.max_i is not None else 3, r_polys, chars=chars)
    else:
        report = suites.magnitudes()
    return _finish(report, _report_path(args, settings, f"verify_{name.replace('-', '_')}"), field)


def cmd_series(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    pipeline = SeriesPipeline(field, settings.threads, settings.term_budget,
                              settings.root_cluster_tol, settings.weil_tol)
    _, r, family = _single_r(args, pipeline.ctx.polys)
    group = pipeline.ctx.group
    pipeline.run(r, group.character(args.chi1), group.character(args.chi2), args.i0, args.len,
                 args.dmax_num, args.dmax_den, family,
                 output_dir=args.output or settings.output_dir, write_csv_file=args.csv)
    return 0


def cmd_sweep(args, settings: Settings) -> int:
    field = make_field(args.p, args.e, settings.field_bound)
    polys = ring_for(field)
    output = args.output or os.path.join(settings.output_dir, f"sweep.{args.format}")
    rs = _many_r(args, polys)
    if not rs:
        raise ParseError("sweep needs at least one --r or --family")
    spec = SweepSpec(
        p=args.p, e=args.e, rs=rs,
        chi1s=parse_int_list(args.chi1), chi2s=parse_int_list(args.chi2), i_values=parse_int_list(args.i),
        output=output, fmt=args.format, threads=settings.threads, term_budget=settings.term_budget,
        row_log=args.row_log,
    )
    SweepPipeline(field).run(spec)
    return 0


def run_command(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
        logging.basicConfig(level=getattr(logging, settings.log_level.upper(), logging.WARNING),
                            format='%(levelname)s %(name)s: %(message)s')
        if args.command == 'ff-info':
            return cmd_ff_info(args, settings)
        if args.command == 'selberg':
            return cmd_selberg_eval(args, settings) if args.action == 'eval' else cmd_verify_aevw(args, settings)
        if args.command == 'verify':
            return cmd_verify(args, settings)
        if args.command == 'series':
            return cmd_series(args, settings)
        return cmd_sweep(args, settings)
    except (ParseError, FieldError) as e:
        print(f"✗ Usage error: {e}", file=sys.stderr)
        return 2
    except SelbergError as e:
        print(f"✗ Error: {e}", file=sys.stderr)
        logger.debug("computation failed", exc_info=True)
        return 1


def main() -> int:
    return run_command()


if __name__ == '__main__':
    sys.exit(main())
