"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 bad input or I/O
error, 3 a search ran out of budget (the report carries the verified interval).
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from teachlab import bounds, classical, experiments, fields, formats, johnson, models, teachers, tournaments
from teachlab.budget import Budget, BudgetExceededError, InconclusiveSearchError, seconds_from_env
from teachlab.concepts import parse_class, serialize_class

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_BAD_INPUT = 2
EXIT_INCONCLUSIVE = 3


class CommandOutcome(models.Model):
    exit_code = fields.IntegerField(required=True, min_value=0, max_value=3)
    report = fields.CharField(value='')
    csv_path = fields.CharField()


class Report:
    """What a command prints: `key=value` text and the same content as a JSON-ready dict."""

    def __init__(self, text: str, data: dict):
        self.text = text
        self.data = data

    @classmethod
    def from_model(cls, model: models.Model, **extra) -> 'Report':
        data = model.as_dict()
        data.update(extra)
        text = model.serialize('text')
        if extra:
            text += '\n' + '\n'.join(f'{key}={value}' for key, value in extra.items())
        return cls(text, data)

    @classmethod
    def from_pairs(cls, pairs: List[Tuple[str, object]]) -> 'Report':
        return cls('\n'.join(f'{key}={_text(value)}' for key, value in pairs), dict(pairs))


def _text(value) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return fields.format_real(value)
    if isinstance(value, (list, tuple)):
        return ' '.join(str(x) for x in value)
    return str(value)


def _load_class(path: str):
    return parse_class(formats.read_text(path))


def _emit(text: str, out: Optional[str]) -> Report:
    """Write file content to `out`, or make it the report when no path is given."""
    if out:
        formats.write_text(out, text)
        return Report.from_pairs([('written', out)])
    return Report(text.rstrip('\n'), {'content': text})


def cmd_td(args) -> Report:
    k = _load_class(args.class_file)
    if args.concept is not None:
        if not 0 <= args.concept < len(k):
            raise ValueError(f'Concept index {args.concept} outside [0, {len(k) - 1}].')
        size, witness = classical.td_of(k, k[args.concept])
        return Report.from_pairs([('concept', args.concept), ('td', size), ('witness', list(witness.members()))])
    report = classical.teaching_report(k, jobs=args.jobs)
    rows = report.rows()
    if args.csv:
        formats.write_csv(args.csv, ['concept_index', 'td', 'witness'], [[str(i), str(s), w] for i, s, w in rows])
    text = '\n'.join(
        [f'concepts={len(k)}', f'td_min={report.td_min}', f'td_max={report.td_max}']
        + [f'concept={i} td={s} witness={w}' for i, s, w in rows]
    )
    data = dict(
        concepts=len(k), td_min=report.td_min, td_max=report.td_max,
        rows=[dict(concept_index=i, td=s, witness=list(w.members())) for i, (s, w) in enumerate(zip(report.sizes, report.witnesses))],
    )
    return Report(text, data)


def cmd_rtd(args) -> Report:
    k = _load_class(args.class_file)
    layers = classical.rtd_layers(k)
    value = max((level for level, _ in layers), default=0)
    pairs = [('rtd', value), ('layers', len(layers))]
    if args.oracle:
        oracle = classical.rtd_bruteforce(k)
        if oracle != value:
            raise experiments.VerificationError(f'Recursive RTD {value} differs from the brute-force value {oracle}.')
        pairs.append(('rtd_bruteforce', oracle))
    report = Report.from_pairs(pairs)
    report.text += ''.join(f'\nlayer={i + 1} td_min={level} peeled={len(layer)}' for i, (level, layer) in enumerate(layers))
    report.data['peeled'] = [dict(td_min=level, concepts=len(layer)) for level, layer in layers]
    return report


def cmd_nctd(args) -> Report:
    k = _load_class(args.class_file)
    d, teacher = teachers.nctd(k, d_max=args.max_d, symmetry_breaking=args.symmetry)
    if not teachers.is_nc_teacher(teacher):
        raise experiments.VerificationError('The returned teacher has a clash.')
    if args.emit_teacher:
        formats.write_text(args.emit_teacher, formats.serialize_teacher(teacher))
    return Report.from_pairs([('nctd', d), ('lower_bound', teachers.nctd_lower_bound(k)), ('concepts', len(k))])


def cmd_verify_teacher(args) -> Report:
    k = _load_class(args.class_file)
    teacher = formats.parse_teacher(formats.read_text(args.teacher), k)
    pair = teachers.first_clash(k.masks, teacher.masks)
    if pair is not None:
        raise experiments.VerificationError(
            f'Concepts {k[pair[0]].to_bits()} and {k[pair[1]].to_bits()} clash under the teacher.'
        )
    return Report.from_pairs([('admissible', True), ('order', teacher.order), ('normalized', teacher.is_normalized)])


def cmd_tournament_gen(args) -> Report:
    if args.linear:
        g = tournaments.linear_tournament(args.n)
    else:
        g = tournaments.random_tournament(args.n, args.seed)
    return _emit(formats.serialize_tournament(g), args.out)


def cmd_tournament_class(args) -> Report:
    g = formats.parse_tournament(formats.read_text(args.in_file))
    k = tournaments.class1(g) if args.mode == 1 else tournaments.class2(g)
    return _emit(serialize_class(k), args.out)


def cmd_tournament_recover(args) -> Report:
    k = _load_class(args.class_file)
    if args.teacher:
        teacher = formats.parse_teacher(formats.read_text(args.teacher), k)
    else:
        teacher = teachers.find_teacher(k, 1)
        if teacher is None:
            raise tournaments.RecoveryError('The class has no admissible order-1 teacher.')
    return _emit(formats.serialize_tournament(tournaments.recover_tournament(k, teacher)), args.out)


def cmd_johnson_hmax(args) -> Report:
    value, witness = johnson.h_max(args.n, args.k, args.t, limit=args.limit)
    if args.witness:
        formats.write_text(args.witness, formats.serialize_family(witness))
    ratio = fields.format_rational(Fraction(value, comb(args.n, args.k)))
    return Report.from_pairs([
        ('n', args.n), ('k', args.k), ('t', args.t), ('h_max', value), ('h_ratio', ratio),
        ('counting_bound', johnson.counting_upper_bound(args.n, args.k, args.t)),
    ])


def cmd_bounds(args) -> Report:
    report = bounds.bound_report(args.n, args.d, args.t)
    if args.csv:
        formats.write_csv(args.csv, report.csv_header(), [report.csv_row()])
    return Report.from_model(report)


def cmd_experiment_tdmin(args) -> Report:
    cfg = experiments.ExperimentConfig(n=args.n, trials=args.trials, seed=args.seed)
    records, summary = experiments.run_tdmin_experiment(cfg, jobs=args.jobs)
    columns = experiments.TDMIN_CSV_COLUMNS
    if args.out:
        formats.write_csv(args.out, experiments.TrialRecord.csv_header(columns), [r.csv_row(columns) for r in records])
    return Report.from_model(summary)


def cmd_experiment_claim(args) -> Report:
    rows, n0 = experiments.claim_scan(args.scan_max)
    if args.csv:
        formats.write_csv(args.csv, experiments.ClaimRow.csv_header(), [row.csv_row() for row in rows])
    return Report.from_pairs([('grid_points', len(rows)), ('scan_max', args.scan_max), ('empirical_n0', n0)])


def cmd_experiment_tau(args) -> Report:
    cfg = experiments.ExperimentConfig(n=args.n, trials=args.trials, seed=args.seed, k_override=args.k)
    estimate = experiments.run_tau_experiment(cfg, jobs=args.jobs)
    if estimate.vacuous:
        return Report.from_model(estimate, note='threshold < 1, vacuous')
    return Report.from_model(estimate)


def cmd_verify_dim1(args) -> Report:
    return Report.from_model(experiments.verify_dim1(args.n))


def cmd_search_maxclass(args) -> Report:
    report, witnesses = experiments.max_class_search(args.n, args.d)
    result = Report.from_model(report)
    for k in witnesses:
        result.text += '\nwitness=' + ' '.join(c.to_bits() for c in k)
    result.data['witness_classes'] = [[c.to_bits() for c in k] for k in witnesses]
    return result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='teachlab', description='Exact teaching-dimension computations.')
    parser.add_argument('--json', action='store_true', help='print the report as one JSON object')
    parser.add_argument('--log-level', default='WARNING', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--timeout', type=float, default=None, help='seconds per search (default: $TEACHLAB_BUDGET_SECS)')
    parser.add_argument('--jobs', type=int, default=1, help='worker processes for independent tasks')
    commands = parser.add_subparsers(dest='command', required=True)

    td = commands.add_parser('td', help='teaching dimension of every concept')
    td.add_argument('--class', dest='class_file', required=True)
    td.add_argument('--concept', type=int)
    td.add_argument('--csv')
    td.set_defaults(handler=cmd_td)

    rtd = commands.add_parser('rtd', help='recursive teaching dimension')
    rtd.add_argument('--class', dest='class_file', required=True)
    rtd.add_argument('--oracle', action='store_true', help='cross-check against subclass enumeration')
    rtd.set_defaults(handler=cmd_rtd)

    nctd = commands.add_parser('nctd', help='no-clash teaching dimension')
    nctd.add_argument('--class', dest='class_file', required=True)
    nctd.add_argument('--max-d', type=int)
    nctd.add_argument('--timeout', type=float, dest='command_timeout', help='seconds for this search (overrides the global --timeout)')
    nctd.add_argument('--emit-teacher')
    nctd.add_argument('--symmetry', action='store_true', help='break symmetry with class automorphisms')
    nctd.set_defaults(handler=cmd_nctd)

    verify_teacher = commands.add_parser('verify-teacher', help='check a teacher file for clashes')
    verify_teacher.add_argument('--class', dest='class_file', required=True)
    verify_teacher.add_argument('--teacher', required=True)
    verify_teacher.set_defaults(handler=cmd_verify_teacher)

    tournament = commands.add_parser('tournament').add_subparsers(dest='action', required=True)
    gen = tournament.add_parser('gen')
    gen.add_argument('--n', type=int, required=True)
    source = gen.add_mutually_exclusive_group(required=True)
    source.add_argument('--linear', action='store_true')
    source.add_argument('--seed', type=int)
    gen.add_argument('--out')
    gen.set_defaults(handler=cmd_tournament_gen)
    induced = tournament.add_parser('class')
    induced.add_argument('--mode', type=int, choices=[1, 2], required=True)
    induced.add_argument('--in', dest='in_file', required=True)
    induced.add_argument('--out')
    induced.set_defaults(handler=cmd_tournament_class)
    recover = tournament.add_parser('recover')
    recover.add_argument('--class', dest='class_file', required=True)
    teacher_source = recover.add_mutually_exclusive_group(required=True)
    teacher_source.add_argument('--teacher')
    teacher_source.add_argument('--find-teacher', action='store_true')
    recover.add_argument('--out')
    recover.set_defaults(handler=cmd_tournament_recover)

    hmax = commands.add_parser('johnson').add_subparsers(dest='action', required=True).add_parser('hmax')
    hmax.add_argument('--n', type=int, required=True)
    hmax.add_argument('--k', type=int, required=True)
    hmax.add_argument('--t', type=int, required=True)
    hmax.add_argument('--witness')
    hmax.add_argument('--limit', type=int, default=johnson.EXACT_LIMIT)
    hmax.set_defaults(handler=cmd_johnson_hmax)

    bound = commands.add_parser('bounds', help='size bounds for NC-maximum classes')
    bound.add_argument('--n', type=int, required=True)
    bound.add_argument('--d', type=int, required=True)
    bound.add_argument('--t', type=int)
    bound.add_argument('--csv')
    bound.set_defaults(handler=cmd_bounds)

    experiment = commands.add_parser('experiment').add_subparsers(dest='action', required=True)
    tdmin = experiment.add_parser('tdmin')
    tdmin.add_argument('--n', type=int, required=True)
    tdmin.add_argument('--trials', type=int, required=True)
    tdmin.add_argument('--seed', type=int, required=True)
    tdmin.add_argument('--out')
    tdmin.set_defaults(handler=cmd_experiment_tdmin)
    claim = experiment.add_parser('claim')
    claim.add_argument('--scan-max', type=int, required=True)
    claim.add_argument('--csv')
    claim.set_defaults(handler=cmd_experiment_claim)
    tau = experiment.add_parser('tau')
    tau.add_argument('--n', type=int, required=True)
    tau.add_argument('--trials', type=int, required=True)
    tau.add_argument('--seed', type=int, required=True)
    tau.add_argument('--k', type=int)
    tau.set_defaults(handler=cmd_experiment_tau)

    dim1 = commands.add_parser('verify').add_subparsers(dest='action', required=True).add_parser('dim1')
    dim1.add_argument('--n', type=int, required=True)
    dim1.set_defaults(handler=cmd_verify_dim1)

    maxclass = commands.add_parser('search').add_subparsers(dest='action', required=True).add_parser('maxclass')
    maxclass.add_argument('--n', type=int, required=True)
    maxclass.add_argument('--d', type=int, required=True)
    maxclass.set_defaults(handler=cmd_search_maxclass)
    return parser


def _inconclusive(e: InconclusiveSearchError) -> Report:
    witness = getattr(e.witness, 'order', None)
    if witness is None and e.witness is not None and hasattr(e.witness, '__len__'):
        witness = len(e.witness)
    return Report.from_pairs([
        ('status', 'inconclusive'), ('lower', e.lower), ('upper', e.upper), ('best_witness', witness), ('reason', str(e)),
    ])


def dispatch(argv: List[str]) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return CommandOutcome(exit_code=e.code if isinstance(e.code, int) else EXIT_BAD_INPUT)

    logging.basicConfig(level=args.log_level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    csv_path = getattr(args, 'csv', None) or getattr(args, 'out', None)
    try:
        if args.jobs < 1:
            raise ValueError(f'--jobs must be at least 1, got {args.jobs}.')
        timeout = getattr(args, 'command_timeout', None)
        if timeout is None:
            timeout = args.timeout
        if timeout is not None and timeout <= 0:
            raise ValueError(f'--timeout must be positive, got {timeout}.')
        Budget.set_budget(timeout if timeout is not None else seconds_from_env())
        report = args.handler(args)
        code = EXIT_OK
    except experiments.VerificationError as e:
        report, code = Report.from_pairs([('status', 'failed'), ('reason', str(e))]), EXIT_VERIFICATION
    except InconclusiveSearchError as e:
        report, code = _inconclusive(e), EXIT_INCONCLUSIVE
    except BudgetExceededError as e:
        report, code = Report.from_pairs([('status', 'inconclusive'), ('reason', str(e))]), EXIT_INCONCLUSIVE
    except (ValueError, OSError) as e:
        logger.error(str(e))
        report, code = Report.from_pairs([('error', str(e))]), EXIT_BAD_INPUT

    text = json.dumps(report.data, default=str) if args.json else report.text
    return CommandOutcome(exit_code=code, report=text, csv_path=csv_path if code == EXIT_OK else None)


def main(argv: Optional[List[str]] = None) -> int:
    outcome = dispatch(sys.argv[1:] if argv is None else argv)
    if outcome.report:
        stream = sys.stderr if outcome.exit_code == EXIT_BAD_INPUT else sys.stdout
        print(outcome.report, file=stream)
    return outcome.exit_code


if __name__ == '__main__':
    sys.exit(main())
