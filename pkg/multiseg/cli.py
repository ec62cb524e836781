"""
Command line front end for the multiseg package.

Multisegments are written as terms joined by '+', each term an optional
multiplicity followed by a segment: `2*[3,3]+[0,1]`. The empty multisegment
is written `0`. A multisegment argument that is left out is read from
standard input.

Run `multiseg --help` (or `python -m multiseg --help`) for the list of
subcommands. Exit codes: 0 success, 1 counterexample found, 2 usage or
input error, 3 internal invariant violation.
"""
from argparse import ArgumentParser, ArgumentTypeError
import json
import logging
import os
import sys
import time

from multiseg.exceptions import InvariantViolation, MultisegError, ParseError, RangeError
from multiseg.flattener import ReportFlattener
from multiseg.irreducibility import nc_witnesses, product_irreducible, product_sp_verdict
from multiseg.ladders import (as_ladder, in_family_F, is_proper, klyachko_type,
                              klyachko_type_reflected, ladder_dual_recursive,
                              proper_parts, sp_distinguished_L, sp_distinguished_Z,
                              zelevinsky_dual)
from multiseg.multisegments import (Multisegment, alternating_sum_check,
                                    canonical_order, dual, elementary_operation,
                                    is_speh_type, standard_orders,
                                    subquotient_closure)
from multiseg.relevance import check_hypothesis, is_distinguished
from multiseg.search import FILTERS, MODES, SearchBounds, SearchRunner
from multiseg.segments import Segment


logger = logging.getLogger(__name__)

MAX_ABS_VALUE = 10 ** 6

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3


def _is_digit(char):
    return char != '' and char in '0123456789'


class _Scanner(object):

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, char):
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else 'end of input'
            raise ParseError('expected {!r}, found {}'.format(char, found), self.pos)
        self.pos += 1

    def integer(self, signed=True):
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] == '-':
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and _is_digit(self.text[self.pos]):
            self.pos += 1
        if self.pos == digits:
            raise ParseError('expected an integer', start)
        value = int(self.text[start:self.pos])
        if abs(value) > MAX_ABS_VALUE:
            raise RangeError('{} exceeds {} in absolute value (at position {})'.format(
                value, MAX_ABS_VALUE, start))
        return value


def _segment(scanner):
    start = scanner.pos
    scanner.expect('[')
    begin = scanner.integer()
    scanner.expect(',')
    end = scanner.integer()
    scanner.expect(']')
    if begin > end:
        raise RangeError('[{},{}] is empty (at position {})'.format(begin, end, start))
    return Segment(begin, end)


def parse_segment(text: str) -> Segment:
    scanner = _Scanner(text)
    seg = _segment(scanner)
    if scanner.peek():
        raise ParseError('unexpected {!r}'.format(scanner.peek()), scanner.pos)
    return seg


def parse_multisegment(text: str) -> Multisegment:
    """
    Parse `term ('+' term)*` with `term := [uint '*'] '[' int ',' int ']'`.

    Raises:
        ParseError: the text does not match the grammar
        RangeError: an empty segment, a zero multiplicity or a value
            beyond 10^6 in absolute value
    """
    if text.strip() == '0':
        return Multisegment()
    scanner = _Scanner(text)
    counts = {}
    while True:
        count = 1
        if _is_digit(scanner.peek()):
            start = scanner.pos
            count = scanner.integer(signed=False)
            if count < 1:
                raise RangeError('multiplicity must be positive (at position {})'.format(start))
            scanner.expect('*')
        seg = _segment(scanner)
        counts[seg] = counts.get(seg, 0) + count
        if not scanner.peek():
            break
        scanner.expect('+')
    return Multisegment(counts)


def format_segment(seg: Segment) -> str:
    return '[{},{}]'.format(seg.begin, seg.end)


def format_multisegment(m: Multisegment) -> str:
    """Terms in descending <=_b order, `c*[a,b]` for multiplicity c > 1; `0` when empty."""
    if not m:
        return '0'
    return '+'.join(format_segment(seg) if count == 1 else '{}*{}'.format(count, format_segment(seg))
                    for seg, count in reversed(m.items()))


def format_rows(rows) -> str:
    return ','.join(format_segment(seg) for seg in rows)


def finding_record(finding) -> dict:
    return {
        'multisegment': format_multisegment(finding.multisegment),
        'order': format_rows(finding.order),
        'decomposition': None if finding.decomposition is None else repr(finding.decomposition),
        'matching': None if finding.matching is None else repr(finding.matching),
        'dual_distinguished': finding.dual_distinguished,
    }


def report_record(report) -> dict:
    return {
        'bounds': report.bounds._asdict(),
        'checked': report.checked,
        'distinguished_count': report.distinguished_count,
        'speh_count': report.speh_count,
        'counterexamples': [finding_record(f) for f in report.counterexamples],
        'strong_form_violations': [finding_record(f) for f in report.strong_form_violations],
        'dual_pairs': report.dual_pairs,
        'elapsed_ms': report.elapsed_ms,
    }


def _read_input(args):
    text = args.msgm if args.msgm is not None else sys.stdin.read()
    return text.strip(), parse_multisegment(text)


def _emit(args, input_text, result, t0, witness=None):
    elapsed_ms = (time.time() - t0) * 1000
    if args.json:
        out = {'input': input_text, 'result': result}
        if witness is not None:
            out['witness'] = witness
        out['elapsed_ms'] = elapsed_ms
        print(json.dumps(out))
        return
    if isinstance(result, (dict, list)):
        print(json.dumps(result, indent=2))
    else:
        print(result)
    if witness is not None:
        print('witness: {}'.format(witness if isinstance(witness, str) else json.dumps(witness)))


def cmd_speh(args):
    t0 = time.time()
    text, m = _read_input(args)
    witness = is_speh_type(m)
    _emit(args, text, witness is not None, t0,
          None if witness is None else format_multisegment(witness))
    return EXIT_OK


def cmd_dual(args):
    t0 = time.time()
    text, m = _read_input(args)
    _emit(args, text, format_multisegment(dual(m)), t0)
    return EXIT_OK


def cmd_involution(args):
    t0 = time.time()
    text, m = _read_input(args)
    general = zelevinsky_dual(m)
    ladder = as_ladder(m)
    if args.recursive and ladder is None:
        raise MultisegError('{} is not a ladder; --recursive needs one'.format(text))
    if ladder is not None:
        recursive = ladder_dual_recursive(ladder).multisegment
        if recursive != general:
            raise InvariantViolation('involution paths disagree on {}: {} vs {}'.format(
                text, format_multisegment(general), format_multisegment(recursive)))
    _emit(args, text, format_multisegment(general), t0)
    return EXIT_OK


def cmd_orders(args):
    t0 = time.time()
    text, m = _read_input(args)
    if args.canonical:
        _emit(args, text, format_rows(canonical_order(m)), t0)
    else:
        _emit(args, text, [format_rows(order) for order in standard_orders(m)], t0)
    return EXIT_OK


def cmd_distinguished(args):
    t0 = time.time()
    text, m = _read_input(args)
    verdict = is_distinguished(m)
    if verdict.distinguished:
        witness = [{'order': format_rows(order), 'decomposition': repr(dec), 'matching': repr(matching)}
                   for order, dec, matching in verdict.witnesses]
    else:
        witness = {'failing_order': format_rows(verdict.failing_order)}
    _emit(args, text, verdict.distinguished, t0, witness)
    return EXIT_OK


def cmd_hypothesis(args):
    t0 = time.time()
    text, m = _read_input(args)
    result = check_hypothesis(m, args.mode)
    witness = {
        'speh_witness': None if result.speh_witness is None else format_multisegment(result.speh_witness),
        'distinguished': result.distinguished,
        'dual_distinguished': result.dual_distinguished,
        'failing_orders': [format_rows(order) for order in result.failing_orders],
    }
    _emit(args, text, result.verdict, t0, witness)
    return EXIT_OK if result.holds else EXIT_COUNTEREXAMPLE


def cmd_search(args):
    t0 = time.time()
    bounds = SearchBounds(args.max_end, args.max_size, args.max_mult,
                          args.mode, args.filter, args.shards).validate()
    runner = SearchRunner(log=args.log, verbose=args.verbose)
    report = runner.run(bounds)
    record = report_record(report)
    if args.output:
        if args.csv:
            flattener = ReportFlattener(list_fields=['counterexamples', 'strong_form_violations'])
            runner.write_csv([record], args.output, flattener)
        else:
            runner.write_json_newline([record], args.output)
        runner.print_func('Wrote report to {}'.format(args.output))
    if args.json:
        out = {'input': bounds._asdict(), 'result': record}
        out['elapsed_ms'] = (time.time() - t0) * 1000
        print(json.dumps(out))
    else:
        print('checked {}, distinguished {}, speh {}, counterexamples {}, strong form violations {}'.format(
            report.checked, report.distinguished_count, report.speh_count,
            len(report.counterexamples), len(report.strong_form_violations)))
        for finding in report.counterexamples:
            print('counterexample: {}'.format(format_multisegment(finding.multisegment)))
    return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE


def cmd_ladder_classify(args):
    t0 = time.time()
    text, m = _read_input(args)
    ladder = as_ladder(m)
    result = {
        'is_ladder': ladder is not None,
        'is_proper': None,
        'proper_parts': None,
        'sp_L': None,
        'sp_Z': None,
        'sp_Z_dual': None,
        'klyachko': None,
        'klyachko_reflected': None,
        'family_F': in_family_F(m),
    }
    if ladder is not None:
        kly = klyachko_type(ladder, args.d)
        reflected = klyachko_type_reflected(ladder, args.d)
        result.update({
            'is_proper': is_proper(ladder),
            'proper_parts': [format_rows(part) for part in proper_parts(ladder)],
            'sp_L': sp_distinguished_L(ladder),
            'sp_Z': sp_distinguished_Z(ladder),
            'sp_Z_dual': sp_distinguished_Z(as_ladder(zelevinsky_dual(m))),
            'klyachko': None if kly is None else kly._asdict(),
            'klyachko_reflected': None if reflected is None else reflected._asdict(),
        })
    _emit(args, text, result, t0)
    return EXIT_OK


def cmd_irreducible(args):
    t0 = time.time()
    factors = [parse_multisegment(text) for text in args.msgms]
    ladders = [as_ladder(m) for m in factors]
    for text, ladder in zip(args.msgms, ladders):
        if ladder is None:
            raise MultisegError('{} is not a ladder'.format(text))
    irreducible = product_irreducible(ladders)
    result = {
        'irreducible': irreducible,
        'nc_witnesses': [{'first': a + 1, 'second': b + 1, 'i': w[0], 'j': w[1], 'k': w[2]}
                         for a, b, w in nc_witnesses(ladders)],
        'sp_verdict': str(product_sp_verdict(ladders)) if irreducible else None,
    }
    _emit(args, ' '.join(args.msgms), result, t0)
    return EXIT_OK


def cmd_elementary(args):
    t0 = time.time()
    text, m = _read_input(args)
    first, second = (parse_segment(s) for s in args.pair)
    _emit(args, text, format_multisegment(elementary_operation(m, first, second)), t0)
    return EXIT_OK


def cmd_closure(args):
    t0 = time.time()
    text, m = _read_input(args)
    closure = subquotient_closure(m, args.cap)
    members = sorted(closure.multisegments, key=lambda n: n.sort_key)
    _emit(args, text, [format_multisegment(n) for n in members], t0,
          {'truncated': closure.truncated, 'count': len(members)})
    return EXIT_OK


def cmd_alt_sum(args):
    t0 = time.time()
    text, m = _read_input(args)
    _emit(args, text, alternating_sum_check(m), t0)
    return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise ArgumentTypeError('must be a positive integer, got {}'.format(text))
    return value


def _default_shards():
    value = os.environ.get('MULTISEG_THREADS', '1')
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning('ignoring MULTISEG_THREADS=%r', value)
        return 1


def build_parser():
    parser = ArgumentParser(prog='multiseg', description="Combinatorics of Zelevinsky multisegments: Speh type, standard orders, relevant decompositions, ladders and the counterexample search.")
    parser.add_argument('--log', default=False, action='store_true', help="Supply flag if progress should be logged to multiseg.log and not printed to the console. Default: False")
    parser.add_argument('--verbose', default=False, action='store_true', help="Supply flag if progress should be printed to the console. Default: False")

    common = ArgumentParser(add_help=False)
    common.add_argument('--json', default=False, action='store_true', help="Supply flag for a single-line JSON result with keys input, result, witness and elapsed_ms. Default: False")

    msgm = ArgumentParser(add_help=False)
    msgm.add_argument('msgm', nargs='?', default=None, help="Multisegment such as '2*[3,3]+[0,1]'. Default: read from standard input")

    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('speh', parents=[common, msgm], help="Is the multisegment of the form n + nu(n)?")
    p.set_defaults(func=cmd_speh)

    p = sub.add_parser('dual', parents=[common, msgm], help="Contragredient dual, [a,b] -> [-b,-a].")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser('involution', parents=[common, msgm], help="Zelevinsky involution m^t.")
    p.add_argument('--recursive', default=False, action='store_true', help="Require a ladder and cross-check the ladder recursion. Default: False")
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser('orders', parents=[common, msgm], help="Standard orders of the multisegment.")
    p.add_argument('--canonical', default=False, action='store_true', help="Only print the canonical order built block by block. Default: False")
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser('distinguished', parents=[common, msgm], help="Does every standard order admit a relevant decomposition?")
    p.set_defaults(func=cmd_distinguished)

    p = sub.add_parser('hypothesis', parents=[common, msgm], help="Check Hypothesis * or ** for one multisegment.")
    p.add_argument('--mode', default='star', choices=MODES, help="Hypothesis to check. Default: star")
    p.set_defaults(func=cmd_hypothesis)

    p = sub.add_parser('search', parents=[common], help="Exhaustive bounded search for counterexamples.")
    p.add_argument('--max-end', dest='max_end', type=int, required=True, help="Largest segment end; segments lie in [0, max-end].")
    p.add_argument('--max-size', dest='max_size', type=int, required=True, help="Largest number of segments, counted with multiplicity.")
    p.add_argument('--max-mult', dest='max_mult', type=int, default=1, help="Largest multiplicity of a segment. Default: 1")
    p.add_argument('--mode', default='star', choices=MODES, help="Hypothesis to check. Default: star")
    p.add_argument('--filter', default='all', choices=FILTERS, help="Restrict the candidates. Default: all")
    p.add_argument('--shards', type=int, default=_default_shards(), help="Number of worker processes. Default: $MULTISEG_THREADS or 1")
    p.add_argument('--output', default=None, help="Write the report to this file. Default: no file")
    p.add_argument('--csv', default=False, action='store_true', help="Supply flag if --output should be a flattened CSV file instead of newline JSON. Default: False")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser('ladder', help="Ladder classification.")
    ladder_sub = p.add_subparsers(dest='ladder_command')
    ladder_sub.required = True
    p = ladder_sub.add_parser('classify', parents=[common, msgm], help="Ladder structure, Sp-distinction and Klyachko type.")
    p.add_argument('--d', type=_positive_int, default=1, help="Size of the general linear group of the cuspidal representation. Default: 1")
    p.set_defaults(func=cmd_ladder_classify)

    p = sub.add_parser('irreducible', parents=[common], help="Irreducibility and Sp-distinction of a product of ladders.")
    p.add_argument('msgms', nargs='+', help="Two or more ladders.")
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser('elementary', parents=[common, msgm], help="Replace two linked segments by their union and intersection.")
    p.add_argument('--pair', nargs=2, required=True, metavar='SEGMENT', help="The two segments, e.g. --pair '[0,1]' '[1,2]'.")
    p.set_defaults(func=cmd_elementary)

    p = sub.add_parser('closure', parents=[common, msgm], help="Multisegments reachable by elementary operations.")
    p.add_argument('--cap', type=_positive_int, default=1000, help="Stop after this many multisegments. Default: 1000")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser('alt-sum', parents=[common, msgm], help="Alternating-sum test for single-length multisegments.")
    p.set_defaults(func=cmd_alt_sum)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.verbose and not args.log:
        logging.basicConfig(format='%(asctime)s %(message)s', level=logging.INFO)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print('internal error: {}'.format(exc), file=sys.stderr)
        return EXIT_INVARIANT
    except MultisegError as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
