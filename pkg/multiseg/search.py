"""
Bounded exhaustive search for counterexamples to Hypotheses * and **.

Candidates are all multisegments with segments inside [0, max_end], at most
max_size segments and multiplicities at most max_mult, translated so that
the smallest begin is 0. They are listed in canonical multisegment order
(size, then rows) and dealt round-robin to `shards` worker processes; the
merged report does not depend on the shard count.
"""
import csv
from functools import partial
import json
import logging
import multiprocessing
import sys
import time
from typing import List, NamedTuple, Optional, Tuple

from multiseg.exceptions import RangeError
from multiseg.multisegments import (Multisegment, OrderedMultisegment, canonical_order,
                                    canonical_translate, dual, is_speh_type)
from multiseg.relevance import (Decomposition, Matching, distinguished_flag,
                                nontrivial_relevant)
from multiseg.segments import Segment


logger = logging.getLogger(__name__)

MODES = ('star', 'star_star')
FILTERS = ('all', 'sets_only', 'blocks_le_2')


class SearchBounds(NamedTuple):
    max_end: int
    max_size: int
    max_mult: int = 1
    mode: str = 'star'
    filter: str = 'all'
    shards: int = 1

    def validate(self):
        if self.max_end < 0:
            raise RangeError('max_end must be >= 0, got {}'.format(self.max_end))
        if self.max_size < 1:
            raise RangeError('max_size must be >= 1, got {}'.format(self.max_size))
        if self.max_mult < 1:
            raise RangeError('max_mult must be >= 1, got {}'.format(self.max_mult))
        if self.shards < 1:
            raise RangeError('shards must be >= 1, got {}'.format(self.shards))
        if self.mode not in MODES:
            raise RangeError('mode must be one of {}, got {!r}'.format(MODES, self.mode))
        if self.filter not in FILTERS:
            raise RangeError('filter must be one of {}, got {!r}'.format(FILTERS, self.filter))
        return self


class Finding(NamedTuple):
    """A multisegment singled out by the search, with the data explaining why."""
    multisegment: Multisegment
    order: OrderedMultisegment
    decomposition: Optional[Decomposition] = None
    matching: Optional[Matching] = None
    dual_distinguished: Optional[bool] = None


class SearchReport(NamedTuple):
    bounds: SearchBounds
    checked: int
    distinguished_count: int
    speh_count: int
    counterexamples: Tuple[Finding, ...]
    strong_form_violations: Tuple[Finding, ...]
    dual_pairs: int
    elapsed_ms: float

    @property
    def holds(self) -> bool:
        return not self.counterexamples


class _ShardResult(NamedTuple):
    checked: int
    distinguished: int
    speh: int
    counterexamples: List[Finding]
    violations: List[Finding]


def _blocks_ok(counts, limit=2):
    sizes = {}
    for seg, count in counts.items():
        sizes[seg.end] = sizes.get(seg.end, 0) + count
    return all(size <= limit for size in sizes.values())


def enumerate_candidates(bounds: SearchBounds) -> List[Multisegment]:
    """Every canonical multisegment within the bounds, in canonical order."""
    segments = [Segment(a, b) for a in range(bounds.max_end + 1)
                for b in range(a, bounds.max_end + 1)]
    max_mult = 1 if bounds.filter == 'sets_only' else bounds.max_mult
    check_blocks = bounds.filter == 'blocks_le_2'
    found = []
    counts = {}

    def extend(start, size):
        if counts:
            found.append(Multisegment(counts))
        if size == bounds.max_size:
            return
        for idx in range(start, len(segments)):
            seg = segments[idx]
            # the first segment chosen is the smallest; it must begin at 0
            if not counts and seg.begin != 0:
                break
            for count in range(1, min(max_mult, bounds.max_size - size) + 1):
                counts[seg] = count
                if check_blocks and not _blocks_ok(counts):
                    break
                extend(idx + 1, size + count)
            counts.pop(seg, None)

    extend(0, 0)
    found.sort(key=lambda m: m.sort_key)
    return found


def evaluate(m: Multisegment, mode: str = 'star'):
    """
    (speh, distinguished, counterexample, violation) for one candidate.

    The canonical order is examined once for a non-trivial relevant
    decomposition; that answers the strong form and, for non-Speh m, is the
    first order tried for distinction.
    """
    speh = is_speh_type(m) is not None
    order = canonical_order(m)
    nontrivial = nontrivial_relevant(order)
    violation = None
    if nontrivial is not None:
        violation = Finding(m, order, *nontrivial)
    if speh:
        return True, True, None, violation
    if not distinguished_flag(m, speh=False, canonical_relevant=nontrivial is not None):
        return False, False, None, violation
    counterexample = Finding(m, order, *nontrivial)
    if mode == 'star_star':
        dual_distinguished = distinguished_flag(dual(m))
        if not dual_distinguished:
            return False, True, None, violation
        counterexample = counterexample._replace(dual_distinguished=True)
    return False, True, counterexample, violation


def _run_shard(args) -> _ShardResult:
    bounds, index, count = args
    logger.debug('shard %d/%d starting', index, count)
    result = _ShardResult(0, 0, 0, [], [])
    checked = distinguished = speh = 0
    for position, m in enumerate(enumerate_candidates(bounds)):
        if position % count != index:
            continue
        is_speh, is_distinguished, counterexample, violation = evaluate(m, bounds.mode)
        checked += 1
        speh += is_speh
        distinguished += is_distinguished
        if counterexample is not None:
            result.counterexamples.append(counterexample)
        if violation is not None:
            result.violations.append(violation)
    logger.debug('shard %d/%d checked %d candidates', index, count, checked)
    return result._replace(checked=checked, distinguished=distinguished, speh=speh)


def _count_dual_pairs(findings) -> int:
    present = {f.multisegment for f in findings}
    pairs = 0
    for m in present:
        partner = canonical_translate(dual(m))
        if partner != m and partner in present:
            pairs += 1
    return pairs // 2


def search_counterexamples(bounds: SearchBounds, pool=None) -> SearchReport:
    """
    Check every candidate within `bounds` and merge the shard results in
    canonical multisegment order.
    """
    bounds.validate()
    t0 = time.time()
    jobs = [(bounds, index, bounds.shards) for index in range(bounds.shards)]
    if bounds.shards == 1 and pool is None:
        results = [_run_shard(jobs[0])]
    elif pool is not None:
        results = pool.map(_run_shard, jobs)
    else:
        with multiprocessing.Pool(processes=bounds.shards) as shard_pool:
            results = shard_pool.map(_run_shard, jobs)
    counterexamples = sorted((f for r in results for f in r.counterexamples),
                             key=lambda f: f.multisegment.sort_key)
    violations = sorted((f for r in results for f in r.violations),
                        key=lambda f: f.multisegment.sort_key)
    elapsed_ms = (time.time() - t0) * 1000
    return SearchReport(
        bounds=bounds,
        checked=sum(r.checked for r in results),
        distinguished_count=sum(r.distinguished for r in results),
        speh_count=sum(r.speh for r in results),
        counterexamples=tuple(counterexamples),
        strong_form_violations=tuple(violations),
        dual_pairs=_count_dual_pairs(counterexamples),
        elapsed_ms=elapsed_ms,
    )


class SearchRunner(object):
    """
    Runs a search and reports progress through `print_func`: to a log file
    with `log`, to stderr with `verbose`, nowhere otherwise.
    """

    def __init__(self, log=False, verbose=False, log_file='multiseg.log'):
        self.verbose = verbose
        self.print_func = partial(print, file=sys.stderr)

        if log:
            logging.basicConfig(filename=log_file, format='%(asctime)s %(message)s')
            root = logging.getLogger()
            root.setLevel(logging.INFO)
            self.print_func = root.info
        if not log and not verbose:
            self.print_func = lambda x: None

    def run(self, bounds: SearchBounds) -> SearchReport:
        self.print_func('===========START===========')
        self.print_func('Searching max_end={} max_size={} max_mult={} mode={} filter={} on {} shard(s)'.format(
            bounds.max_end, bounds.max_size, bounds.max_mult, bounds.mode, bounds.filter, bounds.shards))
        report = search_counterexamples(bounds)
        self.print_func('===========================')
        self.print_func('Checked {} multisegments: {} distinguished, {} of Speh type'.format(
            report.checked, report.distinguished_count, report.speh_count))
        self.print_func('{} counterexample(s), {} strong form violation(s)'.format(
            len(report.counterexamples), len(report.strong_form_violations)))
        self.print_func('Search took {:.1f} ms'.format(report.elapsed_ms))
        self.print_func('============END============')
        return report

    def write_json_newline(self, recs, fp):
        with open(fp, 'w') as outfile:
            for r in recs:
                outfile.write(json.dumps(r))
                outfile.write('\n')

    def write_csv(self, recs, fp, flattener=None):
        if flattener:
            flat_recs = [rr for r in recs for rr in flattener.process_and_split(r)]
        else:
            flat_recs = recs

        field_names = sorted({k for rec in flat_recs for k in rec})
        with open(fp, mode='w', newline='') as csv_file:
            writer = csv.DictWriter(csv_file, fieldnames=field_names)
            writer.writeheader()
            for flat_rec in flat_recs:
                writer.writerow(flat_rec)
