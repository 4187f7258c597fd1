"""
python factorize.py factor --input a.json --output a.factors.json
python factorize.py factor --input a.json --ring Zp --p 3
python factorize.py verify --input a.factors.json
python factorize.py analyze --field 2 --size 3 --degree 3
python factorize.py analyze --cayley table.json --export
python factorize.py batch --ring Zp --p 2 --size 4 --count 500 --seed 0 --jobs 4 --color
python factorize.py batch --input matrices/ --metadata run.meta.json --config logging.level=DEBUG

Exit status: 0 verified, 1 a check or construction failed, 2 invalid input.
"""

import argparse
import os
import sys
import time
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

import IdemFactor
from IdemFactor.algebra.rings import RingDescriptor, RingKind
from IdemFactor.infer.api import RunReport, random_items, run_analyze, run_batch, run_factor, run_verify
from IdemFactor.utils.errors import InvalidInput, MathError
from IdemFactor.utils.io_utils import dumps, list_inputs, read_json, write_json
from omegaconf import OmegaConf
from utils.logger import MetricLogger
from utils.output import ansi, prints, status


class Command(StrEnum):
    FACTOR = 'factor'
    ANALYZE = 'analyze'
    VERIFY = 'verify'
    BATCH = 'batch'


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Idempotent factorization of singular matrices')
    parser.add_argument('--config', nargs='*', default=[], metavar='KEY=VALUE',
                        help='dot-list overrides of the default configuration')
    parser.add_argument('--output', type=str, help='report path, stdout if omitted')
    parser.add_argument('--metadata', type=str, help='sidecar JSON with wall time, version and argv')
    parser.add_argument('--color', action='store_true')
    subparsers = parser.add_subparsers(dest='command', required=True)

    factor = subparsers.add_parser(Command.FACTOR, help='factor one matrix')
    factor.add_argument('--input', type=str, required=True)
    verify = subparsers.add_parser(Command.VERIFY, help='re-verify a factorization file')
    verify.add_argument('--input', type=str, required=True)
    analyze = subparsers.add_parser(Command.ANALYZE, help='analyze a finite monoid')
    analyze.add_argument('--field', type=int, help='q of M_n(F_q)')
    analyze.add_argument('--size', type=int, help='n of M_n(F_q)')
    analyze.add_argument('--cayley', type=str, help='Cayley-table JSON instead of a matrix monoid')
    analyze.add_argument('--degree', type=int, help='degree s of irreducibles')
    analyze.add_argument('--export', action='store_true', help='include the annotated Cayley table')
    batch = subparsers.add_parser(Command.BATCH, help='factor a directory of matrices or a random sample')
    batch.add_argument('--input', type=str, help='directory of matrix JSON files')
    batch.add_argument('--size', type=int)
    batch.add_argument('--count', type=int)
    batch.add_argument('--seed', type=int)
    batch.add_argument('--jobs', type=int)
    for sub in (factor, batch):
        sub.add_argument('--ring', type=str, choices=[str(kind) for kind in RingKind])
        sub.add_argument('--p', type=int)
    return parser


def get_ring(kind: str | None, p: int | None) -> RingDescriptor | None:
    match kind:
        case None:
            return None
        case RingKind.Q:
            return RingDescriptor.rationals()
        case _ if p is None:
            raise InvalidInput(f'--ring {kind} needs --p')
        case RingKind.FP:
            return RingDescriptor.prime_field(p)
        case RingKind.ZP:
            return RingDescriptor.local_integers(p)


def run(args: argparse.Namespace) -> RunReport:
    factorizer = IdemFactor.Factorizer(OmegaConf.from_dotlist(args.config))
    match args.command:
        case Command.FACTOR:
            return run_factor(factorizer, read_json(args.input), get_ring(args.ring, args.p))
        case Command.VERIFY:
            return run_verify(factorizer, read_json(args.input))
        case Command.ANALYZE:
            cayley = read_json(args.cayley) if args.cayley else None
            return run_analyze(factorizer, args.field, args.size, cayley, args.degree, args.export)
        case Command.BATCH:
            ring = get_ring(args.ring, args.p)
            if args.input:
                items = [(os.path.basename(path), read_json(path)) for path in list_inputs(args.input)]
            elif ring is None:
                raise InvalidInput('batch needs --input or --ring')
            else:
                items = random_items(factorizer, ring, args.size, args.count, args.seed)
            metric_logger = MetricLogger(length='{global_avg:.2f}', slack='{min:.0f}', tqdm=sys.stderr.isatty())
            return run_batch(factorizer, items, ring, args.jobs, metric_logger)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = get_parser().parse_args(argv)
    ansi.switch(args.color)
    start = time.time()
    try:
        report = run(args)
    except (InvalidInput, OSError) as e:
        prints(f'{ansi["red"]}invalid input{ansi["reset"]}: {e}')
        return 2
    except MathError as e:
        prints(f'{ansi["red"]}{type(e).__name__}{ansi["reset"]}: {e}')
        return 1
    payload = report.to_json()
    if args.output:
        write_json(args.output, payload)
    else:
        sys.stdout.write(dumps(payload))
    if report.verification is not None:
        for failure in report.verification.get('failures', []):
            prints(failure if isinstance(failure, str) else str(failure))
    prints(f'{report.command}: {status(report.status == 0)}')
    if args.metadata:
        write_json(args.metadata, {'argv': argv, 'version': IdemFactor.__version__,
                                   'wall_time': round(time.time() - start, 3)})
    return report.status


if __name__ == '__main__':
    sys.exit(main())
