# File: blackwhite/management/commands/bench.py
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from tqdm import tqdm

from blackwhite.bench import (BENCH_OPS, BenchConfig, BenchOutputError, Configuration,
                              run_sweep, sweep_length, write_csv, write_rows)


class Command(BaseCommand):
    help = "Sweep insert/search/delete over sizes 2^min-exp..2^max-exp and write amortized costs as CSV."

    def add_arguments(self, parser):
        parser.add_argument('--min-exp', type=int, default=10)
        parser.add_argument('--max-exp', type=int, default=14)
        parser.add_argument('--ops', default=','.join(BENCH_OPS),
                            help="comma-separated subset of insert, search, delete")
        parser.add_argument('--config', choices=[c.value for c in Configuration],
                            default=Configuration.PERFECT.value)
        parser.add_argument('--trials', type=int, default=settings.BWA_BENCH_TRIALS)
        parser.add_argument('--hit-ratio', type=float, default=1.0)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--probes', type=int, default=settings.BWA_BENCH_PROBES)
        parser.add_argument('--out', help="CSV destination; standard output when omitted")

    def handle(self, *args, **options):
        try:
            cfg = BenchConfig(
                min_exp=options['min_exp'],
                max_exp=options['max_exp'],
                ops=tuple(op.strip() for op in options['ops'].split(',') if op.strip()),
                config=options['config'],
                trials=options['trials'],
                hit_ratio=options['hit_ratio'],
                seed=options['seed'],
                probes=options['probes'],
                min_batch_ns=settings.BWA_BENCH_MIN_BATCH_NS,
                value_bits=settings.BWA_VALUE_BITS,
            )
        except ValueError as e:
            raise CommandError(str(e), returncode=2)

        with tqdm(total=sweep_length(cfg), unit='row', file=sys.stderr,
                  disable=options['verbosity'] == 0) as progress:
            report = run_sweep(cfg, on_row=lambda row: progress.update())

        for failure in report.failures:
            self.stderr.write(self.style.WARNING(
                f"{failure['op']} at 2^{failure['size_exp']} failed: {failure['error_message']}"))

        if options['out']:
            try:
                write_csv(report.rows, options['out'])
            except BenchOutputError as e:
                raise CommandError(str(e))
            if options['verbosity'] > 0:
                self.stderr.write(self.style.SUCCESS(f"Wrote {len(report.rows)} rows to {options['out']}"))
        else:
            write_rows(report.rows, self.stdout)
