# File: blackwhite/management/commands/verify.py
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from blackwhite.oracle import OpKind, run_equivalence

MIX_ORDER = (OpKind.INSERT, OpKind.SEARCH, OpKind.DELETE)


def parse_mix(text):
    """``"50,25,25"`` -> weights for insert, search and delete."""
    parts = [part.strip() for part in text.split(',')]
    if len(parts) != len(MIX_ORDER):
        raise ValueError(f"--mix needs {len(MIX_ORDER)} comma-separated weights (insert,search,delete), got {text!r}")
    try:
        weights = [float(part) for part in parts]
    except ValueError:
        raise ValueError(f"--mix weights must be numbers, got {text!r}")
    return dict(zip(MIX_ORDER, weights))


class Command(BaseCommand):
    help = "Replay a seeded random operation sequence against a sorted reference model."

    def add_arguments(self, parser):
        parser.add_argument('--size-exp', type=int, default=16, help="capacity exponent of the structure")
        parser.add_argument('--ops', type=int, default=100_000, help="number of operations")
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--hit-ratio', type=float, default=0.5)
        parser.add_argument('--mix', default='50,25,25', help="insert,search,delete weights")
        parser.add_argument('--check-every', type=int, default=1,
                            help="run the structural and content checks after every N-th operation")

    def handle(self, *args, **options):
        if options['size_exp'] < 1 or options['ops'] < 0 or options['check_every'] < 1:
            raise CommandError("--size-exp and --check-every must be positive, --ops non-negative", returncode=2)
        try:
            mix = parse_mix(options['mix'])
            verdict = run_equivalence(
                options['seed'], options['ops'], mix, options['hit_ratio'], options['size_exp'],
                policy=settings.BWA_GROWTH_POLICY,
                check_every=options['check_every'],
            )
        except ValueError as e:
            raise CommandError(str(e), returncode=2)

        if not verdict.ok:
            for violation in verdict.violations:
                self.stderr.write(self.style.ERROR(violation))
            raise CommandError(str(verdict.divergence))
        self.stdout.write(self.style.SUCCESS(
            f"ok: {verdict.steps} operations (seed {options['seed']}) matched the reference model"))
