# File: blackwhite/management/commands/trace.py
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from blackwhite.core import BlackWhiteArray, Extreme

VALUE_OPS = ('insert', 'delete', 'search')
EXTRACT_OPS = {'extract-min': Extreme.MIN, 'extract-max': Extreme.MAX}


def parse_value(token):
    try:
        return int(token)
    except ValueError:
        return float(token)


class Command(BaseCommand):
    help = "Replay an op script (insert V, delete V, search V, extract-min, extract-max) and dump the segments after each step."

    def add_arguments(self, parser):
        parser.add_argument('--script', required=True, help="path of the op script")

    def handle(self, *args, **options):
        path = options['script']
        try:
            with open(path, encoding='utf-8') as f:
                lines = f.read().splitlines()
        except OSError as e:
            raise CommandError(f"could not read trace script {path}: {e}")

        bwa = BlackWhiteArray(settings.BWA_DEFAULT_CAP_EXP, settings.BWA_GROWTH_POLICY)
        for number, raw in enumerate(lines, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            self.stdout.write(f"> {line}")
            self.stdout.write(self._step(bwa, line, number, path))
            for dumped in bwa.dump() or ['(empty)']:
                self.stdout.write(dumped)

    def _step(self, bwa, line, number, path):
        tokens = line.split()
        op = tokens[0]
        if op in EXTRACT_OPS and len(tokens) == 1:
            value = bwa.extract(EXTRACT_OPS[op])
            return "nothing to extract" if value is None else f"extracted {value}"
        if op not in VALUE_OPS or len(tokens) != 2:
            raise CommandError(f"{path}:{number}: unrecognised line {line!r}")
        try:
            value = parse_value(tokens[1])
        except ValueError:
            raise CommandError(f"{path}:{number}: {tokens[1]!r} is not a number")

        if op == 'insert':
            bwa.insert(value)
            return f"inserted {value}"
        index = bwa.search(value) if op == 'search' else bwa.delete(value)
        if index is None:
            return "not found"
        return f"found at {index}" if op == 'search' else f"deleted from {index}"
