# File: blackwhite/management/commands/sort.py
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from blackwhite.core import incremental_sort
from .trace import parse_value


class Command(BaseCommand):
    help = "Sort whitespace-separated numbers by inserting them one at a time into a black-white array."
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('--input', help="read numbers from this file instead of standard input")

    def handle(self, *args, **options):
        if options['input']:
            try:
                with open(options['input'], encoding='utf-8') as f:
                    text = f.read()
            except OSError as e:
                raise CommandError(f"could not read {options['input']}: {e}")
        else:
            text = options.get('stdin', sys.stdin).read()

        try:
            values = [parse_value(token) for token in text.split()]
        except ValueError as e:
            raise CommandError(f"input is not a list of numbers: {e}")

        self.stdout.write(' '.join(map(str, incremental_sort(values, settings.BWA_DEFAULT_CAP_EXP))))
