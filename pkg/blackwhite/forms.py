# File: blackwhite/forms.py
from django import forms
from django.conf import settings

from .bench import BenchConfig
from .models import BenchRun


class BenchRunForm(forms.ModelForm):
    """Form for collecting benchmark sweep parameters"""

    class Meta:
        model = BenchRun
        fields = ['min_exp', 'max_exp', 'ops', 'config', 'trials', 'hit_ratio', 'seed', 'probes']

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

        # Set default values
        if not args and not kwargs.get('instance'):
            self.fields['min_exp'].initial = 10
            self.fields['max_exp'].initial = 14
            self.fields['trials'].initial = settings.BWA_BENCH_TRIALS
            self.fields['hit_ratio'].initial = 1.0
            self.fields['probes'].initial = settings.BWA_BENCH_PROBES

        for name in ('min_exp', 'max_exp'):
            self.fields[name].widget.attrs.update({'class': 'form-control', 'min': 1, 'max': 22})
        self.fields['min_exp'].help_text = 'Smallest size exponent m (2^m values)'
        self.fields['max_exp'].help_text = 'Largest size exponent m'

        self.fields['ops'].widget.attrs.update({'class': 'form-control'})
        self.fields['ops'].help_text = 'Comma-separated subset of insert, search, delete'

        self.fields['trials'].widget.attrs.update({'class': 'form-control', 'min': 1})
        self.fields['trials'].help_text = 'Random totals averaged per size (random configuration only)'

        self.fields['hit_ratio'].widget.attrs.update({
            'class': 'form-range',
            'min': 0.0,
            'max': 1.0,
            'step': 0.05,
            'type': 'range'
        })
        self.fields['hit_ratio'].help_text = 'Fraction of search and delete probes that hit a stored value'

        self.fields['seed'].widget.attrs.update({'class': 'form-control', 'min': 0})
        self.fields['probes'].widget.attrs.update({'class': 'form-control', 'min': 1})
        self.fields['probes'].help_text = 'Probe values per timed batch'

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        ops = tuple(op.strip() for op in cleaned['ops'].split(',') if op.strip())
        try:
            BenchConfig(
                min_exp=cleaned['min_exp'],
                max_exp=cleaned['max_exp'],
                ops=ops,
                config=cleaned['config'],
                trials=cleaned['trials'],
                hit_ratio=cleaned['hit_ratio'],
                seed=cleaned['seed'],
                probes=cleaned['probes'],
            )
        except ValueError as e:
            raise forms.ValidationError(str(e))
        cleaned['ops'] = ','.join(ops)
        return cleaned
