# File: blackwhite/models.py
from django.conf import settings
from django.db import models
import uuid

from .bench import BENCH_OPS, BenchConfig, Configuration


class BenchRun(models.Model):
    """Store benchmark sweep parameters and results for revisiting later"""
    CONFIG_CHOICES = [
        (Configuration.PERFECT.value, 'Perfect (total = 2^m)'),
        (Configuration.RANDOM.value, 'Random (averaged over trials)'),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    created_at = models.DateTimeField(auto_now_add=True)

    # Sweep parameters
    min_exp = models.IntegerField()
    max_exp = models.IntegerField()
    ops = models.CharField(max_length=32, default=','.join(BENCH_OPS))
    config = models.CharField(max_length=16, choices=CONFIG_CHOICES, default=Configuration.PERFECT.value)
    trials = models.IntegerField()
    hit_ratio = models.FloatField()
    seed = models.IntegerField(default=0)
    probes = models.IntegerField()

    # Results
    row_count = models.IntegerField(default=0)
    finished = models.BooleanField(default=False)
    error_message = models.TextField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at']

    @property
    def op_list(self):
        return tuple(op.strip() for op in self.ops.split(',') if op.strip())

    def to_config(self) -> BenchConfig:
        return BenchConfig(
            min_exp=self.min_exp,
            max_exp=self.max_exp,
            ops=self.op_list,
            config=self.config,
            trials=self.trials,
            hit_ratio=self.hit_ratio,
            seed=self.seed,
            probes=self.probes,
            min_batch_ns=settings.BWA_BENCH_MIN_BATCH_NS,
            value_bits=settings.BWA_VALUE_BITS,
        )

    def __str__(self):
        return f"{self.config} sweep 2^{self.min_exp}..2^{self.max_exp} on {self.created_at.strftime('%Y-%m-%d')}"


class BenchMeasurement(models.Model):
    """One row of a sweep: amortized cost of one operation at one size"""
    run = models.ForeignKey(BenchRun, on_delete=models.CASCADE, related_name='measurements')
    size_exp = models.IntegerField()
    op = models.CharField(max_length=16)
    config = models.CharField(max_length=16)
    hit_ratio = models.FloatField()
    ns_per_op = models.FloatField()
    cmp_per_op = models.FloatField()

    class Meta:
        ordering = ['op', 'size_exp']

    def __str__(self):
        return f"{self.op} 2^{self.size_exp}: {self.ns_per_op:.1f} ns/op"
