# File: blackwhite/admin.py
from django.contrib import admin
from .models import BenchRun, BenchMeasurement


class BenchMeasurementInline(admin.TabularInline):
    model = BenchMeasurement
    extra = 0
    readonly_fields = ('size_exp', 'op', 'config', 'hit_ratio', 'ns_per_op', 'cmp_per_op')


class BenchRunAdmin(admin.ModelAdmin):
    list_display = ('id', 'created_at', 'min_exp', 'max_exp', 'ops', 'config', 'row_count', 'finished')
    list_filter = ('created_at', 'config', 'finished')
    search_fields = ('id', 'ops')
    readonly_fields = ('id', 'created_at', 'row_count', 'finished', 'error_message')
    inlines = [BenchMeasurementInline]


admin.site.register(BenchRun, BenchRunAdmin)
