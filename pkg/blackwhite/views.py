# File: blackwhite/views.py
import logging

from django.contrib import messages
from django.http import HttpResponse
from django.shortcuts import render, redirect, get_object_or_404

from .bench import BenchRow, run_benchmark, write_rows
from .forms import BenchRunForm
from .models import BenchRun

logger = logging.getLogger(__name__)


def index(request):
    """Home page with the sweep form and the most recent runs"""
    if request.method == 'POST':
        form = BenchRunForm(request.POST)
        if form.is_valid():
            run = form.save()
            return redirect('blackwhite:results', run_id=run.id)
    else:
        form = BenchRunForm()

    recent = BenchRun.objects.all()[:10]
    return render(request, 'blackwhite/index.html', {'form': form, 'recent': recent})


def results(request, run_id):
    """Results page; the sweep runs the first time a run is viewed"""
    run = get_object_or_404(BenchRun, id=run_id)

    failures = []
    if not run.finished:
        outcome = run_benchmark(run)
        if not outcome['success']:
            messages.error(request, f"Benchmark failed: {outcome.get('error_message', 'Unknown error')}")
            return redirect('blackwhite:index')
        failures = outcome['failures']
        for failure in failures:
            messages.warning(request, f"{failure['op']} at 2^{failure['size_exp']} failed: {failure['error_message']}")

    context = {
        'run': run,
        'measurements': run.measurements.all(),
        'failures': failures,
    }
    return render(request, 'blackwhite/results.html', context)


def export_csv(request, run_id):
    """Download the stored rows of a run in the bench CSV format"""
    run = get_object_or_404(BenchRun, id=run_id)
    rows = [
        BenchRow(m.size_exp, m.op, m.config, m.hit_ratio, m.ns_per_op, m.cmp_per_op)
        for m in run.measurements.all()
    ]

    response = HttpResponse(content_type='text/csv')
    response['Content-Disposition'] = f'attachment; filename="bwa_bench_{run.id}.csv"'
    write_rows(rows, response)
    logger.info("exported %d rows of run %s", len(rows), run.id)
    return response
