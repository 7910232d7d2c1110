"""WSGI entry point for the benchmark dashboard.

Exposes ``application`` for the server; settings default to bwa_project.settings.
"""
import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'bwa_project.settings')

application = get_wsgi_application()
