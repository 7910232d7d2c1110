# File: blackwhite/urls.py
from django.urls import path
from . import views

app_name = 'blackwhite'

urlpatterns = [
    path('', views.index, name='index'),
    path('results/<uuid:run_id>/', views.results, name='results'),
    path('export/<uuid:run_id>/', views.export_csv, name='export'),
]
