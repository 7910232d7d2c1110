# Generated by Django 4.2.19 on 2026-10-18 09:12

from django.db import migrations, models
import django.db.models.deletion
import uuid


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='BenchRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('min_exp', models.IntegerField()),
                ('max_exp', models.IntegerField()),
                ('ops', models.CharField(default='insert,search,delete', max_length=32)),
                ('config', models.CharField(choices=[('perfect', 'Perfect (total = 2^m)'), ('random', 'Random (averaged over trials)')], default='perfect', max_length=16)),
                ('trials', models.IntegerField()),
                ('hit_ratio', models.FloatField()),
                ('seed', models.IntegerField(default=0)),
                ('probes', models.IntegerField()),
                ('row_count', models.IntegerField(default=0)),
                ('finished', models.BooleanField(default=False)),
                ('error_message', models.TextField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='BenchMeasurement',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('size_exp', models.IntegerField()),
                ('op', models.CharField(max_length=16)),
                ('config', models.CharField(max_length=16)),
                ('hit_ratio', models.FloatField()),
                ('ns_per_op', models.FloatField()),
                ('cmp_per_op', models.FloatField()),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='measurements', to='blackwhite.benchrun')),
            ],
            options={
                'ordering': ['op', 'size_exp'],
            },
        ),
    ]
