# Generated by Django 5.2.7 on 2026-10-19 10:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SearchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('journal', models.CharField(default='default', max_length=100)),
                ('config_id', models.CharField(max_length=50)),
                ('strategy', models.CharField(max_length=20)),
                ('budget', models.IntegerField()),
                ('seed', models.IntegerField(blank=True, null=True)),
                ('threads', models.PositiveSmallIntegerField(default=1)),
                ('status', models.CharField(choices=[('running', 'Running'), ('finished', 'Finished'), ('failed', 'Failed')], default='running', max_length=10)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'indexes': [models.Index(fields=['journal', 'config_id'], name='conics_run_journal_idx')],
            },
        ),
        migrations.CreateModel(
            name='JournalEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('journal', models.CharField(default='default', max_length=100)),
                ('config_id', models.CharField(max_length=50)),
                ('digest', models.CharField(max_length=64)),
                ('size', models.PositiveIntegerField()),
                ('rank', models.PositiveSmallIntegerField()),
                ('members', models.JSONField()),
                ('pattern', models.JSONField(default=list)),
                ('defect', models.IntegerField(blank=True, null=True)),
                ('geometric', models.BooleanField(default=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(null=True, on_delete=django.db.models.deletion.SET_NULL, related_name='entries', to='conics.searchrun')),
            ],
            options={
                'ordering': ['-size', 'digest'],
                'unique_together': {('journal', 'config_id', 'digest')},
            },
        ),
    ]
