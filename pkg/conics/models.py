from django.db import models


class SearchRun(models.Model):
    class Status(models.TextChoices):
        RUNNING = "running"
        FINISHED = "finished"
        FAILED = "failed"

    journal = models.CharField(max_length=100, default="default")
    config_id = models.CharField(max_length=50)
    strategy = models.CharField(max_length=20)
    budget = models.IntegerField()
    seed = models.IntegerField(null=True, blank=True)
    threads = models.PositiveSmallIntegerField(default=1)
    status = models.CharField(max_length=10, choices=Status.choices, default=Status.RUNNING)
    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        indexes = [
            models.Index(fields=['journal', 'config_id'], name='conics_run_journal_idx')
        ]

    def __str__(self):
        return f"{self.config_id} [{self.strategy}, d={self.budget}]"


class JournalEntry(models.Model):
    run = models.ForeignKey(SearchRun, on_delete=models.SET_NULL, null=True, related_name='entries')
    journal = models.CharField(max_length=100, default="default")
    config_id = models.CharField(max_length=50)
    digest = models.CharField(max_length=64)
    size = models.PositiveIntegerField()
    rank = models.PositiveSmallIntegerField()
    members = models.JSONField()
    pattern = models.JSONField(default=list)
    defect = models.IntegerField(null=True, blank=True)
    geometric = models.BooleanField(default=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        unique_together = ('journal', 'config_id', 'digest')
        ordering = ['-size', 'digest']

    def __str__(self):
        return f"{self.config_id}: |L| = {self.size}, rank {self.rank}"
