from django.contrib import admin

from conics.models import JournalEntry, SearchRun


@admin.register(SearchRun)
class SearchRunAdmin(admin.ModelAdmin):
    list_display = ("config_id", "journal", "strategy", "budget", "status", "created_at")
    list_filter = ("journal", "status", "strategy")


@admin.register(JournalEntry)
class JournalEntryAdmin(admin.ModelAdmin):
    list_display = ("config_id", "journal", "size", "rank", "defect", "digest")
    list_filter = ("journal", "config_id")
    search_fields = ("digest",)
