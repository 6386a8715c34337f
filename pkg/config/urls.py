"""
URL configuration for config project.

The toolkit is driven from management commands; only the admin is routed,
for browsing search runs and journal entries.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
