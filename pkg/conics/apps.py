from django.apps import AppConfig


class ConicsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'conics'
    verbose_name = "Conics on K3 sextics"
