from django.apps import AppConfig


class BlackwhiteConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'blackwhite'
    verbose_name = 'Black-white array'
