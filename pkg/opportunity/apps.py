from django.apps import AppConfig


class OpportunityConfig(AppConfig):
    """
    App configuration for the 'opportunity' app.
    The app has no models; it ships the library, the commands and the API.
    """

    default_auto_field = "django.db.models.BigAutoField"
    name = "opportunity"
    verbose_name = "Equal opportunity analysis"
