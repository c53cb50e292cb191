"""
ASGI entry point of the fairness_lab project, serving the opportunity API.

It exposes the ASGI callable as a module-level variable named ``application``.
"""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "fairness_lab.settings")

application = get_asgi_application()
