"""
URL configuration for the fairness_lab project.

The only routes are the JSON endpoints of the ``opportunity`` app.
"""

from django.urls import include, path

urlpatterns = [
    path("", include("opportunity.urls")),
]
