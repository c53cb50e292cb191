from django.urls import path

from . import views

urlpatterns = [
    # ---------------------------
    # API
    # ---------------------------
    path("api/analyze/", views.analyze, name="analyze"),
    path("api/region/", views.region, name="region"),
    path("api/optimal/", views.optimal, name="optimal"),
]
