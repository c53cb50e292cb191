"""
Django settings for the fairness_lab project.

The project hosts the ``opportunity`` app: exact error / opportunity-difference
analysis of finite data sources, exposed through management commands and a
small REST API.
"""

from pathlib import Path

import environ

# ---------------------------
# Environment Setup
# ---------------------------
BASE_DIR = Path(__file__).resolve().parent.parent
env = environ.Env(
    DEBUG=(bool, False),
    ALLOWED_HOSTS=(list, ["127.0.0.1", "localhost"]),
    EO_REGION_THREADS=(int, 1),
    EO_REGION_LOG_LEVEL=(str, "INFO"),
    EO_REGION_SVG_WIDTH=(int, 480),
    EO_REGION_SVG_HEIGHT=(int, 480),
)
environ.Env.read_env(BASE_DIR / ".env")

# ---------------------------
# Security
# ---------------------------
SECRET_KEY = env("DJANGO_SECRET_KEY", default="unsafe-secret-key")
DEBUG = env.bool("DEBUG", default=False)
ALLOWED_HOSTS = env.list("ALLOWED_HOSTS", default=["127.0.0.1", "localhost"])

# ---------------------------
# Application Definition
# ---------------------------
INSTALLED_APPS = [
    # Local apps
    "opportunity",
    # Third-party
    "rest_framework",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "fairness_lab.urls"

WSGI_APPLICATION = "fairness_lab.wsgi.application"

# ---------------------------
# Database
# ---------------------------
# Nothing is persisted; Django still expects a default connection.
DATABASES = {
    "default": env.db("DATABASE_URL", default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}")
}

# ---------------------------
# Internationalization
# ---------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# ---------------------------
# Django REST Framework
# ---------------------------
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": ["rest_framework.permissions.AllowAny"],
    "DEFAULT_RENDERER_CLASSES": ["rest_framework.renderers.JSONRenderer"],
    "DEFAULT_PARSER_CLASSES": ["rest_framework.parsers.JSONParser"],
    "UNAUTHENTICATED_USER": None,
}

# ---------------------------
# Logging
# ---------------------------
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "opportunity": {
            "handlers": ["console"],
            "level": env("EO_REGION_LOG_LEVEL"),
            "propagate": False,
        },
    },
}

# ---------------------------
# eo_region
# ---------------------------
# Worker threads for the 2^n enumerations; `--threads` overrides per command.
EO_REGION_THREADS = env.int("EO_REGION_THREADS")
EO_REGION_SVG_WIDTH = env.int("EO_REGION_SVG_WIDTH")
EO_REGION_SVG_HEIGHT = env.int("EO_REGION_SVG_HEIGHT")
