import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "fairness_lab.settings")
django.setup()

from django.test.utils import setup_test_environment  # noqa: E402

# Mirror what `manage.py test` (DiscoverRunner) does before running tests.
setup_test_environment()
