import json
from pathlib import Path

from django.conf import settings
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

FIXTURES = Path(settings.BASE_DIR) / "fixtures"


class ApiTestCase(APISimpleTestCase):
    def setUp(self):
        self.cloud = json.loads((FIXTURES / "cloud.json").read_text())
        self.non_example = json.loads((FIXTURES / "non-example.json").read_text())

    def test_analyze(self):
        response = self.client.post(reverse("analyze"), self.cloud, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertFalse(response.data["compatible"])
        self.assertEqual(response.data["tau"], 0.65)

    def test_region(self):
        response = self.client.post(reverse("region"), self.non_example, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertFalse(response.data["degenerate"])
        self.assertGreaterEqual(len(response.data["vertices"]), 4)

    def test_optimal(self):
        response = self.client.post(f"{reverse('optimal')}?eps=2", self.cloud, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data["error"], 0.3125)

    def test_invalid_eps(self):
        response = self.client.post(f"{reverse('optimal')}?eps=abc", self.cloud, format="json")
        self.assertEqual(response.status_code, 400)
        self.assertEqual(response.data["error"], "BadParameter")

    def test_validation_error(self):
        response = self.client.post(reverse("analyze"), {"rows": []}, format="json")
        self.assertEqual(response.status_code, 400)
        self.assertEqual(response.data["error"], "EmptyInput")

    def test_undefined_opportunity(self):
        rows = {"rows": [{"x": "u", "a": 0, "p": 0.5, "q": 0.5}, {"x": "v", "a": 1, "p": 0.5, "q": 0.0}]}
        response = self.client.post(reverse("analyze"), rows, format="json")
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.data["group"], 1)

    def test_get_not_allowed(self):
        response = self.client.get(reverse("analyze"))
        self.assertEqual(response.status_code, 405)


class StatelessSettingsTestCase(APISimpleTestCase):
    def test_no_auth_or_static_apps(self):
        for app in ("django.contrib.auth", "django.contrib.contenttypes", "django.contrib.staticfiles"):
            self.assertNotIn(app, settings.INSTALLED_APPS)
        self.assertFalse(hasattr(settings, "STATIC_URL") and settings.STATIC_URL)

    def test_anonymous_request_is_served(self):
        cloud = json.loads((FIXTURES / "cloud.json").read_text())
        response = self.client.post(reverse("analyze"), cloud, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertIsNone(response.wsgi_request.user)

    def test_asgi_entry_point(self):
        from fairness_lab.asgi import application

        self.assertTrue(callable(application))

    def test_requirements(self):
        lines = (Path(settings.BASE_DIR) / "requirements.txt").read_text().splitlines()
        names = {line.split("==")[0].lower() for line in lines if "==" in line}
        self.assertNotIn("python-dotenv", names)
        for name in ("django-environ", "djangorestframework", "numpy", "pandas", "sphinx-autobuild", "uvicorn"):
            self.assertIn(name, names)
