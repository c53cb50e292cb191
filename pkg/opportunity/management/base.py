"""
Shared plumbing of the opportunity management commands.

Commands implement :meth:`FairnessCommand.run`; library errors raised there
are written to stderr as JSON and turned into the process exit code
(0 success, 1 input, usage or validation failure, 2 undefined equal
opportunity, 3 construction failure).
"""

import json
import logging
from functools import partial

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ..distribution import from_samples
from ..exceptions import BadParameter, FairnessError
from ..fileio import dumps, load_distribution, read_samples

logger = logging.getLogger(__name__)


def _plain(text):
    return text


class FairnessCommand(BaseCommand):
    """Base class for commands that run the library and report JSON."""

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = partial(self.usage_error, parser)
        return parser

    def usage_error(self, parser, message):
        """Report a bad command line like any other input error: JSON, exit 1."""
        if not parser.called_from_command_line:
            raise CommandError(f"Error: {message}")
        exc = BadParameter(message)
        parser.exit(exc.exit_code, json.dumps(exc.as_dict()) + "\n")

    def add_input_argument(self, parser):
        parser.add_argument("input", help="Distribution JSON file")
        parser.add_argument(
            "--strict",
            action="store_true",
            help="Reject zero-mass rows instead of dropping them.",
        )

    def add_threads_argument(self, parser):
        parser.add_argument(
            "--threads",
            type=int,
            default=None,
            help="Worker threads for exhaustive enumerations (default: EO_REGION_THREADS).",
        )

    def threads(self, options):
        threads = options.get("threads")
        if threads is None:
            threads = settings.EO_REGION_THREADS
        if threads < 1:
            raise BadParameter(f"--threads must be at least 1, got {threads}")
        return threads

    def load_source(self, options, samples=False):
        """Read the input file named on the command line as a DataSource."""
        path = options["input"]
        if samples:
            return from_samples(read_samples(path), exact=options.get("exact", False))
        return load_distribution(path, strict=options.get("strict", False))

    def emit(self, data):
        """Write a JSON report on stdout."""
        self.stdout.write(dumps(data), ending="")

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except FairnessError as exc:
            logger.debug("Command failed", exc_info=True)
            self.stderr.write(json.dumps(exc.as_dict()), style_func=_plain)
            raise SystemExit(exc.exit_code)

    def run(self, **options):
        raise NotImplementedError("subclasses of FairnessCommand must provide run()")
