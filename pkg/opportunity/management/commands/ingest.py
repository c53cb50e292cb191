from ...fileio import distribution_data, write_json
from ..base import FairnessCommand


class Command(FairnessCommand):
    help = "Estimate a distribution file from a CSV of (x, a, y) samples."

    def add_arguments(self, parser):
        parser.add_argument("input", help="CSV sample file with header x,a,y")
        parser.add_argument("--out", help="Distribution JSON to write (default: stdout).")
        parser.add_argument(
            "--exact",
            action="store_true",
            help="Estimate exact rational masses.",
        )

    def run(self, **options):
        data = distribution_data(self.load_source(options, samples=True))
        if options["out"]:
            write_json(options["out"], data)
        else:
            self.emit(data)
