from ...reports import optimal_report
from ..base import FairnessCommand


class Command(FairnessCommand):
    help = "Print the most accurate predictor whose opportunity-difference is within eps."

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument(
            "--eps",
            type=float,
            default=0.0,
            help="Bound on |opp_diff|, in [0, 2] (default 0: exact equal opportunity).",
        )

    def run(self, **options):
        self.emit(optimal_report(self.load_source(options), options["eps"]))
