from ...reports import sufficiency_report
from ..base import FairnessCommand


class Command(FairnessCommand):
    help = (
        "Check the four-mass sufficiency condition and print the fair, "
        "non-trivial predictor it guarantees."
    )

    def add_arguments(self, parser):
        self.add_input_argument(parser)

    def run(self, **options):
        self.emit(sufficiency_report(self.load_source(options)))
