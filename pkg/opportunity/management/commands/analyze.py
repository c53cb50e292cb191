from ...reports import analysis_report
from ..base import FairnessCommand


class Command(FairnessCommand):
    help = "Report tau, tau*, Bayes accuracy and the equal-opportunity verdict of a source."

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument(
            "--samples",
            action="store_true",
            help="Treat the input as a CSV sample file with header x,a,y.",
        )
        parser.add_argument(
            "--exact",
            action="store_true",
            help="With --samples, estimate exact rational masses.",
        )

    def run(self, **options):
        source = self.load_source(options, samples=options["samples"])
        self.emit(analysis_report(source))
