from django.conf import settings

from ...fileio import region_data, write_json, write_region_csv, write_text
from ...plotting import PlotSpec, render_region_svg
from ...region import zonotope_region
from ...reports import region_summary
from ..base import FairnessCommand


class Command(FairnessCommand):
    help = (
        "Compute the exact (error, opportunity-difference) region of a source and "
        "write it as SVG, CSV and/or JSON. A summary is printed on stdout."
    )

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        parser.add_argument("--svg", help="Write the region figure to this SVG file.")
        parser.add_argument("--csv", help="Write the vertices (error,opp_diff) to this CSV file.")
        parser.add_argument("--json", help="Write the polygon with its witnesses to this JSON file.")
        parser.add_argument(
            "--verify",
            action="store_true",
            help="Compare with the brute-force hull (sources of up to 16 rows).",
        )
        self.add_threads_argument(parser)

    def run(self, **options):
        source = self.load_source(options)
        region = zonotope_region(source)

        if options["json"]:
            write_json(options["json"], region_data(region))
        if options["csv"]:
            write_region_csv(options["csv"], region)
        if options["svg"]:
            spec = PlotSpec(
                width_px=settings.EO_REGION_SVG_WIDTH,
                height_px=settings.EO_REGION_SVG_HEIGHT,
            )
            write_text(options["svg"], render_region_svg(source, region, spec))

        self.emit(
            region_summary(
                source,
                region,
                verify=options["verify"],
                threads=self.threads(options),
            )
        )
