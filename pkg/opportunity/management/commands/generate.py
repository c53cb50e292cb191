import logging
from pathlib import Path

from ...construct import random_plane_instance, impossibility_source, plane_certificate
from ...fileio import distribution_data, write_json
from ...reports import analysis_report
from ...serializers import SidecarSerializer
from ..base import FairnessCommand

logger = logging.getLogger(__name__)


def sidecar_path(out):
    """``gen.json`` -> ``gen.sidecar.json``."""
    return Path(out).with_suffix(".sidecar.json")


class Command(FairnessCommand):
    help = (
        "Draw a random three-region source on which no equal-opportunity "
        "predictor beats the best constant classifier."
    )

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, required=True, help="Seed of the generator.")
        parser.add_argument("--out", required=True, help="Distribution JSON to write.")

    def run(self, **options):
        instance = random_plane_instance(options["seed"])
        source = impossibility_source(instance)
        if not plane_certificate(instance):
            logger.warning("seed %s: plane certificate failed", options["seed"])

        write_json(options["out"], distribution_data(source))
        sidecar = {
            "seed": options["seed"],
            "P": list(instance.P),
            "Q": list(instance.Q),
            "constraints": instance.constraints(),
        }
        write_json(sidecar_path(options["out"]), SidecarSerializer(sidecar).data)

        summary = analysis_report(source)
        summary["seed"] = options["seed"]
        self.emit(summary)
