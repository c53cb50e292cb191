# serializers.py
"""
Wire formats of the opportunity app.

Distribution files and region files are read and written through these
serializers; command and API reports are rendered through them. Floats are
written with 9 significant digits, except in distribution and region files,
which keep full precision so that they read back exactly (``precise`` context
flag).
"""

import numpy as np
from rest_framework import serializers

from .distribution import PredictorVec, SourceRow, make_source
from .metrics import MetricPoint
from .region import RegionPolygon


class SigFloatField(serializers.FloatField):
    """
    Float field rendering 9 significant digits.

    Context ``decimals`` rounds to that many decimal places instead (and
    folds ``-0.0`` into ``0.0``); context ``precise`` keeps every digit.
    """

    def to_representation(self, value):
        value = float(value)
        decimals = self.context.get("decimals")
        if decimals is not None:
            return round(value, decimals) + 0.0
        if self.context.get("precise"):
            return value
        return float(f"{value:.9g}")


# ---------------------------
# Distribution files
# ---------------------------
class SourceRowSerializer(serializers.Serializer):
    x = serializers.CharField(source="x_label", allow_blank=True)
    a = serializers.IntegerField()
    p = SigFloatField()
    q = SigFloatField()


class DistributionSerializer(serializers.Serializer):
    """``{"rows": [{"x": str, "a": 0|1, "p": float, "q": float}, ...]}``"""

    rows = SourceRowSerializer(many=True, allow_empty=True)

    def to_source(self, strict=False):
        """
        Build the validated DataSource; call after ``is_valid()``.

        Raises:
            SourceValidationError: the rows break a DataSource invariant.
        """
        rows = [SourceRow(**row) for row in self.validated_data["rows"]]
        return make_source(rows, strict=strict)


# ---------------------------
# Region files
# ---------------------------
class VertexSerializer(serializers.Serializer):
    error = SigFloatField()
    opp_diff = SigFloatField()
    witness = serializers.ListField(child=serializers.IntegerField(min_value=0, max_value=1))


class RegionSerializer(serializers.Serializer):
    """``{"vertices": [{"error", "opp_diff", "witness": [0|1, ...]}], "degenerate": bool}``"""

    vertices = VertexSerializer(many=True)
    degenerate = serializers.BooleanField()

    def to_representation(self, instance):
        if isinstance(instance, RegionPolygon):
            instance = {
                "vertices": [
                    {"error": v.error, "opp_diff": v.opp_diff, "witness": bits}
                    for v, bits in zip(instance.vertices, instance.witness_bits())
                ],
                "degenerate": instance.degenerate,
            }
        return super().to_representation(instance)

    def to_region(self, source):
        """Rebuild the polygon; witnesses are scaled by the masses of ``source``."""
        source = source.to_float()
        vertices, witnesses = [], []
        for vertex in self.validated_data["vertices"]:
            vertices.append(MetricPoint(vertex["error"], vertex["opp_diff"]))
            bits = np.array(vertex["witness"], dtype=float)
            witnesses.append(PredictorVec(bits * source.P))
        return RegionPolygon(
            tuple(vertices), tuple(witnesses), self.validated_data["degenerate"]
        )


# ---------------------------
# Reports
# ---------------------------
class AnalysisSerializer(serializers.Serializer):
    tau = SigFloatField()
    tau_star = SigFloatField()
    bayes_accuracy = SigFloatField()
    bayes_opp_diff = SigFloatField()
    min_eo_error = SigFloatField()
    compatible = serializers.BooleanField()
    nontrivial_exists = serializers.BooleanField()
    certificate = serializers.CharField()
    witness = serializers.ListField(child=SigFloatField(), allow_null=True)


class OptimalSerializer(serializers.Serializer):
    eps = SigFloatField()
    error = SigFloatField()
    opp_diff = SigFloatField()
    predictor = serializers.ListField(child=SigFloatField())


class SufficiencySerializer(serializers.Serializer):
    masses = serializers.DictField(child=SigFloatField())
    holds = serializers.BooleanField()
    tau_star = SigFloatField()
    nontrivial_exists = serializers.BooleanField()
    witness = serializers.ListField(child=SigFloatField(), allow_null=True)


class RegionSummarySerializer(serializers.Serializer):
    vertices = serializers.IntegerField()
    degenerate = serializers.BooleanField()
    error_extent = serializers.ListField(child=SigFloatField())
    eo_slice = serializers.ListField(child=SigFloatField())
    claims = serializers.DictField(child=serializers.BooleanField())
    matches_brute_force = serializers.BooleanField(allow_null=True)


class SidecarSerializer(serializers.Serializer):
    seed = serializers.IntegerField()
    P = serializers.ListField(child=SigFloatField())
    Q = serializers.ListField(child=SigFloatField())
    constraints = serializers.DictField(child=serializers.BooleanField())
