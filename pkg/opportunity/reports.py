"""
Report builders shared by the management commands and the API views.

Each builder runs the library on a source and returns the rendered
(serializer) data, ready for ``json.dumps``.
"""

from .construct import check_sufficiency, sufficiency_predictor
from .fairopt import compatibility_verdict, min_error_eo, nontrivial_exists
from .metrics import bayes_opp_diff, tau_star
from .region import brute_force_region, eo_slice, verify_region, zonotope_region
from .serializers import (AnalysisSerializer, OptimalSerializer,
                          RegionSummarySerializer, SufficiencySerializer)

BRUTE_FORCE_CHECK_LIMIT = 16
MATCH_TOLERANCE = 1e-9


def _pointwise(source, predictor):
    return [float(v) for v in predictor.pointwise(source)]


def analysis_report(source):
    """Metrics and compatibility verdict of ``source``."""
    verdict = compatibility_verdict(source)
    witness = verdict.witness
    data = {
        "tau": verdict.trivial_accuracy,
        "tau_star": verdict.tau_star,
        "bayes_accuracy": verdict.bayes_accuracy,
        "bayes_opp_diff": bayes_opp_diff(source),
        "min_eo_error": verdict.min_eo_error,
        "compatible": verdict.compatible,
        "nontrivial_exists": verdict.nontrivial_exists,
        "certificate": verdict.certificate.value,
        "witness": None if witness is None else _pointwise(source, witness),
    }
    return AnalysisSerializer(data).data


def optimal_report(source, eps=0.0):
    """Most accurate predictor with ``|opp_diff| <= eps``, pointwise."""
    best = min_error_eo(source, eps)
    data = {
        "eps": eps,
        "error": best.error,
        "opp_diff": best.opp_diff,
        "predictor": _pointwise(source, best.predictor),
    }
    return OptimalSerializer(data).data


def sufficiency_report(source):
    """Four-mass condition, ``tau*`` and the constructive witness if any."""
    report = check_sufficiency(source)
    witness = None
    if report.holds:
        witness = _pointwise(source, sufficiency_predictor(source))
    data = {
        "masses": report.masses,
        "holds": report.holds,
        "tau_star": tau_star(source),
        "nontrivial_exists": nontrivial_exists(source),
        "witness": witness,
    }
    return SufficiencySerializer(data).data


def same_vertices(first, second, tol=MATCH_TOLERANCE):
    """Whether two regions have the same vertex set, coordinate-wise within ``tol``."""
    if len(first) != len(second):
        return False
    remaining = list(second.vertices)
    for v in first.vertices:
        match = next(
            (
                w
                for w in remaining
                if abs(w.error - v.error) <= tol and abs(w.opp_diff - v.opp_diff) <= tol
            ),
            None,
        )
        if match is None:
            return False
        remaining.remove(match)
    return True


def region_summary(source, region=None, verify=False, threads=1):
    """
    Summary of the region: size, extents, EO slice and the structural claims.

    With ``verify``, small sources are also compared with the brute-force hull.
    """
    if region is None:
        region = zonotope_region(source)
    matches = None
    if verify and source.n <= BRUTE_FORCE_CHECK_LIMIT:
        matches = same_vertices(region, brute_force_region(source, threads=threads))
    data = {
        "vertices": len(region),
        "degenerate": region.degenerate,
        "error_extent": list(region.error_extent),
        "eo_slice": list(eo_slice(region)),
        "claims": verify_region(source, region),
        "matches_brute_force": matches,
    }
    return RegionSummarySerializer(data).data
