import logging

from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from .exceptions import BadParameter, FairnessError
from .fileio import parse_distribution, region_data
from .region import zonotope_region
from .reports import analysis_report, optimal_report

logger = logging.getLogger(__name__)


# ---------------------------
# Helpers
# ---------------------------
def _error_response(exc):
    """
    Render a library error as JSON with the status the error class declares.

    Args:
        exc (FairnessError): The error raised by the library.

    Returns:
        Response: ``{"error": ..., "message": ...}`` with ``exc.http_status``.
    """
    logger.info("Request rejected: %s", exc)
    return Response(exc.as_dict(), status=exc.http_status)


def _eps(request):
    raw = request.query_params.get("eps", "0")
    try:
        return float(raw)
    except ValueError as exc:
        raise BadParameter(f"eps must be a number, got {raw!r}") from exc


# ---------------------------
# API
# ---------------------------
@api_view(["POST"])
@permission_classes([AllowAny])
def analyze(request):
    """
    API endpoint: metrics and compatibility verdict of a distribution.

    Args:
        request (HttpRequest): Body is a distribution JSON document.

    Returns:
        Response: the analysis report, 400 on invalid input, 422 when
        equal opportunity is undefined.
    """
    try:
        source = parse_distribution(request.data)
        return Response(analysis_report(source))
    except FairnessError as exc:
        return _error_response(exc)


@api_view(["POST"])
@permission_classes([AllowAny])
def region(request):
    """
    API endpoint: the feasible (error, opportunity-difference) polygon.
    """
    try:
        source = parse_distribution(request.data)
        return Response(region_data(zonotope_region(source)))
    except FairnessError as exc:
        return _error_response(exc)


@api_view(["POST"])
@permission_classes([AllowAny])
def optimal(request):
    """
    API endpoint: most accurate predictor with ``|opp_diff| <= eps``.

    The bound is read from the ``eps`` query parameter (default 0).
    """
    try:
        eps = _eps(request)
        source = parse_distribution(request.data)
        return Response(optimal_report(source, eps))
    except FairnessError as exc:
        return _error_response(exc)
