"""
Readers and writers for the files the commands consume and produce.

- Distribution file: JSON ``{"rows": [{"x": str, "a": 0|1, "p": num, "q": num}]}``.
- Sample file: CSV with header ``x,a,y`` (one observation per line).
- Region file: JSON ``{"vertices": [...], "degenerate": bool}`` or CSV
  ``error,opp_diff``.

Output is deterministic: fixed key order, two-space indentation, trailing
newline.
"""

import json
import logging
from pathlib import Path

import pandas as pd

from .exceptions import InvalidFile
from .serializers import DistributionSerializer, RegionSerializer

logger = logging.getLogger(__name__)

SAMPLE_COLUMNS = ["x", "a", "y"]

# Decimal places of the vertices in region files.
REGION_DECIMALS = 12


def dumps(data):
    return json.dumps(data, indent=2) + "\n"


def read_json(path):
    """
    Parse a JSON file.

    Raises:
        InvalidFile: unreadable file or malformed JSON.
    """
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InvalidFile(f"cannot read JSON from {path}: {exc}") from exc


def write_text(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InvalidFile(f"cannot write {path}: {exc}") from exc
    logger.info("Wrote %s", path)


def write_json(path, data):
    write_text(path, dumps(data))


def parse_distribution(data, strict=False):
    """
    Validate parsed distribution JSON and build the DataSource.

    Raises:
        InvalidFile: the payload does not have the distribution shape.
        SourceValidationError: the rows break a DataSource invariant.
    """
    serializer = DistributionSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidFile("malformed distribution", details=serializer.errors)
    return serializer.to_source(strict=strict)


def load_distribution(path, strict=False):
    return parse_distribution(read_json(path), strict=strict)


def distribution_data(source):
    """Distribution JSON of ``source`` at full precision, so that it reloads exactly."""
    return DistributionSerializer(source, context={"precise": True}).data


def read_samples(path):
    """
    Read ``(x, a, y)`` records from a CSV file with header ``x,a,y``.

    Raises:
        InvalidFile: unreadable file, wrong header or non-integer labels.
    """
    try:
        frame = pd.read_csv(path, dtype={"x": str})
    except (OSError, ValueError) as exc:
        raise InvalidFile(f"cannot read samples from {path}: {exc}") from exc
    if list(frame.columns) != SAMPLE_COLUMNS:
        raise InvalidFile(f"{path}: expected header x,a,y, got {','.join(frame.columns)}")
    try:
        a = frame["a"].astype(int)
        y = frame["y"].astype(int)
    except (TypeError, ValueError) as exc:
        raise InvalidFile(f"{path}: labels must be integers: {exc}") from exc
    return list(zip(frame["x"].fillna(""), a, y))


def region_data(region):
    return RegionSerializer(region, context={"decimals": REGION_DECIMALS}).data


def parse_region(data, source):
    """
    Rebuild a region from its JSON form.

    Raises:
        InvalidFile: the payload does not have the region shape.
    """
    serializer = RegionSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidFile("malformed region", details=serializer.errors)
    return serializer.to_region(source)


def write_region_csv(path, region):
    frame = pd.DataFrame(
        [(v.error, v.opp_diff) for v in region.vertices], columns=["error", "opp_diff"]
    )
    try:
        frame.to_csv(path, index=False, float_format="%.9g", lineterminator="\n")
    except OSError as exc:
        raise InvalidFile(f"cannot write {path}: {exc}") from exc
    logger.info("Wrote %s", path)
