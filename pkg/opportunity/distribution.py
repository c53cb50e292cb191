"""
Finite discrete data sources.

A data source is a list of rows ``(x, a, p, q)``: outcome label ``x``,
protected bit ``a``, probability mass ``p = P(X=x, A=a)`` and positive-label
rate ``q = P(Y=1 | X=x, A=a)``. Row order is the canonical index order of
every vector in the app (masses, predictors, witnesses).

Values may be floats or ``fractions.Fraction``. A source whose masses and
rates are all Fractions is *exact*: its columns are numpy object arrays and
every reduction over them is exact.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import pandas as pd

from .exceptions import (BadLabel, BadSimplexVector, DimensionMismatch,
                         DuplicateRow, EmptyInput, MassNotNormalized,
                         NonPositiveMass, OutOfRangeQ, PredictorOutOfBounds)

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-9
SIMPLEX_TOLERANCE = 1e-12
BOUND_TOLERANCE = 1e-12


# ---------------------------
# Domain types
# ---------------------------
@dataclass(frozen=True)
class SourceRow:
    """One outcome ``(x, a)`` of the data source with its mass and label rate."""

    x_label: str
    a: int
    p: float
    q: float

    @property
    def key(self):
        return (self.x_label, self.a)


@dataclass(frozen=True, eq=False)
class DataSource:
    """
    Immutable finite data source ``(pi, q)``.

    Build instances with :func:`make_source`, :func:`from_samples` or
    :func:`three_region_source`, which validate; the bare constructor does not.
    """

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def n(self):
        return len(self.rows)

    @cached_property
    def exact(self):
        return all(
            isinstance(row.p, Fraction) and isinstance(row.q, Fraction)
            for row in self.rows
        )

    @property
    def dtype(self):
        return object if self.exact else float

    @cached_property
    def P(self):
        return np.array([row.p for row in self.rows], dtype=self.dtype)

    @cached_property
    def Q(self):
        return np.array([row.q for row in self.rows], dtype=self.dtype)

    @cached_property
    def A(self):
        return np.array([row.a for row in self.rows], dtype=int)

    @property
    def labels(self):
        return [row.x_label for row in self.rows]

    @property
    def zero(self):
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self):
        return Fraction(1) if self.exact else 1.0

    @property
    def half(self):
        return Fraction(1, 2) if self.exact else 0.5

    def total(self, values):
        """
        Sum ``values`` exactly (Fractions) or with correctly rounded ``fsum``.
        """
        if self.exact:
            return sum(values, Fraction(0))
        return math.fsum(values)

    def dot(self, x, y):
        return self.total(np.asarray(x) * np.asarray(y))

    def to_float(self):
        """Return a float copy of an exact source (floats are returned as is)."""
        if not self.exact:
            return self
        return DataSource(
            SourceRow(row.x_label, row.a, float(row.p), float(row.q))
            for row in self.rows
        )

    def __eq__(self, other):
        if not isinstance(other, DataSource):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"DataSource(n={self.n}, exact={self.exact})"


@dataclass(frozen=True, eq=False)
class PredictorVec:
    """
    A soft predictor in vectorial form: ``f[i] = P(Yhat=1, X=x_i, A=a_i)``.

    Valid for a source when ``0 <= f[i] <= p[i]``; the pointwise predictor is
    ``f[i] / p[i]``.
    """

    f: np.ndarray

    @classmethod
    def zeros(cls, source):
        """The constant classifier that always predicts 0."""
        return cls(np.array([source.zero] * source.n, dtype=source.dtype))

    @classmethod
    def full(cls, source):
        """The constant classifier that always predicts 1 (``F = P``)."""
        return cls(source.P.copy())

    @classmethod
    def from_pointwise(cls, source, qhat):
        """
        Build ``F`` from pointwise prediction probabilities ``qhat[i]``.
        """
        qhat = np.asarray(qhat, dtype=source.dtype)
        if qhat.shape != (source.n,):
            raise DimensionMismatch(
                f"expected {source.n} pointwise values, got {qhat.shape}"
            )
        return cls(source.P * qhat)

    def __len__(self):
        return len(self.f)

    def pointwise(self, source):
        return self.f / source.P

    def complement(self, source):
        """``P - F``: the predictor with every decision flipped."""
        return PredictorVec(source.P - self.f)

    def is_deterministic(self, source, tol=BOUND_TOLERANCE):
        return all(
            abs(fi) <= tol or abs(fi - pi) <= tol for fi, pi in zip(self.f, source.P)
        )

    def check(self, source, tol=BOUND_TOLERANCE):
        """
        Raise unless this predictor is valid for ``source``.

        Raises:
            DimensionMismatch: length differs from the source row count.
            PredictorOutOfBounds: some ``f[i]`` lies outside ``[0, p[i]]``.
        """
        if len(self.f) != source.n:
            raise DimensionMismatch(
                f"predictor has {len(self.f)} entries, source has {source.n} rows"
            )
        for i, (fi, pi) in enumerate(zip(self.f, source.P)):
            if not (-tol <= fi <= pi + tol):
                raise PredictorOutOfBounds(f"f[{i}]={fi} outside [0, {pi}]")
        return self


# ---------------------------
# Validation & construction
# ---------------------------
def validate(source, renormalize_tolerance=NORMALIZATION_TOLERANCE):
    """
    Check every DataSource invariant and return the (renormalized) source.

    Masses whose total is within ``renormalize_tolerance`` of 1 are rescaled
    to sum to exactly 1 (up to float rounding).

    Raises:
        EmptyInput, BadLabel, NonPositiveMass, OutOfRangeQ, DuplicateRow,
        MassNotNormalized
    """
    if source.n == 0:
        raise EmptyInput("a data source needs at least one row")

    seen = set()
    for row in source.rows:
        if row.a not in (0, 1):
            raise BadLabel(f"row {row.key}: protected bit must be 0 or 1")
        if not row.p > 0:
            raise NonPositiveMass(f"row {row.key}: p={row.p} is not positive")
        if not 0 <= row.q <= 1:
            raise OutOfRangeQ(f"row {row.key}: q={row.q} outside [0, 1]")
        if row.key in seen:
            raise DuplicateRow(f"row {row.key} appears twice")
        seen.add(row.key)

    mass = source.total(source.P)
    if abs(mass - 1) > renormalize_tolerance:
        raise MassNotNormalized(f"masses sum to {mass}, not 1")
    if mass == 1:
        return source

    logger.debug("Renormalizing masses (sum was %r)", mass)
    return DataSource(
        SourceRow(row.x_label, row.a, row.p / mass, row.q) for row in source.rows
    )


def _as_row(item):
    if isinstance(item, SourceRow):
        return item
    if isinstance(item, dict):
        return SourceRow(str(item["x"]), int(item["a"]), item["p"], item["q"])
    x_label, a, p, q = item
    return SourceRow(str(x_label), int(a), p, q)


def make_source(rows, strict=False, renormalize_tolerance=NORMALIZATION_TOLERANCE):
    """
    Build and validate a DataSource from rows.

    Args:
        rows: iterable of :class:`SourceRow`, ``(x, a, p, q)`` tuples or
            ``{"x", "a", "p", "q"}`` dictionaries.
        strict (bool): reject zero-mass rows instead of dropping them.
        renormalize_tolerance (float): accepted deviation of the total mass from 1.

    Returns:
        DataSource: the validated source.
    """
    kept = []
    for row in map(_as_row, rows):
        if row.p == 0 and not strict:
            logger.warning("Dropping row %s with zero probability mass", row.key)
            continue
        kept.append(row)
    return validate(DataSource(kept), renormalize_tolerance=renormalize_tolerance)


def from_samples(records, exact=False):
    """
    Estimate ``(pi, q)`` from raw ``(x, a, y)`` samples.

    Groups by ``(x, a)`` in first-appearance order; ``p`` is the group
    frequency and ``q`` the mean label inside the group. No smoothing.

    Args:
        records: sequence of ``(x_label, a, y)`` with ``a, y`` in ``{0, 1}``.
        exact (bool): return Fractions instead of floats.

    Raises:
        EmptyInput: no records.
        BadLabel: ``a`` or ``y`` outside ``{0, 1}``.
    """
    frame = pd.DataFrame.from_records(list(records), columns=["x", "a", "y"])
    if frame.empty:
        raise EmptyInput("no samples to estimate a distribution from")
    for column in ("a", "y"):
        if not frame[column].isin([0, 1]).all():
            raise BadLabel(f"column {column!r} must only hold 0 or 1")

    frame["x"] = frame["x"].astype(str)
    frame["a"] = frame["a"].astype(int)
    frame["y"] = frame["y"].astype(int)
    counts = frame.groupby(["x", "a"], sort=False)["y"].agg(["count", "sum"])

    total = len(frame)
    rows = []
    for (x_label, a), count, positives in zip(
        counts.index, counts["count"], counts["sum"]
    ):
        count, positives = int(count), int(positives)
        if exact:
            p, q = Fraction(count, total), Fraction(positives, count)
        else:
            p, q = count / total, positives / count
        rows.append(SourceRow(x_label, int(a), p, q))

    logger.info("Estimated %d rows from %d samples", len(rows), total)
    return validate(DataSource(rows))


def three_region_source(P, Q):
    """
    Build the three-region source ``R1=(x1, 0)``, ``R2=(x2, 0)``, ``R3=(x3, 1)``.

    Args:
        P: masses of the three regions, in the open simplex.
        Q: positive-label rates of the three regions, in ``(0, 1)``.

    Raises:
        BadSimplexVector: a vector has the wrong length, leaves the open
            interval, or ``P`` does not sum to 1 within 1e-12.
    """
    P, Q = list(P), list(Q)
    if len(P) != 3 or len(Q) != 3:
        raise BadSimplexVector("three-region sources need 3-vectors P and Q")
    for name, vector in (("P", P), ("Q", Q)):
        if not all(0 < v < 1 for v in vector):
            raise BadSimplexVector(f"{name}={vector} is not inside (0, 1)^3")
    if abs(sum(P) - 1) > SIMPLEX_TOLERANCE:
        raise BadSimplexVector(f"P={P} does not sum to 1")

    rows = [
        SourceRow(f"x{j + 1}", a, p, q) for j, (a, p, q) in enumerate(zip((0, 0, 1), P, Q))
    ]
    return validate(DataSource(rows), renormalize_tolerance=SIMPLEX_TOLERANCE)


def is_deterministic(source):
    """True when every ``q`` is 0 or 1 (Y is a function of (X, A))."""
    return all(row.q in (0, 1) for row in source.rows)
