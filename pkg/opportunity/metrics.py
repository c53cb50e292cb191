"""
Scalar evaluation quantities: error, accuracy, opportunity-difference, the
Bayes classifier, trivial accuracy and the threshold ``tau*``.

Everything is computed in vectorial form. With ``F`` the predictor vector,
``P`` the masses and ``Q`` the label rates of a source:

    err(F) = <P, Q> + <F, 1 - 2Q>
    d(F)   = <F, Q1> / <P, Q1> - <F, Q0> / <P, Q0>

where ``Qa`` is ``Q`` masked to the rows of group ``a``. Functions accept a
:class:`~opportunity.distribution.PredictorVec` or a plain array for ``F``.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distribution import PredictorVec, is_deterministic
from .exceptions import ConstructionError, UndefinedEO

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-12


class Tie(str, Enum):
    """How the Bayes classifier treats rows with ``q == 1/2``."""

    STRICT = "strict"
    INCLUSIVE = "inclusive"


@dataclass(frozen=True)
class MetricPoint:
    """A point ``(error, opportunity-difference)`` of the metric plane."""

    error: float
    opp_diff: float

    def mirrored(self):
        """The point reflected through ``(1/2, 0)``."""
        return MetricPoint(1 - self.error, -self.opp_diff)


@dataclass(frozen=True)
class GroupDenominators:
    """``d_a = <P, Qa> = P(Y=1, A=a)`` for both protected groups."""

    d0: float
    d1: float

    @property
    def defined(self):
        return self.d0 > 0 and self.d1 > 0

    def require(self):
        """
        Return ``self`` when equal opportunity is well defined.

        Raises:
            UndefinedEO: a group has no positive-label mass.
        """
        if not self.d0 > 0:
            raise UndefinedEO(0)
        if not self.d1 > 0:
            raise UndefinedEO(1)
        return self

    def __getitem__(self, group):
        return self.d1 if group else self.d0


@dataclass(frozen=True)
class Simulation:
    """Monte-Carlo estimate of a MetricPoint with its standard errors."""

    point: MetricPoint
    error_se: float
    opp_diff_se: float
    samples: int


def _assert_close(name, first, second, tol=IDENTITY_TOLERANCE):
    if abs(first - second) > tol:
        raise ConstructionError(f"{name}: {first} != {second}")


def _vector(source, f):
    if not isinstance(f, PredictorVec):
        f = PredictorVec(np.asarray(f, dtype=source.dtype))
    return f.check(source).f


# ---------------------------
# Group quantities
# ---------------------------
def masked_rates(source, group):
    """``Q`` restricted to the rows of ``group`` (zero elsewhere)."""
    return np.where(source.A == group, source.Q, source.zero)


def group_denominators(source):
    return GroupDenominators(
        source.dot(source.P, masked_rates(source, 0)),
        source.dot(source.P, masked_rates(source, 1)),
    )


def opportunity_weights(source):
    """
    Per-row weight ``w`` with ``d(F) = <F, w>``.

    Raises:
        UndefinedEO: a group has no positive-label mass.
    """
    den = group_denominators(source).require()
    return masked_rates(source, 1) / den.d1 - masked_rates(source, 0) / den.d0


# ---------------------------
# Metrics of a predictor
# ---------------------------
def error(source, f):
    """``err(F) = <P, Q> + <F, 1 - 2Q> = P(Yhat != Y)``."""
    f = _vector(source, f)
    base = source.dot(source.P, source.Q)
    return base + source.dot(f, source.one - 2 * source.Q)


def accuracy(source, f):
    return source.one - error(source, f)


def true_positive_rate(source, f, group):
    """
    ``P(Yhat=1 | Y=1, A=group) = E[Qhat Q | A=group] / E[Q | A=group]``.

    Raises:
        UndefinedEO: the group has no positive-label mass.
    """
    f = _vector(source, f)
    den = group_denominators(source)
    if not den[group] > 0:
        raise UndefinedEO(group)
    return source.dot(f, masked_rates(source, group)) / den[group]


def opp_diff(source, f):
    """
    Signed opportunity-difference ``TPR(A=1) - TPR(A=0)``.

    Raises:
        UndefinedEO: ``P(Y=1, A=a) = 0`` for some group.
    """
    f = _vector(source, f)
    den = group_denominators(source).require()
    return (
        source.dot(f, masked_rates(source, 1)) / den.d1
        - source.dot(f, masked_rates(source, 0)) / den.d0
    )


def metric_point(source, f):
    return MetricPoint(error(source, f), opp_diff(source, f))


# ---------------------------
# Bayes & trivial classifiers
# ---------------------------
def bayes(source, tie=Tie.STRICT):
    """
    The Bayes classifier ``1[Q > 1/2]`` (strict) or ``1[Q >= 1/2]`` (inclusive).
    """
    tie = Tie(tie)
    if tie is Tie.STRICT:
        positive = (source.Q > source.half).astype(bool)
    else:
        positive = (source.Q >= source.half).astype(bool)
    return PredictorVec(np.where(positive, source.P, source.zero))


def bayes_accuracy(source):
    """Maximal accuracy over all predictors: ``1/2 + E|Q - 1/2|``."""
    return source.half + source.total(source.P * np.abs(source.Q - source.half))


def bayes_opp_diff(source, tie=Tie.STRICT):
    return opp_diff(source, bayes(source, tie))


def trivial_accuracy(source):
    """
    Best accuracy of a constant classifier, ``tau = max{P(Y=0), P(Y=1)}``.

    Cross-checked against the closed form ``1/2 + |E[Y] - 1/2|``.
    """
    positive = source.dot(source.P, source.Q)
    tau = max(positive, source.one - positive)
    _assert_close("trivial accuracy", tau, source.half + abs(positive - source.half))
    return tau


def tau_star(source):
    """
    ``tau* = max{P(Q >= 1/2), P(Q <= 1/2)}``; non-trivial predictors exist
    exactly when it is below 1.
    """
    upper = source.total(source.P[(source.Q >= source.half).astype(bool)])
    lower = source.total(source.P[(source.Q <= source.half).astype(bool)])
    value = max(upper, lower)
    if is_deterministic(source):
        _assert_close("tau* of a deterministic source", value, trivial_accuracy(source))
    return value


# ---------------------------
# Simulation oracle
# ---------------------------
def simulate(source, f, samples=10**6, seed=0):
    """
    Estimate ``(error, opp_diff)`` by sampling the joint process (X, A, Y, Yhat).

    Args:
        source (DataSource): the data source.
        f: predictor vector.
        samples (int): number of draws.
        seed (int): seed of the numpy generator.

    Returns:
        Simulation: the estimate and one standard error per coordinate.
    """
    source = source.to_float()
    f = np.asarray(_vector(source, f), dtype=float)
    rng = np.random.default_rng(seed)

    P = source.P / math.fsum(source.P)
    rows = rng.choice(source.n, size=samples, p=P)
    y = rng.random(samples) < source.Q[rows]
    yhat = rng.random(samples) < (f / source.P)[rows]
    a = source.A[rows]

    err = float(np.mean(y != yhat))
    rates, variances = [], []
    for group in (0, 1):
        positives = y & (a == group)
        count = int(positives.sum())
        if count == 0:
            raise UndefinedEO(group)
        rate = float(yhat[positives].mean())
        rates.append(rate)
        variances.append(rate * (1 - rate) / count)

    logger.debug("Simulated %d draws with seed %d", samples, seed)
    return Simulation(
        point=MetricPoint(err, rates[1] - rates[0]),
        error_se=math.sqrt(err * (1 - err) / samples),
        opp_diff_se=math.sqrt(sum(variances)),
        samples=samples,
    )
